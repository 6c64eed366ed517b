//! Monic and symmetrised matrix-valued Gegenbauer polynomials, and exact Gram integrals.

use num_traits::Zero;

use crate::error::Result;
use crate::exact::{binomial, factorial, int, pochhammer, GegBasis, GegSeries, RatMatrix, Rational};
use crate::matpoly::MatPoly;
use crate::scalar::{geg_product, inner_product, KappaValue};
use crate::weight::{weight_entries, WeightSpec};

/// Rational matrix `coeffs` times `kappa(nu)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaMatrix {
    pub nu: Rational,
    pub coeffs: RatMatrix,
}

impl KappaMatrix {
    pub fn entry(&self, i: usize, j: usize) -> KappaValue {
        KappaValue { coeff: self.coeffs[(i, j)].clone(), nu: self.nu.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }
}

pub fn recurrence_coeffs(n: usize, spec: &WeightSpec) -> (RatMatrix, RatMatrix) {
    let l2 = spec.two_ell() as i64;
    let nu = &spec.nu;
    let n_r = int(n as i64);
    let mut b = RatMatrix::zero(spec.dim());
    for j in 1..=l2 {
        let jr = int(j);
        b[(j as usize, j as usize - 1)] = &jr * (&jr + nu - int(1))
            / (int(2) * (&jr + &n_r + nu - int(1)) * (&jr + &n_r + nu));
    }
    for j in 0..l2 {
        let d = int(l2 - j);
        b[(j as usize, j as usize + 1)] = &d * (&d + nu - int(1))
            / (int(2) * (&d + &n_r + nu - int(1)) * (&d + &n_r + nu));
    }
    let mut c = RatMatrix::zero(spec.dim());
    if n > 0 {
        let num = &n_r * (&n_r + nu - int(1)) * (int(l2) + &n_r + nu) * (int(l2) + &n_r + nu * int(2) - int(1));
        for j in 0..=l2 {
            let jr = int(j);
            c[(j as usize, j as usize)] = &num
                / (int(4)
                    * (int(l2) + &n_r + nu - &jr - int(1))
                    * (int(l2) + &n_r + nu - &jr)
                    * (&jr + &n_r + nu - int(1))
                    * (&jr + &n_r + nu));
        }
    }
    (b, c)
}

/// `D_n = diag( binom(2l, i) (nu+n)_i / (nu+n+2l-i)_i )`
pub fn symmetrizer(n: usize, spec: &WeightSpec) -> RatMatrix {
    let l2 = spec.two_ell();
    let mu = &spec.nu + int(n as i64);
    RatMatrix::diag(
        (0..=l2)
            .map(|i| {
                binomial(l2 as i64, i as i64) * pochhammer(&mu, i)
                    / pochhammer(&(&mu + int((l2 - i) as i64)), i)
            })
            .collect(),
    )
}

/// Monic and symmetrised polynomials up to a fixed degree, built once and shared read-only.
#[derive(Debug, Clone)]
pub struct MvopFamily {
    spec: WeightSpec,
    monic: Vec<MatPoly>,
    hat: Vec<MatPoly>,
}

impl MvopFamily {
    pub fn build(spec: &WeightSpec, n_max: usize) -> Self {
        let dim = spec.dim();
        let mut monic = vec![MatPoly::identity(dim)];
        let mut prev = MatPoly::zero(dim);
        for n in 0..n_max {
            let (b, c) = recurrence_coeffs(n, spec);
            let cur = &monic[n];
            let next = &(&cur.mul_x() - &cur.left_mul(&b)) - &prev.left_mul(&c);
            prev = cur.clone();
            monic.push(next);
        }
        let hat = monic.iter().enumerate().map(|(n, p)| p.left_mul(&symmetrizer(n, spec))).collect();
        MvopFamily { spec: spec.clone(), monic, hat }
    }

    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    pub fn n_max(&self) -> usize {
        self.monic.len() - 1
    }

    pub fn monic(&self, n: usize) -> &MatPoly {
        &self.monic[n]
    }

    pub fn hat(&self, n: usize) -> &MatPoly {
        &self.hat[n]
    }

    /// Exact `int hatP_n W hatP_m^t dx`.
    pub fn gram_integral(&self, n: usize, m: usize) -> Result<KappaMatrix> {
        let spec = &self.spec;
        let dim = spec.dim();
        let nu = &spec.nu;
        let basis = GegBasis::new(nu, n.max(m))?;
        let to_geg = |p: &MatPoly| -> Vec<GegSeries> {
            (0..dim * dim).map(|k| basis.from_mono(&p.entry(k / dim, k % dim))).collect()
        };
        let a = to_geg(self.hat(n));
        let b = to_geg(self.hat(m));
        let w = weight_entries(spec)?;
        // X = hatP_n W_pol, entry-wise as series
        let mut x = vec![GegSeries::zero(nu.clone()); dim * dim];
        for i in 0..dim {
            for q in 0..dim {
                let mut acc = GegSeries::zero(nu.clone());
                for p in 0..dim {
                    acc = acc.add(&geg_product(&a[i * dim + p], &w[p][q])?)?;
                }
                x[i * dim + q] = acc;
            }
        }
        let mut out = RatMatrix::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Rational::zero();
                for q in 0..dim {
                    acc += inner_product(&x[i * dim + q], &b[j * dim + q])?.coeff;
                }
                out[(i, j)] = acc;
            }
        }
        Ok(KappaMatrix { nu: nu.clone(), coeffs: out })
    }
}

pub fn monic_p(n: usize, spec: &WeightSpec) -> MatPoly {
    MvopFamily::build(spec, n).monic(n).clone()
}

pub fn hat_p(n: usize, spec: &WeightSpec) -> MatPoly {
    MvopFamily::build(spec, n).hat(n).clone()
}

pub fn gram_integral(n: usize, m: usize, spec: &WeightSpec) -> Result<KappaMatrix> {
    MvopFamily::build(spec, n.max(m)).gram_integral(n, m)
}

/// Exact `int C_m^(nu) W(x) dx` entry-wise.
pub fn weight_moment(m: usize, spec: &WeightSpec) -> Result<KappaMatrix> {
    let w = weight_entries(spec)?;
    let cm = GegSeries::term(spec.nu.clone(), m, int(1));
    let dim = spec.dim();
    let mut out = RatMatrix::zero(dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(i, j)] = inner_product(&cm, &w[i][j])?.coeff;
        }
    }
    Ok(KappaMatrix { nu: spec.nu.clone(), coeffs: out })
}

/// Closed-form `H_0` in `kappa(nu)` units:
/// `(1/nu)(2l+nu) j!(2l-j)!(nu+1)_{2l} / ((2l)!(nu+1)_j(nu+1)_{2l-j})`.
pub fn h0_display(spec: &WeightSpec) -> RatMatrix {
    let l2 = spec.two_ell();
    let nu = &spec.nu;
    let nu1 = nu + int(1);
    RatMatrix::diag(
        (0..=l2)
            .map(|j| {
                (int(l2 as i64) + nu) / nu * factorial(j) * factorial(l2 - j) * pochhammer(&nu1, l2)
                    / (factorial(l2) * pochhammer(&nu1, j) * pochhammer(&nu1, l2 - j))
            })
            .collect(),
    )
}

/// Constant coefficients of the `P_m` entries in the `C^(nu+2l)` basis; proportional to
/// `int P_m (1-x^2)^(nu+2l-1/2) dx`.
pub fn shifted_constant_terms(family: &MvopFamily, m: usize) -> Result<RatMatrix> {
    let spec = family.spec();
    let lam = &spec.nu + int(spec.two_ell() as i64);
    let basis = GegBasis::new(&lam, m)?;
    let p = family.monic(m);
    Ok(RatMatrix::from_fn(spec.dim(), |i, j| basis.from_mono(&p.entry(i, j)).coeff(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_traits::Signed;

    #[test]
    fn recurrence_examples() {
        let spec = WeightSpec::new(1, int(1)).unwrap();
        let (b, c) = recurrence_coeffs(0, &spec);
        assert_eq!(b[(1, 0)], rat(1, 4));
        assert_eq!(b[(0, 1)], rat(1, 4));
        assert!(c.is_zero());
        assert_eq!(monic_p(1, &spec), &MatPoly::identity(2).mul_x() - &MatPoly::constant(b));
    }

    #[test]
    fn symmetrizer_examples() {
        let s1 = WeightSpec::new(1, rat(5, 3)).unwrap();
        assert_eq!(symmetrizer(4, &s1), RatMatrix::identity(2));
        let s2 = WeightSpec::new(2, rat(1, 2)).unwrap();
        let mu = rat(1, 2) + int(3);
        assert_eq!(
            symmetrizer(3, &s2),
            RatMatrix::diag(vec![int(1), int(2) * &mu / (&mu + int(1)), int(1)])
        );
    }

    #[test]
    fn small_gram_cases() {
        let spec = WeightSpec::new(2, rat(3, 2)).unwrap();
        let fam = MvopFamily::build(&spec, 2);
        assert!(fam.gram_integral(0, 1).unwrap().is_zero());
        let h2 = fam.gram_integral(2, 2).unwrap();
        assert!(h2.coeffs.is_diagonal());
        assert!(h2.coeffs.diagonal().iter().all(|v| v.is_positive()));
        let d0 = symmetrizer(0, &spec);
        let h0 = fam.gram_integral(0, 0).unwrap();
        assert_eq!(h0.coeffs, &(&d0 * &h0_display(&spec)) * &d0);
    }
}
