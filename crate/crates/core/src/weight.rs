//! The matrix weight `W(x) = (1-x^2)^(nu-1/2) W_pol(x)` and its LDU factorisation.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::geg::check_positive;
use crate::exact::{factorial, int, pochhammer, rat, GegBasis, GegSeries, MonoPoly, Rational, SizeParam};
use crate::matpoly::MatPoly;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSpec {
    pub size: SizeParam,
    pub nu: Rational,
}

impl WeightSpec {
    pub fn new(two_ell: usize, nu: Rational) -> Result<Self> {
        check_positive("nu", &nu)?;
        Ok(WeightSpec { size: SizeParam::new(two_ell), nu })
    }

    pub fn dim(&self) -> usize {
        self.size.dim()
    }

    pub fn two_ell(&self) -> usize {
        self.size.two_ell()
    }

    /// Same size, parameter shifted by an integer.
    pub fn shifted(&self, by: i64) -> Result<Self> {
        Self::new(self.two_ell(), &self.nu + int(by))
    }
}

fn k_range(i: usize, j: usize, two_ell: usize) -> std::ops::RangeInclusive<usize> {
    (i + j).saturating_sub(two_ell)..=i.min(j)
}

pub fn alpha_coeff(k: usize, i: usize, j: usize, spec: &WeightSpec) -> Result<Rational> {
    let l2 = spec.two_ell();
    if i > l2 || j > l2 || !k_range(i, j, l2).contains(&k) {
        return Err(Error::Index(format!("alpha_{k}({i},{j}) with 2l = {l2}")));
    }
    let nu = &spec.nu;
    let s = i + j;
    let sign = if k % 2 == 0 { int(1) } else { int(-1) };
    let v = sign * factorial(i) * factorial(j) * factorial(s - 2 * k)
        / (factorial(k) * pochhammer(&(nu * int(2)), s - 2 * k) * pochhammer(nu, s - k))
        * pochhammer(nu, i - k)
        * pochhammer(nu, j - k)
        / (factorial(i - k) * factorial(j - k))
        * (int((s - 2 * k) as i64) + nu)
        / (int((s - k) as i64) + nu)
        * factorial(l2 - i)
        * factorial(l2 - j)
        / factorial(l2 + k - s)
        * pochhammer(&(-(int(l2 as i64) + nu)), k)
        * (int(l2 as i64) + nu)
        / factorial(l2);
    Ok(v)
}

/// Entry `(i,j)` of `W_pol` in the `C^(nu)` basis.
pub fn weight_entry(i: usize, j: usize, spec: &WeightSpec) -> Result<GegSeries> {
    let l2 = spec.two_ell();
    if i > l2 || j > l2 {
        return Err(Error::Index(format!("weight entry ({i},{j}) with 2l = {l2}")));
    }
    let mut v = vec![Rational::zero(); i + j + 1];
    for k in k_range(i, j, l2) {
        v[i + j - 2 * k] = alpha_coeff(k, i, j, spec)?;
    }
    Ok(GegSeries::new(spec.nu.clone(), v))
}

pub fn weight_entries(spec: &WeightSpec) -> Result<Vec<Vec<GegSeries>>> {
    let n = spec.dim();
    (0..n).map(|i| (0..n).map(|j| weight_entry(i, j, spec)).collect()).collect()
}

/// `W_pol` in the monomial basis.
pub fn weight_poly(spec: &WeightSpec) -> Result<MatPoly> {
    let basis = GegBasis::new(&spec.nu, 2 * spec.two_ell())?;
    let entries = weight_entries(spec)?;
    Ok(MatPoly::from_entries(spec.dim(), |i, j| basis.to_mono(&entries[i][j])))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LduFactors {
    pub l: MatPoly,
    /// `(t_k, k)`: diagonal entry `t_k (1-x^2)^(k+nu-1/2)`.
    pub t: Vec<(Rational, usize)>,
}

pub fn t_coeff(k: usize, spec: &WeightSpec) -> Rational {
    let nu = &spec.nu;
    let l2 = int(spec.two_ell() as i64);
    factorial(k) * pochhammer(nu, k) / pochhammer(&(nu + rat(1, 2)), k)
        * pochhammer(&(nu * int(2) + &l2), k)
        * (&l2 + nu)
        / (pochhammer(&(&l2 - int(k as i64) + int(1)), k) * pochhammer(&(nu * int(2) + int(k as i64 - 1)), k))
}

pub fn ldu_factors(spec: &WeightSpec) -> Result<LduFactors> {
    let n = spec.dim();
    let nu = &spec.nu;
    let mut entries = vec![MonoPoly::zero(); n * n];
    for k in 0..n {
        let basis = GegBasis::new(&(nu + int(k as i64)), n - 1 - k)?;
        for m in k..n {
            let c = factorial(m)
                / (factorial(k) * pochhammer(&(nu * int(2) + int(2 * k as i64)), m - k));
            entries[m * n + k] = basis.poly(m - k).scale(&c);
        }
    }
    let l = MatPoly::from_entries(n, |i, j| entries[i * n + j].clone());
    let t = (0..n).map(|k| (t_coeff(k, spec), k)).collect();
    Ok(LduFactors { l, t })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LduCheck {
    pub ok: bool,
    pub first_mismatch: Option<(usize, usize)>,
}

/// `W_pol = L diag(t_k (1-x^2)^k) L^t` as an exact polynomial identity.
pub fn verify_ldu(spec: &WeightSpec) -> Result<LduCheck> {
    verify_ldu_with(spec, &ldu_factors(spec)?)
}

pub fn verify_ldu_with(spec: &WeightSpec, f: &LduFactors) -> Result<LduCheck> {
    let n = spec.dim();
    let w = weight_poly(spec)?;
    let mid = MatPoly::from_entries(n, |i, j| {
        if i == j {
            let (t, k) = &f.t[i];
            MonoPoly::one_minus_x2_pow(*k).scale(t)
        } else {
            MonoPoly::zero()
        }
    });
    let prod = &(&f.l * &mid) * &f.l.transpose();
    let first_mismatch =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| prod.entry(i, j) != w.entry(i, j));
    Ok(LduCheck { ok: first_mismatch.is_none(), first_mismatch })
}

pub fn t_all_positive(spec: &WeightSpec) -> bool {
    (0..spec.dim()).all(|k| t_coeff(k, spec).is_positive())
}

pub fn is_unipotent_lower(l: &MatPoly) -> bool {
    let n = l.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let e = l.entry(i, j);
            match i.cmp(&j) {
                std::cmp::Ordering::Less => e.is_zero(),
                std::cmp::Ordering::Equal => e == MonoPoly::one(),
                std::cmp::Ordering::Greater => true,
            }
        })
    })
}

/// `J W_pol J` equals `W_pol` entry-wise.
pub fn commutes_with_j(spec: &WeightSpec) -> Result<bool> {
    let w = weight_entries(spec)?;
    let l2 = spec.two_ell();
    Ok((0..=l2).all(|i| (0..=l2).all(|j| w[i][j] == w[l2 - i][l2 - j])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn alpha_range_and_symmetry() {
        let spec = WeightSpec::new(3, rat(3, 2)).unwrap();
        assert!(alpha_coeff(0, 3, 3, &spec).is_err());
        assert!(alpha_coeff(3, 3, 3, &spec).is_ok());
        for i in 0..4 {
            for j in 0..4 {
                for k in k_range(i, j, 3) {
                    assert_eq!(alpha_coeff(k, i, j, &spec).unwrap(), alpha_coeff(k, j, i, &spec).unwrap());
                }
            }
        }
    }

    #[test]
    fn small_ldu_cases() {
        for (l2, nu) in [(1, int(1)), (4, rat(5, 2))] {
            let spec = WeightSpec::new(l2, nu).unwrap();
            assert!(verify_ldu(&spec).unwrap().ok);
        }
        let spec = WeightSpec::new(1, int(2)).unwrap();
        let f = ldu_factors(&spec).unwrap();
        assert_eq!(f.l.entry(1, 0), MonoPoly::x());
        assert!(is_unipotent_lower(&f.l));
    }

    #[test]
    fn tampered_t0_is_detected() {
        let spec = WeightSpec::new(2, rat(7, 3)).unwrap();
        let mut f = ldu_factors(&spec).unwrap();
        f.t[0].0 += Rational::one();
        let chk = verify_ldu_with(&spec, &f).unwrap();
        assert!(!chk.ok);
        assert_eq!(chk.first_mismatch, Some((0, 0)));
    }

    #[test]
    fn nonpositive_nu_rejected() {
        assert!(WeightSpec::new(2, int(0)).is_err());
    }
}
