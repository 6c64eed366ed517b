//! Connection coefficients between scalar and matrix-valued Gegenbauer polynomials.
//!
//! `gamma_coeff` returns `gamma(nu; i, j, k) * Gamma(nu)` and `phi_coeff` returns
//! `phi(nu; i, j, r) / Gamma(nu)`; both are rational. The remaining Gamma ratios inside
//! `F_{k,n}` and `G_{r,m}` differ by integers and are evaluated as Pochhammer products.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::Result;
use crate::exact::rational::binomial_half;
use crate::exact::{
    binomial, factorial, gamma_ratio_shift, gamma_ratio_shift_with, int, pochhammer, pow2, GegBasis,
    PoleConvention, RatMatrix, Rational, SizeParam,
};
use crate::matpoly::MatPoly;
use crate::mvop::MvopFamily;
use crate::scalar::connect_integer;
use crate::weight::WeightSpec;

struct GammaShape {
    binom: Rational,
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

/// Binomial factor and Gamma shifts of `gamma`; `None` when the coefficient vanishes.
fn gamma_shape(i: i64, j: i64, k: i64, l2: i64) -> Option<GammaShape> {
    if i < 0 || j < 0 || k < 0 || i > l2 || j > l2 || k > l2 || (i + j + k) % 2 != 0 {
        return None;
    }
    let binom = binomial(l2, k) * binomial_half(k, k + i - j) * binomial_half(l2 - k, i + j - k);
    if binom.is_zero() {
        return None;
    }
    Some(GammaShape {
        binom,
        a: (i + j - k) / 2,
        b: l2 - (k + i + j) / 2,
        c: l2 + 1 - (k - i + j) / 2,
        d: l2 + 1 - (k + i - j) / 2,
    })
}

fn sign(k: i64) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `gamma(nu; i, j, k) * Gamma(nu)`; zero outside `0..=2l` or on parity failure.
pub fn gamma_coeff_signed(nu: &Rational, i: i64, j: i64, k: i64, size: SizeParam) -> Result<Rational> {
    let l2 = size.two_ell() as i64;
    let Some(g) = gamma_shape(i, j, k, l2) else {
        return Ok(Rational::zero());
    };
    let l2r = int(l2);
    Ok(sign(k) * (nu + &l2r) * (nu + &l2r - int(k)) * g.binom
        * gamma_ratio_shift(nu, g.a, g.d)?
        * gamma_ratio_shift(nu, g.b, g.c)?)
}

pub fn gamma_coeff(nu: &Rational, i: usize, j: usize, k: usize, size: SizeParam) -> Result<Rational> {
    gamma_coeff_signed(nu, i as i64, j as i64, k as i64, size)
}

/// `phi(nu; i, j, r) / Gamma(nu)`; reciprocal Gamma factors at poles evaluate to zero.
pub fn phi_coeff(nu: &Rational, i: usize, j: usize, r: usize, size: SizeParam) -> Result<Rational> {
    let l2 = size.two_ell() as i64;
    let (i, j, r) = (i as i64, j as i64, r as i64);
    if i > l2 || j > l2 || r > l2 || (i + j + r) % 2 != 0 {
        return Ok(Rational::zero());
    }
    let b = binomial(l2, r) * binomial_half(r, r + i - j) * binomial_half(l2 - r, i + j - r)
        / (binomial(l2, i) * binomial(l2, j));
    if b.is_zero() {
        return Ok(Rational::zero());
    }
    let rc = PoleConvention::ReciprocalZero;
    Ok(b * (nu - int(r) + int(j))
        * (nu + int(l2 - r - j))
        * gamma_ratio_shift_with(nu, l2 - r, 0, rc)?
        * gamma_ratio_shift_with(nu, -(r - i + j) / 2, 1 - (r - i - j) / 2, rc)?
        * gamma_ratio_shift_with(nu, -(r + i - j) / 2, l2 + 1 - (r + i + j) / 2, rc)?)
}

/// `(F_{k,n})_{ij} = n! Gamma(nu+2l) / 2^n * gamma(nu+n; i, j, k)`.
pub fn f_matrix(k: usize, n: usize, nu: &Rational, size: SizeParam) -> Result<RatMatrix> {
    let dim = size.dim();
    let l2 = size.two_ell() as i64;
    if k > n.min(size.two_ell()) {
        return Ok(RatMatrix::zero(dim));
    }
    let mu = nu + int(n as i64);
    let scale = factorial(n) / pow2(n as i64);
    let mut out = RatMatrix::zero(dim);
    for i in 0..dim {
        for j in 0..dim {
            let Some(g) = gamma_shape(i as i64, j as i64, k as i64, l2) else {
                continue;
            };
            let l2r = int(l2);
            out[(i, j)] = sign(k as i64) * (&mu + &l2r) * (&mu + &l2r - int(k as i64)) * g.binom
                * &scale
                * gamma_ratio_shift(&mu, g.a, 0)?
                * gamma_ratio_shift(&mu, g.b, g.c)?
                * gamma_ratio_shift(nu, l2, n as i64 + g.d)?;
        }
    }
    Ok(out)
}

/// `(G_{r,m})_{ij} = 2^(m-r) / ((m-r)! Gamma(nu)) * phi(nu+m; i, j, r)`.
pub fn g_matrix(r: usize, m: usize, nu: &Rational, size: SizeParam) -> Result<RatMatrix> {
    let dim = size.dim();
    if r > m.min(size.two_ell()) {
        return Ok(RatMatrix::zero(dim));
    }
    let mu = nu + int(m as i64);
    let scale = pow2((m - r) as i64) / factorial(m - r) * pochhammer(nu, m);
    let mut out = RatMatrix::zero(dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(i, j)] = phi_coeff(&mu, i, j, r, size)? * &scale;
        }
    }
    Ok(out)
}

/// `F_{k,n}` with zero outside `0 <= k <= min(n, 2l)`, accepting signed indices.
pub fn f_matrix_signed(k: i64, n: i64, nu: &Rational, size: SizeParam) -> Result<RatMatrix> {
    if k < 0 || n < 0 {
        return Ok(RatMatrix::zero(size.dim()));
    }
    f_matrix(k as usize, n as usize, nu, size)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    F,
    G,
}

#[derive(Debug, Clone)]
pub struct ConnectionTable {
    pub direction: Direction,
    pub nu: Rational,
    pub size: SizeParam,
    pub entries: BTreeMap<(usize, usize), RatMatrix>,
}

impl ConnectionTable {
    /// All nonzero-range coefficients with second index up to `n_max`, built in parallel.
    pub fn build(direction: Direction, nu: &Rational, size: SizeParam, n_max: usize) -> Result<Self> {
        let cells: Vec<(usize, usize)> = (0..=n_max)
            .flat_map(|n| (0..=n.min(size.two_ell())).map(move |k| (k, n)))
            .collect();
        let mats: Result<Vec<_>> = cells
            .par_iter()
            .map(|&(k, n)| match direction {
                Direction::F => f_matrix(k, n, nu, size),
                Direction::G => g_matrix(k, n, nu, size),
            })
            .collect();
        let entries = cells.into_iter().zip(mats?).collect();
        Ok(ConnectionTable { direction, nu: nu.clone(), size, entries })
    }

    pub fn get(&self, k: usize, n: usize) -> RatMatrix {
        self.entries.get(&(k, n)).cloned().unwrap_or_else(|| RatMatrix::zero(self.size.dim()))
    }
}

/// `terms[k]` multiplies `C_{n-k}^(lambda)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatGegSeries {
    pub lambda: Rational,
    pub n: usize,
    pub terms: Vec<RatMatrix>,
}

impl MatGegSeries {
    pub fn to_matpoly(&self) -> Result<MatPoly> {
        let dim = self.terms.first().map_or(1, |t| t.dim());
        let basis = GegBasis::new(&self.lambda, self.n)?;
        let mut acc = MatPoly::zero(dim);
        for (k, t) in self.terms.iter().enumerate() {
            acc = &acc + &MatPoly::scalar_times(basis.poly(self.n - k), t);
        }
        Ok(acc)
    }
}

pub fn hat_p_series(n: usize, nu: &Rational, size: SizeParam) -> Result<MatGegSeries> {
    let terms = (0..=n.min(size.two_ell()))
        .map(|k| f_matrix(k, n, nu, size))
        .collect::<Result<Vec<_>>>()?;
    Ok(MatGegSeries { lambda: nu + int(size.two_ell() as i64), n, terms })
}

/// `sum_k F_{k,n} C_{n-k}^(nu+2l)`.
pub fn synthesize_hat_p(n: usize, nu: &Rational, size: SizeParam) -> Result<MatPoly> {
    hat_p_series(n, nu, size)?.to_matpoly()
}

/// `G_{r,m}` for `r = 0..=min(m, 2l)`.
pub fn expand_scalar(m: usize, nu: &Rational, size: SizeParam) -> Result<Vec<RatMatrix>> {
    (0..=m.min(size.two_ell())).map(|r| g_matrix(r, m, nu, size)).collect()
}

/// `sum_r G_{r,m} hatP_{m-r}`; should equal `C_m^(nu)` times the identity.
pub fn reconstruct_scalar(m: usize, family: &MvopFamily) -> Result<MatPoly> {
    let spec = family.spec();
    let mut acc = MatPoly::zero(spec.dim());
    for (r, g) in expand_scalar(m, &spec.nu, spec.size)?.iter().enumerate() {
        acc = &acc + &family.hat(m - r).left_mul(g);
    }
    Ok(acc)
}

/// `M_t = sum_k F_{k,n} G^(nu+2l)_{t-k,n-k}`.
pub fn m_coeff(t: usize, n: usize, nu: &Rational, size: SizeParam) -> Result<RatMatrix> {
    let l2 = size.two_ell();
    let shifted = nu + int(l2 as i64);
    let mut acc = RatMatrix::zero(size.dim());
    for k in t.saturating_sub(l2)..=n.min(l2).min(t) {
        let g = g_matrix(t - k, n - k, &shifted, size)?;
        acc = &acc + &(&f_matrix(k, n, nu, size)? * &g);
    }
    Ok(acc)
}

/// `sum_t M_t hatP^(nu+2l)_{n-t}` using a family at the shifted parameter.
pub fn m_expansion(n: usize, nu: &Rational, size: SizeParam, shifted: &MvopFamily) -> Result<MatPoly> {
    let mut acc = MatPoly::zero(size.dim());
    for t in 0..=n.min(2 * size.two_ell()) {
        acc = &acc + &shifted.hat(n - t).left_mul(&m_coeff(t, n, nu, size)?);
    }
    Ok(acc)
}

/// Right side of the double sum: `(nu+2l+m-2s)/(nu+2l) (nu)_{m-s}/(nu+2l+1)_{m-s} (-2l)_s/s!`.
pub fn double_sum_rhs(s: usize, m: usize, nu: &Rational, size: SizeParam) -> Rational {
    let l2 = int(size.two_ell() as i64);
    (nu + &l2 + int((m - 2 * s) as i64)) / (nu + &l2) * pochhammer(nu, m - s)
        / pochhammer(&(nu + &l2 + int(1)), m - s)
        * pochhammer(&(-&l2), s)
        / factorial(s)
}

/// `sum_r G_{r,m} F_{t-r,m-r}` over the admissible `r`.
pub fn gf_diagonal_sum(t: usize, m: usize, nu: &Rational, size: SizeParam) -> Result<RatMatrix> {
    let l2 = size.two_ell();
    let mut acc = RatMatrix::zero(size.dim());
    for r in t.saturating_sub(l2)..=m.min(l2).min(t) {
        acc = &acc + &(&g_matrix(r, m, nu, size)? * &f_matrix(t - r, m - r, nu, size)?);
    }
    Ok(acc)
}

pub fn double_sum_check(s: usize, m: usize, nu: &Rational, size: SizeParam) -> Result<bool> {
    let lhs = gf_diagonal_sum(2 * s, m, nu, size)?;
    let rhs = RatMatrix::identity(size.dim()).scale(&double_sum_rhs(s, m, nu, size));
    Ok(lhs == rhs)
}

/// `sum_r sum_k G_{r,m} F_{k,m-r}` grouped by `t = r + k` reproduces the scalar integer
/// connection `C_m^(nu) -> C^(nu+2l)` (odd `t` vanish).
pub fn scalar_consistency_check(m: usize, nu: &Rational, size: SizeParam) -> Result<bool> {
    let c = connect_integer(m, nu, size.two_ell());
    let id = RatMatrix::identity(size.dim());
    for t in 0..=m {
        let lhs = gf_diagonal_sum(t, m, nu, size)?;
        let expected = if t % 2 == 0 && t / 2 < c.len() {
            id.scale(&c[t / 2])
        } else {
            RatMatrix::zero(size.dim())
        };
        if lhs != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `F^(nu)_{k,n} = n/(2(nu+2l)) F^(nu+1)_{k,n-1}` and `G^(nu)_{r,m} = 2nu/(m-r) G^(nu+1)_{r,m-1}`.
pub fn shift_lemma_check(nu: &Rational, size: SizeParam, n_max: usize) -> Result<bool> {
    let l2 = int(size.two_ell() as i64);
    let nu1 = nu + int(1);
    for n in 1..=n_max {
        for k in 0..n {
            let lhs = f_matrix(k, n, nu, size)?;
            let rhs = f_matrix(k, n - 1, &nu1, size)?.scale(&(int(n as i64) / (int(2) * (nu + &l2))));
            if lhs != rhs {
                return Ok(false);
            }
            let lhs = g_matrix(k, n, nu, size)?;
            let rhs = g_matrix(k, n - 1, &nu1, size)?.scale(&(int(2) * nu / int((n - k) as i64)));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `G_{m,m+k} = 2^k (nu)_k / k! G^(nu+k)_{m,m}` and
/// `F_{m,m+k} = (m+1)_k / (2^k (nu+2l)_k) F^(nu+k)_{m,m}`.
pub fn diagonal_reduction_check(nu: &Rational, size: SizeParam, m_max: usize, k_max: usize) -> Result<bool> {
    let l2 = int(size.two_ell() as i64);
    for m in 0..=m_max {
        for k in 0..=k_max {
            let nuk = nu + int(k as i64);
            let g = g_matrix(m, m + k, nu, size)?;
            let g_ref = g_matrix(m, m, &nuk, size)?.scale(&(pow2(k as i64) * pochhammer(nu, k) / factorial(k)));
            let f = f_matrix(m, m + k, nu, size)?;
            let f_ref = f_matrix(m, m, &nuk, size)?.scale(
                &(pochhammer(&int(m as i64 + 1), k) / (pow2(k as i64) * pochhammer(&(nu + &l2), k))),
            );
            if g != g_ref || f != f_ref {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `G_{r,m} D_0 H_0` symmetric, with `D_0 H_0` at `nu + m - r` (the parameter of the diagonal
/// reduction `G_{r,m} ~ G^(nu+m-r)_{r,r}`), taken from the exact Gram integral `hatH_0 = D_0 H_0 D_0`.
pub fn g_d0_h0_symmetric(r: usize, m: usize, nu: &Rational, size: SizeParam) -> Result<bool> {
    let spec = WeightSpec::new(size.two_ell(), nu + int((m - r) as i64))?;
    let hat_h0 = MvopFamily::build(&spec, 0).gram_integral(0, 0)?.coeffs;
    let d0_inv = crate::mvop::symmetrizer(0, &spec).diag_inverse().expect("symmetrizer is invertible");
    Ok((&g_matrix(r, m, nu, size)? * &(&hat_h0 * &d0_inv)).is_symmetric())
}

pub fn commutes_with_j(m: &RatMatrix) -> bool {
    let j = RatMatrix::antidiag(m.dim());
    &j * m == m * &j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::mvop::symmetrizer;
    use crate::weight::WeightSpec;

    #[test]
    fn f00_is_d0() {
        for l2 in 0..5 {
            let nu = rat(7, 3);
            let spec = WeightSpec::new(l2, nu.clone()).unwrap();
            assert_eq!(f_matrix(0, 0, &nu, spec.size).unwrap(), symmetrizer(0, &spec));
        }
    }

    #[test]
    fn gamma_parity_and_symmetry() {
        let size = SizeParam::new(3);
        let nu = int(2);
        assert!(gamma_coeff(&nu, 0, 1, 0, size).unwrap().is_zero());
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert_eq!(gamma_coeff(&nu, i, j, k, size).unwrap(), gamma_coeff(&nu, j, i, k, size).unwrap());
                }
            }
        }
    }

    #[test]
    fn phi_support() {
        let size = SizeParam::new(2);
        assert!(phi_coeff(&int(3), 0, 1, 0, size).unwrap().is_zero());
        assert!(phi_coeff(&int(3), 0, 2, 0, size).unwrap().is_zero());
        assert!(!phi_coeff(&int(3), 1, 1, 0, size).unwrap().is_zero());
    }

    #[test]
    fn synthesis_matches_recurrence_small() {
        let nu = rat(3, 2);
        let spec = WeightSpec::new(2, nu.clone()).unwrap();
        let fam = MvopFamily::build(&spec, 5);
        assert_eq!(&synthesize_hat_p(5, &nu, spec.size).unwrap(), fam.hat(5));
    }

    #[test]
    fn inversion_small() {
        let spec = WeightSpec::new(2, int(1)).unwrap();
        let fam = MvopFamily::build(&spec, 6);
        let c6 = crate::scalar::gegenbauer(6, &int(1)).unwrap();
        assert_eq!(reconstruct_scalar(6, &fam).unwrap(), MatPoly::scalar_times(&c6, &RatMatrix::identity(3)));
        let g0 = g_matrix(0, 0, &int(1), spec.size).unwrap();
        assert_eq!(&g0 * &symmetrizer(0, &spec), RatMatrix::identity(3));
    }

    #[test]
    fn double_sum_example() {
        assert!(double_sum_check(1, 5, &rat(3, 2), SizeParam::new(2)).unwrap());
    }
}
