//! The second-order operator `D` and first-order operator `E` acting from the right, their
//! eigen-relations, the commutator recursions for `F_{k,n}`, and the six-term `gamma` relation.

use num_traits::Zero;

use crate::connection::{f_matrix_signed, gamma_coeff_signed};
use crate::error::{Error, Result};
use crate::exact::{gamma_ratio_shift, int, rat, RatMatrix, Rational, SizeParam};
use crate::matpoly::MatPoly;
use crate::mvop::{recurrence_coeffs, symmetrizer, MvopFamily};
use crate::weight::WeightSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorMatrices {
    Dod { c: RatMatrix, v: RatMatrix },
    Doe { b0: RatMatrix, b1: RatMatrix, a0: RatMatrix },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSpec {
    pub nu: Rational,
    pub size: SizeParam,
    pub matrices: OperatorMatrices,
}

fn c_matrix(size: SizeParam) -> RatMatrix {
    let l2 = size.two_ell();
    RatMatrix::from_fn(size.dim(), |i, j| {
        if j == i + 1 {
            int((l2 - i) as i64)
        } else if i == j + 1 {
            int(i as i64)
        } else {
            Rational::zero()
        }
    })
}

fn v_matrix(size: SizeParam) -> RatMatrix {
    let l2 = size.two_ell() as i64;
    RatMatrix::diag((0..=l2).map(|i| int(-i * (l2 - i))).collect())
}

impl OperatorSpec {
    pub fn second_order(nu: &Rational, size: SizeParam) -> Self {
        OperatorSpec {
            nu: nu.clone(),
            size,
            matrices: OperatorMatrices::Dod { c: c_matrix(size), v: v_matrix(size) },
        }
    }

    /// Undefined for `2l = 0`, where `B_1` and `A_0` are only given through `l B_1`, `l A_0`.
    pub fn first_order(nu: &Rational, size: SizeParam) -> Result<Self> {
        let l2 = size.two_ell();
        if l2 == 0 {
            return Err(Error::Unsupported("first-order operator needs 2l > 0".into()));
        }
        let ell = size.ell();
        let l2r = int(l2 as i64);
        let b0 = RatMatrix::from_fn(size.dim(), |i, j| {
            if j == i + 1 {
                int((l2 - i) as i64) / &l2r
            } else if i == j + 1 {
                -int(i as i64) / &l2r
            } else {
                Rational::zero()
            }
        });
        let b1 = RatMatrix::diag((0..=l2).map(|i| -(&ell - int(i as i64)) / &ell).collect());
        let a0 = RatMatrix::diag(
            (0..=l2)
                .map(|i| {
                    let ir = int(i as i64);
                    ((&ell + int(1)) * (&ir - &l2r) - (nu - int(1)) * (&ell - &ir)) / &ell
                })
                .collect(),
        );
        Ok(OperatorSpec { nu: nu.clone(), size, matrices: OperatorMatrices::Doe { b0, b1, a0 } })
    }

    /// Right action on a matrix polynomial.
    pub fn apply(&self, p: &MatPoly) -> MatPoly {
        match &self.matrices {
            OperatorMatrices::Dod { c, v } => {
                let d1 = p.derivative();
                let d2 = d1.derivative();
                let damp = int(self.size.two_ell() as i64) + &self.nu * int(2) + int(1);
                let t2 = &d2 - &d2.mul_x().mul_x();
                let t1 = &d1.right_mul(c) - &d1.mul_x().scale(&damp);
                &(&t2 + &t1) - &p.right_mul(v)
            }
            OperatorMatrices::Doe { b0, b1, a0 } => {
                let d1 = p.derivative();
                &(&d1.right_mul(b1).mul_x() + &d1.right_mul(b0)) + &p.right_mul(a0)
            }
        }
    }

    pub fn eigenvalue(&self, n: usize) -> RatMatrix {
        let nr = int(n as i64);
        match &self.matrices {
            OperatorMatrices::Dod { v, .. } => {
                let s = -(&nr * (int(self.size.two_ell() as i64) + &self.nu * int(2) + &nr));
                &RatMatrix::identity(self.size.dim()).scale(&s) - v
            }
            OperatorMatrices::Doe { b1, a0, .. } => a0 + &b1.scale(&nr),
        }
    }

    /// `p . Op == Lambda_n p`
    pub fn eigen_relation_holds(&self, p: &MatPoly, n: usize) -> bool {
        self.apply(p) == p.left_mul(&self.eigenvalue(n))
    }
}

pub fn apply_dod(p: &MatPoly, nu: &Rational, size: SizeParam) -> MatPoly {
    OperatorSpec::second_order(nu, size).apply(p)
}

pub fn apply_doe(p: &MatPoly, nu: &Rational, size: SizeParam) -> Result<MatPoly> {
    Ok(OperatorSpec::first_order(nu, size)?.apply(p))
}

/// Outcome of a proposition: the polynomial identity and the coefficient recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropCheck {
    pub poly: bool,
    pub coeff: bool,
}

impl PropCheck {
    pub fn holds(self) -> bool {
        self.poly && self.coeff
    }
}

fn f(k: i64, n: i64, nu: &Rational, size: SizeParam) -> Result<RatMatrix> {
    f_matrix_signed(k, n, nu, size)
}

/// `hatA_n, hatB_n, hatC_n` of the symmetrised recurrence.
pub fn hat_recurrence(n: usize, spec: &WeightSpec) -> (RatMatrix, RatMatrix, RatMatrix) {
    let d = symmetrizer(n, spec);
    let d_inv = d.diag_inverse().expect("symmetrizer is invertible");
    let (b, c) = recurrence_coeffs(n, spec);
    let a_hat = &d * &symmetrizer(n + 1, spec).diag_inverse().expect("symmetrizer is invertible");
    let b_hat = &(&d * &b) * &d_inv;
    let c_hat = if n == 0 {
        RatMatrix::zero(spec.dim())
    } else {
        &(&d * &c) * &symmetrizer(n - 1, spec).diag_inverse().expect("symmetrizer is invertible")
    };
    (a_hat, b_hat, c_hat)
}

pub fn prop_3tr_check(n: usize, family: &MvopFamily) -> Result<PropCheck> {
    let (_, b_hat, _) = hat_recurrence(n, family.spec());
    prop_3tr_check_with(n, family, &b_hat)
}

/// Same check with a caller-supplied `hatB_n` (used to confirm that perturbations are caught).
pub fn prop_3tr_check_with(n: usize, family: &MvopFamily, b_hat: &RatMatrix) -> Result<PropCheck> {
    let spec = family.spec();
    let (nu, size) = (&spec.nu, spec.size);
    let (a_hat, _, c_hat) = hat_recurrence(n, spec);
    let dim = spec.dim();
    let prev = if n == 0 { MatPoly::zero(dim) } else { family.hat(n - 1).clone() };
    let p = family.hat(n);
    let lhs = &(&family.hat(n + 1).commutator_right(&a_hat) + &p.right_mul(&b_hat.transpose()))
        - &p.left_mul(b_hat);
    let poly = (&lhs + &prev.commutator_right(&c_hat)).is_zero();
    let ni = n as i64;
    let mut coeff = true;
    for k in -1..=(size.two_ell() as i64 + 2) {
        let fk = f(k, ni, nu, size)?;
        let e = &(&(&f(k + 1, ni + 1, nu, size)?.commutator(&a_hat) + &(&fk * &b_hat.transpose()))
            - &(b_hat * &fk))
            + &f(k - 1, ni - 1, nu, size)?.commutator(&c_hat);
        if !e.is_zero() {
            coeff = false;
            break;
        }
    }
    Ok(PropCheck { poly, coeff })
}

fn div_nonzero(m: RatMatrix, d: Rational) -> RatMatrix {
    if m.is_zero() {
        m
    } else {
        m.scale(&d.recip())
    }
}

/// Returns the check and the degree of the polynomial identity's left side.
pub fn prop_dod_check(n: usize, family: &MvopFamily) -> Result<(PropCheck, Option<usize>)> {
    let spec = family.spec();
    let (nu, size) = (&spec.nu, spec.size);
    let (c, v) = (c_matrix(size), v_matrix(size));
    let p = family.hat(n);
    let dp = p.derivative();
    let lhs = &dp.right_mul(&c) - &dp.left_mul(&c.transpose());
    // -2[V, P] = 2(PV - VP)
    let rhs = (&p.right_mul(&v) - &p.left_mul(&v)).scale(&int(2));
    let poly = lhs == rhs;
    let base = nu + int(size.two_ell() as i64) + int(n as i64);
    let ni = n as i64;
    let mut coeff = true;
    for k in 0..ni {
        let fk = f(k, ni, nu, size)?;
        let l = &(&fk * &c) - &(&c.transpose() * &fk);
        let r = &div_nonzero(f(k + 1, ni, nu, size)?, &base - int(k + 1)).commutator(&v)
            - &div_nonzero(f(k - 1, ni, nu, size)?, &base - int(k - 1)).commutator(&v);
        if l != r {
            coeff = false;
            break;
        }
    }
    Ok((PropCheck { poly, coeff }, lhs.degree()))
}

pub fn prop_doe_check(n: usize, family: &MvopFamily) -> Result<(PropCheck, Option<usize>)> {
    let spec = family.spec();
    let (nu, size) = (&spec.nu, spec.size);
    if size.two_ell() == 0 {
        return Ok((PropCheck { poly: true, coeff: true }, None));
    }
    let OperatorMatrices::Doe { b0, b1, a0 } = OperatorSpec::first_order(nu, size)?.matrices else {
        unreachable!("first_order builds a first-order operator")
    };
    let p = family.hat(n);
    let dp = p.derivative();
    let nr = int(n as i64);
    let lhs = &(&dp.commutator_right(&b1).mul_x() + &dp.right_mul(&b0)) - &dp.left_mul(&b0.transpose());
    let m = &a0.scale(&int(2)) + &b1.scale(&nr);
    let rhs = &p.left_mul(&m) - &p.right_mul(&m);
    let poly = lhs == rhs;
    let l2 = int(size.two_ell() as i64);
    let base = nu + &l2 + &nr;
    let ni = n as i64;
    let mut coeff = true;
    for k in 0..=ni {
        let kr = int(k);
        let m1 = &b1.scale(&(int(2) - &kr + nu * int(2) + &l2 * int(2))) - &a0.scale(&int(2));
        let m2 = &b1.scale(&(int(2 * ni) - &kr)) + &a0.scale(&int(2));
        let t1 = div_nonzero(f(k - 2, ni, nu, size)?, &base - &kr + int(2)).commutator(&m1);
        let t2 = div_nonzero(f(k, ni, nu, size)?, &base - &kr).commutator(&m2);
        let fk1 = f(k - 1, ni, nu, size)?;
        let r = (&(&b0.transpose() * &fk1) - &(&fk1 * &b0)).scale(&int(2));
        if &t1 + &t2 != r {
            coeff = false;
            break;
        }
    }
    Ok((PropCheck { poly, coeff }, lhs.degree()))
}

/// One term of the six-term relation: value in units of `1/Gamma(nu+n-1)` and the
/// numerator/denominator degrees in `nu` of its rational form.
#[derive(Debug, Clone)]
struct SixTerm {
    value: Rational,
    num_deg: usize,
    den_deg: usize,
}

fn gamma_degrees(i: i64, j: i64, k: i64, l2: i64) -> Option<(usize, usize)> {
    if i < 0 || j < 0 || k < 0 || i > l2 || j > l2 || k > l2 || (i + j + k) % 2 != 0 {
        return None;
    }
    let a = (i + j - k) / 2;
    let b = l2 - (k + i + j) / 2;
    let c = l2 + 1 - (k - i + j) / 2;
    let d = l2 + 1 - (k + i - j) / 2;
    let num = 2 + (a - d).max(0) + (b - c).max(0);
    let den = (d - a).max(0) + (c - b).max(0);
    Some((num as usize, den as usize))
}

fn six_terms(nu: &Rational, n: usize, i: i64, j: i64, k: i64, size: SizeParam) -> Result<Vec<(i32, SixTerm)>> {
    let l2 = size.two_ell() as i64;
    let ni = n as i64;
    let mu = nu + int(ni);
    let l2r = int(l2);
    let ir = int(i);
    let den_common = (&mu + &ir) * (&mu + &l2r - &ir);
    // (sign, coefficient, coefficient degrees, gamma args, shift of nu+n)
    let specs: Vec<(i32, Rational, (usize, usize), (i64, i64, i64), i64)> = vec![
        (1, int(ni - k) / (nu + &l2r + int(ni - k - 1)), (0, 1), (i, j, k + 1), 0),
        (1, (int(2) * (nu + &l2r) + int(ni - k)) / (nu + &l2r + int(ni - k + 1)), (1, 1), (i, j, k - 1), 0),
        (-1, int(ni + 1) * &mu * (&mu + &l2r) / &den_common, (2, 2), (i, j, k + 1), 1),
        (-1, (nu + &ir - int(1)) * int(l2 - i + 1) / &den_common, (1, 2), (i - 1, j, k), 0),
        (-1, (&ir + int(1)) * (nu + &l2r - &ir - int(1)) / &den_common, (1, 2), (i + 1, j, k), 0),
        (
            -1,
            (&mu + &l2r) * (nu * int(2) + &l2r + int(ni - 1)) / (&den_common * (&mu + &l2r - int(1))),
            (2, 3),
            (i, j, k - 1),
            -1,
        ),
    ];
    let mut out = Vec::new();
    for (sgn, coef, (cn, cd), (gi, gj, gk), s) in specs {
        let Some((gn, gd)) = gamma_degrees(gi, gj, gk, l2) else { continue };
        let arg = &mu + int(s);
        let value = coef * gamma_coeff_signed(&arg, gi, gj, gk, size)? * gamma_ratio_shift(&mu, -1, s)?;
        out.push((sgn, SixTerm { value, num_deg: cn + gn, den_deg: cd + gd + (s + 1) as usize }));
    }
    Ok(out)
}

/// Exact evaluation of the six-term relation at one parameter value.
pub fn six_term_gamma_check(nu: &Rational, n: usize, i: usize, j: usize, k: usize, size: SizeParam) -> Result<bool> {
    let terms = six_terms(nu, n, i as i64, j as i64, k as i64, size)?;
    let total: Rational = terms
        .iter()
        .map(|(s, t)| if *s > 0 { t.value.clone() } else { -t.value.clone() })
        .fold(Rational::zero(), |a, b| a + b);
    Ok(total.is_zero())
}

/// Upper bound on the degree in `nu` of the numerator of the cleared relation.
pub fn six_term_degree_bound(n: usize, i: usize, j: usize, k: usize, size: SizeParam) -> Result<usize> {
    // degrees do not depend on the sample; evaluate at a harmless point
    let terms = six_terms(&rat(1, 3), n, i as i64, j as i64, k as i64, size)?;
    let den_total: usize = terms.iter().map(|(_, t)| t.den_deg).sum();
    Ok(terms.iter().map(|(_, t)| t.num_deg + den_total - t.den_deg).max().unwrap_or(0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SixTermCertificate {
    pub degree_bound: usize,
    pub samples: usize,
    pub holds: bool,
}

/// Evaluates the relation at `bound + 1` distinct non-integer parameters `s + 1/3`,
/// which proves it as a rational identity in `nu` for this cell.
pub fn certify_six_term(n: usize, i: usize, j: usize, k: usize, size: SizeParam) -> Result<SixTermCertificate> {
    let bound = six_term_degree_bound(n, i, j, k, size)?;
    let samples = bound + 1;
    let mut holds = true;
    for s in 0..samples {
        let nu = int(s as i64) + rat(1, 3);
        if !six_term_gamma_check(&nu, n, i, j, k, size)? {
            holds = false;
            break;
        }
    }
    Ok(SixTermCertificate { degree_bound: bound, samples, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(l2: usize, nu: Rational, n: usize) -> MvopFamily {
        MvopFamily::build(&WeightSpec::new(l2, nu).unwrap(), n)
    }

    #[test]
    fn dod_on_constant() {
        let nu = rat(5, 2);
        let size = SizeParam::new(2);
        let d0 = symmetrizer(0, &WeightSpec::new(2, nu.clone()).unwrap());
        let out = apply_dod(&MatPoly::constant(d0.clone()), &nu, size);
        assert_eq!(out, MatPoly::constant((&d0 * &v_matrix(size)).scale(&int(-1))));
    }

    #[test]
    fn b0_entries() {
        let op = OperatorSpec::first_order(&int(1), SizeParam::new(3)).unwrap();
        let OperatorMatrices::Doe { b0, .. } = op.matrices else { panic!() };
        assert_eq!(b0[(0, 1)], int(1));
        assert_eq!(b0[(1, 0)], rat(-1, 3));
        assert!(OperatorSpec::first_order(&int(1), SizeParam::new(0)).is_err());
    }

    #[test]
    fn eigen_relations_small() {
        let family = fam(2, rat(3, 2), 4);
        let d = OperatorSpec::second_order(&rat(3, 2), SizeParam::new(2));
        let e = OperatorSpec::first_order(&rat(3, 2), SizeParam::new(2)).unwrap();
        for n in 0..=4 {
            assert!(d.eigen_relation_holds(family.hat(n), n));
            assert!(d.eigen_relation_holds(family.monic(n), n));
            assert!(e.eigen_relation_holds(family.hat(n), n));
        }
    }

    #[test]
    fn propositions_examples() {
        assert!(prop_3tr_check(4, &fam(2, int(1), 5)).unwrap().holds());
        assert!(prop_dod_check(5, &fam(1, rat(3, 2), 5)).unwrap().0.holds());
        assert!(prop_doe_check(6, &fam(2, int(1), 6)).unwrap().0.holds());
        assert!(prop_3tr_check(3, &fam(0, int(2), 4)).unwrap().holds());
    }

    #[test]
    fn tampered_b_hat_fails() {
        let family = fam(2, int(1), 5);
        let (_, mut b, _) = hat_recurrence(4, family.spec());
        b[(0, 1)] += int(1);
        assert!(!prop_3tr_check_with(4, &family, &b).unwrap().holds());
    }

    #[test]
    fn six_term_example() {
        assert!(six_term_gamma_check(&rat(1, 2), 3, 1, 1, 1, SizeParam::new(2)).unwrap());
        // with i + j = k mod 2 every gamma in the relation has odd index sum
        assert_eq!(six_term_degree_bound(3, 0, 1, 1, SizeParam::new(2)).unwrap(), 0);
        assert!(six_term_gamma_check(&rat(1, 2), 3, 0, 1, 1, SizeParam::new(2)).unwrap());
        let cert = certify_six_term(2, 1, 2, 1, SizeParam::new(3)).unwrap();
        assert!(cert.holds && cert.samples == cert.degree_bound + 1);
    }
}
