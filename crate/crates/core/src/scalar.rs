//! Scalar Gegenbauer polynomials and their exact algebra.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::exact::geg::{check_lambda, same_lambda};
use crate::exact::{factorial, format_rational, int, pochhammer, rat, GegBasis, GegSeries, MonoPoly, Rational};

/// `coeff * kappa(nu)` with `kappa(nu) = pi 2^(1-2nu) Gamma(2nu) / Gamma(nu)^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KappaValue {
    pub coeff: Rational,
    pub nu: Rational,
}

impl KappaValue {
    pub fn zero(nu: Rational) -> Self {
        KappaValue { coeff: Rational::zero(), nu }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

impl std::fmt::Display for KappaValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}*kappa({})", format_rational(&self.coeff), format_rational(&self.nu))
    }
}

pub fn gegenbauer(n: usize, lambda: &Rational) -> Result<MonoPoly> {
    Ok(GegBasis::new(lambda, n)?.poly(n).clone())
}

/// Terminating 2F1 form `(2l)_n/n! 2F1(-n, 2l+n; l+1/2; (1-x)/2)`.
pub fn hypergeometric_oracle(n: usize, lambda: &Rational) -> Result<MonoPoly> {
    check_lambda(lambda)?;
    let two_l = lambda * int(2);
    let half_shift = lambda + rat(1, 2);
    let u = MonoPoly::new(vec![rat(1, 2), rat(-1, 2)]);
    let mut acc = MonoPoly::zero();
    let mut u_pow = MonoPoly::one();
    for k in 0..=n {
        let c = pochhammer(&int(-(n as i64)), k) * pochhammer(&(&two_l + int(n as i64)), k)
            / (factorial(k) * pochhammer(&half_shift, k));
        acc = &acc + &u_pow.scale(&c);
        u_pow = &u_pow * &u;
    }
    Ok(acc.scale(&(pochhammer(&two_l, n) / factorial(n))))
}

/// Coefficients `c_s` with `C_m^(nu) = sum_s c_s C_{m-2s}^(nu+N)`, `s <= min(m/2, N)`.
pub fn connect_integer(m: usize, nu: &Rational, big_n: usize) -> Vec<Rational> {
    let lam = nu + int(big_n as i64);
    (0..=(m / 2).min(big_n))
        .map(|s| {
            (&lam + int((m - 2 * s) as i64)) * pochhammer(nu, m - s) / pochhammer(&lam, m - s + 1)
                * pochhammer(&int(-(big_n as i64)), s)
                / factorial(s)
        })
        .collect()
}

/// The same connection as a series at parameter `nu + N`.
pub fn connect_integer_series(m: usize, nu: &Rational, big_n: usize) -> GegSeries {
    let lam = nu + int(big_n as i64);
    let mut v = vec![Rational::zero(); m + 1];
    for (s, c) in connect_integer(m, nu, big_n).into_iter().enumerate() {
        v[m - 2 * s] = c;
    }
    GegSeries::new(lam, v)
}

/// Coefficient of `C_{k+l-2p}` in `C_k C_l`.
pub fn linearise_coeff(k: usize, l: usize, p: usize, lambda: &Rational) -> Rational {
    let s = int((k + l) as i64);
    let two = lambda * int(2);
    (&s + lambda - int(2 * p as i64)) / (&s + lambda - int(p as i64))
        * pochhammer(lambda, p)
        * pochhammer(lambda, k - p)
        * pochhammer(lambda, l - p)
        * pochhammer(&two, k + l - p)
        / (factorial(p) * factorial(k - p) * factorial(l - p) * pochhammer(lambda, k + l - p))
        * factorial(k + l - 2 * p)
        / pochhammer(&two, k + l - 2 * p)
}

pub fn linearise(k: usize, l: usize, lambda: &Rational) -> GegSeries {
    let mut v = vec![Rational::zero(); k + l + 1];
    for p in 0..=k.min(l) {
        v[k + l - 2 * p] = linearise_coeff(k, l, p, lambda);
    }
    GegSeries::new(lambda.clone(), v)
}

/// Product of two series at the same parameter, via linearisation.
pub fn geg_product(a: &GegSeries, b: &GegSeries) -> Result<GegSeries> {
    same_lambda(&a.lambda, &b.lambda)?;
    let (da, db) = match (a.degree(), b.degree()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Ok(GegSeries::zero(a.lambda.clone())),
    };
    let mut v = vec![Rational::zero(); da + db + 1];
    for (k, ca) in a.coeffs().iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (l, cb) in b.coeffs().iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            let w = ca * cb;
            for p in 0..=k.min(l) {
                v[k + l - 2 * p] += &w * linearise_coeff(k, l, p, &a.lambda);
            }
        }
    }
    Ok(GegSeries::new(a.lambda.clone(), v))
}

/// Term-wise derivative `d/dx C_n^(l) = 2l C_{n-1}^(l+1)`.
pub fn diff_geg(s: &GegSeries) -> GegSeries {
    let two_l = &s.lambda * int(2);
    let v = s.coeffs().iter().skip(1).map(|c| c * &two_l).collect();
    GegSeries::new(&s.lambda + Rational::one(), v)
}

/// `<C_n, C_n>` in units of `kappa(l)`: `(2l)_n / ((n+l) n!)`.
pub fn norm_coeff(n: usize, lambda: &Rational) -> Rational {
    pochhammer(&(lambda * int(2)), n) / ((lambda + int(n as i64)) * factorial(n))
}

pub fn inner_product(s1: &GegSeries, s2: &GegSeries) -> Result<KappaValue> {
    same_lambda(&s1.lambda, &s2.lambda)?;
    let lam = &s1.lambda;
    let mut acc = Rational::zero();
    for (n, (a, b)) in s1.coeffs().iter().zip(s2.coeffs()).enumerate() {
        if !a.is_zero() && !b.is_zero() {
            acc += a * b * norm_coeff(n, lam);
        }
    }
    Ok(KappaValue { coeff: acc, nu: lam.clone() })
}

/// `C_n^(l)(1) = (2l)_n / n!`
pub fn value_at_one(n: usize, lambda: &Rational) -> Rational {
    pochhammer(&(lambda * int(2)), n) / factorial(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer(0, &rat(3, 2)).unwrap(), MonoPoly::one());
        assert_eq!(gegenbauer(1, &int(2)).unwrap(), MonoPoly::from_ints(&[0, 4]));
        assert_eq!(gegenbauer(2, &int(1)).unwrap(), MonoPoly::from_ints(&[-1, 0, 4]));
        assert!(matches!(gegenbauer(2, &int(0)), Err(Error::Unsupported(_))));
        assert!(matches!(gegenbauer(2, &int(-1)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(hypergeometric_oracle(0, &int(1)).unwrap(), MonoPoly::one());
        for (n, lam) in [(3, rat(1, 2)), (5, rat(7, 3))] {
            assert_eq!(hypergeometric_oracle(n, &lam).unwrap(), gegenbauer(n, &lam).unwrap());
        }
    }

    #[test]
    fn connection_examples() {
        assert_eq!(connect_integer(7, &rat(3, 2), 0), vec![int(1)]);
        assert_eq!(connect_integer(1, &rat(3, 2), 4).len(), 1);
        // C_2^(1) = 4x^2-1 against C_2^(2) = 12x^2-2 and C_0
        let s = connect_integer_series(2, &int(1), 1);
        assert_eq!(s.to_mono().unwrap(), gegenbauer(2, &int(1)).unwrap());
        assert_eq!(s.coeffs(), &[rat(-1, 3), int(0), rat(1, 3)]);
    }

    #[test]
    fn linearisation_examples() {
        let s = linearise(0, 4, &rat(5, 2));
        assert_eq!(s.coeffs().last(), Some(&int(1)));
        assert_eq!(s.degree(), Some(4));
        assert_eq!(linearise(1, 1, &int(1)).coeffs(), &[int(1), int(0), int(1)]);
        let lam = rat(3, 2);
        let prod = &gegenbauer(2, &lam).unwrap() * &gegenbauer(3, &lam).unwrap();
        assert_eq!(linearise(2, 3, &lam), GegSeries::from_mono(&prod, &lam).unwrap());
    }

    #[test]
    fn derivative_examples() {
        let lam = rat(4, 3);
        let d0 = diff_geg(&GegSeries::term(lam.clone(), 0, int(1)));
        assert!(d0.is_zero());
        assert_eq!(d0.lambda, rat(7, 3));
        let d1 = diff_geg(&GegSeries::term(lam.clone(), 1, int(1)));
        assert_eq!(d1.coeffs(), &[rat(8, 3)]);
    }

    #[test]
    fn inner_product_examples() {
        let lam = rat(5, 4);
        let c0 = GegSeries::term(lam.clone(), 0, int(1));
        let c1 = GegSeries::term(lam.clone(), 1, int(1));
        assert!(inner_product(&c0, &c1).unwrap().is_zero());
        assert_eq!(inner_product(&c0, &c0).unwrap().coeff, rat(4, 5));
        let c2 = GegSeries::term(int(1), 2, int(1));
        assert_eq!(inner_product(&c2, &c2).unwrap(), KappaValue { coeff: int(1), nu: int(1) });
        assert!(matches!(
            inner_product(&c0, &c2),
            Err(Error::ParameterMismatch(_, _))
        ));
    }
}
