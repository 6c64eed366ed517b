use num_traits::{Signed, Zero};

use super::poly::MonoPoly;
use super::rational::{format_rational, int, rat, Rational};
use crate::error::{Error, Result};

/// `sum_m coeffs[m] * C_m^(lambda)(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GegSeries {
    pub lambda: Rational,
    coeffs: Vec<Rational>,
}

impl GegSeries {
    pub fn new(lambda: Rational, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        GegSeries { lambda, coeffs }
    }

    pub fn zero(lambda: Rational) -> Self {
        GegSeries { lambda, coeffs: Vec::new() }
    }

    /// A single basis polynomial `c * C_m`.
    pub fn term(lambda: Rational, m: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); m + 1];
        v[m] = c;
        Self::new(lambda, v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> Rational {
        self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &GegSeries) -> Result<GegSeries> {
        same_lambda(&self.lambda, &other.lambda)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::new(self.lambda.clone(), (0..n).map(|m| self.coeff(m) + other.coeff(m)).collect()))
    }

    pub fn scale(&self, c: &Rational) -> GegSeries {
        Self::new(self.lambda.clone(), self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn to_mono(&self) -> Result<MonoPoly> {
        let deg = match self.degree() {
            None => return Ok(MonoPoly::zero()),
            Some(d) => d,
        };
        Ok(GegBasis::new(&self.lambda, deg)?.to_mono(self))
    }

    pub fn from_mono(p: &MonoPoly, lambda: &Rational) -> Result<GegSeries> {
        let deg = p.degree().unwrap_or(0);
        Ok(GegBasis::new(lambda, deg)?.from_mono(p))
    }
}

pub(crate) fn same_lambda(a: &Rational, b: &Rational) -> Result<()> {
    if a != b {
        return Err(Error::ParameterMismatch(format_rational(a), format_rational(b)));
    }
    Ok(())
}

pub(crate) fn check_lambda(lambda: &Rational) -> Result<()> {
    if lambda.is_zero() {
        return Err(Error::Unsupported("Gegenbauer parameter 0 needs a different normalisation".into()));
    }
    if *lambda <= rat(-1, 2) {
        return Err(Error::Unsupported(format!(
            "Gegenbauer parameter {} must exceed -1/2",
            format_rational(lambda)
        )));
    }
    Ok(())
}

/// Monomial expansions of `C_0^(lambda) .. C_deg^(lambda)` built from the three-term recurrence.
#[derive(Debug, Clone)]
pub struct GegBasis {
    lambda: Rational,
    polys: Vec<MonoPoly>,
}

impl GegBasis {
    pub fn new(lambda: &Rational, deg: usize) -> Result<Self> {
        check_lambda(lambda)?;
        let mut polys = Vec::with_capacity(deg + 1);
        polys.push(MonoPoly::one());
        if deg >= 1 {
            polys.push(MonoPoly::monomial(lambda * int(2), 1));
        }
        for n in 1..deg {
            let a = (int(n as i64) + lambda) * int(2) / int(n as i64 + 1);
            let b = (int(n as i64 - 1) + lambda * int(2)) / int(n as i64 + 1);
            let next = &polys[n].mul_x().scale(&a) - &polys[n - 1].scale(&b);
            polys.push(next);
        }
        Ok(GegBasis { lambda: lambda.clone(), polys })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn poly(&self, m: usize) -> &MonoPoly {
        &self.polys[m]
    }

    pub fn to_mono(&self, s: &GegSeries) -> MonoPoly {
        assert_eq!(s.lambda, self.lambda, "basis parameter mismatch");
        let mut acc = vec![Rational::zero(); s.coeffs.len()];
        for (m, c) in s.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (d, b) in self.polys[m].coeffs().iter().enumerate() {
                acc[d] += c * b;
            }
        }
        MonoPoly::new(acc)
    }

    /// Triangular elimination from the top degree down.
    pub fn from_mono(&self, p: &MonoPoly) -> GegSeries {
        let deg = match p.degree() {
            None => return GegSeries::zero(self.lambda.clone()),
            Some(d) => d,
        };
        assert!(deg <= self.max_degree(), "basis too short for degree {deg}");
        let mut rest: Vec<Rational> = p.coeffs().to_vec();
        let mut out = vec![Rational::zero(); deg + 1];
        for m in (0..=deg).rev() {
            if rest[m].is_zero() {
                continue;
            }
            let basis = self.polys[m].coeffs();
            let c = &rest[m] / &basis[m];
            for (d, b) in basis.iter().enumerate() {
                if !b.is_zero() {
                    rest[d] -= &c * b;
                }
            }
            out[m] = c;
        }
        GegSeries::new(self.lambda.clone(), out)
    }
}

/// Leading coefficient `2^n (lambda)_n / n!` of `C_n^(lambda)`.
pub fn leading_coeff(n: usize, lambda: &Rational) -> Rational {
    use super::rational::{factorial, pochhammer, pow2};
    pow2(n as i64) * pochhammer(lambda, n) / factorial(n)
}

/// Rejects parameters that are not strictly positive.
pub(crate) fn check_positive(name: &str, v: &Rational) -> Result<()> {
    if !v.is_positive() {
        return Err(Error::Unsupported(format!("{name} = {} must be positive", format_rational(v))));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversion_examples() {
        let one = GegSeries::from_mono(&MonoPoly::one(), &rat(3, 2)).unwrap();
        assert_eq!(one.coeffs(), &[int(1)]);
        let x = GegSeries::from_mono(&MonoPoly::x(), &int(2)).unwrap();
        assert_eq!(x.coeffs(), &[int(0), rat(1, 4)]);
        // x^2 = (C_2^(1) + C_0)/4 since C_2^(1) = 4x^2 - 1
        let x2 = GegSeries::from_mono(&MonoPoly::from_ints(&[0, 0, 1]), &int(1)).unwrap();
        assert_eq!(x2.coeffs(), &[rat(1, 4), int(0), rat(1, 4)]);
    }

    #[test]
    fn lambda_zero_rejected() {
        assert!(GegBasis::new(&int(0), 3).is_err());
        assert!(GegBasis::new(&rat(-1, 2), 3).is_err());
        assert!(GegBasis::new(&rat(-1, 3), 3).is_ok());
    }

    #[test]
    fn leading_coefficients_match_basis() {
        let b = GegBasis::new(&rat(7, 3), 9).unwrap();
        for n in 0..=9 {
            assert_eq!(b.poly(n).leading(), leading_coeff(n, &rat(7, 3)));
        }
    }
}
