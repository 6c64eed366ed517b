use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{format_rational, int, Rational};

/// Univariate polynomial in the monomial basis; `coeffs[d]` multiplies `x^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MonoPoly {
    coeffs: Vec<Rational>,
}

impl MonoPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        MonoPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| int(v)).collect())
    }

    pub fn zero() -> Self {
        MonoPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `c x^d`
    pub fn monomial(c: Rational, d: usize) -> Self {
        let mut v = vec![Rational::zero(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MonoPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul_x(&self) -> Self {
        self.shift(1)
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        MonoPoly { coeffs: v }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c * int(d as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        MonoPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| if d % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// `p(q(x))` by Horner.
    pub fn compose(&self, q: &MonoPoly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `(1 - x^2)^k`
    pub fn one_minus_x2_pow(k: usize) -> Self {
        Self::from_ints(&[1, 0, -1]).pow(k)
    }
}

impl fmt::Display for MonoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})*x", format_rational(c))?,
                _ => write!(f, "({})*x^{d}", format_rational(c))?,
            }
        }
        Ok(())
    }
}

impl Add for &MonoPoly {
    type Output = MonoPoly;
    fn add(self, rhs: &MonoPoly) -> MonoPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        MonoPoly::new((0..n).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl Sub for &MonoPoly {
    type Output = MonoPoly;
    fn sub(self, rhs: &MonoPoly) -> MonoPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        MonoPoly::new((0..n).map(|d| self.coeff(d) - rhs.coeff(d)).collect())
    }
}

impl Neg for &MonoPoly {
    type Output = MonoPoly;
    fn neg(self) -> MonoPoly {
        MonoPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &MonoPoly {
    type Output = MonoPoly;
    fn mul(self, rhs: &MonoPoly) -> MonoPoly {
        if self.is_zero() || rhs.is_zero() {
            return MonoPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        MonoPoly::new(v)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MonoPoly {
            type Output = MonoPoly;
            fn $m(self, rhs: MonoPoly) -> MonoPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
