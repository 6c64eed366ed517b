use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::exact::{MonoPoly, RatMatrix, Rational};

/// Square matrix polynomial; `coeffs[d]` multiplies `x^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatPoly {
    dim: usize,
    coeffs: Vec<RatMatrix>,
}

impl MatPoly {
    pub fn new(dim: usize, mut coeffs: Vec<RatMatrix>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.dim() == dim));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        MatPoly { dim, coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        MatPoly { dim, coeffs: Vec::new() }
    }

    pub fn constant(m: RatMatrix) -> Self {
        let dim = m.dim();
        Self::new(dim, vec![m])
    }

    pub fn identity(dim: usize) -> Self {
        Self::constant(RatMatrix::identity(dim))
    }

    /// `p(x) * M`
    pub fn scalar_times(p: &MonoPoly, m: &RatMatrix) -> Self {
        Self::new(m.dim(), p.coeffs().iter().map(|c| m.scale(c)).collect())
    }

    pub fn from_entries(dim: usize, mut f: impl FnMut(usize, usize) -> MonoPoly) -> Self {
        let entries: Vec<MonoPoly> =
            (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        let len = entries.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        let coeffs = (0..len)
            .map(|d| RatMatrix::from_fn(dim, |i, j| entries[i * dim + j].coeff(d)))
            .collect();
        Self::new(dim, coeffs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[RatMatrix] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> RatMatrix {
        self.coeffs.get(d).cloned().unwrap_or_else(|| RatMatrix::zero(self.dim))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn entry(&self, i: usize, j: usize) -> MonoPoly {
        MonoPoly::new(self.coeffs.iter().map(|c| c[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.dim, self.coeffs.iter().map(|c| c.transpose()).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.dim, self.coeffs.iter().map(|m| m.scale(c)).collect())
    }

    /// `M * p(x)`
    pub fn left_mul(&self, m: &RatMatrix) -> Self {
        Self::new(self.dim, self.coeffs.iter().map(|c| m * c).collect())
    }

    /// `p(x) * M`
    pub fn right_mul(&self, m: &RatMatrix) -> Self {
        Self::new(self.dim, self.coeffs.iter().map(|c| c * m).collect())
    }

    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![RatMatrix::zero(self.dim)];
        v.extend(self.coeffs.iter().cloned());
        Self::new(self.dim, v)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.dim,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c.scale(&Rational::from_integer((d as i64).into())))
                .collect(),
        )
    }

    /// `[P(x), M]`
    pub fn commutator_right(&self, m: &RatMatrix) -> Self {
        &self.right_mul(m) - &self.left_mul(m)
    }

    pub fn eval(&self, x: &Rational) -> RatMatrix {
        let mut acc = RatMatrix::zero(self.dim);
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(x) + c;
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_symmetric())
    }

    /// First `(degree, i, j)` where the two polynomials differ.
    pub fn first_difference(&self, other: &MatPoly) -> Option<(usize, usize, usize)> {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).find_map(|d| {
            self.coeff(d).first_difference(&other.coeff(d)).map(|(i, j)| (d, i, j))
        })
    }

    pub fn map_entries(&self, mut f: impl FnMut(&MonoPoly) -> MonoPoly) -> Self {
        let n = self.dim;
        let entries: Vec<MonoPoly> =
            (0..n * n).map(|k| f(&self.entry(k / n, k % n))).collect();
        Self::from_entries(n, |i, j| entries[i * n + j].clone())
    }

    pub fn leading_is(&self, m: &RatMatrix) -> bool {
        self.coeffs.last().is_some_and(|c| c == m)
    }

    pub fn is_coefficient_zero(&self, d: usize) -> bool {
        self.coeffs.get(d).is_none_or(|c| c.entries().iter().all(|v| v.is_zero()))
    }
}

impl Add for &MatPoly {
    type Output = MatPoly;
    fn add(self, rhs: &MatPoly) -> MatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        MatPoly::new(self.dim, (0..len).map(|d| &self.coeff(d) + &rhs.coeff(d)).collect())
    }
}

impl Sub for &MatPoly {
    type Output = MatPoly;
    fn sub(self, rhs: &MatPoly) -> MatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        MatPoly::new(self.dim, (0..len).map(|d| &self.coeff(d) - &rhs.coeff(d)).collect())
    }
}

impl Neg for &MatPoly {
    type Output = MatPoly;
    fn neg(self) -> MatPoly {
        MatPoly::new(self.dim, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &MatPoly {
    type Output = MatPoly;
    fn mul(self, rhs: &MatPoly) -> MatPoly {
        if self.is_zero() || rhs.is_zero() {
            return MatPoly::zero(self.dim);
        }
        let mut v = vec![RatMatrix::zero(self.dim); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, ca) in self.coeffs.iter().enumerate() {
            for (b, cb) in rhs.coeffs.iter().enumerate() {
                v[a + b] = &v[a + b] + &(ca * cb);
            }
        }
        MatPoly::new(self.dim, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn entries_roundtrip() {
        let p = MatPoly::from_entries(2, |i, j| MonoPoly::from_ints(&[i as i64, j as i64, 1]));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.entry(1, 0), MonoPoly::from_ints(&[1, 0, 1]));
        assert_eq!(p.transpose().entry(1, 0), MonoPoly::from_ints(&[0, 1, 1]));
        assert_eq!(p.derivative().entry(0, 1), MonoPoly::from_ints(&[1, 2]));
        assert!(Zero::is_zero(&p.eval(&int(0))[(0, 0)]));
        assert_eq!(p.first_difference(&p.transpose()), Some((0, 0, 1)));
    }
}
