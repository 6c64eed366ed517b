use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::Rational;

/// Dense square matrix of rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zero(n: usize) -> Self {
        RatMatrix { n, data: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(vec![Rational::one(); n])
    }

    pub fn diag(d: Vec<Rational>) -> Self {
        let n = d.len();
        let mut m = Self::zero(n);
        for (i, v) in d.into_iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        RatMatrix { n, data }
    }

    /// Antidiagonal permutation `J`.
    pub fn antidiag(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i + j + 1 == n { Rational::one() } else { Rational::zero() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.n).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatMatrix { n: self.n, data: self.data.iter().map(|v| v * c).collect() }
    }

    /// Inverse of a diagonal matrix; `None` if not diagonal or singular.
    pub fn diag_inverse(&self) -> Option<Self> {
        if !self.is_diagonal() || self.diagonal().iter().any(|v| v.is_zero()) {
            return None;
        }
        Some(Self::diag(self.diagonal().iter().map(|v| v.recip()).collect()))
    }

    /// `[A, B] = AB - BA`
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// First index pair where the two matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| self[(i, j)] != other[(i, j)])
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        RatMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        RatMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix { n: self.n, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut out = RatMatrix::zero(n);
        for i in 0..n {
            for p in 0..n {
                let a = &self[(i, p)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(p, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn basic_ops() {
        let a = RatMatrix::from_fn(2, |i, j| int((i * 2 + j) as i64));
        let i2 = RatMatrix::identity(2);
        assert_eq!(&a * &i2, a);
        assert_eq!(a.transpose()[(0, 1)], int(2));
        let j = RatMatrix::antidiag(3);
        assert_eq!(&j * &j, RatMatrix::identity(3));
        assert!(a.commutator(&i2).is_zero());
        let d = RatMatrix::diag(vec![int(2), int(4)]);
        assert_eq!(&d * &d.diag_inverse().unwrap(), i2);
        assert_eq!(a.first_difference(&a.transpose()), Some((0, 1)));
    }
}
