//! Generating functions of the renormalised polynomials `tildeP_n`.
//!
//! `tildeF_{k,n}` rescales `F_{k,n}` by `N(mu) 2^n Gamma(mu) / (n! Gamma(nu+2l))` with `mu = nu+n`
//! and `N(mu) = (mu)_{2l} (mu+1)_{max(2l-1,0)}`, which makes every entry a polynomial in
//! `lambda = nu + 2l + n - k` with coefficients free of `nu`.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::connection::gamma_coeff;
use crate::error::{Error, Result};
use crate::exact::{int, pochhammer, GegBasis, MonoPoly, RatMatrix, Rational, SizeParam};
use crate::matpoly::MatPoly;

/// `N(mu)`
pub fn normaliser(mu: &Rational, size: SizeParam) -> Rational {
    let l2 = size.two_ell();
    pochhammer(mu, l2) * pochhammer(&(mu + int(1)), l2.saturating_sub(1))
}

pub fn tilde_f(k: usize, n: usize, nu: &Rational, size: SizeParam) -> Result<RatMatrix> {
    let dim = size.dim();
    if k > size.two_ell() {
        return Ok(RatMatrix::zero(dim));
    }
    let mu = nu + int(n as i64);
    let norm = normaliser(&mu, size);
    let mut m = RatMatrix::zero(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = &norm * gamma_coeff(&mu, i, j, k, size)?;
        }
    }
    Ok(m)
}

/// Degree asserted for the entries of `tildeF` as polynomials in `lambda`.
pub fn claimed_degree(size: SizeParam) -> usize {
    size.floor_ell()
}

/// Degree the entries actually attain under `N(mu)`.
pub fn certified_degree(size: SizeParam) -> usize {
    size.two_ell().saturating_sub(1)
}

/// Lagrange interpolation through distinct nodes.
pub fn interpolate(points: &[(Rational, Rational)]) -> MonoPoly {
    let mut out = MonoPoly::zero();
    for (a, (xa, ya)) in points.iter().enumerate() {
        if ya.is_zero() {
            continue;
        }
        let mut basis = MonoPoly::constant(ya.clone());
        for (b, (xb, _)) in points.iter().enumerate() {
            if a != b {
                let lin = MonoPoly::new(vec![-xb.clone(), Rational::one()]);
                basis = (&basis * &lin).scale(&(xa - xb).recip());
            }
        }
        out = &out + &basis;
    }
    out
}

/// Entry-wise polynomials in `lambda = nu + 2l + n - k` from `degree + 1` consecutive `n >= k`,
/// checked at three further `n`.
pub fn poly_in_lambda(k: usize, nu: &Rational, size: SizeParam, degree: usize) -> Result<Vec<Vec<MonoPoly>>> {
    let dim = size.dim();
    let lam = |n: usize| nu + int((size.two_ell() + n - k) as i64);
    let table: Vec<RatMatrix> = (k..=k + degree + 3).map(|n| tilde_f(k, n, nu, size)).collect::<Result<_>>()?;
    let mut out = vec![vec![MonoPoly::zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let pts: Vec<_> = (0..=degree).map(|s| (lam(k + s), table[s][(i, j)].clone())).collect();
            let p = interpolate(&pts);
            for s in degree + 1..=degree + 3 {
                if p.eval(&lam(k + s)) != table[s][(i, j)] {
                    return Err(Error::InterpolationMismatch { i, j, n: k + s });
                }
            }
            out[i][j] = p;
        }
    }
    Ok(out)
}

/// `tildeP_n = sum_k tildeF_{k,n} C^{(nu+2l)}_{n-k}` for `n = 0..=order`.
pub fn series_coefficients(nu: &Rational, size: SizeParam, order: usize) -> Result<Vec<MatPoly>> {
    let lambda = nu + int(size.two_ell() as i64);
    let basis = GegBasis::new(&lambda, order)?;
    (0..=order)
        .map(|n| {
            let mut acc = MatPoly::zero(size.dim());
            for k in 0..=n.min(size.two_ell()) {
                acc = &acc + &MatPoly::scalar_times(basis.poly(n - k), &tilde_f(k, n, nu, size)?);
            }
            Ok(acc)
        })
        .collect()
}

/// Polynomial in `(t, x, nu)`, stored `[t][x][nu]` with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriPoly {
    coeffs: Vec<Vec<Vec<Rational>>>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn term(c: Rational, t: usize, x: usize, v: usize) -> Self {
        let mut p = TriPoly::zero();
        p.add_term(c, t, x, v);
        p
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0, 0)
    }

    pub fn from_terms(terms: &[(i64, usize, usize, usize)]) -> Self {
        let mut p = TriPoly::zero();
        for &(c, t, x, v) in terms {
            p.add_term(int(c), t, x, v);
        }
        p
    }

    fn add_term(&mut self, c: Rational, t: usize, x: usize, v: usize) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.len() <= t {
            self.coeffs.resize(t + 1, Vec::new());
        }
        let row = &mut self.coeffs[t];
        if row.len() <= x {
            row.resize(x + 1, Vec::new());
        }
        let cell = &mut row[x];
        if cell.len() <= v {
            cell.resize(v + 1, Rational::zero());
        }
        cell[v] += c;
        self.trim();
    }

    fn trim(&mut self) {
        for row in &mut self.coeffs {
            for cell in row.iter_mut() {
                while cell.last().is_some_and(|c| c.is_zero()) {
                    cell.pop();
                }
            }
            while row.last().is_some_and(|c| c.is_empty()) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(|r| r.is_empty()) {
            self.coeffs.pop();
        }
    }

    pub fn tensor(&self) -> &[Vec<Vec<Rational>>] {
        &self.coeffs
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.coeffs.iter().enumerate().flat_map(|(t, row)| {
            row.iter().enumerate().flat_map(move |(x, cell)| {
                cell.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(v, c)| (t, x, v, c))
            })
        })
    }

    pub fn coeff(&self, t: usize, x: usize, v: usize) -> Rational {
        self.coeffs
            .get(t)
            .and_then(|r| r.get(x))
            .and_then(|c| c.get(v))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn t_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_integral(&self) -> bool {
        self.terms().all(|(_, _, _, c)| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = TriPoly::zero();
        for (t, x, v, a) in self.terms() {
            out.add_term(a * c, t, x, v);
        }
        out
    }

    pub fn mul_t(&self, k: usize) -> Self {
        let mut out = TriPoly::zero();
        for (t, x, v, a) in self.terms() {
            out.add_term(a.clone(), t + k, x, v);
        }
        out
    }

    pub fn deriv_t(&self) -> Self {
        let mut out = TriPoly::zero();
        for (t, x, v, a) in self.terms() {
            if t > 0 {
                out.add_term(a * int(t as i64), t - 1, x, v);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(TriPoly::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Substitutes a value for `nu`; result is indexed by the power of `t`.
    pub fn eval_nu(&self, nu: &Rational) -> Vec<MonoPoly> {
        self.coeffs
            .iter()
            .map(|row| {
                MonoPoly::new(
                    row.iter()
                        .map(|cell| cell.iter().rev().fold(Rational::zero(), |acc, c| acc * nu + c))
                        .collect(),
                )
            })
            .collect()
    }
}

impl std::ops::Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, o: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (t, x, v, a) in o.terms() {
            out.add_term(a.clone(), t, x, v);
        }
        out
    }
}

impl std::ops::Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, o: &TriPoly) -> TriPoly {
        self + &o.scale(&int(-1))
    }
}

impl std::ops::Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, o: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for (t1, x1, v1, a) in self.terms() {
            for (t2, x2, v2, b) in o.terms() {
                out.add_term(a * b, t1 + t2, x1 + x2, v1 + v2);
            }
        }
        out
    }
}

fn monomial_str(name: &str, e: usize) -> Option<String> {
    match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, x, v, c) in self.terms() {
            let vars: Vec<String> =
                [monomial_str("nu", v), monomial_str("x", x), monomial_str("t", t)].into_iter().flatten().collect();
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = if vars.is_empty() {
                crate::exact::format_rational(&mag)
            } else if mag.is_one() {
                vars.join("*")
            } else {
                format!("{}*{}", crate::exact::format_rational(&mag), vars.join("*"))
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// `Q = 1 - 2xt + t^2`
pub fn q_poly() -> TriPoly {
    TriPoly::from_terms(&[(1, 0, 0, 0), (-2, 1, 1, 0), (1, 2, 0, 0)])
}

/// Numerators `N_j` with `sum_n (L+n)^j C^{(L)}_n t^n = N_j / Q^{L+j}`, `L = nu + 2l`.
pub fn scalar_numerators(size: SizeParam, j_max: usize) -> Vec<TriPoly> {
    let big_l = TriPoly::from_terms(&[(1, 0, 0, 1), (size.two_ell() as i64, 0, 0, 0)]);
    let q = q_poly();
    let dq = q.deriv_t();
    let mut out = vec![TriPoly::constant(Rational::one())];
    for j in 0..j_max {
        let nj = &out[j];
        let a = &(&big_l * nj) * &q;
        let b = &nj.deriv_t().mul_t(1) * &q;
        let shift = &big_l + &TriPoly::constant(int(j as i64));
        let c = &(&(&shift * nj) * &dq).mul_t(1);
        out.push(&(&a + &b) - c);
    }
    out
}

/// `M(x;t) = numerator / Q^{nu + 2l + degree}`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub size: SizeParam,
    pub degree: usize,
    pub numerator: Vec<Vec<TriPoly>>,
    pub verified_order: usize,
}

impl ClosedForm {
    /// Integer part of the denominator exponent beyond `nu`.
    pub fn denominator_offset(&self) -> usize {
        self.size.two_ell() + self.degree
    }

    pub fn is_integral(&self) -> bool {
        self.numerator.iter().flatten().all(TriPoly::is_integral)
    }

    /// Taylor coefficients of `M` at a fixed `nu` for `t^0..=t^order`.
    pub fn taylor(&self, nu: &Rational, order: usize) -> Result<Vec<MatPoly>> {
        let dim = self.size.dim();
        let basis = GegBasis::new(&(nu + int(self.denominator_offset() as i64)), order)?;
        let entries: Vec<Vec<MonoPoly>> = self
            .numerator
            .par_iter()
            .flatten()
            .map(|num| {
                let by_t = num.eval_nu(nu);
                (0..=order)
                    .map(|n| {
                        let mut acc = MonoPoly::zero();
                        for (a, c) in by_t.iter().enumerate().take(n + 1) {
                            acc = &acc + &(c * basis.poly(n - a));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok((0..=order).map(|n| MatPoly::from_entries(dim, |i, j| entries[i * dim + j][n].clone())).collect())
    }
}

pub fn default_verify_order(size: SizeParam) -> usize {
    (2 * size.two_ell() + 6).max(12)
}

/// Assembles `sum_k t^k sum_j c_{k,j} N_j Q^{d-j}` at the certified degree and series-checks it.
pub fn closed_form(nu: &Rational, size: SizeParam) -> Result<ClosedForm> {
    closed_form_with(nu, size, certified_degree(size), default_verify_order(size))
}

pub fn closed_form_with(nu: &Rational, size: SizeParam, degree: usize, order: usize) -> Result<ClosedForm> {
    let dim = size.dim();
    let lam_polys: Vec<Vec<Vec<MonoPoly>>> =
        (0..=size.two_ell()).map(|k| poly_in_lambda(k, nu, size, degree)).collect::<Result<_>>()?;
    let nj = scalar_numerators(size, degree);
    let q = q_poly();
    let q_pows: Vec<TriPoly> = (0..=degree).map(|e| q.pow(e)).collect();
    let numerator: Vec<TriPoly> = (0..dim * dim)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / dim, idx % dim);
            let mut acc = TriPoly::zero();
            for (k, polys) in lam_polys.iter().enumerate() {
                for (jj, c) in polys[i][j].coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        acc = &acc + &(&nj[jj] * &q_pows[degree - jj]).scale(c).mul_t(k);
                    }
                }
            }
            acc
        })
        .collect();
    let form = ClosedForm {
        size,
        degree,
        numerator: numerator.chunks(dim).map(|r| r.to_vec()).collect(),
        verified_order: order,
    };
    let lhs = form.taylor(nu, order)?;
    let rhs = series_coefficients(nu, size, order)?;
    for (n, (a, b)) in lhs.iter().zip(&rhs).enumerate() {
        if let Some((_, i, j)) = a.first_difference(b) {
            return Err(Error::SeriesMismatch { order: n, i, j });
        }
    }
    Ok(form)
}
