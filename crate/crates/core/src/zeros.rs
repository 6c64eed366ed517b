//! Floating-point zero surveys of single entries of `hatP_n`.
//!
//! Entry polynomials are built exactly, made monic, rounded to `f64` once, and reduced by
//! parity (`y = x^2`) before the Aberth-Ehrlich iteration.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::connection::f_matrix;
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, int, pochhammer, rat, GegBasis, MonoPoly, RatMatrix, Rational, SizeParam};

pub const TAU: f64 = 1e-8;
pub const RESIDUAL_BOUND: f64 = 1e-9;
pub const DEGREE_CAP: usize = 200;
const SNAP: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexRoot {
    pub re: f64,
    pub im: f64,
    /// `|p(z)| / sum |a_k| |z|^k`
    pub residual: f64,
}

impl ComplexRoot {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Gegenbauer coefficients `F_{k,n}(i,j)` of one entry, indexed by `k`.
pub fn entry_geg_coeffs(n: usize, nu: &Rational, size: SizeParam, i: usize, j: usize) -> Result<Vec<Rational>> {
    if i > size.two_ell() || j > size.two_ell() {
        return Err(Error::Index(format!("entry ({i},{j}) for 2l = {}", size.two_ell())));
    }
    (0..=n.min(size.two_ell())).map(|k| Ok(f_matrix(k, n, nu, size)?[(i, j)].clone())).collect()
}

pub fn entry_poly(n: usize, nu: &Rational, size: SizeParam, i: usize, j: usize) -> Result<MonoPoly> {
    let coeffs = entry_geg_coeffs(n, nu, size, i, j)?;
    let basis = GegBasis::new(&(nu + int(size.two_ell() as i64)), n)?;
    Ok(combine(&basis, n, &coeffs))
}

/// `sum_k c_k C_{n-k}` over a basis of degree at least `n`.
fn combine(basis: &GegBasis, n: usize, coeffs: &[Rational]) -> MonoPoly {
    let mut acc = MonoPoly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &basis.poly(n - k).scale(c);
        }
    }
    acc
}

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    pub seed: u64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { seed: 0x5eed, max_iter: 1000 }
    }
}

fn horner(a: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    let mut scale = 0.0;
    let r = z.norm();
    for c in a.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        scale = scale * r + c.abs();
    }
    (p, dp, scale)
}

fn residual(a: &[f64], z: Complex64) -> f64 {
    let (p, _, s) = horner(a, z);
    if s == 0.0 {
        0.0
    } else {
        p.norm() / s
    }
}

fn aberth(a: &[f64], phase: f64, max_iter: usize) -> (Vec<Complex64>, bool) {
    let n = a.len() - 1;
    let r = (0..n).map(|k| a[k].abs().powf(1.0 / (n - k) as f64)).fold(0.0f64, f64::max).max(1e-3);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64 + phase)).collect();
    let eps = 4.0 * f64::EPSILON * n as f64;
    for _ in 0..max_iter {
        let mut done = true;
        for k in 0..n {
            let (p, dp, s) = horner(a, z[k]);
            if p.norm() <= eps * s {
                continue;
            }
            done = false;
            let w = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            z[k] -= w / (Complex64::new(1.0, 0.0) - w * sum);
        }
        if done {
            return (z, true);
        }
    }
    (z, false)
}

fn polish(a: &[f64], z: Complex64) -> Complex64 {
    let mut best = z;
    let mut best_r = residual(a, z);
    for _ in 0..4 {
        let (p, dp, _) = horner(a, best);
        if dp.norm() == 0.0 {
            break;
        }
        let cand = best - p / dp;
        let r = residual(a, cand);
        if r < best_r {
            best = cand;
            best_r = r;
        } else {
            break;
        }
    }
    best
}

/// Snaps near-real roots onto the axis and symmetrises conjugate pairs of a real polynomial.
fn pair_conjugates(z: &mut [Complex64]) {
    for w in z.iter_mut() {
        if w.im.abs() <= SNAP * w.norm().max(1.0) {
            w.im = 0.0;
        }
    }
    let mut used = vec![false; z.len()];
    for k in 0..z.len() {
        if used[k] || z[k].im <= 0.0 {
            continue;
        }
        let target = z[k].conj();
        let partner = (0..z.len())
            .filter(|&j| !used[j] && j != k && z[j].im < 0.0)
            .min_by(|&a, &b| (z[a] - target).norm().total_cmp(&(z[b] - target).norm()));
        if let Some(j) = partner {
            if (z[j] - target).norm() <= RESIDUAL_BOUND * z[k].norm().max(1.0) {
                let m = (z[k] + z[j].conj()) / 2.0;
                z[k] = m;
                z[j] = m.conj();
                used[k] = true;
                used[j] = true;
            }
        }
    }
}

fn to_f64_monic(p: &MonoPoly) -> Vec<f64> {
    let lead = p.leading();
    p.coeffs().iter().map(|c| (c / &lead).to_f64().unwrap_or(f64::NAN)).collect()
}

pub fn find_roots(p: &MonoPoly) -> Result<Vec<ComplexRoot>> {
    find_roots_with(p, &RootOptions::default())
}

pub fn find_roots_with(p: &MonoPoly, opts: &RootOptions) -> Result<Vec<ComplexRoot>> {
    let deg = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::DegenerateInput("root finding needs degree >= 1".into())),
    };
    if deg > DEGREE_CAP {
        return Err(Error::DegreeCap(deg, DEGREE_CAP));
    }
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let q = MonoPoly::new(p.coeffs()[zeros..].to_vec());
    let full = to_f64_monic(p);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let phase: f64 = rng.gen_range(0.0..2.0 * PI);

    let even = q.coeffs().iter().skip(1).step_by(2).all(|c| c.is_zero());
    let mut roots: Vec<Complex64> = Vec::with_capacity(deg);
    if q.degree().unwrap_or(0) > 0 {
        let (work, reduced) = if even {
            (MonoPoly::new(q.coeffs().iter().step_by(2).cloned().collect()), true)
        } else {
            (q.clone(), false)
        };
        let a = to_f64_monic(&work);
        let (mut z, converged) = aberth(&a, phase, opts.max_iter);
        for w in z.iter_mut() {
            *w = polish(&a, *w);
        }
        pair_conjugates(&mut z);
        if reduced {
            for y in z {
                let s = if y.im == 0.0 && y.re >= 0.0 {
                    Complex64::new(y.re.sqrt(), 0.0)
                } else if y.im == 0.0 {
                    Complex64::new(0.0, (-y.re).sqrt())
                } else {
                    y.sqrt()
                };
                roots.push(s);
                roots.push(-s);
            }
        } else {
            roots.extend(z);
        }
        let bad = roots.iter().any(|z| residual(&full, *z) >= RESIDUAL_BOUND || !z.re.is_finite());
        if bad && !converged {
            return Err(Error::ConvergenceFailure(opts.max_iter));
        }
    }
    roots.extend(std::iter::repeat_n(Complex64::zero(), zeros));
    let mut out: Vec<ComplexRoot> = roots
        .into_iter()
        .map(|z| ComplexRoot { re: z.re, im: z.im, residual: if z.is_zero() { 0.0 } else { residual(&full, z) } })
        .collect();
    if out.iter().any(|r| !(r.residual < RESIDUAL_BOUND)) {
        return Err(Error::ConvergenceFailure(opts.max_iter));
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ZeroFlags {
    pub all_real_in_interval: bool,
    pub imag_pair_count: usize,
    /// Every non-real root has `|re| < tau`.
    pub nonreal_purely_imaginary: bool,
    /// Real roots within `tau` of `+-1`.
    pub boundary_roots: usize,
    pub interlaces_with_prev: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootStatus {
    Ok,
    ConvergenceFailure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroReport {
    pub entry: (usize, usize),
    pub n: usize,
    pub nu: Rational,
    pub two_ell: usize,
    pub echelon: usize,
    pub degree: Option<usize>,
    pub roots: Vec<ComplexRoot>,
    pub status: RootStatus,
    pub flags: ZeroFlags,
}

impl ZeroReport {
    pub fn real_roots(&self, tau: f64) -> Vec<f64> {
        let mut r: Vec<f64> = self.roots.iter().filter(|z| z.im.abs() < tau).map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        r
    }

    /// Largest imaginary part among purely imaginary roots.
    pub fn upper_imag(&self, tau: f64) -> Option<f64> {
        self.roots.iter().filter(|z| z.re.abs() < tau && z.im >= tau).map(|z| z.im).reduce(f64::max)
    }

    pub fn conjugate_closed(&self) -> bool {
        self.roots.iter().all(|z| {
            self.roots
                .iter()
                .any(|w| (w.re - z.re).abs() < RESIDUAL_BOUND && (w.im + z.im).abs() < RESIDUAL_BOUND)
        })
    }

    pub fn negation_symmetric(&self, tau: f64) -> bool {
        self.roots
            .iter()
            .all(|z| self.roots.iter().any(|w| (w.re + z.re).abs() < tau && (w.im + z.im).abs() < tau))
    }
}

pub fn classify_roots(roots: &[ComplexRoot], tau: f64) -> ZeroFlags {
    let real = |z: &ComplexRoot| z.im.abs() < tau;
    ZeroFlags {
        all_real_in_interval: roots.iter().all(|z| real(z) && z.re.abs() < 1.0 - tau),
        imag_pair_count: roots.iter().filter(|z| z.re.abs() < tau && z.im >= tau).count(),
        nonreal_purely_imaginary: roots.iter().filter(|z| !real(z)).all(|z| z.re.abs() < tau),
        boundary_roots: roots.iter().filter(|z| real(z) && (z.re.abs() - 1.0).abs() <= tau).count(),
        interlaces_with_prev: None,
    }
}

pub fn classify(report: &mut ZeroReport, tau: f64) {
    let prev = report.flags.interlaces_with_prev;
    report.flags = classify_roots(&report.roots, tau);
    report.flags.interlaces_with_prev = prev;
}

pub fn entry_report(n: usize, nu: &Rational, size: SizeParam, i: usize, j: usize, opts: &RootOptions, tau: f64) -> Result<ZeroReport> {
    let p = entry_poly(n, nu, size, i, j)?;
    report_for(p, n, nu, size, (i, j), opts, tau)
}

fn report_for(p: MonoPoly, n: usize, nu: &Rational, size: SizeParam, entry: (usize, usize), opts: &RootOptions, tau: f64) -> Result<ZeroReport> {
    let degree = p.degree();
    let (roots, status) = match degree {
        Some(d) if d >= 1 => match find_roots_with(&p, opts) {
            Ok(r) => (r, RootStatus::Ok),
            Err(Error::ConvergenceFailure(_)) => (Vec::new(), RootStatus::ConvergenceFailure),
            Err(e) => return Err(e),
        },
        _ => (Vec::new(), RootStatus::Ok),
    };
    let mut report = ZeroReport {
        entry,
        n,
        nu: nu.clone(),
        two_ell: size.two_ell(),
        echelon: size.echelon(entry.0, entry.1),
        degree,
        roots,
        status,
        flags: ZeroFlags::default(),
    };
    classify(&mut report, tau);
    Ok(report)
}

/// Strict interlacing of sorted real roots, `b` having one root fewer than `a`.
pub fn interlaces(a: &[f64], b: &[f64], tau: f64) -> Result<bool> {
    if b.is_empty() || a.len() != b.len() + 1 {
        return Err(Error::DegenerateInput(format!("real root counts {} and {} cannot interlace", a.len(), b.len())));
    }
    Ok(b.iter().enumerate().all(|(k, s)| a[k] + tau < *s && *s < a[k + 1] - tau))
}

pub fn interlace_check(entry: (usize, usize), n: usize, nu: &Rational, size: SizeParam) -> Result<bool> {
    if n == 0 {
        return Err(Error::DegenerateInput("no predecessor for n = 0".into()));
    }
    let opts = RootOptions::default();
    let cur = entry_report(n, nu, size, entry.0, entry.1, &opts, TAU)?;
    let prev = entry_report(n - 1, nu, size, entry.0, entry.1, &opts, TAU)?;
    interlaces(&cur.real_roots(TAU), &prev.real_roots(TAU), TAU)
}

/// Reports for every entry and every `n` in the range, ordered by `(n, i, j)`.
/// Interlacing with `n - 1` is filled in where the predecessor is also in the survey.
pub fn survey(size: SizeParam, nu: &Rational, ns: &[usize], entries: Option<&[(usize, usize)]>, opts: &RootOptions, tau: f64) -> Result<Vec<ZeroReport>> {
    let dim = size.dim();
    let cells: Vec<(usize, usize)> = match entries {
        Some(e) => e.to_vec(),
        None => (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).collect(),
    };
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let Some(&n_max) = ns.last() else { return Ok(Vec::new()) };
    let basis = GegBasis::new(&(nu + int(size.two_ell() as i64)), n_max)?;
    let fs: Vec<Vec<RatMatrix>> = ns
        .par_iter()
        .map(|&n| (0..=n.min(size.two_ell())).map(|k| f_matrix(k, n, nu, size)).collect())
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, usize, usize)> =
        (0..ns.len()).flat_map(|a| cells.iter().map(move |&(i, j)| (a, i, j))).collect();
    let mut reports: Vec<ZeroReport> = jobs
        .par_iter()
        .map(|&(a, i, j)| {
            let coeffs: Vec<Rational> = fs[a].iter().map(|m| m[(i, j)].clone()).collect();
            report_for(combine(&basis, ns[a], &coeffs), ns[a], nu, size, (i, j), opts, tau)
        })
        .collect::<Result<_>>()?;
    for idx in 0..reports.len() {
        let (n, e) = (reports[idx].n, reports[idx].entry);
        if n == 0 {
            continue;
        }
        let prev = reports.iter().find(|r| r.n == n - 1 && r.entry == e);
        if let Some(prev) = prev {
            let res = interlaces(&reports[idx].real_roots(tau), &prev.real_roots(tau), tau).ok();
            reports[idx].flags.interlaces_with_prev = res;
        }
    }
    Ok(reports)
}

/// `J_n^{(a,b)}(z) = (a+1)_n / n! 2F1(-n, n+a+b+1; a+1; (1-z)/2)`
pub fn jacobi_value(n: usize, a: &Rational, b: &Rational, z: &Rational) -> Rational {
    let arg = (int(1) - z) / int(2);
    let top = a + b + int(n as i64 + 1);
    let mut sum = Rational::zero();
    for s in 0..=n {
        let term = binomial(n as i64, s as i64) * pochhammer(&top, s) / pochhammer(&(a + int(1)), s)
            * num_traits::pow(arg.clone(), s);
        sum += if s % 2 == 0 { term } else { -term };
    }
    pochhammer(&(a + int(1)), n) / factorial(n) * sum
}

/// `C_m^{(lambda)}(x)` through the quadratic Jacobi transformation.
pub fn gegenbauer_via_jacobi(m: usize, lambda: &Rational, x: &Rational) -> Rational {
    let z = int(2) * x * x - int(1);
    let half = rat(1, 2);
    let a = lambda - &half;
    if m % 2 == 0 {
        let h = m / 2;
        pochhammer(lambda, h) / pochhammer(&half, h) * jacobi_value(h, &a, &-half.clone(), &z)
    } else {
        let h = (m - 1) / 2;
        pochhammer(lambda, h + 1) / pochhammer(&half, h + 1) * x * jacobi_value(h, &a, &half, &z)
    }
}

/// Evaluates the entry exactly at each `x` both from its monomial form and from the
/// Jacobi translation of its Gegenbauer terms.
pub fn jacobi_translation_check(n: usize, nu: &Rational, size: SizeParam, i: usize, j: usize, xs: &[Rational]) -> Result<bool> {
    let p = entry_poly(n, nu, size, i, j)?;
    let coeffs = entry_geg_coeffs(n, nu, size, i, j)?;
    let lambda = nu + int(size.two_ell() as i64);
    Ok(xs.iter().all(|x| {
        let via: Rational = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| c * gegenbauer_via_jacobi(n - k, &lambda, x))
            .fold(Rational::zero(), |a, b| a + b);
        via == p.eval(x)
    }))
}

/// 600x600 scatter of the roots over `[-1.1, 1.1]^2`; roots outside are counted in a comment.
pub fn render_svg(report: &ZeroReport) -> String {
    let map = |v: f64| (v + 1.1) / 2.2 * 600.0;
    let mut body = String::new();
    let mut omitted = 0;
    for z in &report.roots {
        if z.re.abs() > 1.1 || z.im.abs() > 1.1 {
            omitted += 1;
            continue;
        }
        body.push_str(&format!(
            "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"3\" fill=\"black\"/>\n",
            map(z.re),
            600.0 - map(z.im)
        ));
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n\
         <!-- 2l={} nu={} n={} entry=({},{}) echelon={} omitted_outside_view={} -->\n\
         <line x1=\"0\" y1=\"300\" x2=\"600\" y2=\"300\" stroke=\"gray\"/>\n\
         <line x1=\"300\" y1=\"0\" x2=\"300\" y2=\"600\" stroke=\"lightgray\"/>\n{}</svg>\n",
        report.two_ell,
        crate::exact::format_rational(&report.nu),
        report.n,
        report.entry.0,
        report.entry.1,
        report.echelon,
        omitted,
        body
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gamma_ratio_shift, pow2};
    use crate::scalar::gegenbauer;

    #[test]
    fn trivial_roots() {
        let r = find_roots(&MonoPoly::from_ints(&[-1, 0, 1])).unwrap();
        assert!((r[0].re + 1.0).abs() < 1e-14 && (r[1].re - 1.0).abs() < 1e-14);
        let r = find_roots(&MonoPoly::new(vec![rat(1, 4), int(0), int(1)])).unwrap();
        assert!(r.iter().all(|z| z.re == 0.0 && (z.im.abs() - 0.5).abs() < 1e-14));
        assert!(find_roots(&MonoPoly::one()).is_err());
    }

    #[test]
    fn gegenbauer_roots_match_jacobi_matrix() {
        // C_3^(2): monic recurrence x p_k = p_{k+1} + b_k p_{k-1}, b_k = k(k+2l-1)/(4(k+l)(k+l-1))
        let r = find_roots(&gegenbauer(3, &int(2)).unwrap()).unwrap();
        let b = |k: f64| k * (k + 3.0) / (4.0 * (k + 2.0) * (k + 1.0));
        // 3x3 symmetric tridiagonal with zero diagonal: eigenvalues 0, +-sqrt(b1 + b2)
        let e = (b(1.0) + b(2.0)).sqrt();
        assert!((r[0].re + e).abs() < 1e-12 && r[1].re.abs() < 1e-14 && (r[2].re - e).abs() < 1e-12);
    }

    #[test]
    fn middle_entry_ell_two_display() {
        let size = SizeParam::new(4);
        for nu in [int(3), rat(1, 2)] {
            for n in 4..9usize {
                let mu = &nu + int(n as i64);
                let lam = &nu + int(4);
                let pre = int(3) * (&mu + int(4)) * factorial(n) / pow2(n as i64 - 1)
                    * gamma_ratio_shift(&nu, 4, n as i64).unwrap();
                let sq = |a: i64| (&mu + int(a)) * (&mu + int(a));
                let c = |m: usize| gegenbauer(m, &lam).unwrap();
                let t0 = c(n).scale(&(sq(2) * sq(3) * (&mu + int(4))).recip());
                let t1 = c(n - 2).scale(&(int(4) / (sq(1) * (&mu + int(2)) * sq(3))));
                let t2 = c(n - 4).scale(&(&mu * sq(1) * sq(2)).recip());
                let want = (&(&t0 + &t1) + &t2).scale(&pre);
                assert_eq!(entry_poly(n, &nu, size, 2, 2).unwrap(), want);
            }
        }
    }

    #[test]
    fn middle_entry_small_n_structure() {
        // at nu = 3 the n = 2 entry degenerates to a multiple of x^2, so use nu = 1
        let size = SizeParam::new(4);
        let rep = |n| entry_report(n, &int(1), size, 2, 2, &RootOptions::default(), TAU).unwrap();
        assert_eq!(entry_poly(2, &int(3), size, 2, 2).unwrap().coeff(0), int(0));
        let r1 = rep(1);
        assert_eq!(r1.roots.len(), 1);
        assert_eq!(r1.roots[0].re, 0.0);
        assert_eq!(rep(2).flags.imag_pair_count, 1);
        let r3 = rep(3);
        assert_eq!(r3.flags.imag_pair_count, 1);
        assert_eq!(r3.roots.iter().filter(|z| z.re == 0.0 && z.im == 0.0).count(), 1);
    }

    #[test]
    fn echelon_bounds_terms() {
        let size = SizeParam::new(4);
        for i in 0..5 {
            for j in 0..5 {
                let nz = entry_geg_coeffs(9, &rat(3, 2), size, i, j).unwrap().iter().filter(|c| !c.is_zero()).count();
                assert!(nz <= size.echelon(i, j));
            }
        }
    }

    #[test]
    fn interlacing_cases() {
        assert!(interlace_check((0, 0), 8, &int(3), SizeParam::new(2)).unwrap());
        assert!(matches!(interlace_check((0, 0), 1, &int(3), SizeParam::new(2)), Err(Error::DegenerateInput(_))));
        assert!(interlace_check((2, 2), 9, &int(3), SizeParam::new(4)).unwrap());
    }

    #[test]
    fn jacobi_translation() {
        let xs = [rat(1, 3), rat(-2, 5), rat(7, 4)];
        assert!(jacobi_translation_check(7, &int(3), SizeParam::new(4), 2, 2, &xs).unwrap());
        assert!(jacobi_translation_check(6, &rat(1, 2), SizeParam::new(3), 1, 2, &xs).unwrap());
    }

    #[test]
    fn svg_counts_outside() {
        let rep = entry_report(6, &int(3), SizeParam::new(4), 2, 2, &RootOptions::default(), TAU).unwrap();
        let svg = render_svg(&rep);
        assert!(svg.starts_with("<svg") && svg.contains("omitted_outside_view="));
    }
}
