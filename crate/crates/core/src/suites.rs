//! Built-in verification suites. Each check reports the first failing cell.

use num_traits::Zero;

use crate::connection::{
    diagonal_reduction_check, double_sum_check, g_d0_h0_symmetric, g_matrix, m_expansion, reconstruct_scalar,
    scalar_consistency_check, shift_lemma_check, synthesize_hat_p,
};
use crate::error::Result;
use crate::exact::{int, GegSeries, RatMatrix};
use crate::genfun::{certified_degree, claimed_degree, closed_form, poly_in_lambda};
use crate::matpoly::MatPoly;
use crate::mvop::{h0_display, symmetrizer, weight_moment, MvopFamily};
use crate::operators::{certify_six_term, prop_3tr_check, prop_doe_check, prop_dod_check, OperatorSpec};
use crate::registry::{CheckOutcome, Suite, SuiteConfig};
use crate::scalar::{connect_integer_series, diff_geg, gegenbauer, hypergeometric_oracle, linearise};
use crate::weight::{commutes_with_j, ldu_factors, is_unipotent_lower, t_all_positive, verify_ldu};

type Cell = Option<String>;

fn outcome(suite: &'static str, name: &'static str, r: Result<Cell>) -> CheckOutcome {
    let (passed, counterexample) = match r {
        Ok(None) => (true, None),
        Ok(Some(c)) => (false, Some(c)),
        Err(e) => (false, Some(format!("error: {e}"))),
    };
    CheckOutcome { suite, name, passed, counterexample }
}

/// First item of `cells` for which `ok` is false.
fn first_fail<T: std::fmt::Debug>(cells: impl IntoIterator<Item = T>, mut ok: impl FnMut(&T) -> Result<bool>) -> Result<Cell> {
    for c in cells {
        if !ok(&c)? {
            return Ok(Some(format!("{c:?}")));
        }
    }
    Ok(None)
}

struct ScalarSuite;

impl Suite for ScalarSuite {
    fn name(&self) -> &'static str {
        "scalar"
    }

    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckOutcome> {
        let nu = cfg.nu();
        let small = cfg.n_max.min(8);
        let pairs: Vec<(usize, usize)> = (0..=small).flat_map(|k| (0..=small).map(move |l| (k, l))).collect();
        vec![
            outcome("scalar", "recurrence = hypergeometric oracle", first_fail(0..=cfg.n_max, |&n| {
                Ok(gegenbauer(n, nu)? == hypergeometric_oracle(n, nu)?)
            })),
            outcome("scalar", "linearisation", first_fail(pairs, |&(k, l)| {
                Ok(linearise(k, l, nu).to_mono()? == &gegenbauer(k, nu)? * &gegenbauer(l, nu)?)
            })),
            outcome("scalar", "integer connection", first_fail(
                (1..=3usize).flat_map(|s| (0..=cfg.n_max).map(move |m| (s, m))),
                |&(s, m)| Ok(connect_integer_series(m, nu, s).to_mono()? == gegenbauer(m, nu)?),
            )),
            outcome("scalar", "derivative shift", first_fail(0..=cfg.n_max, |&n| {
                let d = diff_geg(&GegSeries::term(nu.clone(), n, int(1)));
                Ok(d.to_mono()? == gegenbauer(n, nu)?.derivative())
            })),
        ]
    }
}

struct WeightSuite;

impl Suite for WeightSuite {
    fn name(&self) -> &'static str {
        "weight"
    }

    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckOutcome> {
        let spec = &cfg.spec;
        vec![
            outcome("weight", "LDU factorisation", verify_ldu(spec).map(|c| (!c.ok).then(|| format!("{:?}", c.first_mismatch)))),
            outcome("weight", "t_k > 0", Ok((!t_all_positive(spec)).then(|| "t".to_string()))),
            outcome("weight", "L unipotent lower", ldu_factors(spec).map(|f| (!is_unipotent_lower(&f.l)).then(|| "L".to_string()))),
            outcome("weight", "J W J = W", commutes_with_j(spec).map(|ok| (!ok).then(|| "W".to_string()))),
        ]
    }
}

struct MvopSuite;

impl Suite for MvopSuite {
    fn name(&self) -> &'static str {
        "mvop"
    }

    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckOutcome> {
        let spec = &cfg.spec;
        let top = cfg.n_max.min(6);
        let family = MvopFamily::build(spec, top);
        let l2 = spec.two_ell();
        let d0 = symmetrizer(0, spec);
        let d0_h0 = &d0 * &h0_display(spec);
        let off: Vec<(usize, usize)> = (0..=top).flat_map(|n| (0..n).map(move |m| (n, m))).collect();
        let mut moment_cells = Vec::new();
        for m in 0..=l2 + 2 {
            for i in 0..=l2 {
                for j in 0..=l2 {
                    moment_cells.push((m, i, j));
                }
            }
        }
        vec![
            outcome("mvop", "orthogonality", first_fail(off, |&(n, m)| Ok(family.gram_integral(n, m)?.is_zero()))),
            outcome("mvop", "squared norms diagonal positive", first_fail(0..=top, |&n| {
                let h = family.gram_integral(n, n)?.coeffs;
                Ok(h.is_diagonal() && h.diagonal().iter().all(|c| c > &num_traits::zero()))
            })),
            outcome("mvop", "H_0 closed formula", family.gram_integral(0, 0).map(|h| {
                (h.coeffs != &(&d0 * &h0_display(spec)) * &d0).then(|| "(0,0)".to_string())
            })),
            outcome("mvop", "moment vanishing pattern", first_fail(moment_cells, |&(m, i, j)| {
                let (a, b) = (i.min(j), i.max(j));
                let forced = m > l2 || (i + j + m) % 2 == 1 || (a + b <= l2 && m < b - a);
                Ok(!forced || weight_moment(m, spec)?.coeffs[(i, j)].is_zero())
            })),
            outcome("mvop", "moment = G_{m,m} D_0 H_0", first_fail(0..=l2, |&m| {
                Ok(weight_moment(m, spec)?.coeffs == &g_matrix(m, m, &spec.nu, spec.size)? * &d0_h0)
            })),
        ]
    }
}

struct ConnectionSuite;

impl Suite for ConnectionSuite {
    fn name(&self) -> &'static str {
        "connection"
    }

    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckOutcome> {
        let spec = &cfg.spec;
        let (nu, size) = (&spec.nu, spec.size);
        let family = MvopFamily::build(spec, cfg.n_max);
        let small = cfg.n_max.min(6);
        let id = RatMatrix::identity(spec.dim());
        let sums: Vec<(usize, usize)> = (0..=cfg.n_max).flat_map(|m| (0..=m / 2).map(move |s| (s, m))).collect();
        let gh: Vec<(usize, usize)> = (0..=small).flat_map(|m| (0..=m).map(move |r| (r, m))).collect();
        vec![
            outcome("connection", "expansion (F)", first_fail(0..=cfg.n_max, |&n| {
                Ok(&synthesize_hat_p(n, nu, size)? == family.hat(n))
            })),
            outcome("connection", "inversion (G)", first_fail(0..=cfg.n_max, |&m| {
                Ok(reconstruct_scalar(m, &family)? == MatPoly::scalar_times(&gegenbauer(m, nu)?, &id))
            })),
            outcome("connection", "double sum", first_fail(sums, |&(s, m)| double_sum_check(s, m, nu, size))),
            outcome("connection", "scalar consistency", first_fail(0..=cfg.n_max, |&m| scalar_consistency_check(m, nu, size))),
            outcome("connection", "parameter shift", shift_lemma_check(nu, size, small).map(|ok| (!ok).then(|| "n <= 6".into()))),
            outcome("connection", "diagonal reduction", diagonal_reduction_check(nu, size, small.min(4), 3).map(|ok| (!ok).then(|| "m <= 4, k <= 3".into()))),
            outcome("connection", "G D_0 H_0 symmetric", first_fail(gh, |&(r, m)| g_d0_h0_symmetric(r, m, nu, size))),
            outcome("connection", "expansion in shifted family", {
                let shifted = spec.shifted(size.two_ell() as i64).map(|s| MvopFamily::build(&s, small));
                shifted.and_then(|sf| first_fail(0..=small, |&n| Ok(&m_expansion(n, nu, size, &sf)? == family.hat(n))))
            }),
        ]
    }
}

struct OperatorsSuite;

impl Suite for OperatorsSuite {
    fn name(&self) -> &'static str {
        "operators"
    }

    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckOutcome> {
        let spec = &cfg.spec;
        let (nu, size) = (&spec.nu, spec.size);
        let family = MvopFamily::build(spec, cfg.n_max + 1);
        let dod = OperatorSpec::second_order(nu, size);
        let doe = OperatorSpec::first_order(nu, size).ok();
        let l2 = size.two_ell();
        let small = cfg.n_max.min(4);
        let mut cells = Vec::new();
        for n in 0..=small {
            for i in 0..=l2 {
                for j in 0..=l2 {
                    for k in 0..=l2 {
                        cells.push((n, i, j, k));
                    }
                }
            }
        }
        let below = |d: Option<usize>, n: usize| d.is_none_or(|d| d < n);
        vec![
            outcome("operators", "D eigen-relation (hatP, P)", first_fail(0..=cfg.n_max, |&n| {
                Ok(dod.eigen_relation_holds(family.hat(n), n) && dod.eigen_relation_holds(family.monic(n), n))
            })),
            outcome("operators", "E eigen-relation (hatP, P)", first_fail(0..=cfg.n_max, |&n| {
                Ok(doe.as_ref().is_none_or(|e| e.eigen_relation_holds(family.hat(n), n) && e.eigen_relation_holds(family.monic(n), n)))
            })),
            outcome("operators", "recursion from three-term relation", first_fail(0..=cfg.n_max, |&n| Ok(prop_3tr_check(n, &family)?.holds()))),
            outcome("operators", "recursion from D", first_fail(0..=cfg.n_max, |&n| {
                let (c, d) = prop_dod_check(n, &family)?;
                Ok(c.holds() && below(d, n))
            })),
            outcome("operators", "recursion from E", first_fail(0..=cfg.n_max, |&n| {
                let (c, d) = prop_doe_check(n, &family)?;
                Ok(c.holds() && below(d, n))
            })),
            outcome("operators", "six-term gamma relation", first_fail(cells, |&(n, i, j, k)| {
                Ok(certify_six_term(n, i, j, k, size)?.holds)
            })),
        ]
    }
}

struct GenfunSuite;

impl Suite for GenfunSuite {
    fn name(&self) -> &'static str {
        "genfun"
    }

    fn run(&self, cfg: &SuiteConfig) -> Vec<CheckOutcome> {
        let (nu, size) = (cfg.nu(), cfg.size());
        let ks = 0..=size.two_ell();
        let form = closed_form(nu, size);
        let integral = match &form {
            Ok(f) => Ok((!f.is_integral()).then(|| "numerator".to_string())),
            Err(e) => Err(e.clone()),
        };
        vec![
            outcome("genfun", "closed form series match", form.map(|_| None)),
            outcome("genfun", "integral numerator", integral),
            outcome("genfun", "tildeF polynomial in lambda (certified degree)", first_fail(ks.clone(), |&k| {
                Ok(poly_in_lambda(k, nu, size, certified_degree(size)).is_ok())
            })),
            outcome("genfun", "tildeF polynomial in lambda (degree floor(l))", first_fail(ks, |&k| {
                Ok(poly_in_lambda(k, nu, size, claimed_degree(size)).is_ok())
            })),
        ]
    }
}

pub fn builtin() -> Vec<Box<dyn Suite>> {
    vec![
        Box::new(ScalarSuite),
        Box::new(WeightSuite),
        Box::new(MvopSuite),
        Box::new(ConnectionSuite),
        Box::new(OperatorsSuite),
        Box::new(GenfunSuite),
    ]
}

