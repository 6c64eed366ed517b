use std::fs;
use std::io::Write;
use std::path::Path;

use matgeg::connection::hat_p_series;
use matgeg::exact::{format_rational, SizeParam};
use matgeg::genfun::closed_form;
use matgeg::registry::{BuilderRegistry, CheckOutcome, SuiteConfig, SuiteRegistry};
use matgeg::serial::{closed_form_json, hat_p_geg_json, hat_p_json};
use matgeg::weight::WeightSpec;
use matgeg::zeros::{render_svg, survey, RootOptions, RootStatus, ZeroReport};
use matgeg::Error;
use serde_json::json;

use crate::{Basis, Common, Format, GenfunArgs, HatpArgs, Requirement, VerifyArgs, ZerosArgs};

pub enum CliError {
    Config(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported(_) | Error::ParameterMismatch(..) | Error::Index(_) | Error::Parse(_) | Error::DegreeCap(..) => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

type CliResult = Result<bool, CliError>;

fn emit(common: &Common, text: &str) -> Result<(), CliError> {
    match &common.out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Config(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn spec_of(common: &Common) -> Result<WeightSpec, CliError> {
    Ok(WeightSpec::new(common.two_ell, common.nu.clone())?)
}

pub fn verify(a: &VerifyArgs) -> CliResult {
    let grid = if a.nu_grid.is_empty() { vec![a.common.nu.clone()] } else { a.nu_grid.clone() };
    let registry = SuiteRegistry::default();
    let mut rows: Vec<(String, CheckOutcome)> = Vec::new();
    for nu in &grid {
        let cfg = SuiteConfig::new(a.common.two_ell, nu.clone(), a.n_max)?;
        for o in registry.run(a.suite.key(), &cfg)? {
            rows.push((format_rational(nu), o));
        }
    }
    let ok = rows.iter().all(|(_, o)| o.passed);
    let text = match a.common.format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(nu, o)| {
                    json!({"two_ell": a.common.two_ell, "nu": nu, "suite": o.suite, "check": o.name,
                           "passed": o.passed, "counterexample": o.counterexample})
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        _ => {
            let mut s = String::new();
            for (nu, o) in &rows {
                let tag = if o.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!("{tag} [2l={} nu={nu}] {}: {}", a.common.two_ell, o.suite, o.name));
                if let Some(c) = &o.counterexample {
                    s.push_str(&format!(" (first counterexample: {c})"));
                }
                s.push('\n');
            }
            let failed = rows.iter().filter(|(_, o)| !o.passed).count();
            s.push_str(&format!("{} checks, {} failed\n", rows.len(), failed));
            s
        }
    };
    emit(&a.common, &text)?;
    Ok(ok)
}

pub fn hatp(a: &HatpArgs) -> CliResult {
    let spec = spec_of(&a.common)?;
    let builders = BuilderRegistry::default();
    let chosen = builders
        .get(&a.builder)
        .ok_or_else(|| CliError::Config(format!("unknown builder '{}' (known: {:?})", a.builder, builders.names())))?;
    let p = chosen.build(a.n, &spec)?;
    for other in builders.iter() {
        if other.build(a.n, &spec)? != p {
            return Err(CliError::Failed(format!("constructions '{}' and '{}' disagree", chosen.name(), other.name())));
        }
    }
    let v = match a.basis {
        Basis::Monomial => hat_p_json(spec.two_ell(), &spec.nu, a.n, &p),
        Basis::Gegenbauer => hat_p_geg_json(spec.two_ell(), &spec.nu, &hat_p_series(a.n, &spec.nu, spec.size)?),
    };
    emit(&a.common, &format!("{}\n", serde_json::to_string_pretty(&v).expect("json")))?;
    Ok(true)
}

pub fn genfun(a: &GenfunArgs) -> CliResult {
    let spec = spec_of(&a.common)?;
    let form = match closed_form(&spec.nu, spec.size) {
        Ok(f) => f,
        Err(e @ Error::SeriesMismatch { .. }) => return Err(CliError::Failed(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let text = match a.common.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&closed_form_json(&spec.nu, &form)).expect("json")),
        _ => {
            let mut s = format!(
                "M(x;t) = N(nu,x,t) / (1-2xt+t^2)^(nu+{}), verified to t^{}\n",
                form.denominator_offset(),
                form.verified_order
            );
            for (i, row) in form.numerator.iter().enumerate() {
                for (j, p) in row.iter().enumerate() {
                    s.push_str(&format!("N[{i}][{j}] = {p}\n"));
                }
            }
            s
        }
    };
    emit(&a.common, &text)?;
    Ok(true)
}

fn num(x: f64) -> String {
    // normalise -0 so mirrored roots print identically
    if x == 0.0 { "0".into() } else { x.to_string() }
}

fn csv_bytes(reports: &[ZeroReport]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Failed(e.to_string());
    w.write_record(["two_ell", "nu", "n", "i", "j", "echelon", "re", "im", "residual", "status"]).map_err(io)?;
    for r in reports {
        let nu = format_rational(&r.nu);
        let base = [r.two_ell.to_string(), nu, r.n.to_string(), r.entry.0.to_string(), r.entry.1.to_string(), r.echelon.to_string()];
        match r.status {
            RootStatus::Ok => {
                for z in &r.roots {
                    let mut rec = base.to_vec();
                    rec.extend([num(z.re), num(z.im), num(z.residual), "ok".into()]);
                    w.write_record(&rec).map_err(io)?;
                }
            }
            RootStatus::ConvergenceFailure => {
                let mut rec = base.to_vec();
                rec.extend(["NaN".into(), "NaN".into(), "NaN".into(), "convergence_failure".into()]);
                w.write_record(&rec).map_err(io)?;
            }
        }
    }
    w.into_inner().map_err(|e| CliError::Failed(e.to_string()))
}

pub fn zeros(a: &ZerosArgs) -> CliResult {
    let spec = spec_of(&a.common)?;
    let size = SizeParam::new(spec.two_ell());
    let l2 = size.two_ell();
    let mut cells: Vec<(usize, usize)> = if a.entry.is_empty() {
        (0..=l2).flat_map(|i| (0..=l2).map(move |j| (i, j))).collect()
    } else {
        a.entry.clone()
    };
    if let Some((i, j)) = cells.iter().find(|(i, j)| *i > l2 || *j > l2) {
        return Err(CliError::Config(format!("entry ({i},{j}) outside a {0}x{0} matrix", l2 + 1)));
    }
    if let Some(e) = a.echelon {
        cells.retain(|&(i, j)| size.echelon(i, j) == e);
    }
    let opts = RootOptions { seed: a.seed, ..RootOptions::default() };
    let reports = survey(size, &spec.nu, &a.n.0, Some(&cells), &opts, a.tol)?;

    let bytes = csv_bytes(&reports)?;
    match &a.common.out {
        Some(p) => fs::write(p, &bytes).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?,
        None => std::io::stdout().write_all(&bytes).map_err(|e| CliError::Failed(e.to_string()))?,
    }
    if let Some(dir) = &a.svg {
        write_svgs(dir, &reports)?;
    }

    let with_roots: Vec<&ZeroReport> = reports.iter().filter(|r| r.degree.unwrap_or(0) > 0).collect();
    let failures = reports.iter().filter(|r| r.status == RootStatus::ConvergenceFailure).count();
    let all_real = with_roots.iter().filter(|r| r.flags.all_real_in_interval).count();
    let pure = with_roots
        .iter()
        .filter(|r| r.flags.nonreal_purely_imaginary && r.real_roots(a.tol).iter().all(|x| x.abs() < 1.0 - a.tol))
        .count();
    let pairs: usize = with_roots.iter().map(|r| r.flags.imag_pair_count).sum();
    let inter: Vec<bool> = reports.iter().filter_map(|r| r.flags.interlaces_with_prev).collect();
    let inter_ok = inter.iter().filter(|b| **b).count();
    eprintln!(
        "reports={} with_roots={} convergence_failures={} all_real_in_interval={}/{} nonreal_purely_imaginary={}/{} imaginary_pairs={} interlacing={}/{}",
        reports.len(), with_roots.len(), failures, all_real, with_roots.len(), pure, with_roots.len(), pairs, inter_ok, inter.len()
    );
    let mut ok = failures == 0;
    for req in &a.require {
        let pass = match req {
            Requirement::Real => all_real == with_roots.len(),
            Requirement::PureImag => pure == with_roots.len(),
            Requirement::Interlace => inter_ok == inter.len(),
        };
        if !pass {
            let name = match req {
                Requirement::Real => "real",
                Requirement::PureImag => "pure-imag",
                Requirement::Interlace => "interlace",
            };
            eprintln!("required assertion '{name}' failed");
            ok = false;
        }
    }
    Ok(ok)
}

fn write_svgs(dir: &Path, reports: &[ZeroReport]) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Config(format!("{}: {e}", dir.display())))?;
    for r in reports.iter().filter(|r| !r.roots.is_empty()) {
        let name = format!("zeros_2l{}_n{}_{}_{}.svg", r.two_ell, r.n, r.entry.0, r.entry.1);
        fs::write(dir.join(name), render_svg(r)).map_err(|e| CliError::Failed(e.to_string()))?;
    }
    Ok(())
}
