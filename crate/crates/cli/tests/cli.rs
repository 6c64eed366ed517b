use std::process::{Command, Output};

use matgeg::exact::{int, rat};
use matgeg::registry::BuilderRegistry;
use matgeg::serial::parse_hat_p_json;
use matgeg::weight::{weight_poly, WeightSpec};
use matgeg::{RatMatrix, Rational};
use serde_json::Value;

fn matgeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matgeg")).args(args).output().expect("spawn matgeg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

// Even moments of (1-x^2)^(nu-1/2), relative to the zeroth: (1/2)_m / (nu+1)_m.
fn moment(k: usize, nu: &Rational) -> Rational {
    if k % 2 == 1 {
        return int(0);
    }
    let mut r = int(1);
    for s in 0..k / 2 {
        r = r * (rat(1, 2) + int(s as i64)) / (nu + int(1 + s as i64));
    }
    r
}

#[test]
fn verify_all_passes_at_reference_config() {
    let o = matgeg(&["verify", "all", "--two-ell", "2", "--nu", "3/2", "--n-max", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() > 20);
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_connection_scalar_case() {
    let o = matgeg(&["verify", "connection", "--two-ell", "0", "--nu", "1", "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_rejects_nonpositive_nu() {
    assert_eq!(matgeg(&["verify", "weight", "--nu", "0"]).status.code(), Some(2));
    assert_eq!(matgeg(&["verify", "weight", "--nu", "-1/2"]).status.code(), Some(2));
    assert_eq!(matgeg(&["verify", "weight", "--nu", "1/0"]).status.code(), Some(2));
}

#[test]
fn verify_reports_failure_with_counterexample() {
    // the floor(l) degree claim does not hold at 2l = 3
    let o = matgeg(&["verify", "genfun", "--two-ell", "3", "--nu", "1", "--n-max", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let fail = out.lines().find(|l| l.starts_with("FAIL")).expect("a FAIL line");
    assert!(fail.contains("first counterexample"));
}

#[test]
fn verify_json_and_grid() {
    let o = matgeg(&["verify", "weight", "--two-ell", "2", "--nu-grid", "1/2,3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let rows = v.as_array().unwrap();
    assert!(rows.iter().any(|r| r["nu"] == "1/2"));
    assert!(rows.iter().any(|r| r["nu"] == "3"));
    assert!(rows.iter().all(|r| r["passed"] == true));
}

#[test]
fn hatp_zero_is_constant() {
    let o = matgeg(&["hatp", "--two-ell", "2", "--nu", "1", "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let p = parse_hat_p_json(&json(&o)).unwrap();
    assert_eq!(p.poly.degree(), Some(0));
    assert!(p.poly.coeff(0).is_diagonal());
}

#[test]
fn hatp_orthogonal_against_beta_moments() {
    let o = matgeg(&["hatp", "--two-ell", "1", "--nu", "1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let parsed = parse_hat_p_json(&json(&o)).unwrap();
    assert_eq!((parsed.two_ell, parsed.n), (1, 3));
    let nu = parsed.nu.clone();
    let w = weight_poly(&WeightSpec::new(1, nu.clone()).unwrap()).unwrap();
    let p = &parsed.poly;
    for k in 0..3 {
        let mut acc = RatMatrix::zero(2);
        for (d, pd) in p.coeffs().iter().enumerate() {
            for (e, we) in w.coeffs().iter().enumerate() {
                let m = moment(d + e + k, &nu);
                acc = &acc + &RatMatrix::from_fn(2, |i, j| (&(pd * we))[(i, j)].clone() * m.clone());
            }
        }
        assert!(acc.is_zero(), "not orthogonal to x^{k}");
    }
}

#[test]
fn hatp_roundtrips_and_matches_both_builders() {
    let o = matgeg(&["hatp", "--two-ell", "3", "--nu", "7/3", "--n", "5", "--builder", "connection"]);
    assert_eq!(o.status.code(), Some(0));
    let parsed = parse_hat_p_json(&json(&o)).unwrap();
    let spec = WeightSpec::new(3, rat(7, 3)).unwrap();
    for b in BuilderRegistry::default().iter() {
        assert_eq!(b.build(5, &spec).unwrap(), parsed.poly, "{}", b.name());
    }
}

#[test]
fn hatp_gegenbauer_basis_tags_lambda() {
    let o = matgeg(&["hatp", "--two-ell", "2", "--nu", "1", "--n", "4", "--basis", "gegenbauer"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["basis"], "gegenbauer");
    assert_eq!(v["lambda"], "3");
    // F_{k,n} vanishes for k > min(n, 2l)
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 3);
}

#[test]
fn hatp_unknown_builder_is_config_error() {
    let o = matgeg(&["hatp", "--n", "2", "--builder", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn genfun_json_descriptor() {
    for two_ell in ["1", "2", "4"] {
        let o = matgeg(&["genfun", "--two-ell", two_ell, "--nu", "1", "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let v = json(&o);
        let l2: u64 = two_ell.parse().unwrap();
        assert!(v["verified_order"].as_u64().unwrap() >= 2 * l2 + 6);
        assert_eq!(v["denominator"]["base"], "1-2*x*t+t^2");
    }
}

#[test]
fn genfun_text_at_l1_has_denominator_exponent_nu_plus_3() {
    let o = matgeg(&["genfun", "--two-ell", "2", "--nu", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("^(nu+3)"));
    assert!(out.contains("N[0][0] = 1 + nu + 2*x*t - 3*t^2 - nu*t^2"));
}

#[test]
fn zeros_middle_entry_l2() {
    let o = matgeg(&["zeros", "--two-ell", "4", "--nu", "3", "--n", "30", "--entry", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 30);
    let nonreal: Vec<_> = rows.iter().filter(|r| r[7].parse::<f64>().unwrap().abs() > 1e-8).collect();
    assert_eq!(nonreal.len(), 2);
    for r in nonreal {
        assert!(r[6].parse::<f64>().unwrap().abs() < 1e-8);
    }
    assert!(String::from_utf8_lossy(&o.stderr).contains("imaginary_pairs=1"));
}

#[test]
fn zeros_echelon_one_real_requirement_passes() {
    let o = matgeg(&["zeros", "--two-ell", "4", "--nu", "3", "--n", "29..30", "--echelon", "1", "--require", "real,interlace"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn zeros_failed_requirement_sets_exit_code() {
    let o = matgeg(&["zeros", "--two-ell", "3", "--nu", "1", "--n", "8", "--entry", "1,1", "--require", "real"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn zeros_empty_range_gives_header_only() {
    let o = matgeg(&["zeros", "--two-ell", "2", "--nu", "1", "--n", "5..4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "two_ell,nu,n,i,j,echelon,re,im,residual,status\n");
}

#[test]
fn zeros_entry_out_of_range() {
    let o = matgeg(&["zeros", "--two-ell", "2", "--n", "4", "--entry", "3,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn zeros_output_independent_of_thread_count() {
    let args = ["zeros", "--two-ell", "3", "--nu", "7/3", "--n", "0..10"];
    let one = matgeg(&[&["--threads", "1"][..], &args[..]].concat());
    let four = matgeg(&[&["--threads", "4"][..], &args[..]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn verify_json_independent_of_thread_count() {
    let args = ["verify", "all", "--two-ell", "1", "--nu", "1/2", "--n-max", "5", "--format", "json"];
    let one = matgeg(&[&["--threads", "1"][..], &args[..]].concat());
    let many = matgeg(&[&["--threads", "3"][..], &args[..]].concat());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn zeros_writes_files() {
    let dir = std::env::temp_dir().join(format!("matgeg-cli-test-{}", std::process::id()));
    let csv_path = dir.join("z.csv");
    std::fs::create_dir_all(&dir).unwrap();
    let o = matgeg(&[
        "zeros", "--two-ell", "2", "--nu", "3", "--n", "6", "--entry", "1,1",
        "--out", csv_path.to_str().unwrap(), "--svg", dir.join("svg").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&csv_path).unwrap().starts_with("two_ell,nu,n"));
    let svg = std::fs::read_to_string(dir.join("svg").join("zeros_2l2_n6_1_1.svg")).unwrap();
    assert!(svg.contains("<svg"));
    std::fs::remove_dir_all(&dir).ok();
}
