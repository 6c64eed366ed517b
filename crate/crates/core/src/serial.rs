//! JSON forms. Rationals are strings `"p/q"` (or `"p"`), so nothing is lost in transit.

use serde_json::{json, Value};

use crate::connection::MatGegSeries;
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, RatMatrix, Rational};
use crate::genfun::ClosedForm;
use crate::matpoly::MatPoly;

fn bad(what: &str) -> Error {
    Error::Parse(format!("expected {what}"))
}

pub fn rational_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn parse_rational_json(v: &Value) -> Result<Rational> {
    parse_rational(v.as_str().ok_or_else(|| bad("rational string"))?)
}

pub fn matrix_json(m: &RatMatrix) -> Value {
    let n = m.dim();
    Value::Array((0..n).map(|i| Value::Array((0..n).map(|j| rational_json(&m[(i, j)])).collect())).collect())
}

pub fn parse_matrix_json(v: &Value) -> Result<RatMatrix> {
    let rows = v.as_array().ok_or_else(|| bad("matrix rows"))?;
    let n = rows.len();
    let mut m = RatMatrix::zero(n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == n).ok_or_else(|| bad("square matrix"))?;
        for (j, c) in row.iter().enumerate() {
            m[(i, j)] = parse_rational_json(c)?;
        }
    }
    Ok(m)
}

/// `coeffs[d]` is the matrix multiplying `x^d`.
pub fn hat_p_json(two_ell: usize, nu: &Rational, n: usize, p: &MatPoly) -> Value {
    json!({
        "two_ell": two_ell,
        "nu": rational_json(nu),
        "n": n,
        "basis": "monomial",
        "coeffs": p.coeffs().iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

/// `coeffs[k]` is `F_{k,n}`, multiplying `C_{n-k}^(lambda)`.
pub fn hat_p_geg_json(two_ell: usize, nu: &Rational, s: &MatGegSeries) -> Value {
    json!({
        "two_ell": two_ell,
        "nu": rational_json(nu),
        "n": s.n,
        "basis": "gegenbauer",
        "lambda": rational_json(&s.lambda),
        "coeffs": s.terms.iter().map(matrix_json).collect::<Vec<_>>(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedHatP {
    pub two_ell: usize,
    pub nu: Rational,
    pub n: usize,
    pub poly: MatPoly,
}

pub fn parse_hat_p_json(v: &Value) -> Result<ParsedHatP> {
    let field = |k: &str| v.get(k).ok_or_else(|| bad(k));
    let two_ell = field("two_ell")?.as_u64().ok_or_else(|| bad("two_ell"))? as usize;
    let nu = parse_rational_json(field("nu")?)?;
    let n = field("n")?.as_u64().ok_or_else(|| bad("n"))? as usize;
    let mats: Vec<RatMatrix> = field("coeffs")?
        .as_array()
        .ok_or_else(|| bad("coeffs"))?
        .iter()
        .map(parse_matrix_json)
        .collect::<Result<_>>()?;
    let dim = two_ell + 1;
    if mats.iter().any(|m| m.dim() != dim) {
        return Err(bad("matrices of size 2l+1"));
    }
    let poly = match field("basis")?.as_str() {
        Some("monomial") => MatPoly::new(dim, mats),
        Some("gegenbauer") => {
            let lambda = parse_rational_json(field("lambda")?)?;
            MatGegSeries { lambda, n, terms: mats }.to_matpoly()?
        }
        _ => return Err(bad("basis 'monomial' or 'gegenbauer'")),
    };
    Ok(ParsedHatP { two_ell, nu, n, poly })
}

pub fn closed_form_json(nu: &Rational, form: &ClosedForm) -> Value {
    let offset = form.denominator_offset();
    json!({
        "two_ell": form.size.two_ell(),
        "checked_at_nu": rational_json(nu),
        "lambda_degree": form.degree,
        "denominator": {
            "base": "1-2*x*t+t^2",
            "exponent": format!("nu+{offset}"),
            "offset": offset,
        },
        "verified_order": form.verified_order,
        "integral": form.is_integral(),
        "numerator_layout": "[t][x][nu]",
        "numerator": form.numerator.iter().map(|row| {
            row.iter().map(|p| {
                p.tensor().iter().map(|tx| {
                    tx.iter().map(|cell| cell.iter().map(rational_json).collect::<Vec<_>>()).collect::<Vec<_>>()
                }).collect::<Vec<_>>()
            }).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "numerator_text": form.numerator.iter().map(|row| row.iter().map(|p| p.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::hat_p_series;
    use crate::exact::{rat, SizeParam};
    use crate::mvop::hat_p;
    use crate::weight::WeightSpec;

    #[test]
    fn hat_p_round_trip_both_bases() {
        let spec = WeightSpec::new(2, rat(3, 2)).unwrap();
        let p = hat_p(4, &spec);
        let v = hat_p_json(2, &spec.nu, 4, &p);
        let text = serde_json::to_string(&v).unwrap();
        let back = parse_hat_p_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.poly, p);
        let g = hat_p_geg_json(2, &spec.nu, &hat_p_series(4, &spec.nu, SizeParam::new(2)).unwrap());
        assert_eq!(parse_hat_p_json(&g).unwrap().poly, p);
        assert_eq!(v["coeffs"][0][0][0], Value::String(crate::exact::format_rational(&p.coeffs()[0][(0, 0)])));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_hat_p_json(&json!({"two_ell": 1})).is_err());
        assert!(parse_rational_json(&json!("1/0")).is_err());
    }
}
