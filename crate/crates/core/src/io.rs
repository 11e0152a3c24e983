//! Input parsing and report serialization.
//!
//! All rational numbers cross the boundary as exact `"p/q"` strings (a
//! bare `"p"` means an integer); floating-point literals are rejected so
//! no rounding can contaminate the exact arithmetic inside. Polynomials
//! serialize as coefficient arrays `[c₀, c₁, …]` and parse either from
//! such arrays or from display strings like `"1-2*t+3*t^4"`. CSV output
//! carries a versioned format tag in its first comment line; column
//! order is frozen per tag.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::curve::{
    BasePointStatus, CoverVerdict, GonalityBounds, HyperellipticDecision, Pencil,
    QuadricHullReport, ScrollBound, ScrollModel,
};
use crate::numset::{NumericalSemigroup, WeightReport};
use crate::series::Poly;
use crate::verify::ScanReport;
use crate::{Rat, RatPoly};

/// Errors from malformed input text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct IoError(pub String);

fn err(msg: impl Into<String>) -> IoError {
    IoError(msg.into())
}

// ---------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------

/// Parses `"p/q"` or `"p"` with arbitrary-precision integer parts.
pub fn rat_from_str(text: &str) -> Result<Rat, IoError> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num: BigInt =
        num.parse().map_err(|_| err(format!("not an integer: {num:?}")))?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| err(format!("not an integer: {d:?}")))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// Formats exactly: `"p/q"`, or `"p"` when the denominator is 1.
pub fn rat_to_string(value: &Rat) -> String {
    value.to_string()
}

// ---------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------

/// Parses polynomial display syntax: terms like `3`, `t`, `-t^2`,
/// `1/2*t^3`, `2t` joined by `+`/`-`, whitespace ignored.
pub fn poly_from_str(text: &str) -> Result<RatPoly, IoError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut terms: Vec<(Rat, usize)> = Vec::new();
    let bytes = compact.as_bytes();
    let mut start = 0;
    for i in 1..=bytes.len() {
        if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
            let piece = &compact[start..i];
            terms.push(parse_term(piece)?);
            start = i;
        }
    }
    let degree = terms.iter().map(|&(_, k)| k).max().unwrap_or(0);
    let mut coeffs = vec![Rat::zero(); degree + 1];
    for (c, k) in terms {
        coeffs[k] += c;
    }
    Ok(Poly::new(coeffs))
}

/// One signed term of the polynomial grammar.
fn parse_term(piece: &str) -> Result<(Rat, usize), IoError> {
    let (sign, body) = match piece.strip_prefix('-') {
        Some(rest) => (-Rat::one(), rest),
        None => (Rat::one(), piece.strip_prefix('+').unwrap_or(piece)),
    };
    if body.is_empty() {
        return Err(err(format!("dangling sign in term {piece:?}")));
    }
    let (coeff, exponent) = match body.find('t') {
        None => (rat_from_str(body)?, 0),
        Some(pos) => {
            let coeff_part = &body[..pos];
            let coeff = match coeff_part.strip_suffix('*').unwrap_or(coeff_part) {
                "" => Rat::one(),
                c => rat_from_str(c)?,
            };
            let exp_part = &body[pos + 1..];
            let exponent = if exp_part.is_empty() {
                1
            } else {
                let digits = exp_part
                    .strip_prefix('^')
                    .ok_or_else(|| err(format!("expected ^ after t in {piece:?}")))?;
                digits
                    .parse::<usize>()
                    .map_err(|_| err(format!("bad exponent in {piece:?}")))?
            };
            (coeff, exponent)
        }
    };
    Ok((sign * coeff, exponent))
}

/// Coefficient array of exact strings, the JSON form of a polynomial.
pub fn poly_to_json(p: &RatPoly) -> serde_json::Value {
    serde_json::Value::Array(
        p.coeffs().iter().map(|c| serde_json::Value::String(c.to_string())).collect(),
    )
}

fn rat_from_json(v: &serde_json::Value) -> Result<Rat, IoError> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rat::from_integer(u.into()))
            } else {
                Err(err(format!(
                    "floating-point coefficient {n}: use \"p/q\" strings for exact rationals"
                )))
            }
        }
        serde_json::Value::String(s) => rat_from_str(s),
        other => Err(err(format!("expected integer or \"p/q\" string, got {other}"))),
    }
}

fn rat_from_toml(v: &toml::Value) -> Result<Rat, IoError> {
    match v {
        toml::Value::Integer(i) => Ok(Rat::from_integer((*i).into())),
        toml::Value::String(s) => rat_from_str(s),
        toml::Value::Float(f) => Err(err(format!(
            "floating-point coefficient {f}: use \"p/q\" strings for exact rationals"
        ))),
        other => Err(err(format!("expected integer or \"p/q\" string, got {other}"))),
    }
}

// ---------------------------------------------------------------------
// Curve input files
// ---------------------------------------------------------------------

/// On-disk format of a curve parametrization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveFileFormat {
    Json,
    Toml,
}

impl CurveFileFormat {
    /// Chooses by file extension; `.toml` is TOML, everything else JSON.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => CurveFileFormat::Toml,
            _ => CurveFileFormat::Json,
        }
    }
}

/// Reads `{"f": [[coeffs of f₀], [coeffs of f₁], …]}` with coefficients
/// as integers or `"p/q"` strings.
pub fn curve_from_str(text: &str, format: CurveFileFormat) -> Result<Vec<RatPoly>, IoError> {
    let rows: Vec<Vec<Rat>> = match format {
        CurveFileFormat::Json => {
            let value: serde_json::Value =
                serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
            let rows = value
                .get("f")
                .and_then(|f| f.as_array())
                .ok_or_else(|| err("expected an object with an array field \"f\""))?;
            rows.iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| err("each entry of \"f\" must be a coefficient array"))?
                        .iter()
                        .map(rat_from_json)
                        .collect()
                })
                .collect::<Result<_, _>>()?
        }
        CurveFileFormat::Toml => {
            let value: toml::Value =
                text.parse().map_err(|e| err(format!("invalid TOML: {e}")))?;
            let rows = value
                .get("f")
                .and_then(|f| f.as_array())
                .ok_or_else(|| err("expected an array field \"f\""))?;
            rows.iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| err("each entry of \"f\" must be a coefficient array"))?
                        .iter()
                        .map(rat_from_toml)
                        .collect()
                })
                .collect::<Result<_, _>>()?
        }
    };
    if rows.is_empty() {
        return Err(err("\"f\" must contain at least one coordinate"));
    }
    Ok(rows.into_iter().map(Poly::new).collect())
}

/// Reads `{"generators": […]}` or `{"gaps": […]}`.
pub fn semigroup_from_json(text: &str) -> Result<NumericalSemigroup, IoError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
    let list = |key: &str| -> Result<Option<Vec<u64>>, IoError> {
        match value.get(key) {
            None => Ok(None),
            Some(serde_json::Value::Array(items)) => items
                .iter()
                .map(|v| {
                    v.as_u64().ok_or_else(|| {
                        err(format!("{key} entries must be nonnegative integers, got {v}"))
                    })
                })
                .collect::<Result<Vec<u64>, _>>()
                .map(Some),
            Some(other) => Err(err(format!("{key} must be an array, got {other}"))),
        }
    };
    match (list("generators")?, list("gaps")?) {
        (Some(gens), None) => {
            NumericalSemigroup::from_generators(&gens).map_err(|e| err(e.to_string()))
        }
        (None, Some(gaps)) => {
            NumericalSemigroup::from_gaps(&gaps).map_err(|e| err(e.to_string()))
        }
        (Some(_), Some(_)) => Err(err("give either \"generators\" or \"gaps\", not both")),
        (None, None) => Err(err("expected a \"generators\" or \"gaps\" field")),
    }
}

// ---------------------------------------------------------------------
// Report JSON (for types that carry polynomials)
// ---------------------------------------------------------------------

fn status_str(status: BasePointStatus) -> &'static str {
    match status {
        BasePointStatus::Absent => "absent",
        BasePointStatus::Removable => "removable",
        BasePointStatus::NonRemovable => "non-removable",
    }
}

pub fn pencil_json(p: &Pencil) -> serde_json::Value {
    serde_json::json!({
        "f": poly_to_json(&p.f),
        "h": poly_to_json(&p.h),
        "degree": p.degree,
        "status": status_str(p.status),
        "values_outside_semigroup": p.outside,
        "stalk_values_below": p.stalk_values.values_below(),
        "stalk_cofinite_from": p.stalk_values.cofinite_from(),
    })
}

pub fn gonality_json(g: &GonalityBounds) -> serde_json::Value {
    serde_json::json!({
        "lower": g.lower,
        "upper": g.upper,
        "exact": g.exact,
        "flagged": g.flagged,
        "note": g.note,
        "witness": pencil_json(&g.witness),
    })
}

pub fn hyperelliptic_json(d: &HyperellipticDecision) -> serde_json::Value {
    match d {
        HyperellipticDecision::Yes(h) => serde_json::json!({
            "decision": "yes",
            "witness_denominator": poly_to_json(h),
        }),
        HyperellipticDecision::No => serde_json::json!({ "decision": "no" }),
        HyperellipticDecision::Undetermined => {
            serde_json::json!({ "decision": "undetermined" })
        }
    }
}

pub fn quadric_hull_json(q: &QuadricHullReport) -> serde_json::Value {
    serde_json::json!({
        "tuple": q.tuple.iter().map(poly_to_json).collect::<Vec<_>>(),
        "dimension": q.dimension,
        "series_degree": q.series_degree,
        "map_degree": q.map_degree,
        "image_degree": q.image_degree,
        "base_point_free": q.base_point_free,
        "verdict": match q.verdict {
            CoverVerdict::Birational => "birational".to_string(),
            CoverVerdict::DoubleCover => "double-cover".to_string(),
            CoverVerdict::HigherCover(d) => format!("cover-of-degree-{d}"),
        },
    })
}

pub fn scroll_bound_json(b: &ScrollBound) -> serde_json::Value {
    serde_json::json!({
        "codimension": b.codimension,
        "sections": b.sections,
        "directrix": b.directrix.iter().map(poly_to_json).collect::<Vec<_>>(),
        "matrix": b
            .matrix
            .iter()
            .map(|row| row.iter().map(poly_to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn scroll_model_json(m: &ScrollModel, contained: bool) -> serde_json::Value {
    serde_json::json!({
        "coordinates": m.coords.iter().map(poly_to_json).collect::<Vec<_>>(),
        "blocks": m.blocks,
        "contained": contained,
    })
}

/// Pretty JSON with a trailing newline; field order is fixed by the
/// type, so equal values give byte-identical text.
pub fn to_json_pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn join_spaced(xs: &[u64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// One row per semigroup; `generators` and `kappa` cells are
/// space-separated lists.
pub fn weight_reports_csv(reports: &[WeightReport]) -> String {
    let mut out = String::from("# format: semicurve.weights.v1\n");
    out.push_str("generators,g,c,W_S,W_K,symmetric,hyperelliptic,bielliptic,kappa,tech_hyp\n");
    for r in reports {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            csv_cell(&join_spaced(&r.generators)),
            r.genus,
            r.conductor,
            r.weight,
            r.dual_weight,
            r.symmetric,
            r.hyperelliptic,
            r.bielliptic,
            csv_cell(&join_spaced(&r.kappa)),
            r.technical_hypothesis,
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Header comments carry the scan totals; the table is the per-genus
/// roll-up.
pub fn scan_report_csv(report: &ScanReport) -> String {
    let mut out = String::from("# format: semicurve.scan.v1\n");
    writeln!(out, "# statement: {}", report.statement).unwrap();
    writeln!(out, "# genus: {}..={}", report.genus_min, report.genus_max).unwrap();
    writeln!(
        out,
        "# checked: {}, satisfied: {}, violated: {}",
        report.checked, report.satisfied, report.violated
    )
    .unwrap();
    match report.threshold_genus {
        Some(t) => writeln!(out, "# threshold_genus: {t}").unwrap(),
        None => writeln!(out, "# threshold_genus: none").unwrap(),
    }
    for note in &report.notes {
        writeln!(out, "# note: {note}").unwrap();
    }
    for v in &report.violations {
        writeln!(
            out,
            "# violation: <{}> genus {}: {}",
            join_spaced(&v.generators),
            v.genus,
            v.detail
        )
        .unwrap();
    }
    out.push_str("genus,checked,violated,note\n");
    for line in &report.per_genus {
        writeln!(
            out,
            "{},{},{},{}",
            line.genus,
            line.checked,
            line.violated,
            csv_cell(&line.note)
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_strings_round_trip_the_grammar() {
        let p = poly_from_str("1-2*t+3*t^4").unwrap();
        assert_eq!(p.coeff(0), Rat::from_integer(1.into()));
        assert_eq!(p.coeff(1), Rat::from_integer((-2).into()));
        assert_eq!(p.coeff(2), Rat::zero());
        assert_eq!(p.coeff(4), Rat::from_integer(3.into()));
        assert_eq!(poly_from_str("t").unwrap(), Poly::monomial(Rat::one(), 1));
        assert_eq!(
            poly_from_str(" 1/2 * t^2 - t ").unwrap(),
            Poly::new(vec![
                Rat::zero(),
                -Rat::one(),
                Rat::new(1.into(), 2.into())
            ])
        );
        assert_eq!(poly_from_str("2t+t").unwrap(), Poly::monomial(Rat::from_integer(3.into()), 1));
        assert_eq!(poly_from_str("0").unwrap(), Poly::zero());
        assert!(poly_from_str("").is_err());
        assert!(poly_from_str("t^").is_err());
        assert!(poly_from_str("1.5").is_err());
    }

    #[test]
    fn curve_files_accept_integers_and_exact_strings_only() {
        let json = r#"{"f": [[1], ["0", "1/2", 3]]}"#;
        let tuple = curve_from_str(json, CurveFileFormat::Json).unwrap();
        assert_eq!(tuple.len(), 2);
        assert_eq!(tuple[1].coeff(1), Rat::new(1.into(), 2.into()));
        assert_eq!(tuple[1].coeff(2), Rat::from_integer(3.into()));

        let float = r#"{"f": [[1.0], [0, 1]]}"#;
        assert!(curve_from_str(float, CurveFileFormat::Json).is_err());

        let toml_text = "f = [[1], [\"0\", \"1/2\", 3]]";
        let from_toml = curve_from_str(toml_text, CurveFileFormat::Toml).unwrap();
        assert_eq!(from_toml, tuple);
        assert!(curve_from_str("f = [[1.5]]", CurveFileFormat::Toml).is_err());
    }

    #[test]
    fn semigroup_input_takes_generators_or_gaps() {
        let s = semigroup_from_json(r#"{"generators": [3, 13, 14]}"#).unwrap();
        assert_eq!(s.genus(), 8);
        let t = semigroup_from_json(r#"{"gaps": [1, 2, 4, 5, 7, 8, 10, 11]}"#).unwrap();
        assert_eq!(t.generators(), &[3, 13, 14]);
        assert!(semigroup_from_json(r#"{"generators": [2], "gaps": [1]}"#).is_err());
        assert!(semigroup_from_json(r#"{}"#).is_err());
        assert!(semigroup_from_json(r#"{"generators": [2, 4]}"#).is_err());
    }

    #[test]
    fn rational_strings_are_exact() {
        assert_eq!(rat_from_str("-3/6").unwrap(), Rat::new((-1).into(), 2.into()));
        assert_eq!(rat_to_string(&Rat::new(3.into(), 4.into())), "3/4");
        assert_eq!(rat_to_string(&Rat::from_integer(7.into())), "7");
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("0.5").is_err());
    }

    #[test]
    fn weight_csv_has_versioned_header_and_frozen_columns() {
        let s = NumericalSemigroup::from_generators(&[3, 13, 14]).unwrap();
        let csv = weight_reports_csv(&[s.report()]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# format: semicurve.weights.v1");
        assert_eq!(
            lines[1],
            "generators,g,c,W_S,W_K,symmetric,hyperelliptic,bielliptic,kappa,tech_hyp"
        );
        assert!(lines[2].starts_with("3 13 14,8,12,"));
    }
}
