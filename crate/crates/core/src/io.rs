//! File formats: quantic JSON in, covariant / syzygy / classification JSON
//! and trajectory CSV out.
//!
//! Rationals travel as strings (`"3"`, `"-2/3"`); floats are written with 17
//! significant digits.

use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::algebra::{format_rational, parse_rational, BinaryQuantic, HomogeneousPoly};
use crate::covariants::{covariant_by_name, CovariantName, SyzygyResiduals};
use crate::error::{Error, Result};
use crate::flow::{monitor_properness, FlowReport};
use crate::weierstrass::Classification;

/// On-disk form of a quantic: `{"order": N, "coefficients": ["a0", ..., "aN"]}`
/// with binomial-convention coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuanticFile {
    pub order: usize,
    pub coefficients: Vec<String>,
}

impl QuanticFile {
    pub fn to_quantic(&self) -> Result<BinaryQuantic> {
        if self.order < 1 {
            return Err(Error::InvalidQuantic("order must be at least 1".into()));
        }
        if self.coefficients.len() != self.order + 1 {
            return Err(Error::InvalidQuantic(format!(
                "order {} needs exactly {} coefficients, got {}",
                self.order,
                self.order + 1,
                self.coefficients.len()
            )));
        }
        let a = self
            .coefficients
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()?;
        BinaryQuantic::new(a)
    }
}

impl From<&BinaryQuantic> for QuanticFile {
    fn from(u: &BinaryQuantic) -> Self {
        Self {
            order: u.order(),
            coefficients: u.coefficients().iter().map(format_rational).collect(),
        }
    }
}

/// Parses quantic JSON. Syntax errors carry serde's line/column position.
pub fn parse_quantic(text: &str) -> Result<BinaryQuantic> {
    let file: QuanticFile = serde_json::from_str(text)?;
    file.to_quantic()
}

pub fn quantic_to_json(u: &BinaryQuantic) -> String {
    serde_json::to_string(&QuanticFile::from(u)).expect("plain data serializes")
}

/// A float as a JSON number with 17 significant digits; non-finite becomes null.
pub fn float17(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    serde_json::from_str(&format!("{x:.16e}")).expect("formatted float is valid JSON")
}

/// `{"degree": d, "coefficients": ["c0", ..., "cd"]}` with raw coefficients of
/// `p^(d-k) q^k`.
pub fn poly_to_json(poly: &HomogeneousPoly) -> Value {
    json!({
        "degree": poly.degree(),
        "coefficients": poly.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
    })
}

pub fn poly_from_json(value: &Value) -> Result<HomogeneousPoly> {
    let bad = || Error::InvalidArgument("malformed polynomial JSON".into());
    let coeffs = value
        .get("coefficients")
        .and_then(Value::as_array)
        .ok_or_else(bad)?
        .iter()
        .map(|c| c.as_str().ok_or_else(bad).and_then(parse_rational))
        .collect::<Result<Vec<_>>>()?;
    let poly = HomogeneousPoly::new(coeffs)?;
    match value.get("degree").and_then(Value::as_u64) {
        Some(d) if d as usize == poly.degree() => Ok(poly),
        _ => Err(bad()),
    }
}

/// Covariant document for the requested members.
pub fn covariants_to_json(u: &BinaryQuantic, names: &[CovariantName]) -> Result<Value> {
    let mut covariants = Map::new();
    for &name in names {
        covariants.insert(name.label().to_string(), poly_to_json(&covariant_by_name(u, name)?));
    }
    Ok(json!({
        "order": u.order(),
        "coefficients": QuanticFile::from(u).coefficients,
        "covariants": covariants,
    }))
}

fn zero_flag(p: &HomogeneousPoly) -> &'static str {
    if p.is_zero() {
        "zero"
    } else {
        "nonzero"
    }
}

/// `{"main": "zero"|"nonzero", "switch": ..., "three": ..., "gradient": ...}`.
pub fn syzygies_to_json(res: &SyzygyResiduals) -> Value {
    let mut map = Map::new();
    for (name, poly) in res.named() {
        map.insert(name.to_string(), Value::from(zero_flag(poly)));
    }
    Value::Object(map)
}

pub fn classification_to_json(c: &Classification) -> Value {
    json!({
        "category": c.category,
        "u_value": format_rational(&c.u_value),
        "s_constant": c.s_constant,
        "proper": c.proper,
        "phi_nonconstant": c.phi_nonconstant,
        "g2": format_rational(&c.g2),
        "g3": format_rational(&c.g3),
        "delta": c.delta.as_ref().map(format_rational),
    })
}

/// Trajectory CSV with header `t,p,q,u,phi,phi_dot,g2,g3,residual`.
pub fn write_trajectory_csv<W: Write>(report: &FlowReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "p", "q", "u", "phi", "phi_dot", "g2", "g3", "residual"])?;
    for s in &report.samples {
        let row = [
            s.t,
            s.p,
            s.q,
            s.u,
            s.phi,
            s.phi_dot_analytic,
            s.g2,
            s.g3,
            s.weierstrass_residual,
        ];
        w.write_record(row.iter().map(|x| format!("{x:.16e}")))?;
    }
    w.flush()?;
    Ok(())
}

/// Summary of a flow run; `proper` uses `proper_tol`.
pub fn flow_summary_to_json(report: &FlowReport, proper_tol: f64) -> Value {
    let opt = |x: Option<f64>| x.map(float17).unwrap_or(Value::Null);
    json!({
        "order": report.order,
        "method": report.method,
        "samples": report.samples.len(),
        "t_final": float17(report.samples.last().map(|s| s.t).unwrap_or(0.0)),
        "diverged": report.diverged,
        "u_drift_max": float17(report.u_drift_max),
        "residual_max": float17(report.residual_max),
        "second_order_error_max": opt(report.second_order_error_max),
        "fd_consistency_error": opt(report.fd_consistency_error),
        "proper": monitor_properness(report, proper_tol),
        "proper_tolerance": float17(proper_tol),
        "lame_parameter": float17(report.lame_parameter),
    })
}
