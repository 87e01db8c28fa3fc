//! JSON building blocks. Keys are sorted by `serde_json::Map`; integers that
//! can exceed 2^53 are emitted as decimal strings.

use serde_json::{json, Map, Value};
use sfd_core::{
    CountReport, EulerReport, Polynomial, PrimeLocalDatum, PropertyAWitness, SquarefreenessVerdict,
};

pub fn polynomial(poly: &Polynomial) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("poly".into(), json!(poly.to_canonical_string()));
    m.insert("arity".into(), json!(poly.arity()));
    m.insert("total_degree".into(), json!(poly.total_degree()));
    m.insert("per_var_degrees".into(), json!(poly.per_var_degrees()));
    m
}

pub fn verdict(v: &SquarefreenessVerdict) -> Value {
    json!({
        "is_squarefree": v.is_squarefree,
        "witness": v.witness.as_ref().map(Polynomial::to_canonical_string),
    })
}

pub fn witnesses(ws: &[PropertyAWitness]) -> Value {
    ws.iter()
        .map(|w| json!({"p": w.p, "fixed_divisor": w.fixed_divisor.to_string()}))
        .collect()
}

pub fn local_datum(d: &PrimeLocalDatum) -> Value {
    let factor = d.factor();
    json!({
        "p": d.p,
        "rho": d.rho.to_string(),
        "total": d.total.to_string(),
        "method": d.method.as_str(),
        "factor": (d.total - d.rho) as f64 / d.total as f64,
        "factor_rational": factor.to_string(),
    })
}

/// Summary of the last partial product.
pub fn euler(r: &EulerReport) -> Value {
    json!({
        "bound": r.bound,
        "primes": r.records.len(),
        "partial_float": r.final_float(),
        "partial_rational": r.final_rational().map(|q| q.to_string()),
        "error_bound": r.final_error_bound(),
        "is_zero": r.is_exactly_zero,
    })
}

pub fn count(c: &CountReport) -> Value {
    json!({
        "radii": c.box_spec.radii(),
        "N": c.count,
        "density": c.density_f64(),
        "density_rational": c.density().to_string(),
        "normalizer": c.normalizer.to_string(),
        "lattice_points": c.lattice_points.to_string(),
        "zeros_excluded": c.zeros,
    })
}

pub fn comparison(last: &CountReport, product: &EulerReport) -> Value {
    let empirical = last.density_f64();
    let truncated = product.final_float();
    json!({
        "empirical_density": empirical,
        "empirical_density_rational": last.density().to_string(),
        "truncated_product": truncated,
        "truncated_product_rational": product.final_rational().map(|q| q.to_string()),
        "difference": empirical - truncated,
    })
}

/// Pretty JSON with a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("Value serialization cannot fail");
    s.push('\n');
    s
}

/// One `path = value` line per leaf, in key order.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    flatten(v, String::new(), &mut out);
    out
}

fn flatten(v: &Value, path: String, out: &mut String) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, child) in m {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                flatten(child, p, out);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, child) in a.iter().enumerate() {
                flatten(child, format!("{path}[{i}]"), out);
            }
        }
        Value::String(s) => out.push_str(&format!("{path} = {s}\n")),
        other => out.push_str(&format!("{path} = {other}\n")),
    }
}
