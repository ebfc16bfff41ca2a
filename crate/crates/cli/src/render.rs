//! Human and JSON renderings of library results. Rationals are always
//! written exactly as `p` or `p/q`.

use nilspec_core::linalg::{Poly, QMat, Rat};
use nilspec_core::spectra::{ExpansionVerdict, NonExpansion};
use serde_json::{json, Value};

pub fn intervals_json(iv: &[(Rat, Rat)]) -> Value {
    Value::Array(
        iv.iter()
            .map(|(a, b)| json!([a.to_string(), b.to_string()]))
            .collect(),
    )
}

fn intervals_text(iv: &[(Rat, Rat)]) -> String {
    iv.iter()
        .map(|(a, b)| format!("({a}, {b}]"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn poly_json(p: &Poly) -> Value {
    json!(p.to_high_first_strings())
}

pub fn matrix_json(m: &QMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| json!(m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()))
            .collect(),
    )
}

pub fn verdict_json(v: &ExpansionVerdict) -> Value {
    match v {
        ExpansionVerdict::Expanding(c) => json!({
            "verdict": "Expanding",
            "inside": c.inside,
            "on_circle": c.on_circle,
            "outside": c.outside,
        }),
        ExpansionVerdict::NotExpanding(reason) => {
            let mut obj = match reason {
                NonExpansion::ZeroRoot { multiplicity } => json!({ "multiplicity": multiplicity }),
                NonExpansion::DeterminantTooSmall { constant_ratio } => {
                    json!({ "constant_ratio": constant_ratio.to_string() })
                }
                NonExpansion::RootOnUnitCircle(ev) => json!({
                    "at_one": ev.at_one,
                    "at_minus_one": ev.at_minus_one,
                    "conjugate_pairs": ev.conjugate_pairs,
                    "trace_polynomial": poly_json(&ev.trace_polynomial),
                    "trace_intervals": intervals_json(&ev.trace_intervals),
                }),
                NonExpansion::RootInsideDisk(ev) => json!({
                    "inside": ev.counts.inside,
                    "outside": ev.counts.outside,
                    "real_intervals": intervals_json(&ev.real_intervals),
                }),
            };
            obj["verdict"] = json!("NotExpanding");
            obj["reason"] = json!(v.kind());
            obj
        }
    }
}

pub fn verdict_text(v: &ExpansionVerdict) -> String {
    match v {
        ExpansionVerdict::Expanding(c) => format!(
            "Expanding (roots inside {}, on circle {}, outside {})",
            c.inside, c.on_circle, c.outside
        ),
        ExpansionVerdict::NotExpanding(reason) => {
            let detail = match reason {
                NonExpansion::ZeroRoot { multiplicity } => {
                    format!("root 0 with multiplicity {multiplicity}")
                }
                NonExpansion::DeterminantTooSmall { constant_ratio } => {
                    format!("|p(0) / leading| = {constant_ratio} < 1")
                }
                NonExpansion::RootOnUnitCircle(ev) => {
                    let mut parts = Vec::new();
                    if ev.at_one > 0 {
                        parts.push(format!("root 1 with multiplicity {}", ev.at_one));
                    }
                    if ev.at_minus_one > 0 {
                        parts.push(format!("root -1 with multiplicity {}", ev.at_minus_one));
                    }
                    if ev.conjugate_pairs > 0 {
                        parts.push(format!(
                            "{} conjugate pair(s) with 2cos(theta) a root of {} in {}",
                            ev.conjugate_pairs,
                            ev.trace_polynomial,
                            intervals_text(&ev.trace_intervals)
                        ));
                    }
                    parts.join("; ")
                }
                NonExpansion::RootInsideDisk(ev) => {
                    let total = ev.counts.inside + ev.counts.on_circle + ev.counts.outside;
                    let mut s = format!(
                        "{} of {} roots inside the unit disk",
                        ev.counts.inside, total
                    );
                    if !ev.real_intervals.is_empty() {
                        s.push_str(&format!(
                            "; real roots in {}",
                            intervals_text(&ev.real_intervals)
                        ));
                    }
                    s
                }
            };
            format!("NotExpanding: {} ({detail})", v.kind())
        }
    }
}

pub fn rat_row(v: &[Rat]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
