//! Batch driver: certify every catalogue entry, replay the obstruction grid
//! for `n = 3..=8`, and compare the verdict lines with the golden file.

use crate::commands::{obstruction_text, toric_text, Report};
use crate::render::{poly_json, verdict_json};
use anyhow::{anyhow, bail, Result};
use nilspec_core::catalogue::{self, CatalogueEntry};
use nilspec_core::lie::{self, ExpansionCertificate};
use nilspec_core::obstruction::{
    sphere_theorem_check, toric_corollary_check, AttractorPairSpec, BettiVector, ObstructionVerdict,
};
use rayon::prelude::*;
use serde_json::json;
use std::collections::BTreeSet;
use std::path::Path;

pub const GRID: std::ops::RangeInclusive<usize> = 3..=8;

struct EntryResult {
    betti: Vec<usize>,
    cert: ExpansionCertificate,
}

fn certify(entry: &CatalogueEntry) -> Result<EntryResult, String> {
    // the algebra is checked first so a Jacobi failure is not reported as a
    // bracket the automorphism fails to preserve
    let betti =
        lie::betti(&entry.algebra).map_err(|e| format!("{}: {e}", entry.algebra_path.display()))?;
    let aut = lie::check_automorphism(&entry.algebra, &entry.automorphism)
        .map_err(|e| format!("{}: {e}", entry.automorphism_path.display()))?;
    let cert = lie::certify_expanding_on_cohomology(&aut)
        .map_err(|e| format!("{}: {e}", entry.algebra_path.display()))?;
    Ok(EntryResult { betti, cert })
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn verify_paper(dir: &Path) -> Result<Report> {
    let cat = catalogue::load(dir).map_err(|e| anyhow!("{e}"))?;
    let results: Vec<Result<EntryResult, String>> = cat.entries.par_iter().map(certify).collect();
    // entries sharing an algebra file report its failure once
    let errors: BTreeSet<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    if !errors.is_empty() {
        bail!(
            "catalogue entries failed:\n{}",
            errors
                .iter()
                .map(|e| format!("  {e}"))
                .collect::<Vec<_>>()
                .join("\n")
        );
    }

    let mut report = Report::default();
    let mut verdict_lines = Vec::new();
    let mut alarms = 0usize;
    report.human.push("catalogue".to_string());
    for (entry, result) in cat.entries.iter().zip(results) {
        let EntryResult { betti, cert } = result.expect("errors handled above");
        let kinds: Vec<&str> = cert.degrees.iter().map(|d| d.verdict.kind()).collect();
        let n = entry.algebra.dim();
        verdict_lines.push(format!(
            "entry {}: betti {}; degrees 1..{n} {}",
            entry.name,
            join(&betti),
            kinds.join(" ")
        ));
        let entry_alarms = cert.alarms();
        alarms += entry_alarms.len() + usize::from(!cert.dual_consistent());
        report.human.push(format!(
            "  {:<18} dim {n}  betti {:<22} automorphism {}",
            entry.name,
            join(&betti),
            cert.automorphism.kind()
        ));
        for d in &cert.degrees {
            report.human.push(format!(
                "    degree {}: {:<11} char poly {}",
                d.degree,
                d.verdict.kind(),
                d.char_poly
            ));
        }
        report.machine.push(json!({
            "row": "entry",
            "name": entry.name,
            "dim": n,
            "betti": betti,
            "automorphism": verdict_json(&cert.automorphism),
            "degrees": cert.degrees.iter().map(|d| json!({
                "degree": d.degree,
                "char_poly": poly_json(&d.char_poly),
                "verdict": d.verdict.kind(),
            })).collect::<Vec<_>>(),
            "alarms": entry_alarms,
        }));
    }

    report.human.push("obstruction grid".to_string());
    for n in GRID {
        let ones = BettiVector::all_ones(n - 2);
        let spec = AttractorPairSpec::new(n, (2, ones.clone()), (2, ones))?;
        let v = sphere_theorem_check(&spec);
        verdict_lines.push(format!("sphere-check n={n}: {}", v.tag()));
        report
            .human
            .push(format!("  sphere-check n={n}: {}", obstruction_text(&v)));
        report
            .machine
            .push(json!({ "row": "sphere-check", "n": n, "verdict": v }));
    }
    for n in GRID.filter(|&n| n >= 4) {
        let spec = AttractorPairSpec::new(
            n,
            (2, BettiVector::torus(n - 2)),
            (3, BettiVector::torus(n - 3)),
        )?;
        let v = sphere_theorem_check(&spec);
        let l = match &v {
            ObstructionVerdict::Case1Contradiction { degree, .. } => format!(" l={degree}"),
            _ => String::new(),
        };
        verdict_lines.push(format!("case1 n={n}: {}{l}", v.tag()));
        report
            .human
            .push(format!("  case1 n={n}: {}", obstruction_text(&v)));
        report
            .machine
            .push(json!({ "row": "case1", "n": n, "verdict": v }));
    }
    for n in GRID {
        let r = toric_corollary_check(n)?;
        verdict_lines.push(format!("toric n={n}: {}", toric_text(&r)));
        report
            .human
            .push(format!("  toric n={n}: {}", toric_text(&r)));
        report
            .machine
            .push(json!({ "row": "toric", "n": n, "report": r }));
    }

    let expected: Vec<&str> = cat
        .golden
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut mismatches = Vec::new();
    for k in 0..expected.len().max(verdict_lines.len()) {
        let want = expected.get(k).copied().unwrap_or("<missing>");
        let got = verdict_lines.get(k).map_or("<missing>", String::as_str);
        if want != got {
            mismatches.push(json!({ "line": k + 1, "expected": want, "actual": got }));
            report.human.push(format!(
                "golden mismatch at line {}: expected `{want}`, got `{got}`",
                k + 1
            ));
        }
    }
    let golden_ok = mismatches.is_empty();
    report.human.push(format!(
        "alarms: {alarms}; golden file: {}",
        if golden_ok { "match" } else { "MISMATCH" }
    ));
    report.machine.push(json!({
        "row": "summary",
        "entries": cat.entries.len(),
        "alarms": alarms,
        "golden_match": golden_ok,
        "mismatches": mismatches,
    }));
    report.status = u8::from(alarms > 0 || !golden_ok);
    Ok(report)
}
