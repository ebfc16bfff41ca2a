use crate::args::{
    BundleCommand, Expectation, LieCommand, MatrixCommand, PairArgs, PolyInput, SpectraCommand,
    TheoremCommand,
};
use crate::render::{matrix_json, poly_json, rat_row, verdict_json, verdict_text};
use anyhow::{anyhow, bail, Context, Result};
use nilspec_core::format::{parse_lie, parse_matrix, parse_poly_high_first};
use nilspec_core::lie::{self, LieAlgebra, LieError};
use nilspec_core::linalg::{intertwiner_space, verify_no_intertwiner, NoIntertwiner, QMat, ZMat};
use nilspec_core::multilinear::{exterior_power, ExteriorBasis};
use nilspec_core::obstruction::{
    gysin_boundary_betti, mv_surjectivity_gap, sphere_theorem_check, toric_corollary_check,
    AttractorPairSpec, BettiVector, ObstructionVerdict,
};
use nilspec_core::spectra::{is_expanding_poly, ExpansionVerdict};
use serde_json::{json, Value};
use std::path::Path;

/// Output of one command. `status` is 0 or 1; input errors travel as `Err`
/// and exit with 2.
#[derive(Debug, Default)]
pub struct Report {
    pub human: Vec<String>,
    pub machine: Vec<Value>,
    pub status: u8,
}

impl Report {
    fn one(human: String, machine: Value) -> Self {
        Report {
            human: vec![human],
            machine: vec![machine],
            status: 0,
        }
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn load_matrix(path: &Path) -> Result<QMat> {
    parse_matrix(&read_file(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

pub fn load_lie(path: &Path) -> Result<LieAlgebra> {
    parse_lie(&read_file(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn parse_betti(text: &str, flag: &str) -> Result<BettiVector> {
    let v = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| anyhow!("--{flag}: `{}` is not a nonnegative integer", t.trim()))
        })
        .collect::<Result<Vec<_>>>()?;
    BettiVector::new(v).map_err(|e| anyhow!("--{flag}: {e}"))
}

fn expectation_met(expect: Option<Expectation>, expanding: bool) -> bool {
    match expect {
        None => true,
        Some(Expectation::Expanding) => expanding,
        Some(Expectation::NotExpanding) => !expanding,
    }
}

pub fn lie(cmd: &LieCommand) -> Result<Report> {
    match cmd {
        LieCommand::Betti { algebra } => {
            let g = load_lie(algebra)?;
            let b = lie::betti(&g).map_err(|e| anyhow!("{}: {e}", algebra.display()))?;
            let text = b
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            Ok(Report::one(
                text,
                json!({ "command": "lie betti", "dim": g.dim(), "betti": b }),
            ))
        }
        LieCommand::CheckAut { algebra, matrix } => {
            let g = load_lie(algebra)?;
            let a = load_matrix(matrix)?;
            match lie::check_automorphism(&g, &a) {
                Ok(_) => Ok(Report::one(
                    "valid automorphism".to_string(),
                    json!({ "command": "lie check-aut", "valid": true }),
                )),
                Err(e @ (LieError::NotInvertible | LieError::NotBracketPreserving { .. })) => {
                    let mut machine = json!({
                        "command": "lie check-aut",
                        "valid": false,
                        "reason": e.to_string(),
                    });
                    if let LieError::NotBracketPreserving { i, j, left, right } = &e {
                        machine["pair"] = json!([i + 1, j + 1]);
                        machine["left"] = json!(rat_strings(left));
                        machine["right"] = json!(rat_strings(right));
                    }
                    Ok(Report {
                        human: vec![format!("not an automorphism: {e}")],
                        machine: vec![machine],
                        status: 1,
                    })
                }
                Err(e) => bail!("{e}"),
            }
        }
        LieCommand::Certify {
            algebra,
            matrix,
            expect,
        } => {
            let g = load_lie(algebra)?;
            let a = load_matrix(matrix)?;
            let aut = lie::check_automorphism(&g, &a).map_err(|e| anyhow!("{e}"))?;
            let cert = lie::certify_expanding_on_cohomology(&aut)
                .map_err(|e| anyhow!("{}: {e}", algebra.display()))?;
            let mut report = Report::default();
            report.human.push(format!(
                "automorphism: {}",
                verdict_text(&cert.automorphism)
            ));
            let mut degrees = Vec::new();
            for d in &cert.degrees {
                report.human.push(format!(
                    "degree {}: dim {}, char poly {}, {}",
                    d.degree,
                    d.induced.rows(),
                    d.char_poly,
                    verdict_text(&d.verdict)
                ));
                if !d.representatives.is_empty() {
                    report
                        .human
                        .push(format!("  classes: {}", d.representatives.join(", ")));
                }
                degrees.push(json!({
                    "degree": d.degree,
                    "dim": d.induced.rows(),
                    "char_poly": poly_json(&d.char_poly),
                    "homology_char_poly": poly_json(&d.homology_char_poly),
                    "induced": matrix_json(&d.induced),
                    "representatives": d.representatives,
                    "verdict": verdict_json(&d.verdict),
                }));
            }
            let alarms = cert.alarms();
            if !alarms.is_empty() {
                report.human.push(format!(
                    "ALARM: expanding automorphism induces a non-expanding map in degree(s) {alarms:?}"
                ));
                report.status = 1;
            }
            if !cert.dual_consistent() {
                report
                    .human
                    .push("ALARM: cohomology and homology spectra differ".to_string());
                report.status = 1;
            }
            if !expectation_met(*expect, cert.all_expanding()) {
                report.status = 1;
            }
            report.machine.push(json!({
                "command": "lie certify",
                "automorphism": verdict_json(&cert.automorphism),
                "degrees": degrees,
                "all_expanding": cert.all_expanding(),
                "alarms": alarms,
            }));
            Ok(report)
        }
    }
}

fn rat_strings(v: &[nilspec_core::linalg::Rat]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn spectra(cmd: &SpectraCommand) -> Result<Report> {
    let SpectraCommand::Certify { input, expect } = cmd;
    let PolyInput { poly, matrix } = input;
    let p = match (poly, matrix) {
        (Some(text), _) => parse_poly_high_first(text).map_err(|e| anyhow!("--poly: {e}"))?,
        (None, Some(path)) => load_matrix(path)?.char_poly().map_err(|e| anyhow!("{e}"))?,
        (None, None) => bail!("one of --poly or --matrix is required"),
    };
    let verdict: ExpansionVerdict = is_expanding_poly(&p).map_err(|e| anyhow!("{e}"))?;
    let status = u8::from(!expectation_met(*expect, verdict.is_expanding()));
    let mut machine = json!({
        "command": "spectra certify",
        "polynomial": poly_json(&p),
    });
    machine["result"] = verdict_json(&verdict);
    Ok(Report {
        human: vec![format!("{p}: {}", verdict_text(&verdict))],
        machine: vec![machine],
        status,
    })
}

pub fn bundle(cmd: &BundleCommand) -> Result<Report> {
    let BundleCommand::Gysin { betti, q } = cmd;
    let x = parse_betti(betti, "betti")?;
    let b = gysin_boundary_betti(&x, *q).map_err(|e| anyhow!("{e}"))?;
    let text = b
        .as_slice()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    Ok(Report::one(
        text,
        json!({ "command": "bundle gysin", "q": q, "base": x, "boundary": b }),
    ))
}

fn pair_spec(p: &PairArgs) -> Result<AttractorPairSpec> {
    let b1 = parse_betti(&p.betti1, "betti1")?;
    let b2 = parse_betti(&p.betti2, "betti2")?;
    AttractorPairSpec::new(p.n, (p.q1, b1), (p.q2, b2)).map_err(|e| anyhow!("{e}"))
}

pub fn obstruction_text(v: &ObstructionVerdict) -> String {
    match v {
        ObstructionVerdict::Case1Contradiction {
            degree,
            report,
            witnesses,
        } => format!(
            "Case1Contradiction at l = {degree}: image dimension at most {} < {} = beta_l(X1) + beta_l(X2) (gap degrees {witnesses:?})",
            report.image_bound, report.target
        ),
        ObstructionVerdict::SphereForced { m_betti, .. } => format!(
            "SphereForced: M has Betti numbers {}",
            m_betti.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        ),
        ObstructionVerdict::InputInconsistent { reason } => {
            format!("InputInconsistent: {reason}")
        }
    }
}

pub fn toric_text(r: &nilspec_core::obstruction::ToricReport) -> String {
    if r.impossible {
        format!("impossible ({} < {})", r.boundary_b1, r.target_b1)
    } else {
        format!("not obstructed ({} >= {})", r.boundary_b1, r.target_b1)
    }
}

pub fn theorem(cmd: &TheoremCommand) -> Result<Report> {
    match cmd {
        TheoremCommand::SphereCheck { pair } => {
            let spec = pair_spec(pair)?;
            let v = sphere_theorem_check(&spec);
            let mut machine = serde_json::to_value(&v)?;
            machine["command"] = json!("theorem sphere-check");
            Ok(Report::one(obstruction_text(&v), machine))
        }
        TheoremCommand::Toric { n } => {
            let r = toric_corollary_check(*n).map_err(|e| anyhow!("{e}"))?;
            let mut machine = serde_json::to_value(&r)?;
            machine["command"] = json!("theorem toric");
            Ok(Report::one(format!("n = {n}: {}", toric_text(&r)), machine))
        }
        TheoremCommand::Gap { pair, l } => {
            let spec = pair_spec(pair)?;
            let r = mv_surjectivity_gap(&spec, *l);
            let text = format!(
                "l = {l}: domain {}, forced kernel {}, image at most {}, target {}: {}",
                r.domain,
                r.forced_kernel,
                r.image_bound,
                r.target,
                if r.impossible {
                    "surjectivity impossible"
                } else {
                    "no gap"
                }
            );
            let mut machine = serde_json::to_value(&r)?;
            machine["command"] = json!("theorem gap");
            Ok(Report::one(text, machine))
        }
    }
}

fn vectors_report(name: &str, dim: usize, vs: Vec<Vec<nilspec_core::linalg::Rat>>) -> Report {
    let mut human = vec![format!("{} vector(s) of length {dim}", vs.len())];
    human.extend(vs.iter().map(|v| rat_row(v)));
    let machine = json!({
        "command": name,
        "vectors": vs.iter().map(|v| rat_strings(v)).collect::<Vec<_>>(),
    });
    Report {
        human,
        machine: vec![machine],
        status: 0,
    }
}

fn matrix_text(m: &QMat) -> String {
    m.to_string().trim_end().to_string()
}

fn integer_matrix(path: &Path) -> Result<ZMat> {
    ZMat::from_qmat(&load_matrix(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

pub fn matrix(cmd: &MatrixCommand) -> Result<Report> {
    match cmd {
        MatrixCommand::Rank { matrix } => {
            let r = load_matrix(matrix)?.rank();
            Ok(Report::one(
                r.to_string(),
                json!({ "command": "matrix rank", "rank": r }),
            ))
        }
        MatrixCommand::Kernel { matrix } => {
            let m = load_matrix(matrix)?;
            Ok(vectors_report("matrix kernel", m.cols(), m.kernel_basis()))
        }
        MatrixCommand::Image { matrix } => {
            let m = load_matrix(matrix)?;
            Ok(vectors_report("matrix image", m.rows(), m.image_basis()))
        }
        MatrixCommand::CharPoly { matrix } => {
            let p = load_matrix(matrix)?
                .char_poly()
                .map_err(|e| anyhow!("{e}"))?;
            Ok(Report::one(
                p.to_string(),
                json!({ "command": "matrix char-poly", "char_poly": poly_json(&p) }),
            ))
        }
        MatrixCommand::Det { matrix } => {
            let d = load_matrix(matrix)?.det().map_err(|e| anyhow!("{e}"))?;
            Ok(Report::one(
                d.to_string(),
                json!({ "command": "matrix det", "det": d.to_string() }),
            ))
        }
        MatrixCommand::Transpose { matrix } => {
            let t = load_matrix(matrix)?.transpose();
            Ok(Report::one(
                matrix_text(&t),
                json!({ "command": "matrix transpose", "matrix": matrix_json(&t) }),
            ))
        }
        MatrixCommand::Smith { matrix } => {
            let z = integer_matrix(matrix)?;
            let s = z.smith_normal_form();
            let diag: Vec<String> = s.diagonal.iter().map(ToString::to_string).collect();
            Ok(Report::one(
                diag.join(" "),
                json!({ "command": "matrix smith", "invariant_factors": diag }),
            ))
        }
        MatrixCommand::Intertwiners { f, g } => {
            let (fm, gm) = (load_matrix(f)?, load_matrix(g)?);
            let space = intertwiner_space(&fm, &gm).map_err(|e| anyhow!("{e}"))?;
            let mut human = vec![format!("intertwiner space has dimension {}", space.len())];
            human.extend(space.iter().map(matrix_text));
            Ok(Report {
                human,
                machine: vec![json!({
                    "command": "matrix intertwiners",
                    "dimension": space.len(),
                    "basis": space.iter().map(matrix_json).collect::<Vec<_>>(),
                })],
                status: 0,
            })
        }
        MatrixCommand::NoIntertwiner { f, g } => {
            let (fz, gz) = (integer_matrix(f)?, integer_matrix(g)?);
            match verify_no_intertwiner(&fz, &gz).map_err(|e| anyhow!("{e}"))? {
                NoIntertwiner::Confirmed => Ok(Report::one(
                    "confirmed: only h = 0 satisfies h f = g h".to_string(),
                    json!({ "command": "matrix no-intertwiner", "confirmed": true }),
                )),
                NoIntertwiner::Witness(h) => Ok(Report {
                    human: vec![format!("nonzero intertwiner found:\n{}", matrix_text(&h))],
                    machine: vec![json!({
                        "command": "matrix no-intertwiner",
                        "confirmed": false,
                        "witness": matrix_json(&h),
                    })],
                    status: 1,
                }),
            }
        }
    }
}

pub fn exterior(matrix: &Path, degree: usize) -> Result<Report> {
    let m = load_matrix(matrix)?;
    let e = exterior_power(&m, degree).map_err(|e| anyhow!("{e}"))?;
    let basis = ExteriorBasis::new(m.rows(), degree).map_err(|e| anyhow!("{e}"))?;
    let labels: Vec<String> = (0..basis.len()).map(|k| basis.label(k)).collect();
    Ok(Report {
        human: vec![format!("basis: {}", labels.join(" ")), matrix_text(&e)],
        machine: vec![json!({
            "command": "exterior-power",
            "basis": labels,
            "matrix": matrix_json(&e),
        })],
        status: 0,
    })
}
