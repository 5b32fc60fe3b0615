//! The shared front half of every command: load the phase, build its Newton
//! polyhedron, check nondegeneracy, and validate the exponent tuple when one
//! is given.  Degenerate phases and inadmissible tuples still get a report;
//! they just stop before any experiment runs, with the matching exit code.

use std::path::Path;

use newton_osc_core::decay::{self, DecayEstimate, HypothesisReport, PExp};
use newton_osc_core::phase::json;
use newton_osc_core::scalar::exact_int;
use newton_osc_core::{nondeg, Error, Exponents, Phase64, Polyhedron, Rat};
use serde_json::{json, Value};

use crate::{report, CliError};

pub fn load_phase(path: &Path) -> Result<Phase64, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(1, format!("cannot read phase file {}: {e}", path.display())))?;
    json::from_json(&text).map_err(CliError::from)
}

/// Everything the experiments need, plus the report built so far (inputs,
/// polyhedron, nondegeneracy, hypotheses, decay prediction).
pub struct Analysis {
    pub phase: Phase64,
    pub poly: Polyhedron,
    pub tuple: Option<Exponents>,
    pub hypotheses: Option<HypothesisReport<Rat>>,
    pub estimate: DecayEstimate<Rat>,
    pub doc: Value,
}

pub enum Staged {
    Ready(Box<Analysis>),
    /// Degenerate phase (exit 2) or inadmissible exponents (exit 3); the
    /// report is already complete and `note` goes to stderr.
    Stop { code: i32, doc: Value, note: String },
}

/// Runs the pipeline.  `entries` is absent for the sublevel command, which
/// predicts along the all-ones direction instead of a tuple's direction.
pub fn stage(
    phase: Phase64,
    entries: Option<Vec<PExp<Rat>>>,
    grid_h: Option<f64>,
    inputs: Value,
) -> Result<Staged, CliError> {
    let nondeg_report = nondeg::check_nondegenerate(&phase, grid_h)?;
    let poly = Polyhedron::of_phase(&phase)?;
    let mut doc = json!({
        "inputs": inputs,
        "polyhedron": report::polyhedron_block(&poly),
        "nondegeneracy": report::nondeg_block(&nondeg_report),
    });
    if let Some(w) = &nondeg_report.witness {
        let note = format!(
            "degenerate phase: mixed face derivative vanishes near {:?}",
            w.point
        );
        return Ok(Staged::Stop { code: 2, doc, note });
    }

    let (tuple, hypotheses, estimate) = match entries {
        Some(entries) => {
            let tuple = Exponents::new(entries).map_err(CliError::from)?;
            if tuple.dim() != phase.dim() {
                return Err(CliError::new(
                    3,
                    format!(
                        "invalid exponents: tuple {tuple} has {} entries for a \
                         {}-dimensional phase",
                        tuple.dim(),
                        phase.dim()
                    ),
                ));
            }
            let hyp = decay::validate_hypotheses(&tuple);
            doc["hypotheses"] = report::hypotheses_block(&hyp);
            match decay::predict_for_polyhedron(&poly, &tuple) {
                Ok(estimate) => (Some(tuple), Some(hyp), estimate),
                Err(Error::InvalidExponents(msg)) => {
                    doc["diagnostics"] = Value::String(msg.clone());
                    let note = format!("invalid exponents: {msg}");
                    return Ok(Staged::Stop { code: 3, doc, note });
                }
                Err(e) => return Err(CliError::from(e)),
            }
        }
        None => {
            let ones = vec![exact_int::<Rat>(1); phase.dim()];
            let (delta, point) = poly.newton_distance(&ones).map_err(CliError::from)?;
            let estimate = decay::estimate_for_distance(delta, point.codim, phase.dim());
            (None, None, estimate)
        }
    };
    doc["decay"] = estimate.to_json();
    Ok(Staged::Ready(Box::new(Analysis {
        phase,
        poly,
        tuple,
        hypotheses,
        estimate,
        doc,
    })))
}
