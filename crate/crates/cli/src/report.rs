//! JSON report assembly.  Reports are single self-contained documents with
//! deterministic key order (serde_json maps are sorted), no timestamps, and
//! no absolute paths, so identical inputs give byte-identical bytes.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use newton_osc_core::decay::HypothesisReport;
use newton_osc_core::newton::NewtonPolyhedron;
use newton_osc_core::nondeg::NondegeneracyReport;
use newton_osc_core::numeric::fit::RateFit;
use newton_osc_core::phase::json;
use newton_osc_core::{Phase64, Rat};
use serde_json::{json, Value};

use crate::CliError;

/// The phase as a canonical JSON value: parsing a report's copy back yields
/// the same phase, and re-serializing it yields the same bytes.
pub fn phase_value(phase: &Phase64) -> Value {
    serde_json::from_str(&json::to_json(phase)).expect("canonical phase text is valid JSON")
}

pub fn polyhedron_block(poly: &NewtonPolyhedron<Rat>) -> Value {
    let vertices: Vec<Value> = poly
        .vertices()
        .iter()
        .map(|v| json!(v.entries()))
        .collect();
    let normals: Vec<Value> = poly
        .facets()
        .iter()
        .map(|f| Value::from(rat_strings(&f.normal)))
        .collect();
    json!({
        "dim": poly.dim(),
        "vertices": vertices,
        "facet_normals": normals,
    })
}

pub fn nondeg_block(report: &NondegeneracyReport) -> Value {
    let witness = match &report.witness {
        Some(w) => {
            let face: Vec<Value> = w
                .face_vertices
                .iter()
                .map(|v| json!(v.entries()))
                .collect();
            json!({
                "point": w.point,
                "value": w.value,
                "face_vertices": face,
            })
        }
        None => Value::Null,
    };
    json!({
        "status": if report.is_nondegenerate() { "nondegenerate" } else { "degenerate" },
        "grid_h": report.grid_h,
        "witness": witness,
    })
}

pub fn hypotheses_block(hyp: &HypothesisReport<Rat>) -> Value {
    json!({
        "reciprocal_sum": hyp.reciprocal_sum.to_string(),
        "direction": rat_strings(&hyp.direction),
        "threshold": hyp.threshold.to_string(),
        "off_diagonal": hyp.off_diagonal,
        "on_diagonal": hyp.on_diagonal,
        "direction_positive": hyp.direction_positive,
        "admissible": hyp.admissible(),
    })
}

/// A failed fit still produces a report; the section carries the reason and
/// the experiment is flagged instead of judged.
pub fn fit_block(fit: &Result<RateFit, newton_osc_core::Error>) -> Value {
    match fit {
        Ok(f) => json!({
            "rate": f.rate,
            "log_power": f.log_power,
            "constant": f.constant,
            "max_rel_residual": f.max_rel_residual,
        }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

pub fn rat_strings(values: &[Rat]) -> Vec<String> {
    values.iter().map(Rat::to_string).collect()
}

/// One measured point of an experiment: `x` is λ or ε depending on the grid.
#[derive(Debug, Clone)]
pub struct Record {
    pub x: f64,
    pub value: f64,
    pub error: f64,
    pub converged: bool,
}

impl Record {
    pub fn to_value(&self, x_key: &str) -> Value {
        json!({
            x_key: self.x,
            "value": self.value,
            "error": self.error,
            "converged": self.converged,
        })
    }
}

/// Plot-ready CSV with one row per record; extra columns (norm products,
/// ratios) are appended in lockstep with the records.
pub fn csv_table(x_key: &str, records: &[Record], extra: &[(&str, Vec<f64>)]) -> String {
    let mut out = format!("{x_key},value,error,converged");
    for (name, _) in extra {
        write!(out, ",{name}").unwrap();
    }
    out.push('\n');
    for (i, r) in records.iter().enumerate() {
        write!(out, "{},{},{},{}", r.x, r.value, r.error, r.converged).unwrap();
        for (_, column) in extra {
            write!(out, ",{}", column[i]).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Streams records to a side file: JSON lines by default, CSV when the path
/// ends in `.csv`.
pub fn write_stream(
    path: &Path,
    experiment: &str,
    x_key: &str,
    records: &[Record],
) -> Result<(), CliError> {
    let text = if path.extension().is_some_and(|e| e == "csv") {
        let mut out = format!("experiment,{x_key},value,error,converged\n");
        for r in records {
            writeln!(out, "{experiment},{},{},{},{}", r.x, r.value, r.error, r.converged)
                .unwrap();
        }
        out
    } else {
        let mut out = String::new();
        for r in records {
            let line = json!({
                "experiment": experiment,
                x_key: r.x,
                "value": r.value,
                "error": r.error,
                "converged": r.converged,
            });
            writeln!(out, "{line}").unwrap();
        }
        out
    };
    std::fs::write(path, text)
        .map_err(|e| CliError::new(1, format!("cannot write stream file {}: {e}", path.display())))
}

/// Writes the report to `--out`, or to stdout when absent.
pub fn write_out(report: &Value, out: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::new(1, format!("cannot write report {}: {e}", path.display()))),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::new(1, format!("cannot write report to stdout: {e}")))
        }
    }
}
