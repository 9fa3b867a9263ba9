//! Per-level experiment results and their CSV form.
//!
//! Schema: header `level,N,epsilon,h,rmse,mae,wall_time_s`, one row per
//! successful level, then a single `rate,<value>` trailer row carrying the
//! h-based fit. All numbers are written at 17 significant digits.

use std::io::{Read, Write};
use std::path::Path;

use super::{ExperimentSpec, NodeKind, ProblemId, Variant};
use crate::error::{Error, Result};
use crate::weights::WeightFamily;

#[derive(Clone, Debug, PartialEq)]
pub struct LevelResult {
    pub level: usize,
    pub n_nodes: usize,
    pub epsilon: f64,
    pub h: f64,
    pub rmse: f64,
    pub mae: f64,
    pub wall_time_s: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FailedLevel {
    pub level: usize,
    pub n_nodes: usize,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct ExperimentReport {
    pub problem: ProblemId,
    pub node_kind: NodeKind,
    pub weight_family: WeightFamily,
    pub variant: Variant,
    pub levels: Vec<LevelResult>,
    pub failed: Vec<FailedLevel>,
    /// Fitted rate against the grid-estimated fill distance.
    pub rate_h: Option<f64>,
    /// Alternate fit against `N^{-1/d}`.
    pub rate_n: Option<f64>,
}

/// 17 significant digits, scientific notation, locale-independent.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

impl ExperimentReport {
    pub(super) fn new(spec: &ExperimentSpec) -> Self {
        ExperimentReport {
            problem: spec.problem,
            node_kind: spec.node_kind,
            weight_family: spec.weight.family,
            variant: spec.variant,
            levels: Vec::new(),
            failed: Vec::new(),
            rate_h: None,
            rate_n: None,
        }
    }

    pub fn rmse_for_size(&self, n_nodes: usize) -> Option<f64> {
        self.levels.iter().find(|l| l.n_nodes == n_nodes).map(|l| l.rmse)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "level,N,epsilon,h,rmse,mae,wall_time_s")?;
        for l in &self.levels {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                l.level,
                l.n_nodes,
                format_f64(l.epsilon),
                format_f64(l.h),
                format_f64(l.rmse),
                format_f64(l.mae),
                format_f64(l.wall_time_s),
            )?;
        }
        if let Some(rate) = self.rate_h {
            writeln!(w, "rate,{}", format_f64(rate))?;
        }
        Ok(())
    }

    pub fn write_csv_file(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }
}

/// Rows of a report CSV, trailer excluded; used by the rate command to
/// refit from persisted data.
pub fn read_level_rows<R: Read>(r: R) -> Result<Vec<LevelResult>> {
    let mut content = String::new();
    let mut r = r;
    r.read_to_string(&mut content)?;
    let mut lines = content.lines();
    match lines.next() {
        Some(h) if h.trim() == "level,N,epsilon,h,rmse,mae,wall_time_s" => {}
        _ => return Err(Error::invalid("report CSV header mismatch")),
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with("rate,") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(Error::invalid(format!(
                "report CSV row {} has {} fields, expected 7",
                lineno + 2,
                fields.len()
            )));
        }
        let parse = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::invalid(format!("bad number {s:?} in report CSV")))
        };
        rows.push(LevelResult {
            level: fields[0]
                .parse()
                .map_err(|_| Error::invalid(format!("bad level {:?}", fields[0])))?,
            n_nodes: fields[1]
                .parse()
                .map_err(|_| Error::invalid(format!("bad N {:?}", fields[1])))?,
            epsilon: parse(fields[2])?,
            h: parse(fields[3])?,
            rmse: parse(fields[4])?,
            mae: parse(fields[5])?,
            wall_time_s: parse(fields[6])?,
        });
    }
    Ok(rows)
}
