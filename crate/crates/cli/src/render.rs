//! Text and JSON rendering of fusion results.
//!
//! Tables print numbers with four decimals by default to match the
//! precision of the published figures; `--precision` widens them. JSON
//! always carries full `f64` precision so written reports re-parse to
//! the same values.

use std::collections::BTreeMap;

use evidfuse_core::{
    Bpa, FusionReport, MatrixKind, SimilarityMatrix, SquareMatrix, TraceRow, WeightVector,
};
use serde::{Deserialize, Serialize};

pub const DEFAULT_PRECISION: usize = 4;

pub fn fmt(value: f64, precision: usize) -> String {
    format!("{value:.precision$}")
}

/// Focal masses as `subset=value` pairs in canonical subset order.
pub fn mass_line(bpa: &Bpa, precision: usize) -> String {
    bpa.focal_sets()
        .map(|(set, mass)| format!("{}={}", set.label_string(bpa.frame()), fmt(mass, precision)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn mass_map(bpa: &Bpa) -> BTreeMap<String, f64> {
    bpa.focal_sets()
        .map(|(set, mass)| (set.label_string(bpa.frame()), mass))
        .collect()
}

/// JSON mirror of a [`FusionReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub rule: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_param: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub averaged: Option<BTreeMap<String, f64>>,
    pub fused: BTreeMap<String, f64>,
    pub trace: Vec<TraceEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub prefix: usize,
    pub fused: BTreeMap<String, f64>,
}

impl ReportDoc {
    pub fn from_report(report: &FusionReport) -> Self {
        let (matrix, c_param) = match report.rule.weighting_matrix() {
            Some((kind, c)) => (Some(kind.name().to_string()), Some(c)),
            None => (None, None),
        };
        Self {
            rule: report.rule.name().to_string(),
            matrix,
            c_param,
            weights: report.weights.as_ref().map(|w| w.weights().to_vec()),
            averaged: report.averaged.as_ref().map(mass_map),
            fused: mass_map(&report.fused),
            trace: report
                .trace
                .iter()
                .map(|(prefix, bpa)| TraceEntry {
                    prefix: *prefix,
                    fused: mass_map(bpa),
                })
                .collect(),
        }
    }
}

pub fn render_report_table(report: &FusionReport, precision: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!("rule: {}\n", report.rule.name()));
    if let Some((kind, c)) = report.rule.weighting_matrix() {
        out.push_str(&format!("matrix: {kind} (C={})\n", fmt(c, precision)));
    }
    if let Some(weights) = &report.weights {
        let joined: Vec<String> = weights.weights().iter().map(|w| fmt(*w, precision)).collect();
        out.push_str(&format!("weights: {}\n", joined.join(" ")));
    }
    if let Some(averaged) = &report.averaged {
        out.push_str(&format!("averaged: {}\n", mass_line(averaged, precision)));
    }
    out.push_str(&format!("fused: {}\n", mass_line(&report.fused, precision)));
    out.push_str("trace:\n");
    for (prefix, bpa) in &report.trace {
        out.push_str(&format!("  prefix {prefix}: {}\n", mass_line(bpa, precision)));
    }
    out
}

/// JSON mirror of a similarity matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub matrix: String,
    pub c_param: f64,
    pub subsets: Vec<String>,
    pub entries: Vec<Vec<f64>>,
}

/// Rows/columns of the rendered matrix; `singletons_only` restricts the
/// display to the singleton block as the published examples do.
fn matrix_selection(matrix: &SimilarityMatrix, singletons_only: bool) -> Vec<usize> {
    let frame = matrix.frame();
    let index = frame.subset_index();
    index
        .iter()
        .filter(|s| !singletons_only || s.len() == 1)
        .map(|s| index.index_of(s))
        .collect()
}

pub fn matrix_doc(matrix: &SimilarityMatrix, singletons_only: bool) -> MatrixDoc {
    let frame = matrix.frame();
    let index = frame.subset_index();
    let selection = matrix_selection(matrix, singletons_only);
    MatrixDoc {
        matrix: matrix.kind().name().to_string(),
        c_param: matrix.c_param(),
        subsets: selection
            .iter()
            .map(|&i| index.subset_at(i).label_string(frame))
            .collect(),
        entries: selection
            .iter()
            .map(|&i| selection.iter().map(|&j| matrix.entries().get(i, j)).collect())
            .collect(),
    }
}

pub fn render_matrix_table(
    matrix: &SimilarityMatrix,
    singletons_only: bool,
    precision: usize,
) -> String {
    let frame = matrix.frame();
    let index = frame.subset_index();
    let selection = matrix_selection(matrix, singletons_only);
    let labels: Vec<String> = selection
        .iter()
        .map(|&i| index.subset_at(i).label_string(frame))
        .collect();
    let width = labels
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(1)
        .max(precision + 2);

    let mut out = format!("matrix: {} (C={})\n", matrix.kind(), fmt(matrix.c_param(), precision));
    out.push_str(&format!("{:width$}", ""));
    for label in &labels {
        out.push_str(&format!(" {label:>width$}"));
    }
    out.push('\n');
    for (&i, row_label) in selection.iter().zip(&labels) {
        out.push_str(&format!("{row_label:width$}"));
        for &j in &selection {
            out.push_str(&format!(" {:>width$}", fmt(matrix.entries().get(i, j), precision)));
        }
        out.push('\n');
    }
    out
}

/// JSON mirror of the weighting pipeline output; the stage matrices are
/// present only under `--verbose`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightsDoc {
    pub matrix: String,
    pub c_param: f64,
    pub weights: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distances: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub similarities: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub supports: Option<Vec<f64>>,
}

pub fn rows(matrix: &SquareMatrix) -> Vec<Vec<f64>> {
    (0..matrix.dim()).map(|i| matrix.row(i).to_vec()).collect()
}

pub struct WeightStages {
    pub kind: MatrixKind,
    pub c_param: f64,
    pub distances: SquareMatrix,
    pub similarities: SquareMatrix,
    pub supports: Vec<f64>,
    pub weights: WeightVector,
}

pub fn weights_doc(stages: &WeightStages, verbose: bool) -> WeightsDoc {
    WeightsDoc {
        matrix: stages.kind.name().to_string(),
        c_param: stages.c_param,
        weights: stages.weights.weights().to_vec(),
        distances: verbose.then(|| rows(&stages.distances)),
        similarities: verbose.then(|| rows(&stages.similarities)),
        supports: verbose.then(|| stages.supports.clone()),
    }
}

fn render_square(out: &mut String, name: &str, matrix: &SquareMatrix, precision: usize) {
    out.push_str(name);
    out.push_str(":\n");
    for i in 0..matrix.dim() {
        let row: Vec<String> = matrix.row(i).iter().map(|v| fmt(*v, precision)).collect();
        out.push_str(&format!("  {}\n", row.join(" ")));
    }
}

pub fn render_weights_table(stages: &WeightStages, verbose: bool, precision: usize) -> String {
    let mut out = format!(
        "matrix: {} (C={})\n",
        stages.kind,
        fmt(stages.c_param, precision)
    );
    if verbose {
        render_square(&mut out, "distances (DIM)", &stages.distances, precision);
        render_square(&mut out, "similarities (SIM)", &stages.similarities, precision);
        let supports: Vec<String> = stages.supports.iter().map(|s| fmt(*s, precision)).collect();
        out.push_str(&format!("supports: {}\n", supports.join(" ")));
    }
    let weights: Vec<String> = stages
        .weights
        .weights()
        .iter()
        .map(|w| fmt(*w, precision))
        .collect();
    out.push_str(&format!("weights: {}\n", weights.join(" ")));
    out
}

/// CSV convergence table: `prefix,rule,target,mass`, rows already in
/// deterministic order.
pub fn render_trace_csv(rows: &[TraceRow], target: &str, precision: usize) -> String {
    let mut out = String::from("prefix,rule,target,mass\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.prefix,
            row.rule.name(),
            target,
            fmt(row.mass, precision)
        ));
    }
    out
}

pub fn render_trace_table(rows: &[TraceRow], target: &str, precision: usize) -> String {
    let mut out = format!("{:>6} {:>10} {:>8} {:>12}\n", "prefix", "rule", "target", "mass");
    for row in rows {
        out.push_str(&format!(
            "{:>6} {:>10} {:>8} {:>12}\n",
            row.prefix,
            row.rule.name(),
            target,
            fmt(row.mass, precision)
        ));
    }
    out
}
