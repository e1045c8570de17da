//! The four end-to-end combination strategies and their convergence traces.
//!
//! * `dempster`: a left fold of pairwise Dempster combination.
//! * `murphy`: average the corpus with uniform weights, then
//!   self-combine the average `n - 1` times.
//! * `deng`: like murphy, but weights come from the Jousselme-matrix
//!   credibility pipeline.
//! * `proposed`: like deng, but weighted through the combined
//!   (Jousselme × Hausdorff) matrix by default; the matrix kind and `C`
//!   are open so the hausdorff variant can be explored.
//!
//! A fusion report also carries the per-prefix trace: the same rule
//! applied to the first `k` BPAs for every `k`, with weights recomputed
//! per prefix.

use std::fmt;
use std::str::FromStr;

use crate::bpa::Bpa;
use crate::combination::{combine, self_combine};
use crate::distance::{MatrixKind, SimilarityMatrix, DEFAULT_C};
use crate::error::{EvidenceError, Result};
use crate::frame::FocalSet;
use crate::weighting::{credibility_weights, weighted_average, EvidenceSet, WeightVector};

/// A combination strategy. `Deng` always weights through the Jousselme
/// matrix; `Proposed` defaults to the combined matrix with `C = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    Dempster,
    Murphy,
    Deng,
    Proposed { matrix: MatrixKind, c_param: f64 },
}

impl RuleKind {
    /// The proposed rule with its default weighting matrix.
    pub fn proposed() -> Self {
        RuleKind::Proposed {
            matrix: MatrixKind::Combined,
            c_param: DEFAULT_C,
        }
    }

    /// The four rules in canonical (comparison-table) order.
    pub fn canonical() -> [RuleKind; 4] {
        [
            RuleKind::Dempster,
            RuleKind::Murphy,
            RuleKind::Deng,
            RuleKind::proposed(),
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::Dempster => "dempster",
            RuleKind::Murphy => "murphy",
            RuleKind::Deng => "deng",
            RuleKind::Proposed { .. } => "proposed",
        }
    }

    /// Position in the canonical order, used for deterministic row sorting.
    pub fn canonical_rank(self) -> usize {
        match self {
            RuleKind::Dempster => 0,
            RuleKind::Murphy => 1,
            RuleKind::Deng => 2,
            RuleKind::Proposed { .. } => 3,
        }
    }

    /// The weighting matrix this rule uses, if any.
    pub fn weighting_matrix(self) -> Option<(MatrixKind, f64)> {
        match self {
            RuleKind::Dempster | RuleKind::Murphy => None,
            RuleKind::Deng => Some((MatrixKind::Jousselme, DEFAULT_C)),
            RuleKind::Proposed { matrix, c_param } => Some((matrix, c_param)),
        }
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleKind {
    type Err = EvidenceError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dempster" => Ok(RuleKind::Dempster),
            "murphy" => Ok(RuleKind::Murphy),
            "deng" => Ok(RuleKind::Deng),
            "proposed" => Ok(RuleKind::proposed()),
            _ => Err(EvidenceError::UnknownRule(s.to_string())),
        }
    }
}

/// Outcome of fusing an evidence corpus under one rule.
///
/// `weights` and `averaged` describe the full-corpus weighting stage and
/// are absent for the dempster rule, which has no such stage. `trace`
/// holds the fused BPA per evidence prefix; its last entry equals `fused`.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionReport {
    pub rule: RuleKind,
    pub weights: Option<WeightVector>,
    pub averaged: Option<Bpa>,
    pub fused: Bpa,
    pub trace: Vec<(usize, Bpa)>,
}

/// One row of a convergence table: the fused mass of a target subset
/// after the first `prefix` BPAs under `rule`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub prefix: usize,
    pub rule: RuleKind,
    pub mass: f64,
}

/// Weighting stage of one prefix under a weighted rule.
fn prefix_average(
    es: &EvidenceSet,
    rule: RuleKind,
    matrix: Option<&SimilarityMatrix>,
) -> Result<(WeightVector, Bpa)> {
    let weights = match matrix {
        None => {
            debug_assert_eq!(rule, RuleKind::Murphy);
            WeightVector::uniform(es.len())
        }
        Some(matrix) => credibility_weights(es, matrix)?,
    };
    let averaged = weighted_average(es, &weights)?;
    Ok((weights, averaged))
}

/// Fuses an evidence corpus under a rule, tracing every prefix.
///
/// A single BPA is returned unchanged with weight 1. With two or more,
/// the dempster rule folds pairwise combination over the list, and the
/// weighted rules recompute weights per prefix, average, and self-combine
/// the average once per remaining original BPA.
pub fn fuse(es: &EvidenceSet, rule: RuleKind) -> Result<FusionReport> {
    let n = es.len();
    let matrix = match rule.weighting_matrix() {
        Some((kind, c_param)) => Some(SimilarityMatrix::build(es.frame(), kind, c_param)?),
        None => None,
    };

    if n == 1 {
        let lone = es.bpas()[0].clone();
        let weighted = rule != RuleKind::Dempster;
        return Ok(FusionReport {
            rule,
            weights: weighted.then(|| WeightVector::uniform(1)),
            averaged: weighted.then(|| lone.clone()),
            fused: lone.clone(),
            trace: vec![(1, lone)],
        });
    }

    let mut trace = Vec::with_capacity(n - 1);
    let mut weights = None;
    let mut averaged = None;

    match rule {
        RuleKind::Dempster => {
            let mut fused = es.bpas()[0].clone();
            for (k, bpa) in es.bpas().iter().enumerate().skip(1) {
                fused = combine(&fused, bpa)?;
                trace.push((k + 1, fused.clone()));
            }
        }
        _ => {
            for k in 2..=n {
                let prefix = es.prefix(k);
                let (w, avg) = prefix_average(&prefix, rule, matrix.as_ref())?;
                let fused = self_combine(&avg, k - 1)?;
                trace.push((k, fused));
                if k == n {
                    weights = Some(w);
                    averaged = Some(avg);
                }
            }
        }
    }

    let fused = trace.last().expect("n >= 2 leaves a trace").1.clone();
    Ok(FusionReport {
        rule,
        weights,
        averaged,
        fused,
        trace,
    })
}

/// Convergence table: the fused mass of `target` per prefix and rule,
/// rows ordered by prefix ascending and rule canonical rank.
pub fn convergence_trace(
    es: &EvidenceSet,
    rules: &[RuleKind],
    target: FocalSet,
) -> Result<Vec<TraceRow>> {
    FocalSet::from_mask(es.frame(), target.mask())?;
    let mut ordered: Vec<RuleKind> = rules.to_vec();
    ordered.sort_by_key(|r| r.canonical_rank());

    let mut per_rule = Vec::with_capacity(ordered.len());
    for &rule in &ordered {
        per_rule.push(fuse(es, rule)?);
    }

    let mut rows = Vec::new();
    for prefix_position in 0..per_rule.first().map_or(0, |r| r.trace.len()) {
        for report in &per_rule {
            let (prefix, bpa) = &report.trace[prefix_position];
            rows.push(TraceRow {
                prefix: *prefix,
                rule: report.rule,
                mass: bpa.mass(target),
            });
        }
    }
    Ok(rows)
}
