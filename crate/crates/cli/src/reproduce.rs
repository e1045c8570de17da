//! Reproduction of the published worked examples, with per-value deltas.
//!
//! Three cases are embedded:
//!
//! * `example1`: the two 5x5 singleton similarity blocks, matched exactly;
//! * `example2`: the four-BPA weighting walkthrough: the published
//!   weights are injected as fixtures and carried through the average and
//!   the triple self-combination (must pass), then the weights computed
//!   from the literal elementwise-product matrix are compared against the
//!   published ones (a documented discrepancy, see below);
//! * `example3-table1`: the four-rule comparison table over five highly
//!   conflicting BPAs; the dempster, murphy, and deng columns must pass.
//!
//! On corpora whose mass sits entirely on singletons, the literal
//! elementwise product of the Jousselme and Hausdorff matrices collapses
//! to the Jousselme matrix, so the "proposed" pipeline reproduces the
//! deng column instead of the published "new proposed" figures. Those
//! values are classified as documented discrepancies and reported under
//! exit code 4 rather than pass or hard failure.

use evidfuse_core::{
    combined_matrix, credibility_weights, fuse, hausdorff_matrix, jousselme_matrix, self_combine,
    weighted_average, Bpa, EvidenceSet, FocalSet, Frame, RuleKind, WeightVector,
};

use crate::document::CliError;

/// Published weights of the example-2 walkthrough.
const EX2_WEIGHTS: [f64; 4] = [0.2688, 0.2276, 0.2752, 0.2284];
/// Published weighted-average BPA (R, S, T).
const EX2_M_NEW: [f64; 3] = [0.4513, 0.3033, 0.2454];
/// Published result of combining the average three times (R, S, T).
const EX2_FINAL: [f64; 3] = [0.7744, 0.1579, 0.0677];

/// Published comparison-table columns, one row of (A, B, C) per prefix
/// m1..m2 through m1..m5.
const EX3_DEMPSTER: [[f64; 3]; 4] = [
    [0.0, 0.8571, 0.1429],
    [0.0, 0.6316, 0.3684],
    [0.0, 0.3288, 0.6712],
    [0.0, 0.1228, 0.8772],
];
const EX3_MURPHY: [[f64; 3]; 4] = [
    [0.1543, 0.7469, 0.0988],
    [0.3500, 0.5224, 0.1276],
    [0.6027, 0.2627, 0.1346],
    [0.7958, 0.0932, 0.1110],
];
const EX3_DENG: [[f64; 3]; 4] = [
    [0.1543, 0.7469, 0.0988],
    [0.5816, 0.2439, 0.1745],
    [0.8060, 0.0482, 0.1458],
    [0.8909, 0.0086, 0.1005],
];
const EX3_PROPOSED: [[f64; 3]; 4] = [
    [0.1543, 0.7469, 0.0988],
    [0.6355, 0.2229, 0.1415],
    [0.7605, 0.0897, 0.1468],
    [0.8761, 0.0189, 0.1050],
];

/// Hausdorff similarities of the ordered five-element frame by ordinal
/// gap: 1/(1 + gap).
const EX1_BY_GAP: [f64; 5] = [1.0, 0.5, 1.0 / 3.0, 0.25, 0.2];

/// Tolerance matching figures printed to four decimals.
const PRINTED_TOLERANCE: f64 = 5e-4;
/// Tighter tolerance for the dempster column.
const DEMPSTER_TOLERANCE: f64 = 1e-4;

struct Check {
    name: String,
    expected: f64,
    computed: f64,
    tolerance: f64,
    documented: bool,
}

#[derive(PartialEq, Clone, Copy)]
enum Status {
    Ok,
    Discrepancy,
    Fail,
}

impl Check {
    fn status(&self) -> Status {
        let delta = (self.computed - self.expected).abs();
        if delta <= self.tolerance {
            Status::Ok
        } else if self.documented {
            Status::Discrepancy
        } else {
            Status::Fail
        }
    }
}

/// The four-BPA frame {R, S, T} walkthrough corpus.
pub fn example2_corpus() -> EvidenceSet {
    let frame = Frame::new(["R", "S", "T"]).unwrap();
    EvidenceSet::new(vec![
        Bpa::from_labels(&frame, &[(&["R"], 0.3), (&["S"], 0.5), (&["T"], 0.2)]).unwrap(),
        Bpa::from_labels(&frame, &[(&["S"], 0.5), (&["T"], 0.5)]).unwrap(),
        Bpa::from_labels(&frame, &[(&["R"], 0.6), (&["S"], 0.2), (&["T"], 0.2)]).unwrap(),
        Bpa::from_labels(&frame, &[(&["R"], 0.9), (&["T"], 0.1)]).unwrap(),
    ])
    .unwrap()
}

/// The five highly conflicting BPAs of the comparison table.
pub fn example3_corpus() -> EvidenceSet {
    let frame = Frame::new(["A", "B", "C"]).unwrap();
    let stubborn = Bpa::from_labels(&frame, &[(&["A"], 0.55), (&["B"], 0.1), (&["C"], 0.35)]);
    EvidenceSet::new(vec![
        Bpa::from_labels(&frame, &[(&["A"], 0.5), (&["B"], 0.2), (&["C"], 0.3)]).unwrap(),
        Bpa::from_labels(&frame, &[(&["B"], 0.9), (&["C"], 0.1)]).unwrap(),
        stubborn.clone().unwrap(),
        stubborn.clone().unwrap(),
        stubborn.unwrap(),
    ])
    .unwrap()
}

fn case_example1() -> Result<Vec<Check>, CliError> {
    let frame = Frame::new(["1", "2", "3", "4", "5"])?;
    let jousselme = jousselme_matrix(&frame)?;
    let hausdorff = hausdorff_matrix(&frame, 1.0)?;
    let singleton = |i: usize| FocalSet::from_mask(&frame, 1 << i).unwrap();

    let mut checks = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            checks.push(Check {
                name: format!("jousselme[{}][{}]", i + 1, j + 1),
                expected: if i == j { 1.0 } else { 0.0 },
                computed: jousselme.entry(singleton(i), singleton(j)),
                tolerance: 0.0,
                documented: false,
            });
        }
    }
    for i in 0..5usize {
        for j in 0..5usize {
            checks.push(Check {
                name: format!("hausdorff[{}][{}]", i + 1, j + 1),
                expected: EX1_BY_GAP[i.abs_diff(j)],
                computed: hausdorff.entry(singleton(i), singleton(j)),
                tolerance: 0.0,
                documented: false,
            });
        }
    }
    Ok(checks)
}

fn case_example2() -> Result<Vec<Check>, CliError> {
    let es = example2_corpus();
    let labels = ["R", "S", "T"];
    let mut checks = Vec::new();

    // Stage 1: the published weights drive the downstream arithmetic.
    let published = WeightVector::new(EX2_WEIGHTS.to_vec())?;
    let averaged = weighted_average(&es, &published)?;
    for (label, expected) in labels.iter().zip(EX2_M_NEW) {
        checks.push(Check {
            name: format!("m_New({label}) from published weights"),
            expected,
            computed: averaged.mass_of_labels(&[label])?,
            tolerance: PRINTED_TOLERANCE,
            documented: false,
        });
    }
    let fused = self_combine(&averaged, 3)?;
    for (label, expected) in labels.iter().zip(EX2_FINAL) {
        checks.push(Check {
            name: format!("final({label}) after 3 combinations"),
            expected,
            computed: fused.mass_of_labels(&[label])?,
            tolerance: PRINTED_TOLERANCE,
            documented: false,
        });
    }

    // Stage 2: weights computed from the literal elementwise-product
    // matrix, compared against the published weights (documented
    // discrepancy: on this singleton-only corpus the product matrix
    // collapses to the Jousselme matrix).
    let matrix = combined_matrix(es.frame(), 1.0)?;
    let computed = credibility_weights(&es, &matrix)?;
    for (i, (&got, expected)) in computed.weights().iter().zip(EX2_WEIGHTS).enumerate() {
        checks.push(Check {
            name: format!("W(m{}) from literal product matrix", i + 1),
            expected,
            computed: got,
            tolerance: PRINTED_TOLERANCE,
            documented: true,
        });
    }
    Ok(checks)
}

fn case_example3() -> Result<Vec<Check>, CliError> {
    let es = example3_corpus();
    let labels = ["A", "B", "C"];
    let columns: [(RuleKind, &[[f64; 3]; 4], f64, bool); 4] = [
        (RuleKind::Dempster, &EX3_DEMPSTER, DEMPSTER_TOLERANCE, false),
        (RuleKind::Murphy, &EX3_MURPHY, PRINTED_TOLERANCE, false),
        (RuleKind::Deng, &EX3_DENG, PRINTED_TOLERANCE, false),
        (RuleKind::proposed(), &EX3_PROPOSED, PRINTED_TOLERANCE, true),
    ];

    let mut checks = Vec::new();
    for (rule, fixture, tolerance, documented) in columns {
        let report = fuse(&es, rule)?;
        for (column, (prefix, bpa)) in report.trace.iter().enumerate() {
            for (row, label) in labels.iter().enumerate() {
                checks.push(Check {
                    name: format!("{} m1..m{} m({label})", rule.name(), prefix),
                    expected: fixture[column][row],
                    computed: bpa.mass_of_labels(&[label])?,
                    tolerance,
                    documented,
                });
            }
        }
    }
    Ok(checks)
}

/// Runs a reproduction case, printing expected vs computed vs delta per
/// value. Exit code 0 when everything matches, 4 when only documented
/// discrepancies exceed tolerance, 1 when any must-pass value fails.
pub fn run(case: &str, precision: usize) -> Result<u8, CliError> {
    let checks = match case {
        "example1" => case_example1()?,
        "example2" => case_example2()?,
        "example3-table1" => case_example3()?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown case {other:?}, expected example1|example2|example3-table1"
            )))
        }
    };

    println!("case: {case}");
    println!(
        "{:<42} {:>12} {:>12} {:>10}  status",
        "value", "expected", "computed", "delta"
    );
    let (mut ok, mut discrepancies, mut failures) = (0u32, 0u32, 0u32);
    for check in &checks {
        let delta = (check.computed - check.expected).abs();
        let status = match check.status() {
            Status::Ok => {
                ok += 1;
                "ok"
            }
            Status::Discrepancy => {
                discrepancies += 1;
                "DISCREPANCY"
            }
            Status::Fail => {
                failures += 1;
                "FAIL"
            }
        };
        println!(
            "{:<42} {:>12} {:>12} {:>10.1e}  {status}",
            check.name,
            crate::render::fmt(check.expected, precision),
            crate::render::fmt(check.computed, precision),
            delta,
        );
    }
    println!("summary: {ok} ok, {discrepancies} documented discrepancies, {failures} failures");

    if failures > 0 {
        Ok(1)
    } else if discrepancies > 0 {
        Ok(4)
    } else {
        Ok(0)
    }
}
