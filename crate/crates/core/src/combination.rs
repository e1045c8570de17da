//! Dempster's rule of combination and the conflict coefficient.
//!
//! The conflict coefficient `k` is the total product mass two BPAs assign
//! to disjoint focal pairs; Dempster's rule distributes the agreeing
//! product mass over the pair intersections and normalizes by `1 - k`.
//! Total conflict (`k = 1`) is a hard error: the rule is undefined there
//! and silently patching it would hide exactly the failure mode that
//! motivates the weighted-average strategies in [`crate::rules`].

use std::collections::BTreeMap;

use crate::bpa::Bpa;
use crate::error::{EvidenceError, Result};
use crate::frame::FocalSet;

/// Conflicts within this margin of 1 are treated as total conflict.
pub const TOTAL_CONFLICT_EPSILON: f64 = 1e-12;

/// Sums products in a canonical order so that swapping the two operands of
/// [`combine`] or [`conflict`] cannot change the floating-point result.
fn stable_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_unstable_by(f64::total_cmp);
    terms.iter().sum()
}

/// Accumulates the agreement products per intersection and the conflict
/// products, both as term lists for order-independent summation.
fn product_terms(m1: &Bpa, m2: &Bpa) -> (BTreeMap<FocalSet, Vec<f64>>, Vec<f64>) {
    let mut agreeing: BTreeMap<FocalSet, Vec<f64>> = BTreeMap::new();
    let mut conflicting = Vec::new();
    for (b, mass_b) in m1.focal_sets() {
        for (c, mass_c) in m2.focal_sets() {
            let product = mass_b * mass_c;
            match b.intersect(c) {
                Some(a) => agreeing.entry(a).or_default().push(product),
                None => conflicting.push(product),
            }
        }
    }
    (agreeing, conflicting)
}

/// The conflict coefficient `k` of two BPAs on the same frame:
/// the summed product mass of all disjoint focal pairs.
pub fn conflict(m1: &Bpa, m2: &Bpa) -> Result<f64> {
    if !m1.same_frame(m2) {
        return Err(EvidenceError::FrameMismatch);
    }
    let (_, conflicting) = product_terms(m1, m2);
    Ok(stable_sum(conflicting).clamp(0.0, 1.0))
}

/// Dempster's rule: combines two BPAs on the same frame into one.
///
/// Fails with [`EvidenceError::TotalConflict`] when `k` reaches 1 within
/// [`TOTAL_CONFLICT_EPSILON`].
pub fn combine(m1: &Bpa, m2: &Bpa) -> Result<Bpa> {
    if !m1.same_frame(m2) {
        return Err(EvidenceError::FrameMismatch);
    }
    let (agreeing, conflicting) = product_terms(m1, m2);
    let k = stable_sum(conflicting);
    let normalizer = 1.0 - k;
    if normalizer <= TOTAL_CONFLICT_EPSILON {
        return Err(EvidenceError::TotalConflict);
    }
    // Each normalized mass is at most 1 in exact arithmetic; shave off
    // the rounding overshoot so validation stays strict.
    let masses = agreeing
        .into_iter()
        .map(|(set, terms)| (set, (stable_sum(terms) / normalizer).min(1.0)));
    Bpa::new_renormalized(m1.frame().clone(), masses)
}

/// Folds `operations` further copies of `m` into `m` with Dempster's rule,
/// i.e. combines `operations + 1` copies in total. Zero operations returns
/// `m` unchanged.
pub fn self_combine(m: &Bpa, operations: usize) -> Result<Bpa> {
    let mut fused = m.clone();
    for _ in 0..operations {
        fused = combine(&fused, m)?;
    }
    Ok(fused)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use approx::assert_relative_eq;

    fn abc() -> Frame {
        Frame::new(["A", "B", "C"]).unwrap()
    }

    fn bpa(frame: &Frame, a: f64, b: f64, c: f64) -> Bpa {
        Bpa::from_labels(frame, &[(&["A"], a), (&["B"], b), (&["C"], c)]).unwrap()
    }

    #[test]
    fn conflict_of_the_worked_pair_is_079() {
        // Agreeing mass 0.2*0.9 + 0.3*0.1 = 0.21 over the nine focal pairs.
        let frame = abc();
        let m1 = bpa(&frame, 0.5, 0.2, 0.3);
        let m2 = bpa(&frame, 0.0, 0.9, 0.1);
        assert_relative_eq!(conflict(&m1, &m2).unwrap(), 0.79, epsilon = 1e-12);
    }

    #[test]
    fn conflict_is_zero_for_identical_categorical_bpas() {
        let frame = abc();
        let m = Bpa::from_labels(&frame, &[(&["A"], 1.0)]).unwrap();
        assert_eq!(conflict(&m, &m).unwrap(), 0.0);
    }

    #[test]
    fn conflict_is_one_for_contradictory_categorical_bpas() {
        let frame = abc();
        let m1 = Bpa::from_labels(&frame, &[(&["A"], 1.0)]).unwrap();
        let m2 = Bpa::from_labels(&frame, &[(&["B"], 1.0)]).unwrap();
        assert_eq!(conflict(&m1, &m2).unwrap(), 1.0);
        assert_eq!(combine(&m1, &m2).unwrap_err(), EvidenceError::TotalConflict);
    }

    #[test]
    fn combine_reproduces_the_highly_conflicting_pair() {
        let frame = abc();
        let m1 = bpa(&frame, 0.5, 0.2, 0.3);
        let m2 = bpa(&frame, 0.0, 0.9, 0.1);
        let fused = combine(&m1, &m2).unwrap();
        assert_eq!(fused.mass_of_labels(&["A"]).unwrap(), 0.0);
        assert_relative_eq!(fused.mass_of_labels(&["B"]).unwrap(), 0.8571, epsilon = 1e-4);
        assert_relative_eq!(fused.mass_of_labels(&["C"]).unwrap(), 0.1429, epsilon = 1e-4);
    }

    #[test]
    fn vacuous_bpa_is_a_two_sided_identity() {
        let frame = abc();
        let m = Bpa::from_labels(&frame, &[(&["A"], 0.6), (&["B", "C"], 0.4)]).unwrap();
        let vacuous = Bpa::vacuous(frame);
        let left = combine(&vacuous, &m).unwrap();
        let right = combine(&m, &vacuous).unwrap();
        for (set, mass) in m.focal_sets() {
            assert_relative_eq!(left.mass(set), mass, epsilon = 1e-12);
            assert_relative_eq!(right.mass(set), mass, epsilon = 1e-12);
        }
    }

    #[test]
    fn combine_is_commutative_to_the_bit() {
        let frame = abc();
        let m1 = Bpa::from_labels(&frame, &[(&["A"], 0.37), (&["A", "B"], 0.21), (&["C"], 0.42)])
            .unwrap();
        let m2 = Bpa::from_labels(&frame, &[(&["B"], 0.55), (&["A", "C"], 0.19), (&["C"], 0.26)])
            .unwrap();
        assert_eq!(combine(&m1, &m2).unwrap(), combine(&m2, &m1).unwrap());
    }

    #[test]
    fn self_combine_zero_operations_is_identity() {
        let frame = abc();
        let m = bpa(&frame, 0.5, 0.2, 0.3);
        assert_eq!(self_combine(&m, 0).unwrap(), m);
    }

    #[test]
    fn self_combining_the_worked_average_three_times() {
        // Weighted-average BPA combined over four copies in total.
        let frame = Frame::new(["R", "S", "T"]).unwrap();
        let m_new = Bpa::from_labels(
            &frame,
            &[(&["R"], 0.4513), (&["S"], 0.3033), (&["T"], 0.2454)],
        )
        .unwrap();
        let fused = self_combine(&m_new, 3).unwrap();
        assert_relative_eq!(fused.mass_of_labels(&["R"]).unwrap(), 0.7744, epsilon = 5e-4);
        assert_relative_eq!(fused.mass_of_labels(&["S"]).unwrap(), 0.1579, epsilon = 5e-4);
        assert_relative_eq!(fused.mass_of_labels(&["T"]).unwrap(), 0.0677, epsilon = 5e-4);
    }

    #[test]
    fn singleton_self_combination_matches_the_power_closed_form() {
        // With singleton-only focal sets the fold makes masses proportional
        // to each mass raised to operations + 1.
        let frame = abc();
        let m = bpa(&frame, 0.5, 0.3, 0.2);
        for operations in 0..5usize {
            let fused = self_combine(&m, operations).unwrap();
            let power = (operations + 1) as i32;
            let total: f64 = [0.5f64, 0.3, 0.2].iter().map(|x| x.powi(power)).sum();
            for (label, mass) in [("A", 0.5f64), ("B", 0.3), ("C", 0.2)] {
                assert_relative_eq!(
                    fused.mass_of_labels(&[label]).unwrap(),
                    mass.powi(power) / total,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn frame_mismatch_is_rejected() {
        let m1 = Bpa::from_labels(&abc(), &[(&["A"], 1.0)]).unwrap();
        let other = Frame::new(["X", "Y"]).unwrap();
        let m2 = Bpa::from_labels(&other, &[(&["X"], 1.0)]).unwrap();
        assert_eq!(conflict(&m1, &m2).unwrap_err(), EvidenceError::FrameMismatch);
        assert_eq!(combine(&m1, &m2).unwrap_err(), EvidenceError::FrameMismatch);
    }
}
