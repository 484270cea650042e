//! Predicting how the bit length changes across one reduced step, without
//! performing the step.
//!
//! Two independent predictors are implemented. The first scans d's bits once,
//! tracking a flag and the alternating run at the low end; the second
//! decomposes the binary string as a prefix plus trailing "01" blocks (Hew's
//! shortening rule). Both must agree with each other and with the measured
//! length change; `compare_predictors` sweeps ranges for disagreements.
//!
//! Structural meaning, asserted exhaustively in the test suite: the run
//! length equals the 2-adic valuation of 3d+1, and the flag is set exactly
//! when 3d+1 reaches 2^(bit_length(d)+1).

use std::cmp::Ordering;

use thiserror::Error;

use crate::bitnum::{BitNum, OddNum};
use crate::stepper::syracuse_step;

/// Single-scan length prediction for one reduced step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaPrediction {
    /// Set when 3d+1 crosses the next power of two.
    pub flag: bool,
    /// Alternating-run length from bit 0 of the zero-extended sequence; equals
    /// the number of halvings the step performs.
    pub run: usize,
    /// Predicted bit_length(next) − bit_length(d) = 1 + flag − run. Never
    /// exceeds +1.
    pub delta: i64,
}

/// Predicts the bit-length change of one reduced step from d's bits alone.
///
/// Works over d's bits with one zero prepended at the significant end
/// (positions 0..=L, L = bit_length). The flag starts at 1, drops to 0 on a
/// "00" window and returns to 1 on a "11" window, scanning windows
/// (bit i+1, bit i) for i = 0..L−1. The run counts from bit 0 while adjacent
/// bits keep differing; the prepended zero participates, which is what makes
/// all-alternating values like 5 = 101 come out right.
pub fn predict_delta(d: &OddNum) -> DeltaPrediction {
    let bits = d.bits();
    let len = bits.len();
    let bit = |i: usize| i < len && bits[i];

    let mut flag = true;
    for i in 0..len {
        let (hi, lo) = (bit(i + 1), bit(i));
        if flag && !hi && !lo {
            flag = false;
        } else if !flag && hi && lo {
            flag = true;
        }
    }

    let mut run = 1;
    let mut prev = true;
    for i in 1..=len {
        let b = bit(i);
        if b == prev {
            break;
        }
        run += 1;
        prev = b;
    }

    DeltaPrediction {
        flag,
        run,
        delta: 1 + flag as i64 - run as i64,
    }
}

/// Where 3x+1 lands relative to 2^(bit_length(x)+1), the threshold separating
/// "next value is one bit longer" from the rest. Compared exactly on the bit
/// sequences; no rationals involved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthClass {
    Below,
    Equal,
    Above,
}

/// x's binary string split as prefix ++ "01"×pairs, with the growth class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HewDecomposition {
    /// Non-empty, starts with '1', does not end with "01".
    pub prefix: String,
    /// Count of trailing "01" blocks.
    pub pairs: usize,
    pub class: GrowthClass,
}

impl HewDecomposition {
    /// Rebuilds the original binary string.
    pub fn reconstruct(&self) -> String {
        let mut s = self.prefix.clone();
        for _ in 0..self.pairs {
            s.push_str("01");
        }
        s
    }
}

/// Splits x's binary string into the maximal run of trailing "01" blocks and
/// the remaining prefix, and classifies 3x+1 against 2^(bit_length(x)+1).
pub fn hew_decompose(x: &OddNum) -> HewDecomposition {
    let mut prefix = x.render_binary();
    let mut pairs = 0;
    while prefix.len() > 2 && prefix.ends_with("01") {
        prefix.truncate(prefix.len() - 2);
        pairs += 1;
    }
    let class = match x.shift_add_triple().cmp(&BitNum::pow2(x.bit_length() + 1)) {
        Ordering::Less => GrowthClass::Below,
        Ordering::Equal => GrowthClass::Equal,
        Ordering::Greater => GrowthClass::Above,
    };
    HewDecomposition {
        prefix,
        pairs,
        class,
    }
}

/// The shortening table has no row for a prefix ending '0' with 3x+1 an exact
/// power of two; if 3x+1 = 2^m then x is 101…01 and its prefix is "1".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no shortening rule: prefix of {0} ends '0' while 3x+1 is a power of two")]
pub struct ShorteningGap(pub String);

/// How many bits shorter the next odd value is, from the decomposition alone.
/// Negative means longer. Always the negation of [`predict_delta`]'s delta.
pub fn hew_shortening(x: &OddNum) -> Result<i64, ShorteningGap> {
    shortening_of(&hew_decompose(x)).ok_or_else(|| ShorteningGap(x.to_decimal()))
}

/// Table lookup on an existing decomposition; `None` on the impossible cell.
pub fn shortening_of(d: &HewDecomposition) -> Option<i64> {
    let n = d.pairs as i64;
    let prefix_ends_one = d.prefix.ends_with('1');
    match (prefix_ends_one, d.class) {
        (false, GrowthClass::Below) => Some(2 * n - 1),
        (false, GrowthClass::Equal) => None,
        (false, GrowthClass::Above) => Some(2 * n - 2),
        (true, GrowthClass::Below) => Some(2 * n),
        (true, GrowthClass::Equal) => Some(2 * n),
        (true, GrowthClass::Above) => Some(2 * n - 1),
    }
}

/// One value where the predictors and the measured step disagree. Carries
/// everything needed to diagnose the failure without rerunning it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub value: OddNum,
    pub predicted: i64,
    pub shortening: Result<i64, ShorteningGap>,
    pub actual: i64,
    pub decomposition: HewDecomposition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictorReport {
    pub checked: u64,
    pub disagreements: Vec<Disagreement>,
}

impl PredictorReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Checks every odd x in [lo, hi]: both predictions must match the measured
/// bit-length change of one reduced step. An empty report is the expected
/// outcome; each disagreement row is self-contained.
pub fn compare_predictors(lo: &OddNum, hi: &OddNum) -> PredictorReport {
    let mut checked = 0;
    let mut disagreements = Vec::new();
    let mut x = lo.clone();
    while x.as_bitnum() <= hi.as_bitnum() {
        checked += 1;
        let prediction = predict_delta(&x);
        let decomposition = hew_decompose(&x);
        let shortening = shortening_of(&decomposition).ok_or_else(|| ShorteningGap(x.to_decimal()));
        let (next, _) = syracuse_step(&x);
        let actual = next.bit_length() as i64 - x.bit_length() as i64;
        let agree = prediction.delta == actual && shortening == Ok(-actual);
        if !agree {
            disagreements.push(Disagreement {
                value: x.clone(),
                predicted: prediction.delta,
                shortening,
                actual,
                decomposition,
            });
        }
        let bumped = x.add_small(2);
        x = OddNum::new(bumped).expect("odd + 2 stays odd");
    }
    PredictorReport {
        checked,
        disagreements,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd(v: u64) -> OddNum {
        OddNum::from_u64(v).unwrap()
    }

    #[test]
    fn predict_delta_examples() {
        let p = predict_delta(&odd(467));
        assert_eq!((p.flag, p.run, p.delta), (true, 1, 1));
        let p = predict_delta(&odd(161));
        assert_eq!((p.flag, p.run, p.delta), (false, 2, -1));
        let p = predict_delta(&odd(5));
        assert_eq!((p.flag, p.run, p.delta), (true, 4, -2));
        let p = predict_delta(&odd(1));
        assert_eq!((p.flag, p.run, p.delta), (true, 2, 0));
    }

    #[test]
    fn prediction_matches_measured_change() {
        for v in (3u64..30_000).step_by(2) {
            let d = odd(v);
            let predicted = predict_delta(&d).delta;
            let (next, _) = syracuse_step(&d);
            let actual = next.bit_length() as i64 - d.bit_length() as i64;
            assert_eq!(predicted, actual, "delta for {v}");
            assert!(predicted <= 1, "growth bound for {v}");
        }
    }

    #[test]
    fn run_is_halving_count_and_flag_is_threshold() {
        for v in (1u64..30_000).step_by(2) {
            let d = odd(v);
            let p = predict_delta(&d);
            let (_, w) = syracuse_step(&d);
            assert_eq!(p.run, w, "run = halvings for {v}");
            let crossed = 3 * v + 1 >= 1u64 << (d.bit_length() + 1);
            assert_eq!(p.flag, crossed, "flag = threshold for {v}");
        }
    }

    #[test]
    fn values_ending_01_never_grow() {
        for v in (1u64..30_000).step_by(4) {
            let d = odd(v);
            let p = predict_delta(&d);
            assert!(p.run >= 2, "run for {v}");
            assert!(p.delta <= 0, "delta for {v}");
        }
    }

    #[test]
    fn decompose_examples() {
        let d = hew_decompose(&odd(5));
        assert_eq!(
            (d.prefix.as_str(), d.pairs, d.class),
            ("1", 1, GrowthClass::Equal)
        );
        let d = hew_decompose(&odd(467));
        assert_eq!(
            (d.prefix.as_str(), d.pairs, d.class),
            ("111010011", 0, GrowthClass::Above)
        );
        let d = hew_decompose(&odd(161));
        assert_eq!(
            (d.prefix.as_str(), d.pairs, d.class),
            ("101000", 1, GrowthClass::Below)
        );
    }

    #[test]
    fn decompose_invariants() {
        for v in (1u64..20_000).step_by(2) {
            let x = odd(v);
            let d = hew_decompose(&x);
            assert!(!d.prefix.is_empty(), "prefix for {v}");
            assert!(d.prefix.starts_with('1'), "leading bit for {v}");
            assert!(!d.prefix.ends_with("01"), "maximality for {v}");
            assert_eq!(d.reconstruct(), x.render_binary(), "reconstruct {v}");
            if d.prefix.ends_with('0') {
                assert!(d.pairs >= 1, "even prefix needs a trailing block for {v}");
            }
        }
    }

    #[test]
    fn prefix_of_two_bits_cannot_end_01() {
        // the guard `prefix.len() > 2` never leaves an "01" prefix behind:
        // binary strings start with '1'
        for v in (1u64..20_000).step_by(2) {
            let d = hew_decompose(&odd(v));
            assert_ne!(d.prefix.as_str(), "01");
        }
    }

    #[test]
    fn shortening_examples() {
        assert_eq!(hew_shortening(&odd(5)), Ok(2));
        assert_eq!(hew_shortening(&odd(467)), Ok(-1));
        assert_eq!(hew_shortening(&odd(161)), Ok(1));
    }

    #[test]
    fn shortening_is_negated_prediction() {
        for v in (1u64..30_000).step_by(2) {
            let x = odd(v);
            let s = hew_shortening(&x).unwrap_or_else(|g| panic!("gap at {v}: {g}"));
            assert_eq!(s, -predict_delta(&x).delta, "agreement at {v}");
        }
    }

    #[test]
    fn comparison_reports_are_clean() {
        let report = compare_predictors(&odd(3), &odd(999));
        assert_eq!(report.checked, 499);
        assert!(report.is_clean());
        assert!(compare_predictors(&odd(467), &odd(467)).is_clean());
        assert!(compare_predictors(&odd(5), &odd(5)).is_clean());
    }

    #[test]
    fn gap_cell_never_fires_for_powers_of_two() {
        // 3x+1 = 2^m forces x = 101…01 whose prefix is "1"
        for m in 2..40u32 {
            let p = (1u64 << m).wrapping_sub(1);
            if !p.is_multiple_of(3) {
                continue;
            }
            let x = odd(p / 3);
            let d = hew_decompose(&x);
            assert_eq!(d.class, GrowthClass::Equal);
            assert_eq!(d.prefix, "1");
            assert!(shortening_of(&d).is_some());
        }
    }
}
