//! Accelerated stepping: jump over an entire ascending run in one move.
//!
//! An odd n with k trailing ones is g·2^k − 1 for an odd g. The next k
//! single-halving forward steps all ascend and land exactly on g·3^k − 1,
//! the even peak of the run; removing every factor of 2 from the peak gives
//! the next odd value. One accelerated step therefore equals k reduced steps.
//! Everything is computed on bit sequences with exact integer arithmetic:
//! the peak via repeated ×3, the trim via [`BitNum::strip_trailing_zeros`],
//! never through fractional powers.

use crate::bitnum::{BitNum, OddNum};
use crate::stepper::syracuse_step;

/// One accelerated step with all intermediate quantities exposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccelStep {
    pub start: OddNum,
    /// Odd cofactor: start = g·2^k − 1.
    pub g: OddNum,
    /// Trailing-ones count of start; the number of reduced steps skipped.
    pub k: usize,
    /// g·3^k − 1, the even top of the ascending run.
    pub peak: BitNum,
    /// Factors of 2 removed from the peak.
    pub w: usize,
    /// The odd value after the run: peak / 2^w.
    pub next: OddNum,
}

/// g·3^k − 1 for (g, k) = decompose_g_k(n): the even value reached by k
/// strictly ascending forward steps from n.
pub fn peak_value(n: &OddNum) -> BitNum {
    let (g, k) = n.decompose_g_k();
    let mut m = g.into_bitnum();
    for _ in 0..k {
        m = m.triple();
    }
    let peak = m.pred().expect("g·3^k >= 3 > 1");
    debug_assert!(peak.is_even(), "odd·odd − 1 is even");
    peak
}

/// Advances n past its whole ascending run: k = trailing_ones(n) reduced
/// steps collapsed into one peak computation and one trim.
pub fn accel_step(n: &OddNum) -> AccelStep {
    let (g, k) = n.decompose_g_k();
    let peak = peak_value(n);
    let (next, w) = peak.strip_trailing_zeros();
    AccelStep {
        start: n.clone(),
        g,
        k,
        peak,
        w,
        next,
    }
}

/// The exact-integer identity every accelerated step satisfies:
/// 2^k·(2^w·next + 1) = 3^k·(start + 1). The fractional reading
/// ((2^w·next + 1)/(start + 1) = (3/2)^k) cross-multiplied.
pub fn step_identity_holds(step: &AccelStep) -> bool {
    let lhs = step.next.shl(step.w).succ().shl(step.k);
    let mut rhs = step.start.succ();
    for _ in 0..step.k {
        rhs = rhs.triple();
    }
    lhs == rhs
}

/// One row of an accelerated trajectory. `w` is the trim count of the step
/// that produced this row; `None` on the starting row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccelRow {
    pub index: usize,
    pub value: OddNum,
    pub bit_length: usize,
    /// bit_length(this) − bit_length(previous row); `None` on row 0.
    pub delta: Option<i64>,
    /// Trailing-ones count of value = reduced steps the departing step skips.
    pub k: usize,
    pub w: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccelTrajectory {
    pub rows: Vec<AccelRow>,
    pub completed: bool,
}

impl AccelTrajectory {
    pub fn values(&self) -> impl Iterator<Item = &OddNum> {
        self.rows.iter().map(|r| &r.value)
    }
}

/// Iterates [`accel_step`] from `start` until 1 is reached (final row
/// included) or `max_steps` accelerated steps have been taken. Row values
/// form a subsequence of the plain reduced trajectory from the same start.
pub fn accel_trajectory(start: OddNum, max_steps: usize) -> AccelTrajectory {
    let mut rows = Vec::new();
    let mut value = start;
    let mut arrived_w: Option<usize> = None;
    let mut prev_len: Option<usize> = None;
    loop {
        let bit_length = value.bit_length();
        let k = value.trailing_ones();
        let index = rows.len();
        rows.push(AccelRow {
            index,
            value,
            bit_length,
            delta: prev_len.map(|p| bit_length as i64 - p as i64),
            k,
            w: arrived_w,
        });
        let row = rows.last().unwrap();
        if row.value.is_one() {
            return AccelTrajectory {
                rows,
                completed: true,
            };
        }
        if index == max_steps {
            return AccelTrajectory {
                rows,
                completed: false,
            };
        }
        let step = accel_step(&row.value);
        debug_assert!(step_identity_holds(&step));
        prev_len = Some(bit_length);
        arrived_w = Some(step.w);
        value = step.next;
    }
}

/// Reference path for differential tests: k reduced steps, one at a time.
pub fn reduced_steps(n: &OddNum, count: usize) -> OddNum {
    let mut value = n.clone();
    for _ in 0..count {
        value = syracuse_step(&value).0;
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stepper::{forward_step, syracuse_trajectory};

    fn odd(v: u64) -> OddNum {
        OddNum::from_u64(v).unwrap()
    }

    #[test]
    fn peak_examples() {
        assert_eq!(peak_value(&odd(79)).to_u64(), Some(404));
        assert_eq!(peak_value(&odd(127)).to_u64(), Some(2186));
        assert_eq!(peak_value(&odd(63)).to_u64(), Some(728));
    }

    #[test]
    fn peak_reached_by_ascending_forward_steps() {
        for v in [79u64, 127, 63, 31, 23, 103] {
            let n = odd(v);
            let k = n.trailing_ones();
            let mut cursor = n.as_bitnum().clone();
            for step in 0..k {
                let next = forward_step(&cursor);
                assert!(next > cursor, "ascent broken at step {step} from {v}");
                cursor = next;
            }
            assert_eq!(cursor, peak_value(&n), "peak from {v}");
        }
    }

    #[test]
    fn accel_step_examples() {
        let flat = |s: &AccelStep| {
            (
                s.g.to_u64().unwrap(),
                s.k,
                s.peak.to_u64().unwrap(),
                s.w,
                s.next.to_u64().unwrap(),
            )
        };
        assert_eq!(flat(&accel_step(&odd(63))), (1, 6, 728, 3, 91));
        assert_eq!(flat(&accel_step(&odd(23))), (3, 3, 80, 4, 5));
        assert_eq!(flat(&accel_step(&odd(1))), (1, 1, 2, 1, 1));
        assert_eq!(flat(&accel_step(&odd(103))), (13, 3, 350, 1, 175));
        assert_eq!(flat(&accel_step(&odd(31))), (1, 5, 242, 1, 121));
    }

    #[test]
    fn identity_examples() {
        assert!(step_identity_holds(&accel_step(&odd(63))));
        assert!(step_identity_holds(&accel_step(&odd(1))));
        assert!(step_identity_holds(&accel_step(&odd(23))));
    }

    #[test]
    fn identity_rejects_corrupted_step() {
        let mut step = accel_step(&odd(63));
        step.w += 1;
        assert!(!step_identity_holds(&step));
    }

    #[test]
    fn accel_skips_exactly_k_reduced_steps() {
        for v in (1u64..4000).step_by(2) {
            let n = odd(v);
            let step = accel_step(&n);
            assert_eq!(step.next, reduced_steps(&n, step.k), "skip from {v}");
            assert!(step_identity_holds(&step), "identity from {v}");
        }
    }

    #[test]
    fn trajectory_63_is_example_table() {
        let expected: [u64; 16] = [
            63, 91, 103, 175, 445, 167, 283, 319, 911, 577, 433, 325, 61, 23, 5, 1,
        ];
        let traj = accel_trajectory(odd(63), 100);
        assert!(traj.completed);
        assert_eq!(traj.rows.len(), 16);
        for (i, row) in traj.rows.iter().enumerate() {
            assert_eq!(row.value.to_u64(), Some(expected[i]), "row {i}");
        }
        assert_eq!(traj.rows[0].w, None);
        assert_eq!(traj.rows[1].w, Some(3));
        assert_eq!(traj.rows[0].k, 6);
    }

    #[test]
    fn trajectory_edges() {
        let traj = accel_trajectory(odd(1), 10);
        assert!(traj.completed);
        assert_eq!(traj.rows.len(), 1);

        let traj = accel_trajectory(odd(31), 100);
        let head: Vec<u64> = traj.rows[..2]
            .iter()
            .map(|r| r.value.to_u64().unwrap())
            .collect();
        assert_eq!(head, [31, 121]);

        let truncated = accel_trajectory(odd(63), 3);
        assert!(!truncated.completed);
        assert_eq!(truncated.rows.len(), 4);
    }

    #[test]
    fn accel_values_are_subsequence_of_plain() {
        for v in (1u64..600).step_by(2) {
            let plain = syracuse_trajectory(odd(v), 10_000);
            let accel = accel_trajectory(odd(v), 10_000);
            assert!(plain.completed && accel.completed, "termination from {v}");
            let mut plain_iter = plain.values();
            for value in accel.values() {
                assert!(
                    plain_iter.any(|p| p == value),
                    "accel value {value} missing in plain order from {v}"
                );
            }
        }
    }

    #[test]
    fn row_count_compression() {
        for v in [31u64, 63] {
            let plain = syracuse_trajectory(odd(v), 10_000);
            let accel = accel_trajectory(odd(v), 10_000);
            let skipped: usize = accel.rows[..accel.rows.len() - 1]
                .iter()
                .map(|r| r.k - 1)
                .sum();
            assert_eq!(accel.rows.len(), plain.rows.len() - skipped, "start {v}");
        }
    }

    #[test]
    fn ascending_base_cases() {
        // odd g, k in 1..10: k forward steps from g·2^k − 1 reach g·3^k − 1
        for g in (1u64..100).step_by(2) {
            for k in 1..10u32 {
                let start = g * (1 << k) - 1;
                let mut cursor = BitNum::from_u64(start).unwrap();
                for _ in 0..k {
                    cursor = forward_step(&cursor);
                }
                assert_eq!(cursor.to_u64(), Some(g * 3u64.pow(k) - 1), "g={g} k={k}");
            }
        }
    }
}
