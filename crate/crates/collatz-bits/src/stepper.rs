//! The carry automaton for one reduced Collatz step, plus trajectory
//! iteration and the structural checks trajectories are expected to satisfy.
//!
//! One step takes an odd d to the odd part of 3d+1. The automaton never
//! multiplies: it slides a two-bit window up d's bit sequence (two zeros
//! prepended at the significant end), consults an 8-entry table keyed by
//! (flag, window), and writes one output bit per position. The table is the
//! binary adder for d + 2d + 1 in disguise: written = (hi + lo + flag) mod 2,
//! next flag = carry. [`OddNum::shift_add_triple`] computes the same value by
//! explicit ripple-carry and serves as the differential oracle; the two
//! implementations share no code.

use crate::bitnum::{BitNum, OddNum};

/// (written, next flag) per state, indexed by `flag << 2 | hi << 1 | lo`.
///
/// Kept as a literal so the automaton is table-driven, not arithmetic.
pub const TRANSITIONS: [(bool, bool); 8] = [
    (false, false), // flag 0, pair 00
    (true, false),  // flag 0, pair 01
    (true, false),  // flag 0, pair 10
    (false, true),  // flag 0, pair 11
    (true, false),  // flag 1, pair 00
    (false, true),  // flag 1, pair 01
    (false, true),  // flag 1, pair 10
    (true, true),   // flag 1, pair 11
];

/// Index into [`TRANSITIONS`] for a flag and window (hi = bit i+1, lo = bit i).
pub fn transition_index(flag: bool, hi: bool, lo: bool) -> usize {
    (flag as usize) << 2 | (hi as usize) << 1 | (lo as usize)
}

/// One automaton action: the seed write (no window) or a window application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    /// 0 for the seed write, then 1..=bit_length(d)+1.
    pub index: usize,
    /// (hi, lo) window consumed; `None` for the seed write.
    pub pair: Option<(bool, bool)>,
    /// The seed record reports the flag it establishes in both fields.
    pub flag_before: bool,
    pub written: bool,
    pub flag_after: bool,
}

/// Full transcript of one raw step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepTrace {
    pub records: Vec<StepRecord>,
    /// All written bits, LSB-first, including a trimmed leading zero if any.
    pub raw_bits: Vec<bool>,
}

/// Runs the automaton over d's bits. The sink, when present, receives one
/// record per written bit; trajectory sweeps pass `None` to skip the
/// bookkeeping.
fn automaton(d: &OddNum, mut sink: Option<&mut Vec<StepRecord>>) -> Vec<bool> {
    let bits = d.bits();
    let len = bits.len();
    // Positions len and len+1 are the two prepended zeros.
    let bit = |i: usize| i < len && bits[i];

    let mut written = Vec::with_capacity(len + 2);
    written.push(false);
    let mut flag = true;
    if let Some(records) = sink.as_deref_mut() {
        records.push(StepRecord {
            index: 0,
            pair: None,
            flag_before: true,
            written: false,
            flag_after: true,
        });
    }
    for i in 0..=len {
        let (hi, lo) = (bit(i + 1), bit(i));
        let (out, next) = TRANSITIONS[transition_index(flag, hi, lo)];
        written.push(out);
        if let Some(records) = sink.as_deref_mut() {
            records.push(StepRecord {
                index: i + 1,
                pair: Some((hi, lo)),
                flag_before: flag,
                written: out,
                flag_after: next,
            });
        }
        flag = next;
    }
    debug_assert!(!flag, "no carry escapes the prepended zeros");
    written
}

/// One raw step: the written bits of 3d+1 and the full transcript.
///
/// The returned value drops the leading zero the automaton may emit; the
/// trace keeps every written bit.
pub fn raw_step(d: &OddNum) -> (BitNum, StepTrace) {
    let mut records = Vec::with_capacity(d.bit_length() + 2);
    let raw_bits = automaton(d, Some(&mut records));
    let value = BitNum::from_lsb(raw_bits.clone()).expect("3d+1 > 0");
    debug_assert!(
        value.bit_length() > d.bit_length(),
        "at most one zero trimmed"
    );
    (value, StepTrace { records, raw_bits })
}

/// The automaton's output value alone; for sweeps that compare against the
/// ripple-carry oracle and do not need the transcript.
pub fn raw_step_value(d: &OddNum) -> BitNum {
    BitNum::from_lsb(automaton(d, None)).expect("3d+1 > 0")
}

/// One reduced step: d → odd part of 3d+1, with the number of halvings w ≥ 1.
pub fn syracuse_step(d: &OddNum) -> (OddNum, usize) {
    raw_step_value(d).strip_trailing_zeros()
}

/// The single-halving forward map: n/2 for even n, (3n+1)/2 for odd n.
pub fn forward_step(n: &BitNum) -> BitNum {
    if n.is_even() {
        n.shr_exact(1).expect("even value halves exactly")
    } else {
        let d = OddNum::new(n.clone()).expect("checked odd");
        d.shift_add_triple()
            .shr_exact(1)
            .expect("3n+1 is even for odd n")
    }
}

/// One row of a reduced trajectory. Bit length and trailing-ones count are
/// cached so sweeps over many trajectories avoid rescanning values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryRow {
    pub index: usize,
    pub value: OddNum,
    pub bit_length: usize,
    /// bit_length(this) − bit_length(previous); `None` on row 0.
    pub delta: Option<i64>,
    /// Trailing-ones count of value.
    pub k: usize,
}

/// A reduced trajectory; `completed` distinguishes reaching 1 from running
/// out of the step budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    pub rows: Vec<TrajectoryRow>,
    pub completed: bool,
}

impl Trajectory {
    pub fn values(&self) -> impl Iterator<Item = &OddNum> {
        self.rows.iter().map(|r| &r.value)
    }
}

/// Iterates [`syracuse_step`] from `start` until 1 is reached (final row
/// included) or `max_steps` steps have been taken. There is no unbounded
/// variant: termination for all starts is exactly the open conjecture.
pub fn syracuse_trajectory(start: OddNum, max_steps: usize) -> Trajectory {
    let mut rows = Vec::new();
    let mut value = start;
    let mut prev_len: Option<usize> = None;
    loop {
        let bit_length = value.bit_length();
        let k = value.trailing_ones();
        let index = rows.len();
        rows.push(TrajectoryRow {
            index,
            value,
            bit_length,
            delta: prev_len.map(|p| bit_length as i64 - p as i64),
            k,
        });
        let row = rows.last().unwrap();
        if row.value.is_one() {
            return Trajectory {
                rows,
                completed: true,
            };
        }
        if index == max_steps {
            return Trajectory {
                rows,
                completed: false,
            };
        }
        prev_len = Some(bit_length);
        value = syracuse_step(&row.value).0;
    }
}

/// Which trajectory-shape property a step broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservationKind {
    /// Bit length grew by more than one in a single step.
    GrowthBound,
    /// Value ends "01" (≡ 1 mod 4, counting 1 itself) yet the next value got longer.
    GrowthAfterLowZero,
    /// A trailing-ones run of length ≥ 2 did not shrink by exactly one.
    TrailingOnesCountdown,
}

impl ObservationKind {
    pub fn describe(self) -> &'static str {
        match self {
            ObservationKind::GrowthBound => "bit length grew by more than one",
            ObservationKind::GrowthAfterLowZero => "value ends 01 but the next value is longer",
            ObservationKind::TrailingOnesCountdown => {
                "trailing-ones run of length >= 2 did not shrink by exactly one"
            }
        }
    }
}

/// A broken property at the step arriving at row `index`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObservationViolation {
    /// Row index of the later row of the offending adjacent pair.
    pub index: usize,
    pub kind: ObservationKind,
}

/// Checks every adjacent row pair for the three shape properties reduced
/// trajectories always exhibit. An empty report is the expected outcome;
/// violations are data for the caller, not errors.
pub fn check_observations(rows: &[TrajectoryRow]) -> Vec<ObservationViolation> {
    let mut violations = Vec::new();
    for pair in rows.windows(2) {
        let (prev, next) = (&pair[0], &pair[1]);
        let delta = next.delta.expect("non-initial rows carry a delta");
        if delta > 1 {
            violations.push(ObservationViolation {
                index: next.index,
                kind: ObservationKind::GrowthBound,
            });
        }
        if prev.value.low_bits(2) == 1 && delta > 0 {
            violations.push(ObservationViolation {
                index: next.index,
                kind: ObservationKind::GrowthAfterLowZero,
            });
        }
        if prev.k >= 2 && next.k != prev.k - 1 {
            violations.push(ObservationViolation {
                index: next.index,
                kind: ObservationKind::TrailingOnesCountdown,
            });
        }
    }
    violations
}
