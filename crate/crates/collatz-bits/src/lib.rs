//! Bit-level machinery for the reduced Collatz (Syracuse) map.
//!
//! The map sends an odd d to the odd part of 3d+1. Everything here works
//! directly on LSB-first bit sequences of unbounded width:
//!
//! - [`bitnum`]: the representation ([`BitNum`], [`OddNum`]) and its exact
//!   arithmetic, including the ripple-carry 3d+1 oracle.
//! - [`stepper`]: the table-driven carry automaton for one step, trajectory
//!   iteration, and checks of the shape properties trajectories satisfy.
//! - [`lengthpred`]: two independent predictors of the bit-length change of
//!   a step, plus a differential harness comparing them to ground truth.
//! - [`accel`]: accelerated stepping that collapses an entire ascending run
//!   (k trailing ones ⇒ k reduced steps) into one exact jump.
//! - [`sieve`]: residue rules a minimal counterexample cannot escape, with
//!   desk-scale certification that surviving candidates still dip below
//!   themselves.
//!
//! ```
//! use collatz_bits::bitnum::OddNum;
//! use collatz_bits::lengthpred::predict_delta;
//! use collatz_bits::stepper::syracuse_step;
//!
//! let d = OddNum::from_u64(467).unwrap();
//! let predicted = predict_delta(&d).delta; // +1, before stepping
//! let (next, w) = syracuse_step(&d);
//! assert_eq!(next.to_u64(), Some(701));
//! assert_eq!(w, 1);
//! assert_eq!(next.bit_length() as i64 - d.bit_length() as i64, predicted);
//! ```

pub mod accel;
pub mod bitnum;
pub mod lengthpred;
pub mod sieve;
pub mod stepper;

pub use accel::{
    accel_step, accel_trajectory, peak_value, reduced_steps, step_identity_holds, AccelRow,
    AccelStep, AccelTrajectory,
};
pub use bitnum::{BitNum, EvenError, OddNum, ParseError};
pub use lengthpred::{
    compare_predictors, hew_decompose, hew_shortening, predict_delta, DeltaPrediction, GrowthClass,
    HewDecomposition, PredictorReport,
};
pub use sieve::{
    candidates_up_to, drops_below_self, is_candidate, violated_rules, DropCheck, ResidueRule,
    RESTRICTIONS,
};
pub use stepper::{
    check_observations, forward_step, raw_step, raw_step_value, syracuse_step, syracuse_trajectory,
    ObservationKind, ObservationViolation, StepRecord, StepTrace, Trajectory, TrajectoryRow,
};
