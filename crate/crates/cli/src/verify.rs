//! The verification sweep: five independent checks per odd value, batched
//! with optional checkpointing and worker sharding.
//!
//! Workers split each batch into contiguous chunks and share nothing; chunk
//! results are concatenated in order, so output is identical for any worker
//! count. The checkpoint is flushed once per batch.

use std::path::Path;

use anyhow::{bail, Result};
use collatz_bits::accel::{accel_step, reduced_steps, step_identity_holds};
use collatz_bits::bitnum::OddNum;
use collatz_bits::lengthpred::{hew_decompose, predict_delta, shortening_of};
use collatz_bits::stepper::raw_step_value;

use crate::checkpoint::{fingerprint, Checkpoint, CHECKPOINT_VERSION};
use crate::input::{odd_values, parse_odd};

/// One failed check, self-describing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub value: String,
    pub check: &'static str,
    pub detail: String,
}

/// Runs all five checks on one odd value.
pub fn check_value(d: &OddNum) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut fail = |check: &'static str, detail: String| {
        out.push(Violation {
            value: d.to_decimal(),
            check,
            detail,
        });
    };

    // 1. table automaton against the ripple-carry oracle, bit-exact
    let raw = raw_step_value(d);
    let oracle = d.shift_add_triple();
    if raw != oracle {
        fail("step-oracle", format!("automaton {raw} != ripple {oracle}"));
    }

    let (next, w) = raw.strip_trailing_zeros();
    let actual = next.bit_length() as i64 - d.bit_length() as i64;

    // 2. single-scan length prediction against the measured change
    let p = predict_delta(d);
    if p.delta != actual {
        fail(
            "length-prediction",
            format!("predicted {} actual {actual}", p.delta),
        );
    }
    if p.run != w {
        fail("length-prediction", format!("run {} halvings {w}", p.run));
    }

    // 3. decomposition-based shortening, negated, against the same change
    match shortening_of(&hew_decompose(d)) {
        Some(s) if s == -actual => {}
        Some(s) => fail(
            "shortening-agreement",
            format!("shortening {s} actual {}", -actual),
        ),
        None => fail("shortening-agreement", "gap cell reached".to_string()),
    }

    // 4. accelerated jump equals k reduced steps, and its identity holds
    let jump = accel_step(d);
    if jump.next != reduced_steps(d, jump.k) {
        fail(
            "ascent-skip",
            format!("jump {} != {} reduced steps", jump.next, jump.k),
        );
    }
    if !step_identity_holds(&jump) {
        fail("ascent-skip", "step identity failed".to_string());
    }

    // 5. single-step shape: growth bound, the ends-01 rule, the k countdown
    if actual > 1 {
        fail("step-shape", format!("bit length grew by {actual}"));
    }
    if d.low_bits(2) == 1 && actual > 0 {
        fail("step-shape", format!("ends 01 but grew by {actual}"));
    }
    let k = d.trailing_ones();
    if k >= 2 && next.trailing_ones() != k - 1 {
        fail(
            "step-shape",
            format!("trailing ones {} -> {}", k, next.trailing_ones()),
        );
    }

    out
}

fn check_chunk(values: &[OddNum]) -> Vec<Violation> {
    values.iter().flat_map(check_value).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub checked: u64,
    /// Total including any count resumed from a checkpoint.
    pub violation_count: u64,
    /// Violations found in this process (details for resumed work are gone).
    pub violations: Vec<Violation>,
    pub resumed_from: Option<String>,
}

pub struct VerifyOptions<'a> {
    pub workers: usize,
    pub batch: usize,
    pub checkpoint: Option<&'a Path>,
    /// Per-batch progress lines go here (the CLI passes stderr).
    pub progress: Option<&'a mut dyn std::io::Write>,
}

/// Sweeps every odd value of [lo, hi] through [`check_value`].
pub fn verify_range(lo: &OddNum, hi: &OddNum, options: VerifyOptions) -> Result<VerifyOutcome> {
    let VerifyOptions {
        workers,
        batch,
        checkpoint,
        mut progress,
    } = options;
    if workers == 0 {
        bail!("workers must be at least 1");
    }
    if batch == 0 {
        bail!("batch must be at least 1");
    }

    let fp = fingerprint(&lo.to_decimal(), &hi.to_decimal());
    let mut cursor = lo.clone();
    let mut checked: u64 = 0;
    let mut violation_count: u64 = 0;
    let mut violations = Vec::new();
    let mut resumed_from = None;

    if let Some(path) = checkpoint {
        if path.exists() {
            let cp = Checkpoint::load(path)?;
            if cp.fingerprint != fp {
                bail!(
                    "checkpoint {} was written for a different invocation \
                     (fingerprint {} != {fp}); refusing to resume",
                    path.display(),
                    cp.fingerprint
                );
            }
            cursor = parse_odd(&cp.next)?;
            checked = cp.checked;
            violation_count = cp.violations;
            resumed_from = Some(cp.next);
        }
    }

    while cursor.as_bitnum() <= hi.as_bitnum() {
        let values: Vec<OddNum> = odd_values(&cursor, hi).take(batch).collect();
        let found = if workers == 1 || values.len() == 1 {
            check_chunk(&values)
        } else {
            let chunk_size = values.len().div_ceil(workers);
            std::thread::scope(|scope| {
                let handles: Vec<_> = values
                    .chunks(chunk_size)
                    .map(|chunk| scope.spawn(|| check_chunk(chunk)))
                    .collect();
                let mut merged = Vec::new();
                for handle in handles {
                    merged.extend(handle.join().expect("checker thread panicked"));
                }
                merged
            })
        };

        checked += values.len() as u64;
        violation_count += found.len() as u64;
        violations.extend(found);
        cursor = OddNum::new(values.last().expect("batch is non-empty").add_small(2))
            .expect("odd + 2 stays odd");

        if let Some(path) = checkpoint {
            Checkpoint {
                version: CHECKPOINT_VERSION,
                fingerprint: fp.clone(),
                next: cursor.to_decimal(),
                checked,
                violations: violation_count,
            }
            .save(path)?;
        }
        if let Some(out) = progress.as_deref_mut() {
            writeln!(out, "progress: checked {checked}, next {cursor}")?;
        }
    }

    Ok(VerifyOutcome {
        checked,
        violation_count,
        violations,
        resumed_from,
    })
}
