//! Command-line front end: stepping, trajectories, predictions, verification
//! sweeps, candidate sieving, benchmarking, and the built-in worked examples.
//!
//! Exit codes: 0 success, 1 property violation or truncated trajectory,
//! 2 usage or configuration error.

pub mod checkpoint;
pub mod examples;
pub mod input;
pub mod render;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};
use collatz_bits::accel::accel_trajectory;
use collatz_bits::bitnum::{BitNum, OddNum};
use collatz_bits::sieve::{candidates_up_to, drops_below_self, violated_rules};
use collatz_bits::stepper::syracuse_trajectory;

use crate::input::{odd_values, parse_odd, parse_odd_range, parse_value};
use crate::render::{
    render_matrix, render_predictions, render_rows, render_step_line, render_transcript, Format,
    MatrixLine, PredictRow, Row,
};
use crate::verify::{verify_range, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "collatz-bits",
    version,
    about = "Bit-level reduced Collatz stepping, prediction, verification and sieving"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One reduced step: odd value to its odd successor
    Step {
        /// Odd value, decimal or 0b-prefixed binary
        value: String,
        /// Print the full automaton transcript
        #[arg(long)]
        trace: bool,
    },
    /// Trajectory of reduced (or accelerated) steps down to 1
    Traj {
        /// Odd starting value, decimal or 0b-prefixed binary
        start: String,
        /// Jump whole ascending runs instead of single steps
        #[arg(long)]
        accel: bool,
        /// Render bits place-aligned with the lowest zero marked (table only)
        #[arg(long)]
        matrix: bool,
        /// Give up after this many steps without reaching 1
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compare both length predictors against the measured step
    Predict {
        /// Odd value, decimal or 0b-prefixed binary
        #[arg(required_unless_present = "range", conflicts_with = "range")]
        value: Option<String>,
        /// Inclusive odd range lo..hi instead of a single value
        #[arg(long)]
        range: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run all per-value checks over an odd range
    Verify {
        /// Inclusive odd range lo..hi
        #[arg(long)]
        range: String,
        /// Resume from / flush progress to this file
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Values per checkpoint flush
        #[arg(long, default_value_t = 4096)]
        batch: usize,
    },
    /// List values no residue rule excludes
    Sieve {
        /// Inclusive upper bound, decimal or 0b-prefixed binary
        limit: String,
        /// Check that every candidate's trajectory dips below it
        #[arg(long)]
        certify: bool,
        /// List every value with the rules that exclude it
        #[arg(long)]
        explain: bool,
        /// Step budget per candidate for --certify
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
    },
    /// Compare plain and accelerated trajectory costs over a range
    Bench {
        /// Inclusive odd range lo..hi of starting values
        #[arg(long)]
        range: String,
        /// Timing repetitions
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
    },
    /// Print the built-in worked examples
    Examples,
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Step { value, trace } => cmd_step(&value, trace),
        Command::Traj {
            start,
            accel,
            matrix,
            max_steps,
            format,
        } => cmd_traj(&start, accel, matrix, max_steps, format),
        Command::Predict {
            value,
            range,
            format,
        } => cmd_predict(value, range, format),
        Command::Verify {
            range,
            checkpoint,
            workers,
            batch,
        } => cmd_verify(&range, checkpoint, workers, batch),
        Command::Sieve {
            limit,
            certify,
            explain,
            max_steps,
        } => cmd_sieve(&limit, certify, explain, max_steps),
        Command::Bench {
            range,
            reps,
            workers,
            max_steps,
        } => cmd_bench(&range, reps, workers, max_steps),
        Command::Examples => {
            print!("{}", examples::render_all());
            Ok(0)
        }
    }
}

fn cmd_step(value: &str, trace: bool) -> Result<i32> {
    let d = parse_odd(value)?;
    if trace {
        print!("{}", render_transcript(&d));
    } else {
        print!("{}", render_step_line(&d));
    }
    Ok(0)
}

fn cmd_traj(
    start: &str,
    accel: bool,
    matrix: bool,
    max_steps: usize,
    format: Format,
) -> Result<i32> {
    if matrix && format != Format::Table {
        bail!("--matrix output has no csv/jsonl form");
    }
    let start = parse_odd(start)?;
    let (rows, matrix_lines, completed) = if accel {
        let traj = accel_trajectory(start, max_steps);
        let rows: Vec<Row> = traj.rows.iter().map(Row::from_accel).collect();
        let lines: Vec<MatrixLine> = traj.rows.iter().map(MatrixLine::from_accel).collect();
        (rows, lines, traj.completed)
    } else {
        let traj = syracuse_trajectory(start, max_steps);
        let rows: Vec<Row> = traj.rows.iter().map(Row::from_plain).collect();
        let lines: Vec<MatrixLine> = traj.rows.iter().map(MatrixLine::from_plain).collect();
        (rows, lines, traj.completed)
    };
    if matrix {
        print!("{}", render_matrix(&matrix_lines));
    } else {
        print!("{}", render_rows(&rows, format));
    }
    if !completed {
        eprintln!("truncated: no 1 reached within {max_steps} steps");
        return Ok(1);
    }
    Ok(0)
}

fn cmd_predict(value: Option<String>, range: Option<String>, format: Format) -> Result<i32> {
    let rows: Vec<PredictRow> = match (value, range) {
        (Some(value), None) => vec![PredictRow::evaluate(&parse_odd(&value)?)],
        (None, Some(range)) => {
            let (lo, hi) = parse_odd_range(&range)?;
            odd_values(&lo, &hi)
                .map(|d| PredictRow::evaluate(&d))
                .collect()
        }
        // clap enforces exactly one of the two
        _ => unreachable!("argument parsing guarantees value xor range"),
    };
    let disagreements = rows.iter().filter(|r| !r.agree).count();
    print!("{}", render_predictions(&rows, format));
    if disagreements > 0 {
        eprintln!("{disagreements} disagreement(s) found");
        return Ok(1);
    }
    Ok(0)
}

fn cmd_verify(
    range: &str,
    checkpoint: Option<PathBuf>,
    workers: usize,
    batch: usize,
) -> Result<i32> {
    let (lo, hi) = parse_odd_range(range)?;
    let mut stderr = std::io::stderr();
    let outcome = verify_range(
        &lo,
        &hi,
        VerifyOptions {
            workers,
            batch,
            checkpoint: checkpoint.as_deref(),
            progress: Some(&mut stderr),
        },
    )?;
    if let Some(from) = &outcome.resumed_from {
        eprintln!("resumed from checkpoint at {from}");
    }
    for v in &outcome.violations {
        println!("VIOLATION {} [{}] {}", v.value, v.check, v.detail);
    }
    println!(
        "verify {}..{}: checked {} odd values, violations {}",
        lo.to_decimal(),
        hi.to_decimal(),
        outcome.checked,
        outcome.violation_count
    );
    Ok(if outcome.violation_count > 0 { 1 } else { 0 })
}

fn cmd_sieve(limit: &str, certify: bool, explain: bool, max_steps: usize) -> Result<i32> {
    let limit = parse_value(limit)?;
    let candidates = candidates_up_to(&limit);
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    if explain {
        let mut n = BitNum::one();
        while n <= limit {
            let rules = violated_rules(&n);
            if rules.is_empty() {
                writeln!(out, "{n} candidate")?;
            } else {
                let labels: Vec<&str> = rules.iter().map(|r| r.label).collect();
                writeln!(out, "{n} excluded: {}", labels.join(", "))?;
            }
            n = n.add_small(1);
        }
    } else {
        for candidate in &candidates {
            writeln!(out, "{candidate}")?;
        }
    }
    if certify {
        let mut failures = 0;
        for candidate in &candidates {
            let check = drops_below_self(candidate, max_steps);
            if !check.dropped {
                failures += 1;
                writeln!(
                    out,
                    "FAIL: {candidate} did not drop below itself within {max_steps} steps \
                     (smallest value seen {})",
                    check.min_odd_seen
                )?;
            }
        }
        if failures > 0 {
            out.flush()?;
            eprintln!("{failures} candidate(s) failed certification");
            return Ok(1);
        }
        writeln!(
            out,
            "certified: {} candidate(s) all drop below themselves within {max_steps} steps",
            candidates.len()
        )?;
    }
    out.flush()?;
    Ok(0)
}

fn cmd_bench(range: &str, reps: usize, workers: usize, max_steps: usize) -> Result<i32> {
    if reps == 0 {
        bail!("reps must be at least 1");
    }
    if workers == 0 {
        bail!("workers must be at least 1");
    }
    let (lo, hi) = parse_odd_range(range)?;
    let starts: Vec<OddNum> = odd_values(&lo, &hi).collect();

    let plain = |s: &OddNum| {
        let t = syracuse_trajectory(s.clone(), max_steps);
        (t.rows.len() as u64, t.completed)
    };
    let accel = |s: &OddNum| {
        let t = accel_trajectory(s.clone(), max_steps);
        (t.rows.len() as u64, t.completed)
    };

    let mut plain_time = Duration::ZERO;
    let mut accel_time = Duration::ZERO;
    let mut plain_counts = (0u64, 0u64);
    let mut accel_counts = (0u64, 0u64);
    for _ in 0..reps {
        let started = Instant::now();
        plain_counts = bench_pass(&starts, workers, &plain);
        plain_time += started.elapsed();
        let started = Instant::now();
        accel_counts = bench_pass(&starts, workers, &accel);
        accel_time += started.elapsed();
    }
    let (plain_rows, plain_truncated) = plain_counts;
    let (accel_rows, accel_truncated) = accel_counts;
    let n = starts.len() as u64;
    let plain_steps = plain_rows - n;
    let accel_steps = accel_rows - n;

    println!(
        "bench {}..{}: {} start(s), reps {}, max steps {}",
        lo.to_decimal(),
        hi.to_decimal(),
        n,
        reps,
        max_steps
    );
    let ms = |d: Duration| d.as_secs_f64() * 1000.0 / reps as f64;
    println!(
        "plain rows: {plain_rows} (steps {plain_steps}), time: {:.1} ms",
        ms(plain_time)
    );
    println!(
        "accel rows: {accel_rows} (steps {accel_steps}), time: {:.1} ms",
        ms(accel_time)
    );
    if accel_steps > 0 {
        println!(
            "steps ratio plain/accel: {:.2}",
            plain_steps as f64 / accel_steps as f64
        );
    } else {
        println!("steps ratio plain/accel: n/a");
    }

    let truncated = plain_truncated + accel_truncated;
    if truncated > 0 {
        eprintln!("{truncated} trajectory run(s) truncated at {max_steps} steps");
        return Ok(1);
    }
    Ok(0)
}

/// Sums (rows, truncation count) of one trajectory pass, optionally sharded.
fn bench_pass<F>(starts: &[OddNum], workers: usize, pass: &F) -> (u64, u64)
where
    F: Fn(&OddNum) -> (u64, bool) + Sync,
{
    let reduce = |chunk: &[OddNum]| {
        let mut rows = 0u64;
        let mut truncated = 0u64;
        for s in chunk {
            let (r, completed) = pass(s);
            rows += r;
            truncated += !completed as u64;
        }
        (rows, truncated)
    };
    if workers == 1 || starts.len() <= 1 {
        return reduce(starts);
    }
    let chunk_size = starts.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = starts
            .chunks(chunk_size)
            .map(|chunk| scope.spawn(move || reduce(chunk)))
            .collect();
        let mut rows = 0u64;
        let mut truncated = 0u64;
        for handle in handles {
            let (r, t) = handle.join().expect("bench thread panicked");
            rows += r;
            truncated += t;
        }
        (rows, truncated)
    })
}
