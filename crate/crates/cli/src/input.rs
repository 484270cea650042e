//! Argument parsing for values and ranges: decimal or "0b"-prefixed binary.

use anyhow::{anyhow, bail, Result};
use collatz_bits::{BitNum, OddNum};

/// Parses a positive integer, binary with a "0b" prefix or decimal otherwise.
pub fn parse_value(text: &str) -> Result<BitNum> {
    if let Some(binary) = text.strip_prefix("0b") {
        BitNum::parse_binary(binary).map_err(|e| anyhow!("invalid binary value {text:?}: {e}"))
    } else {
        BitNum::from_decimal(text).map_err(|e| anyhow!("invalid value {text:?}: {e}"))
    }
}

/// As [`parse_value`], and the value must be odd.
pub fn parse_odd(text: &str) -> Result<OddNum> {
    let n = parse_value(text)?;
    OddNum::new(n).map_err(|e| anyhow!("{e}"))
}

/// Parses "lo..hi" (both ends inclusive, both odd, lo ≤ hi).
pub fn parse_odd_range(text: &str) -> Result<(OddNum, OddNum)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| anyhow!("invalid range {text:?}: expected lo..hi"))?;
    let lo = parse_odd(lo)?;
    let hi = parse_odd(hi)?;
    if lo.as_bitnum() > hi.as_bitnum() {
        bail!("invalid range {text:?}: lower bound exceeds upper bound");
    }
    Ok((lo, hi))
}

/// Ascending iterator over the odd values of an inclusive range.
pub fn odd_values(lo: &OddNum, hi: &OddNum) -> impl Iterator<Item = OddNum> {
    let hi = hi.clone();
    let mut next = Some(lo.clone());
    std::iter::from_fn(move || {
        let current = next.take()?;
        if current.as_bitnum() > hi.as_bitnum() {
            return None;
        }
        next = Some(OddNum::new(current.add_small(2)).expect("odd + 2 stays odd"));
        Some(current)
    })
}
