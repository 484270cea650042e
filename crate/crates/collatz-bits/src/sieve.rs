//! Residue sieve for minimal-counterexample candidates.
//!
//! A smallest value whose trajectory never dips below itself cannot lie in
//! any of four fixed residue classes; each class admits a short backward or
//! forward construction producing a smaller or contradictory value. The four
//! rules live here as data so each can be tested in isolation. Values passing
//! all rules are "candidates"; `drops_below_self` then certifies that a
//! candidate's trajectory does dip below it within a step budget, ruling it
//! out empirically.
//!
//! All residues are taken on the bit sequence itself (low bits for the
//! power-of-two moduli, the ±1 alternation for mod 3), so the sieve stays
//! exact for values of any width.

use crate::bitnum::{BitNum, OddNum};
use crate::stepper::syracuse_step;

/// One excluded residue class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueRule {
    pub modulus: u64,
    pub residue: u64,
    pub label: &'static str,
}

impl ResidueRule {
    /// Whether n falls in this excluded class; exact at any width.
    pub fn matches(&self, n: &BitNum) -> bool {
        let r = if self.modulus.is_power_of_two() {
            n.low_bits(self.modulus.trailing_zeros() as usize)
        } else if self.modulus == 3 {
            n.mod3()
        } else {
            n.mod_small(self.modulus)
        };
        r == self.residue
    }
}

/// The four excluded classes: even, 1 mod 4, 2 mod 3, 3 mod 16.
pub const RESTRICTIONS: [ResidueRule; 4] = [
    ResidueRule {
        modulus: 2,
        residue: 0,
        label: "Restriction 1",
    },
    ResidueRule {
        modulus: 3,
        residue: 2,
        label: "Restriction 2",
    },
    ResidueRule {
        modulus: 4,
        residue: 1,
        label: "Restriction 3",
    },
    ResidueRule {
        modulus: 16,
        residue: 3,
        label: "Restriction 4",
    },
];

/// Every rule n falls under; empty for candidates.
pub fn violated_rules(n: &BitNum) -> Vec<&'static ResidueRule> {
    RESTRICTIONS.iter().filter(|rule| rule.matches(n)).collect()
}

/// True iff no rule excludes n.
pub fn is_candidate(n: &BitNum) -> bool {
    !RESTRICTIONS.iter().any(|rule| rule.matches(n))
}

/// All candidates ≤ limit, ascending. Plain filtration over the odd numbers;
/// the 48-periodic structure (6 per block) is a consequence the tests
/// assert, not an input.
pub fn candidates_up_to(limit: &BitNum) -> Vec<OddNum> {
    let mut out = Vec::new();
    let mut n = BitNum::one();
    while &n <= limit {
        if is_candidate(&n) {
            out.push(OddNum::new(n.clone()).expect("rules exclude evens"));
        }
        n = n.add_small(2);
    }
    out
}

/// Result of chasing a value's trajectory until it dips below the start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DropCheck {
    /// A value smaller than the start appeared within the budget.
    pub dropped: bool,
    /// Reduced steps taken up to and including the dropping value, or the
    /// full budget when nothing dropped.
    pub steps_taken: usize,
    /// Smallest odd value observed, start and terminator included.
    pub min_odd_seen: OddNum,
}

/// Iterates reduced steps from n until a value < n appears or `step_cap`
/// steps have been taken. A genuine minimal counterexample would never drop;
/// every candidate in desk-scale ranges does.
pub fn drops_below_self(n: &OddNum, step_cap: usize) -> DropCheck {
    let mut min_odd_seen = n.clone();
    let mut value = n.clone();
    for step in 1..=step_cap {
        value = syracuse_step(&value).0;
        if value < min_odd_seen {
            min_odd_seen = value.clone();
        }
        if value.as_bitnum() < n.as_bitnum() {
            return DropCheck {
                dropped: true,
                steps_taken: step,
                min_odd_seen,
            };
        }
    }
    DropCheck {
        dropped: false,
        steps_taken: step_cap,
        min_odd_seen,
    }
}
