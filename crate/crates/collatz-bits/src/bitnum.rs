//! Arbitrary-precision positive integers stored as bit sequences.
//!
//! [`BitNum`] keeps its bits LSB-first (index 0 = least significant), with the
//! most significant stored bit always 1, so every value has exactly one
//! representation and `bit_length` is a plain length query. All arithmetic here
//! is the small, exact tool set the rest of the crate needs (shift, ripple-add,
//! decimal conversion by repeated x10 and /10 on the bit sequence), not a
//! general bignum. Nothing assumes values fit a machine word.
//!
//! [`OddNum`] wraps a `BitNum` whose bit 0 is 1; it is the domain of the
//! stepping, prediction and acceleration modules.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Errors from the text constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("invalid digit '{found}' at position {position}")]
    InvalidDigit { position: usize, found: char },
    #[error("leading zero at position {position}")]
    LeadingZero { position: usize },
    #[error("value must be at least 1")]
    Zero,
}

/// Returned when an even value is used where an odd one is required.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("value {0} is even, expected odd")]
pub struct EvenError(pub String);

/// Arbitrary-precision integer ≥ 1 as an LSB-first bit sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitNum {
    bits: Vec<bool>,
}

impl BitNum {
    /// Canonicalizes a raw LSB-first bit vector; `None` if it encodes zero.
    pub(crate) fn from_lsb(mut bits: Vec<bool>) -> Option<Self> {
        while bits.last() == Some(&false) {
            bits.pop();
        }
        if bits.is_empty() {
            None
        } else {
            Some(BitNum { bits })
        }
    }

    pub fn one() -> Self {
        BitNum { bits: vec![true] }
    }

    /// 2^k.
    pub fn pow2(k: usize) -> Self {
        let mut bits = vec![false; k];
        bits.push(true);
        BitNum { bits }
    }

    /// Parses MSB-first binary text. The first character must be '1'.
    pub fn parse_binary(text: &str) -> Result<Self, ParseError> {
        if text.is_empty() {
            return Err(ParseError::Empty);
        }
        let mut bits = Vec::with_capacity(text.len());
        for (position, found) in text.chars().enumerate() {
            match found {
                '0' if position == 0 => return Err(ParseError::LeadingZero { position }),
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(ParseError::InvalidDigit { position, found }),
            }
        }
        bits.reverse();
        Ok(BitNum { bits })
    }

    /// MSB-first binary text; round-trips with [`BitNum::parse_binary`].
    pub fn render_binary(&self) -> String {
        self.bits
            .iter()
            .rev()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    /// Parses decimal text. Works for values of any width: the accumulator is
    /// the bit sequence itself, advanced by ×10 + digit per character.
    pub fn from_decimal(text: &str) -> Result<Self, ParseError> {
        if text.is_empty() {
            return Err(ParseError::Empty);
        }
        let mut bits: Vec<bool> = Vec::new();
        for (position, found) in text.chars().enumerate() {
            let digit = match found.to_digit(10) {
                Some(d) => d as u64,
                None => return Err(ParseError::InvalidDigit { position, found }),
            };
            bits = raw_mul_small_add(&bits, 10, digit);
        }
        BitNum::from_lsb(bits).ok_or(ParseError::Zero)
    }

    /// Decimal text, by repeated division of the bit sequence by 10.
    pub fn to_decimal(&self) -> String {
        let mut bits = self.bits.clone();
        let mut digits = Vec::new();
        loop {
            let (quotient, remainder) = raw_div_small(&bits, 10);
            digits.push(char::from_digit(remainder as u32, 10).unwrap());
            if quotient.is_empty() {
                break;
            }
            bits = quotient;
        }
        digits.iter().rev().collect()
    }

    /// `None` for 0, which has no representation here.
    pub fn from_u64(mut value: u64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        let mut bits = Vec::new();
        while value > 0 {
            bits.push(value & 1 == 1);
            value >>= 1;
        }
        Some(BitNum { bits })
    }

    /// `None` if the value needs more than 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        let mut value = 0u64;
        for &bit in self.bits.iter().rev() {
            value = (value << 1) | bit as u64;
        }
        Some(value)
    }

    /// Number of stored bits = ⌊log₂ n⌋ + 1.
    pub fn bit_length(&self) -> usize {
        self.bits.len()
    }

    /// Bit at position `i`; false above the most significant stored bit.
    pub fn bit(&self, i: usize) -> bool {
        self.bits.get(i).copied().unwrap_or(false)
    }

    /// LSB-first view of the stored bits.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn is_odd(&self) -> bool {
        self.bits[0]
    }

    pub fn is_even(&self) -> bool {
        !self.bits[0]
    }

    pub fn is_one(&self) -> bool {
        self.bits.len() == 1
    }

    /// Schoolbook ripple-carry addition.
    pub fn add(&self, other: &BitNum) -> BitNum {
        let len = self.bits.len().max(other.bits.len());
        let mut out = Vec::with_capacity(len + 1);
        let mut carry = 0u8;
        for i in 0..len {
            let t = self.bit(i) as u8 + other.bit(i) as u8 + carry;
            out.push(t & 1 == 1);
            carry = t >> 1;
        }
        if carry > 0 {
            out.push(true);
        }
        BitNum { bits: out }
    }

    /// self + v for a machine-word addend.
    pub fn add_small(&self, v: u64) -> BitNum {
        let mut out = Vec::with_capacity(self.bits.len() + 1);
        let mut pending = v;
        let mut i = 0;
        while i < self.bits.len() || pending > 0 {
            let t = self.bit(i) as u64 + (pending & 1);
            out.push(t & 1 == 1);
            pending = (pending >> 1) + (t >> 1);
            i += 1;
        }
        if out.is_empty() {
            // v == 0 and self copied nothing; fall back to a plain copy
            out.extend_from_slice(&self.bits);
        }
        BitNum::from_lsb(out).expect("sum of positives is positive")
    }

    /// n + 1.
    pub fn succ(&self) -> BitNum {
        self.add_small(1)
    }

    /// n − 1; `None` when n = 1.
    pub fn pred(&self) -> Option<BitNum> {
        let first_one = self.bits.iter().position(|&b| b).unwrap();
        let mut bits = self.bits.clone();
        bits[first_one] = false;
        for bit in bits.iter_mut().take(first_one) {
            *bit = true;
        }
        BitNum::from_lsb(bits)
    }

    /// n · 2^k.
    pub fn shl(&self, k: usize) -> BitNum {
        let mut bits = vec![false; k];
        bits.extend_from_slice(&self.bits);
        BitNum { bits }
    }

    /// n / 2^k; `None` unless 2^k divides n exactly.
    pub fn shr_exact(&self, k: usize) -> Option<BitNum> {
        if k >= self.bits.len() || self.bits[..k].iter().any(|&b| b) {
            return None;
        }
        Some(BitNum {
            bits: self.bits[k..].to_vec(),
        })
    }

    /// 3n, as shift-and-add.
    pub fn triple(&self) -> BitNum {
        self.add(&self.shl(1))
    }

    /// Removes every factor of 2: returns (odd part, 2-adic valuation).
    pub fn strip_trailing_zeros(&self) -> (OddNum, usize) {
        let w = self.bits.iter().position(|&b| b).unwrap();
        (
            OddNum(BitNum {
                bits: self.bits[w..].to_vec(),
            }),
            w,
        )
    }

    /// Low `k` bits as a machine word (k ≤ 64): n mod 2^k.
    pub fn low_bits(&self, k: usize) -> u64 {
        debug_assert!(k <= 64);
        let mut value = 0u64;
        for i in (0..k.min(self.bits.len())).rev() {
            value = (value << 1) | self.bits[i] as u64;
        }
        value
    }

    /// n mod 3, exactly, using 2^i ≡ (−1)^i (mod 3): even-position bits count
    /// +1, odd-position bits count −1 ≡ +2.
    pub fn mod3(&self) -> u64 {
        let mut acc = 0u64;
        for (i, &bit) in self.bits.iter().enumerate() {
            if bit {
                acc += if i % 2 == 0 { 1 } else { 2 };
            }
        }
        acc % 3
    }

    /// n mod m by an MSB-first fold; exact for any m < 2^63.
    pub fn mod_small(&self, m: u64) -> u64 {
        debug_assert!(m > 0 && m < (1 << 63));
        let mut r = 0u64;
        for &bit in self.bits.iter().rev() {
            r = (r << 1 | bit as u64) % m;
        }
        r
    }
}

impl Ord for BitNum {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits
            .len()
            .cmp(&other.bits.len())
            .then_with(|| self.bits.iter().rev().cmp(other.bits.iter().rev()))
    }
}

impl PartialOrd for BitNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal())
    }
}

impl fmt::Binary for BitNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_binary())
    }
}

impl fmt::Debug for BitNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitNum({})", self.to_decimal())
    }
}

/// An odd [`BitNum`]: bit 0 is always 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddNum(BitNum);

impl OddNum {
    pub fn new(n: BitNum) -> Result<Self, EvenError> {
        if n.is_odd() {
            Ok(OddNum(n))
        } else {
            Err(EvenError(n.to_decimal()))
        }
    }

    pub fn from_u64(value: u64) -> Option<Self> {
        if value.is_multiple_of(2) {
            return None;
        }
        BitNum::from_u64(value).map(OddNum)
    }

    pub fn as_bitnum(&self) -> &BitNum {
        &self.0
    }

    pub fn into_bitnum(self) -> BitNum {
        self.0
    }

    /// Largest k with bits 0..k−1 all 1. Always ≥ 1; equals bit_length for
    /// all-ones values like 127 = 1111111.
    pub fn trailing_ones(&self) -> usize {
        let mut k = 0;
        while self.0.bit(k) {
            k += 1;
        }
        k
    }

    /// Writes n as g·2^k − 1 with g odd and k = trailing_ones(n).
    pub fn decompose_g_k(&self) -> (OddNum, usize) {
        let k = self.trailing_ones();
        let g = self
            .0
            .succ()
            .shr_exact(k)
            .expect("n + 1 is divisible by 2^trailing_ones(n)");
        debug_assert!(g.is_odd());
        (OddNum(g), k)
    }

    /// 3d + 1 as (d << 1) + d + 1, one explicit ripple-carry pass.
    ///
    /// This is the independent arithmetic oracle the automaton in `stepper` is
    /// differential-tested against; it must stay free of any transition-table
    /// logic. The +1 enters as the initial carry.
    pub fn shift_add_triple(&self) -> BitNum {
        let n = &self.0.bits;
        let len = n.len();
        let mut out = Vec::with_capacity(len + 2);
        let mut carry = 1u8;
        for i in 0..len + 2 {
            let a = if i < len { n[i] as u8 } else { 0 };
            let b = if i >= 1 && i - 1 < len {
                n[i - 1] as u8
            } else {
                0
            };
            let t = a + b + carry;
            out.push(t & 1 == 1);
            carry = t >> 1;
        }
        debug_assert_eq!(carry, 0, "3d+1 < 2^(bit_length(d)+2)");
        BitNum::from_lsb(out).expect("3d+1 >= 4")
    }
}

impl std::ops::Deref for OddNum {
    type Target = BitNum;

    fn deref(&self) -> &BitNum {
        &self.0
    }
}

impl From<OddNum> for BitNum {
    fn from(n: OddNum) -> BitNum {
        n.0
    }
}

impl TryFrom<BitNum> for OddNum {
    type Error = EvenError;

    fn try_from(n: BitNum) -> Result<Self, EvenError> {
        OddNum::new(n)
    }
}

impl fmt::Display for OddNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Binary for OddNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Binary::fmt(&self.0, f)
    }
}

impl fmt::Debug for OddNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OddNum({})", self.0.to_decimal())
    }
}

/// bits·m + add on a raw LSB-first vector (m, add small). The carry stays
/// below m + 1, so u64 intermediates never overflow for the m ≤ 10 used here.
fn raw_mul_small_add(bits: &[bool], m: u64, add: u64) -> Vec<bool> {
    let mut out = Vec::with_capacity(bits.len() + 4);
    let mut carry = add;
    for &bit in bits {
        let t = carry + if bit { m } else { 0 };
        out.push(t & 1 == 1);
        carry = t >> 1;
    }
    while carry > 0 {
        out.push(carry & 1 == 1);
        carry >>= 1;
    }
    out
}

/// MSB-first long division of a raw bit vector by a small divisor; returns
/// (quotient with no leading zeros, remainder). Empty quotient means 0.
fn raw_div_small(bits: &[bool], divisor: u64) -> (Vec<bool>, u64) {
    let mut quotient = vec![false; bits.len()];
    let mut remainder = 0u64;
    for i in (0..bits.len()).rev() {
        remainder = (remainder << 1) | bits[i] as u64;
        if remainder >= divisor {
            quotient[i] = true;
            remainder -= divisor;
        }
    }
    while quotient.last() == Some(&false) {
        quotient.pop();
    }
    (quotient, remainder)
}
