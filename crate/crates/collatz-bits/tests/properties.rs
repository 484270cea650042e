//! Randomized properties, mostly at widths far beyond u64 so the
//! arbitrary-precision paths get exercised, with u64 arithmetic as the
//! reference wherever values still fit.

use proptest::prelude::*;

use collatz_bits::accel::{accel_step, reduced_steps, step_identity_holds};
use collatz_bits::bitnum::{BitNum, OddNum};
use collatz_bits::lengthpred::{hew_shortening, predict_delta};
use collatz_bits::stepper::{raw_step, syracuse_step};

/// MSB-first binary strings of canonical numbers, up to 256 bits.
fn binary_string() -> impl Strategy<Value = String> {
    "1[01]{0,255}"
}

/// Binary strings of odd numbers, up to 400 bits.
fn odd_binary_string() -> impl Strategy<Value = String> {
    prop_oneof![Just("1".to_string()), "1[01]{0,398}1"]
}

fn parse_odd(s: &str) -> OddNum {
    OddNum::new(BitNum::parse_binary(s).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn binary_round_trip(s in binary_string()) {
        let n = BitNum::parse_binary(&s).unwrap();
        prop_assert_eq!(n.render_binary(), s.clone());
        prop_assert_eq!(n.bit_length(), s.len());
    }

    #[test]
    fn decimal_round_trip(v in 1u64..) {
        let n = BitNum::from_decimal(&v.to_string()).unwrap();
        prop_assert_eq!(&n, &BitNum::from_u64(v).unwrap());
        prop_assert_eq!(n.to_decimal(), v.to_string());
        prop_assert_eq!(n.to_u64(), Some(v));
    }

    #[test]
    fn automaton_matches_ripple_adder_wide(s in odd_binary_string()) {
        let d = parse_odd(&s);
        let (raw, trace) = raw_step(&d);
        prop_assert_eq!(&raw, &d.shift_add_triple());
        prop_assert_eq!(trace.records.len(), d.bit_length() + 2);
        prop_assert!(!trace.records.last().unwrap().flag_after);
    }

    #[test]
    fn predictors_match_measurement_wide(s in odd_binary_string()) {
        let d = parse_odd(&s);
        let before = d.bit_length() as i64;
        let (next, _) = syracuse_step(&d);
        let actual = next.bit_length() as i64 - before;

        prop_assert_eq!(predict_delta(&d).delta, actual);
        let shortening = hew_shortening(&d).expect("gap case reached");
        prop_assert_eq!(shortening, -actual);
    }

    #[test]
    fn jump_equals_repeated_steps_wide(s in odd_binary_string()) {
        let d = parse_odd(&s);
        let step = accel_step(&d);
        prop_assert_eq!(&step.next, &reduced_steps(&d, step.k));
        prop_assert!(step_identity_holds(&step));
        prop_assert_eq!(step.k, d.trailing_ones());
    }

    #[test]
    fn add_and_order_match_u64(a in 1u64..1 << 62, b in 1u64..1 << 62) {
        let x = BitNum::from_u64(a).unwrap();
        let y = BitNum::from_u64(b).unwrap();
        prop_assert_eq!(x.add(&y).to_u64(), Some(a + b));
        prop_assert_eq!(x.cmp(&y), a.cmp(&b));
    }

    #[test]
    fn residues_agree_between_implementations(s in binary_string()) {
        // mod3 uses an alternating-sign digit trick, mod_small a direct fold
        let n = BitNum::parse_binary(&s).unwrap();
        prop_assert_eq!(n.mod3(), n.mod_small(3));
        prop_assert_eq!(n.mod_small(2), if n.is_odd() { 1 } else { 0 });
    }

    #[test]
    fn low_bits_match_string_suffix(s in binary_string(), k in 0usize..=64) {
        let n = BitNum::parse_binary(&s).unwrap();
        let suffix_start = s.len().saturating_sub(k);
        let expected = s[suffix_start..]
            .bytes()
            .fold(0u64, |acc, b| (acc << 1) | u64::from(b == b'1'));
        prop_assert_eq!(n.low_bits(k), expected);
    }

    #[test]
    fn shift_then_strip_round_trips(s in odd_binary_string(), zeros in 0usize..40) {
        let d = parse_odd(&s);
        let shifted = d.as_bitnum().shl(zeros);
        let (back, count) = shifted.strip_trailing_zeros();
        prop_assert_eq!(count, zeros);
        prop_assert_eq!(&back, &d);
    }
}
