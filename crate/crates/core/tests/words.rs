use fibsnow_core::words::{
    closed_forms, fib_length, fibonacci_word, pell, snowflake_word, TurnLetter, TurnWord,
};
use proptest::prelude::*;

fn any_word(max_len: usize) -> impl Strategy<Value = TurnWord> {
    prop::collection::vec(
        prop_oneof![Just(TurnLetter::L), Just(TurnLetter::R)],
        0..max_len,
    )
    .prop_map(TurnWord::new)
}

proptest! {
    #[test]
    fn complement_is_an_involution(w in any_word(64)) {
        prop_assert_eq!(w.complement().complement(), w.clone());
        prop_assert_eq!(w.complement().len(), w.len());
    }

    #[test]
    fn display_parse_round_trip(w in any_word(64)) {
        prop_assert_eq!(w.to_string().parse::<TurnWord>().unwrap(), w);
    }
}

#[test]
fn word_lengths_follow_fibonacci() {
    for n in 2..=30 {
        let a = fibonacci_word(n).unwrap().len();
        let b = fibonacci_word(n - 1).unwrap().len();
        let c = fibonacci_word(n - 2).unwrap().len();
        assert_eq!(a, b + c, "n = {n}");
        assert_eq!(a as u64, fib_length(n));
    }
    assert_eq!(fibonacci_word(40).unwrap().len() as u64, fib_length(40));
}

#[test]
fn snowflake_lengths() {
    for n in 0..=8 {
        assert_eq!(
            snowflake_word(n).unwrap().len() as u64,
            4 * fib_length(3 * n + 1) - 1
        );
    }
}

#[test]
fn closed_forms_match_recursions() {
    for n in 0..=40 {
        let c = closed_forms(n);
        let fib = fib_length(n) as f64;
        let p = pell(n + 1) as f64;
        let rel = |approx: f64, exact: f64| {
            if exact == 0.0 {
                approx.abs()
            } else {
                ((approx - exact) / exact).abs()
            }
        };
        assert!(rel(c.fib, fib) < 1e-9, "fib n = {n}: {} vs {fib}", c.fib);
        assert!(
            rel(c.pell_next, p) < 1e-9,
            "pell n = {n}: {} vs {p}",
            c.pell_next
        );
    }
}
