//! Turn words over `{L, R}`, the Fibonacci word recursion and the integer
//! sequences (Fibonacci, Pell) that govern snowflake lengths and sizes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest index `n` accepted by [`fibonacci_word`].
pub const DEFAULT_WORD_CAP: u32 = 40;
/// Largest snowflake order accepted by [`snowflake_word`].
pub const DEFAULT_ORDER_CAP: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[repr(u8)]
pub enum TurnLetter {
    L,
    R,
}

impl TurnLetter {
    pub fn complement(self) -> Self {
        match self {
            TurnLetter::L => TurnLetter::R,
            TurnLetter::R => TurnLetter::L,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            TurnLetter::L => 'L',
            TurnLetter::R => 'R',
        }
    }
}

impl TryFrom<char> for TurnLetter {
    type Error = Error;

    fn try_from(c: char) -> Result<Self> {
        match c {
            'L' => Ok(TurnLetter::L),
            'R' => Ok(TurnLetter::R),
            other => Err(Error::InvalidLetter(other)),
        }
    }
}

/// A finite word over `{L, R}`. The empty word is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TurnWord(Vec<TurnLetter>);

impl TurnWord {
    pub fn new(letters: Vec<TurnLetter>) -> Self {
        TurnWord(letters)
    }

    pub fn empty() -> Self {
        TurnWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[TurnLetter] {
        &self.0
    }

    /// Swaps `L` and `R`.
    pub fn complement(&self) -> TurnWord {
        TurnWord(self.0.iter().map(|l| l.complement()).collect())
    }

    pub fn concat(&self, other: &TurnWord) -> TurnWord {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        TurnWord(letters)
    }

    pub fn repeat(&self, times: usize) -> TurnWord {
        TurnWord(self.0.repeat(times))
    }

    /// Drops the last letter; the empty word stays empty.
    pub fn without_last(&self) -> TurnWord {
        let mut letters = self.0.clone();
        letters.pop();
        TurnWord(letters)
    }
}

impl fmt::Display for TurnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|l| l.as_char()).collect();
        f.write_str(&s)
    }
}

impl FromStr for TurnWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(TurnLetter::try_from)
            .collect::<Result<Vec<_>>>()
            .map(TurnWord)
    }
}

impl From<Vec<TurnLetter>> for TurnWord {
    fn from(letters: Vec<TurnLetter>) -> Self {
        TurnWord(letters)
    }
}

/// Caps guarding memory and 64-bit arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordCaps {
    pub word_index: u32,
    pub snowflake_order: u32,
}

impl Default for WordCaps {
    fn default() -> Self {
        WordCaps {
            word_index: DEFAULT_WORD_CAP,
            snowflake_order: DEFAULT_ORDER_CAP,
        }
    }
}

/// `q_n` under the default caps.
pub fn fibonacci_word(n: u32) -> Result<TurnWord> {
    fibonacci_word_with(n, WordCaps::default())
}

/// `q_0 = ε`, `q_1 = R`, and `q_n = q_{n-1} q_{n-2}` when `n ≡ 2 (mod 3)`,
/// otherwise `q_{n-1}` followed by the complement of `q_{n-2}`.
pub fn fibonacci_word_with(n: u32, caps: WordCaps) -> Result<TurnWord> {
    if n > caps.word_index {
        return Err(Error::CapExceeded {
            what: "word index",
            requested: n,
            cap: caps.word_index,
        });
    }
    if n == 0 {
        return Ok(TurnWord::empty());
    }
    let mut letters = Vec::with_capacity(fib_length(n) as usize);
    letters.push(TurnLetter::R);
    // q_{i} is always a prefix of q_{i+1}, so the word grows in place; only the
    // length of q_{i-2} needs remembering.
    let (mut prev_len, mut cur_len) = (0usize, 1usize);
    for i in 2..=n {
        if i % 3 == 2 {
            letters.extend_from_within(..prev_len);
        } else {
            for j in 0..prev_len {
                let l = letters[j].complement();
                letters.push(l);
            }
        }
        (prev_len, cur_len) = (cur_len, cur_len + prev_len);
    }
    debug_assert_eq!(letters.len(), cur_len);
    Ok(TurnWord(letters))
}

/// `(q_{3n+1})^4` with its last letter removed, under the default caps.
pub fn snowflake_word(n: u32) -> Result<TurnWord> {
    snowflake_word_with(n, WordCaps::default())
}

pub fn snowflake_word_with(n: u32, caps: WordCaps) -> Result<TurnWord> {
    if n > caps.snowflake_order {
        return Err(Error::CapExceeded {
            what: "snowflake order",
            requested: n,
            cap: caps.snowflake_order,
        });
    }
    let q = fibonacci_word_with(3 * n + 1, caps)?;
    let mut letters = q.0.repeat(4);
    letters.pop();
    Ok(TurnWord(letters))
}

/// `|q_n|`: 0, 1, 1, 2, 3, 5, ... Panics on overflow (n > 93).
pub fn fib_length(n: u32) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        let next = a.checked_add(b).expect("Fibonacci number overflows u64");
        (a, b) = (b, next);
    }
    a
}

/// Pell numbers `P(0) = 0, P(1) = 1, P(n) = 2P(n-1) + P(n-2)`.
/// Panics on overflow (n > 50).
pub fn pell(n: u32) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        let next = b
            .checked_mul(2)
            .and_then(|x| x.checked_add(a))
            .expect("Pell number overflows u64");
        (a, b) = (b, next);
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClosedForms {
    /// Binet's formula for `|q_n|`.
    pub fib: f64,
    /// Closed form for `P(n+1)`.
    pub pell_next: f64,
}

pub fn closed_forms(n: u32) -> ClosedForms {
    let sqrt5 = 5f64.sqrt();
    let sqrt2 = 2f64.sqrt();
    let n = n as i32;
    let phi = (1.0 + sqrt5) / 2.0;
    let psi = (1.0 - sqrt5) / 2.0;
    let fib = (phi.powi(n) - psi.powi(n)) / sqrt5;
    let pell_next =
        (2.0 + sqrt2) / 4.0 * (1.0 + sqrt2).powi(n) + (2.0 - sqrt2) / 4.0 * (1.0 - sqrt2).powi(n);
    ClosedForms { fib, pell_next }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> TurnWord {
        s.parse().unwrap()
    }

    #[test]
    fn first_fibonacci_words() {
        assert_eq!(fibonacci_word(0).unwrap(), TurnWord::empty());
        assert_eq!(fibonacci_word(1).unwrap(), w("R"));
        assert_eq!(fibonacci_word(2).unwrap(), w("R"));
        assert_eq!(fibonacci_word(3).unwrap(), w("RL"));
        assert_eq!(fibonacci_word(4).unwrap(), w("RLL"));
        assert_eq!(fibonacci_word(5).unwrap(), w("RLLRL"));
    }

    #[test]
    fn word_recursion_matches_naive_concatenation() {
        let mut words = vec![TurnWord::empty(), w("R")];
        for n in 2..=20usize {
            let next = if n % 3 == 2 {
                words[n - 1].concat(&words[n - 2])
            } else {
                words[n - 1].concat(&words[n - 2].complement())
            };
            words.push(next);
        }
        for (n, expected) in words.iter().enumerate() {
            assert_eq!(&fibonacci_word(n as u32).unwrap(), expected, "n = {n}");
        }
    }

    #[test]
    fn word_cap_is_enforced() {
        let err = fibonacci_word(41).unwrap_err();
        assert!(matches!(
            err,
            Error::CapExceeded {
                requested: 41,
                cap: 40,
                ..
            }
        ));
        assert!(snowflake_word(13).is_err());
        let caps = WordCaps {
            word_index: 5,
            snowflake_order: 1,
        };
        assert!(fibonacci_word_with(6, caps).is_err());
        assert!(snowflake_word_with(2, caps).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(w("R").complement(), w("L"));
        assert_eq!(w("RLL").complement(), w("LRR"));
        assert_eq!(TurnWord::empty().complement(), TurnWord::empty());
    }

    #[test]
    fn snowflake_words() {
        assert_eq!(snowflake_word(0).unwrap(), w("RRR"));
        assert_eq!(snowflake_word(1).unwrap(), w("RLLRLLRLLRL"));
        assert_eq!(snowflake_word(2).unwrap().len(), 51);
        for n in 0..=8 {
            assert_eq!(
                snowflake_word(n).unwrap().len() as u64,
                4 * fib_length(3 * n + 1) - 1
            );
        }
    }

    #[test]
    fn integer_sequences() {
        assert_eq!(fib_length(1), 1);
        assert_eq!(fib_length(4), 3);
        assert_eq!(fib_length(25), 75025);
        assert_eq!(pell(0), 0);
        assert_eq!(pell(4), 12);
        assert_eq!(pell(9), 985);
        for n in 2..=30 {
            assert_eq!(pell(n), 2 * pell(n - 1) + pell(n - 2));
        }
    }

    #[test]
    fn closed_form_examples() {
        let c = closed_forms(0);
        assert!(c.fib.abs() < 1e-12);
        assert!((c.pell_next - 1.0).abs() < 1e-12);
        let c = closed_forms(10);
        assert!((c.fib - 55.0).abs() < 1e-9);
        assert!((c.pell_next - 5741.0).abs() < 1e-8);
        let c = closed_forms(3);
        assert!((c.fib - 2.0).abs() < 1e-12);
        assert!((c.pell_next - 12.0).abs() < 1e-12);
    }

    #[test]
    fn parse_rejects_other_letters() {
        assert_eq!("RLX".parse::<TurnWord>(), Err(Error::InvalidLetter('X')));
        assert_eq!(w("RLL").to_string(), "RLL");
        assert_eq!(w("RLL").without_last(), w("RL"));
    }
}
