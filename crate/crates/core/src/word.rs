//! Timed words, letters and alphabets, plus the `delay:letter; ...` text format.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A letter of the untimed alphabet.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(s: &str) -> Self {
        Symbol(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite alphabet, kept sorted and duplicate free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Symbol>", into = "Vec<Symbol>")]
pub struct Alphabet(Vec<Symbol>);

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Symbol>,
    {
        let mut v: Vec<Symbol> = symbols.into_iter().map(Into::into).collect();
        v.sort();
        v.dedup();
        Alphabet(v)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.0.binary_search(s).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.0.iter()
    }
}

impl From<Vec<Symbol>> for Alphabet {
    fn from(v: Vec<Symbol>) -> Self {
        Alphabet::new(v)
    }
}

impl From<Alphabet> for Vec<Symbol> {
    fn from(a: Alphabet) -> Self {
        a.0
    }
}

/// One `(delay, symbol)` pair.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimedLetter {
    pub delay: Rational,
    pub symbol: Symbol,
}

impl TimedLetter {
    pub fn new(delay: Rational, symbol: impl Into<Symbol>) -> Self {
        TimedLetter { delay, symbol: symbol.into() }
    }
}

impl fmt::Display for TimedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.delay, self.symbol)
    }
}

impl fmt::Debug for TimedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}·{})", self.delay, self.symbol)
    }
}

/// A finite timed word `(t1·a1)...(tn·an)`. Delays are relative to the previous letter.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TimedWord(Vec<TimedLetter>);

impl TimedWord {
    pub fn empty() -> Self {
        TimedWord(Vec::new())
    }

    pub fn from_letters(letters: Vec<TimedLetter>) -> Self {
        TimedWord(letters)
    }

    /// Convenience constructor from `(delay, symbol)` pairs.
    pub fn from_pairs<'a, I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (Rational, &'a str)>,
    {
        TimedWord(pairs.into_iter().map(|(d, s)| TimedLetter::new(d, s)).collect())
    }

    pub fn letters(&self) -> &[TimedLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn delays(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.0.iter().map(|l| &l.delay)
    }

    pub fn push(&mut self, letter: TimedLetter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &TimedWord) -> TimedWord {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        TimedWord(v)
    }

    pub fn extended(&self, letter: &TimedLetter) -> TimedWord {
        let mut v = self.0.clone();
        v.push(letter.clone());
        TimedWord(v)
    }

    pub fn prefix(&self, n: usize) -> TimedWord {
        TimedWord(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> TimedWord {
        TimedWord(self.0[n..].to_vec())
    }

    /// All prefixes from `ε` up to the word itself.
    pub fn prefixes(&self) -> impl Iterator<Item = TimedWord> + '_ {
        (0..=self.len()).map(|n| self.prefix(n))
    }

    /// Checks that every symbol belongs to `alphabet`.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self.0.iter().find(|l| !alphabet.contains(&l.symbol)) {
            Some(l) => Err(Error::UnknownSymbol(l.symbol.to_string())),
            None => Ok(()),
        }
    }

    /// Shortest first, then lexicographic on `(delay, symbol)`.
    pub fn shortlex_cmp(&self, other: &TimedWord) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Sum of all delays.
pub fn sum_sigma(w: &TimedWord) -> Rational {
    w.delays().sum()
}

/// Every delay has fractional part `0` or `1/2`.
pub fn is_half_integral(w: &TimedWord) -> bool {
    let half = Rational::half();
    w.delays().all(|d| {
        let f = d.fract();
        f.is_zero() || f == half
    })
}

/// Every delay is strictly below `K + 1`.
pub fn is_small(w: &TimedWord, k: u32) -> bool {
    let bound = Rational::from_int(k as u64 + 1);
    w.delays().all(|d| *d < bound)
}

impl fmt::Display for TimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for l in &self.0 {
            write!(f, "{l:?}")?;
        }
        Ok(())
    }
}

impl FromStr for TimedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(TimedWord::empty());
        }
        s.split(';')
            .map(|item| {
                let (d, a) = item
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected `delay:letter`, got `{}`", item.trim())))?;
                let a = a.trim();
                if a.is_empty() || a.contains(char::is_whitespace) {
                    return Err(Error::Parse(format!("invalid letter in `{}`", item.trim())));
                }
                Ok(TimedLetter::new(d.parse()?, a))
            })
            .collect::<Result<Vec<_>>>()
            .map(TimedWord)
    }
}

impl Serialize for TimedWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TimedWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> TimedWord {
        s.parse().unwrap()
    }

    #[test]
    fn sum_sigma_examples() {
        assert_eq!(sum_sigma(&TimedWord::empty()), Rational::zero());
        assert_eq!(sum_sigma(&w("1/2:a; 1/2:a")), Rational::one());
        assert_eq!(sum_sigma(&w("1:a; 1/2:a; 1/2:a")), Rational::from_int(2));
    }

    #[test]
    fn half_integral_and_small() {
        assert!(is_half_integral(&w("1/2:a; 1:b")));
        assert!(!is_half_integral(&w("1/3:a")));
        assert!(is_half_integral(&TimedWord::empty()));
        assert!(is_small(&w("3/2:a"), 1));
        assert!(!is_small(&w("2:a"), 1));
        assert!(is_small(&TimedWord::empty(), 0));
    }

    #[test]
    fn text_format() {
        assert_eq!(w("1/2:a; 1:b").to_string(), "1/2:a; 1:b");
        assert_eq!(w("0.5:a;1:b").to_string(), "1/2:a; 1:b");
        assert_eq!(w(""), TimedWord::empty());
        assert_eq!(TimedWord::empty().to_string(), "");
        assert!("1/2".parse::<TimedWord>().is_err());
        assert!("x:a".parse::<TimedWord>().is_err());
        assert!("1:".parse::<TimedWord>().is_err());
    }

    #[test]
    fn shortlex() {
        assert_eq!(w("1:a").shortlex_cmp(&w("0:a; 0:a")), Ordering::Less);
        assert_eq!(w("1/2:b").shortlex_cmp(&w("1:a")), Ordering::Less);
        assert_eq!(w("1:a").shortlex_cmp(&w("1:b")), Ordering::Less);
    }

    fn arb_word() -> impl Strategy<Value = TimedWord> {
        prop::collection::vec((0u32..50, 1u32..12, prop::sample::select(vec!["a", "b", "go"])), 0..6).prop_map(|v| {
            TimedWord::from_letters(
                v.into_iter()
                    .map(|(n, d, s)| TimedLetter::new(Rational::new(n as i64, d as i64).unwrap(), s))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(word in arb_word()) {
            let printed = word.to_string();
            let parsed: TimedWord = printed.parse().unwrap();
            prop_assert_eq!(&parsed, &word);
            prop_assert_eq!(parsed.to_string(), printed);
        }
    }
}
