//! Region equivalence, integral positions and the clock value `c^K` a strict
//! integer-reset automaton holds after reading a word.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::word::{Alphabet, TimedLetter, TimedWord};

/// One of the `2K+2` classes of `≡^K`: `{m}` for `m ≤ K`, `(m, m+1)` for `m < K`, or `(K, ∞)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum RegionIndex {
    Int(u32),
    Frac(u32),
    AboveK,
}

impl RegionIndex {
    fn rank(self) -> u64 {
        match self {
            RegionIndex::Int(m) => 2 * m as u64,
            RegionIndex::Frac(m) => 2 * m as u64 + 1,
            RegionIndex::AboveK => u64::MAX,
        }
    }

    /// All regions for `k`, in increasing order of clock value.
    pub fn all(k: u32) -> Vec<RegionIndex> {
        let mut v = Vec::with_capacity(2 * k as usize + 2);
        for m in 0..k {
            v.push(RegionIndex::Int(m));
            v.push(RegionIndex::Frac(m));
        }
        v.push(RegionIndex::Int(k));
        v.push(RegionIndex::AboveK);
        v
    }

    /// Regions reachable from `self` by letting time elapse (including `self`).
    pub fn successors(self, k: u32) -> Vec<RegionIndex> {
        RegionIndex::all(k).into_iter().filter(|r| *r >= self).collect()
    }

    pub fn is_int(self) -> bool {
        matches!(self, RegionIndex::Int(_))
    }

    /// A half-integral value inside the region: `m`, `m + 1/2`, or `K + 1/2`.
    pub fn representative(self, k: u32) -> Rational {
        match self {
            RegionIndex::Int(m) => Rational::from_int(m as u64),
            RegionIndex::Frac(m) => Rational::from_int(m as u64) + Rational::half(),
            RegionIndex::AboveK => Rational::from_int(k as u64) + Rational::half(),
        }
    }

    pub fn contains(self, x: &Rational, k: u32) -> bool {
        region_of(x, k) == self
    }

    /// Whether the region is well-formed for the constant `k`.
    pub fn is_valid_for(self, k: u32) -> bool {
        match self {
            RegionIndex::Int(m) => m <= k,
            RegionIndex::Frac(m) => m < k,
            RegionIndex::AboveK => true,
        }
    }
}

impl PartialOrd for RegionIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RegionIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for RegionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionIndex::Int(m) => write!(f, "{{{m}}}"),
            RegionIndex::Frac(m) => write!(f, "({m},{})", m + 1),
            RegionIndex::AboveK => write!(f, "(K,inf)"),
        }
    }
}

pub fn region_of(x: &Rational, k: u32) -> RegionIndex {
    if *x > Rational::from_int(k as u64) {
        return RegionIndex::AboveK;
    }
    // x ≤ K here, so the floor fits in u32.
    let m = x.floor_u64().expect("bounded by K") as u32;
    if x.is_integer() {
        RegionIndex::Int(m)
    } else {
        RegionIndex::Frac(m)
    }
}

pub fn region_equiv(x: &Rational, y: &Rational, k: u32) -> bool {
    region_of(x, k) == region_of(y, k)
}

/// Integral positions of a delay sequence: the greedy maximal chain
/// `0 = i0 < i1 < ... < ip ≤ n` whose blocks sum to an integer in `[0, K]`.
pub fn integral_positions_of<'a, I>(delays: I, k: u32) -> Vec<usize>
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut positions = vec![0];
    let mut block = Rational::zero();
    for (i, t) in delays.into_iter().enumerate() {
        block = &block + t;
        if block.is_int_at_most(k) {
            positions.push(i + 1);
            block = Rational::zero();
        }
    }
    positions
}

/// `c^K` of a delay sequence: the sum of delays after the last integral position.
pub fn ck_of<'a, I>(delays: I, k: u32) -> Rational
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut block = Rational::zero();
    for t in delays {
        block = &block + t;
        if block.is_int_at_most(k) {
            block = Rational::zero();
        }
    }
    block
}

/// One step of `c^K`: the clock after elapsing `t` from `c` and resetting on `{0..K}`.
pub fn ck_step(c: &Rational, t: &Rational, k: u32) -> Rational {
    let v = c + t;
    if v.is_int_at_most(k) {
        Rational::zero()
    } else {
        v
    }
}

pub fn integral_positions(w: &TimedWord, k: u32) -> Vec<usize> {
    integral_positions_of(w.delays(), k)
}

pub fn ck(w: &TimedWord, k: u32) -> Rational {
    ck_of(w.delays(), k)
}

/// `c^K` truncated at `K`: every value above `K` collapses to `Top`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum CkTop {
    Value(Rational),
    Top,
}

impl CkTop {
    pub fn from_ck(c: Rational, k: u32) -> CkTop {
        if c <= Rational::from_int(k as u64) {
            CkTop::Value(c)
        } else {
            CkTop::Top
        }
    }

    pub fn region(&self, k: u32) -> RegionIndex {
        match self {
            CkTop::Value(v) => region_of(v, k),
            CkTop::Top => RegionIndex::AboveK,
        }
    }
}

impl fmt::Display for CkTop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CkTop::Value(v) => write!(f, "{v}"),
            CkTop::Top => f.write_str("top"),
        }
    }
}

impl Serialize for CkTop {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CkTop {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s == "top" {
            return Ok(CkTop::Top);
        }
        s.parse().map(CkTop::Value).map_err(serde::de::Error::custom)
    }
}

pub fn ck_top(w: &TimedWord, k: u32) -> CkTop {
    CkTop::from_ck(ck(w, k), k)
}

/// A letter of `Σ_K`: a delay in `{0, 1/2, ..., K, K+1/2}` paired with a symbol.
pub type SymbolicLetter = TimedLetter;

/// The delays `0, 1/2, 1, ..., K + 1/2`.
pub fn symbolic_delays(k: u32) -> Vec<Rational> {
    (0..=(2 * k as i64 + 1)).map(|n| Rational::new(n, 2).expect("non-negative")).collect()
}

/// `Σ_K`, ordered by delay then symbol.
pub fn symbolic_alphabet(alphabet: &Alphabet, k: u32) -> Result<Vec<SymbolicLetter>> {
    if alphabet.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    Ok(symbolic_letters(alphabet, k))
}

pub(crate) fn symbolic_letters(alphabet: &Alphabet, k: u32) -> Vec<SymbolicLetter> {
    symbolic_delays(k)
        .into_iter()
        .flat_map(|d| alphabet.iter().map(move |a| TimedLetter::new(d.clone(), a.clone())))
        .collect()
}

/// Membership of a word in `Σ_K^*`: half-integral and small.
pub fn is_symbolic_word(w: &TimedWord, k: u32) -> bool {
    crate::word::is_half_integral(w) && crate::word::is_small(w, k)
}
