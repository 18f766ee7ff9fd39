use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::region::RegionIndex;

/// Atomic clock constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `x < m`
    Lt(u32),
    /// `m < x`
    Gt(u32),
    /// `x = m`
    Eq(u32),
}

impl Atom {
    pub fn constant(self) -> u32 {
        match self {
            Atom::Lt(m) | Atom::Gt(m) | Atom::Eq(m) => m,
        }
    }

    fn interval(self) -> Interval {
        match self {
            Atom::Lt(m) => Interval { lo: 0, lo_closed: true, hi: Some(m), hi_closed: false },
            Atom::Gt(m) => Interval { lo: m, lo_closed: false, hi: None, hi_closed: false },
            Atom::Eq(m) => Interval::point(m),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Lt(m) => write!(f, "x<{m}"),
            Atom::Gt(m) => write!(f, "{m}<x"),
            Atom::Eq(m) => write!(f, "x={m}"),
        }
    }
}

/// A guard on the single clock `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Guard {
    /// `x = m`
    Eq(u32),
    /// `m < x < m+1`
    Open(u32),
    /// `m < x`; region form when `m` is the automaton constant `K`.
    Above(u32),
    /// Conjunction of atoms; input only, removed by guard normalization.
    Conj(Vec<Atom>),
}

/// A set of clock values with integral (or absent) endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Interval {
    lo: u32,
    lo_closed: bool,
    hi: Option<u32>,
    hi_closed: bool,
}

impl Interval {
    fn point(m: u32) -> Self {
        Interval { lo: m, lo_closed: true, hi: Some(m), hi_closed: true }
    }

    fn full() -> Self {
        Interval { lo: 0, lo_closed: true, hi: None, hi_closed: false }
    }

    pub(crate) fn is_empty(&self) -> bool {
        match self.hi {
            None => false,
            Some(hi) => hi < self.lo || (hi == self.lo && !(self.lo_closed && self.hi_closed)),
        }
    }

    pub(crate) fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Greater => (self.lo, self.lo_closed),
            std::cmp::Ordering::Less => (other.lo, other.lo_closed),
            std::cmp::Ordering::Equal => (self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match (self.hi, other.hi) {
            (None, None) => (None, false),
            (Some(h), None) => (Some(h), self.hi_closed),
            (None, Some(h)) => (Some(h), other.hi_closed),
            (Some(a), Some(b)) => match a.cmp(&b) {
                std::cmp::Ordering::Less => (Some(a), self.hi_closed),
                std::cmp::Ordering::Greater => (Some(b), other.hi_closed),
                std::cmp::Ordering::Equal => (Some(a), self.hi_closed && other.hi_closed),
            },
        };
        Interval { lo, lo_closed, hi, hi_closed }
    }

    pub(crate) fn contains(&self, x: &Rational) -> bool {
        let lo = Rational::from_int(self.lo as u64);
        let above_lo = if self.lo_closed { *x >= lo } else { *x > lo };
        above_lo
            && match self.hi {
                None => true,
                Some(hi) => {
                    let hi = Rational::from_int(hi as u64);
                    if self.hi_closed {
                        *x <= hi
                    } else {
                        *x < hi
                    }
                }
            }
    }

    /// A single integer point, if the interval is one.
    pub(crate) fn as_point(&self) -> Option<u32> {
        (self.hi == Some(self.lo) && self.lo_closed && self.hi_closed).then_some(self.lo)
    }
}

impl Guard {
    pub(crate) fn interval(&self) -> Interval {
        match self {
            Guard::Eq(m) => Interval::point(*m),
            Guard::Open(m) => Interval { lo: *m, lo_closed: false, hi: Some(m + 1), hi_closed: false },
            Guard::Above(m) => Interval { lo: *m, lo_closed: false, hi: None, hi_closed: false },
            Guard::Conj(atoms) => atoms.iter().fold(Interval::full(), |acc, a| acc.intersect(&a.interval())),
        }
    }

    /// Exact membership of a clock value in the guard's denotation.
    pub fn contains(&self, x: &Rational) -> bool {
        self.interval().contains(x)
    }

    pub fn is_unsatisfiable(&self) -> bool {
        self.interval().is_empty()
    }

    /// Whether the two denotations intersect.
    pub fn overlaps(&self, other: &Guard) -> bool {
        !self.interval().intersect(&other.interval()).is_empty()
    }

    /// Largest integer constant mentioned by the guard.
    pub fn max_constant(&self) -> u32 {
        match self {
            Guard::Eq(m) | Guard::Above(m) => *m,
            Guard::Open(m) => m + 1,
            Guard::Conj(atoms) => atoms.iter().map(|a| a.constant()).max().unwrap_or(0),
        }
    }

    /// `x = m`, `m < x < m+1` with `m < K`, or `K < x`.
    pub fn is_region_form(&self, k: u32) -> bool {
        match self {
            Guard::Eq(m) => *m <= k,
            Guard::Open(m) => *m < k,
            Guard::Above(m) => *m == k,
            Guard::Conj(_) => false,
        }
    }

    /// The region this guard denotes, when it is in region form for `k`.
    pub fn as_region(&self, k: u32) -> Option<RegionIndex> {
        if !self.is_region_form(k) {
            return None;
        }
        Some(match self {
            Guard::Eq(m) => RegionIndex::Int(*m),
            Guard::Open(m) => RegionIndex::Frac(*m),
            _ => RegionIndex::AboveK,
        })
    }

    /// Denotation is a single integer (the integer-reset condition).
    pub fn is_equality(&self) -> bool {
        self.interval().as_point().is_some()
    }

    /// Regions of `≡^k` contained in the guard. Requires `k ≥ max_constant()`.
    pub fn covered_regions(&self, k: u32) -> Vec<RegionIndex> {
        let iv = self.interval();
        RegionIndex::all(k).into_iter().filter(|r| iv.contains(&r.representative(k))).collect()
    }
}

/// The region-form guard `φ([t])` for a region.
pub fn region_to_guard(r: RegionIndex, k: u32) -> Guard {
    match r {
        RegionIndex::Int(m) => Guard::Eq(m),
        RegionIndex::Frac(m) => Guard::Open(m),
        RegionIndex::AboveK => Guard::Above(k),
    }
}

/// `x=1`, `0<x<1`, `1<x`; conjunctions in brackets, e.g. `[x<1]`.
impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guard::Eq(m) => write!(f, "x={m}"),
            Guard::Open(m) => write!(f, "{m}<x<{}", m + 1),
            Guard::Above(m) => write!(f, "{m}<x"),
            Guard::Conj(atoms) => {
                f.write_str("[")?;
                for (i, a) in atoms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str("]")
            }
        }
    }
}

fn parse_u32(s: &str, whole: &str) -> Result<u32> {
    s.trim().parse().map_err(|_| Error::Parse(format!("invalid guard `{whole}`")))
}

impl FromStr for Atom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(m) = s.strip_prefix("x<") {
            Ok(Atom::Lt(parse_u32(m, s)?))
        } else if let Some(m) = s.strip_prefix("x=") {
            Ok(Atom::Eq(parse_u32(m, s)?))
        } else if let Some(m) = s.strip_suffix("<x") {
            Ok(Atom::Gt(parse_u32(m, s)?))
        } else {
            Err(Error::Parse(format!("invalid atom `{s}`")))
        }
    }
}

impl FromStr for Guard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            if inner.trim().is_empty() {
                return Ok(Guard::Conj(Vec::new()));
            }
            return inner.split('&').map(str::parse).collect::<Result<Vec<_>>>().map(Guard::Conj);
        }
        let parts: Vec<&str> = s.split('<').collect();
        match parts.as_slice() {
            [m, "x", _] => {
                let lo = parse_u32(m, s)?;
                let hi = parse_u32(parts[2], s)?;
                if hi != lo + 1 {
                    return Err(Error::Parse(format!("open guard must span one unit: `{s}`")));
                }
                Ok(Guard::Open(lo))
            }
            [m, "x"] => Ok(Guard::Above(parse_u32(m, s)?)),
            _ => match s.strip_prefix("x=") {
                Some(m) => Ok(Guard::Eq(parse_u32(m, s)?)),
                None => Err(Error::Parse(format!("invalid guard `{s}`"))),
            },
        }
    }
}
