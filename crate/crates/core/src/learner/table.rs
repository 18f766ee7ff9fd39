use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::teacher::Teacher;
use crate::automaton::{region_to_guard, KAcceptor, OneClockTA, State, Transition};
use crate::error::{Error, Result};
use crate::region::{ck_top, region_of, symbolic_letters, CkTop, RegionIndex, SymbolicLetter};
use crate::word::{Alphabet, TimedWord};

/// `R(u)`: the row of `u` together with `c^K_⊤(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowSignature {
    pub row: Vec<bool>,
    pub cval: CkTop,
}

/// Two rows with equal signatures whose extensions by `letter` differ in `column`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconsistency {
    pub u: TimedWord,
    pub w: TimedWord,
    pub letter: SymbolicLetter,
    pub column: TimedWord,
}

impl Inconsistency {
    /// The column that separates the two rows.
    pub fn new_column(&self) -> TimedWord {
        TimedWord::from_letters(vec![self.letter.clone()]).concat(&self.column)
    }
}

/// A serializable copy of the table.
#[derive(Clone, Debug, Serialize)]
pub struct TableSnapshot {
    pub event: String,
    pub u1: Vec<TimedWord>,
    pub u2: Vec<TimedWord>,
    pub e: Vec<TimedWord>,
    /// One row per word of `u1` then `u2`, one bit per column.
    pub entries: Vec<Vec<u8>>,
    pub cvals: Vec<CkTop>,
}

/// An observation table over `Σ_K` with the `c^K_⊤` column.
#[derive(Clone, Debug)]
pub struct ObservationTable {
    alphabet: Alphabet,
    k: u32,
    letters: Vec<SymbolicLetter>,
    u1: Vec<TimedWord>,
    u1_set: HashSet<TimedWord>,
    u2: Vec<TimedWord>,
    e: Vec<TimedWord>,
    cells: HashMap<TimedWord, bool>,
}

impl ObservationTable {
    /// `U1 = E = {ε}`, filled through `teacher`.
    pub fn new(alphabet: &Alphabet, k: u32, teacher: &mut dyn Teacher) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut t = ObservationTable {
            alphabet: alphabet.clone(),
            k,
            letters: symbolic_letters(alphabet, k),
            u1: vec![TimedWord::empty()],
            u1_set: HashSet::from([TimedWord::empty()]),
            u2: Vec::new(),
            e: vec![TimedWord::empty()],
            cells: HashMap::new(),
        };
        t.refresh(teacher);
        Ok(t)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[SymbolicLetter] {
        &self.letters
    }

    pub fn u1(&self) -> &[TimedWord] {
        &self.u1
    }

    pub fn u2(&self) -> &[TimedWord] {
        &self.u2
    }

    pub fn e(&self) -> &[TimedWord] {
        &self.e
    }

    /// `T(u, e)`, if the cell has been filled.
    pub fn entry(&self, u: &TimedWord, e: &TimedWord) -> Option<bool> {
        self.cells.get(&u.concat(e)).copied()
    }

    pub fn cval(&self, u: &TimedWord) -> CkTop {
        ck_top(u, self.k)
    }

    pub fn signature(&self, u: &TimedWord) -> RowSignature {
        RowSignature { row: self.e.iter().map(|e| self.cells[&u.concat(e)]).collect(), cval: self.cval(u) }
    }

    /// Distinct membership words asked so far.
    pub fn cached_queries(&self) -> usize {
        self.cells.len()
    }

    fn refresh(&mut self, teacher: &mut dyn Teacher) {
        let mut u2 = Vec::new();
        let mut seen = HashSet::new();
        for u in &self.u1 {
            for l in &self.letters {
                let w = u.extended(l);
                if !self.u1_set.contains(&w) && seen.insert(w.clone()) {
                    u2.push(w);
                }
            }
        }
        self.u2 = u2;
        for u in self.u1.iter().chain(self.u2.iter()) {
            for e in &self.e {
                let w = u.concat(e);
                self.cells.entry(w).or_insert_with_key(|w| teacher.membership(w));
            }
        }
    }

    /// The shortlex-least word of `U2` whose signature does not occur in `U1`.
    pub fn is_closed(&self) -> Option<TimedWord> {
        let upper: HashSet<RowSignature> = self.u1.iter().map(|u| self.signature(u)).collect();
        self.u2.iter().filter(|w| !upper.contains(&self.signature(w))).min_by(|a, b| a.shortlex_cmp(b)).cloned()
    }

    /// The first violation, scanning pairs `u < w` of `U1` in shortlex order, then letters,
    /// then columns.
    pub fn is_consistent(&self) -> Option<Inconsistency> {
        let mut rows: Vec<&TimedWord> = self.u1.iter().collect();
        rows.sort_by(|a, b| a.shortlex_cmp(b));
        let sigs: Vec<RowSignature> = rows.iter().map(|u| self.signature(u)).collect();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                if sigs[i] != sigs[j] {
                    continue;
                }
                for l in &self.letters {
                    let (ul, wl) = (rows[i].extended(l), rows[j].extended(l));
                    for e in &self.e {
                        if self.cells[&ul.concat(e)] != self.cells[&wl.concat(e)] {
                            return Some(Inconsistency {
                                u: rows[i].clone(),
                                w: rows[j].clone(),
                                letter: l.clone(),
                                column: e.clone(),
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// Moves `w` into `U1`.
    pub fn close_step(&mut self, w: &TimedWord, teacher: &mut dyn Teacher) {
        if self.u1_set.insert(w.clone()) {
            self.u1.push(w.clone());
        }
        self.refresh(teacher);
    }

    /// Adds the separating column of `v`.
    pub fn consistency_step(&mut self, v: &Inconsistency, teacher: &mut dyn Teacher) {
        let col = v.new_column();
        if !self.e.contains(&col) {
            self.e.push(col);
        }
        self.refresh(teacher);
    }

    /// Adds every prefix of `cex` to `U1`; `cex` must be a word of `Σ_K^*`.
    pub fn add_prefixes(&mut self, cex: &TimedWord, teacher: &mut dyn Teacher) {
        for p in cex.prefixes() {
            if self.u1_set.insert(p.clone()) {
                self.u1.push(p);
            }
        }
        self.refresh(teacher);
    }

    /// The acceptor whose states are the distinct signatures of `U1`.
    pub fn conjecture(&self) -> Result<KAcceptor> {
        if self.is_closed().is_some() || self.is_consistent().is_some() {
            return Err(Error::TableNotReady);
        }
        let k = self.k;
        let mut index: HashMap<RowSignature, usize> = HashMap::new();
        let mut reps: Vec<&TimedWord> = Vec::new();
        for u in &self.u1 {
            let sig = self.signature(u);
            if let std::collections::hash_map::Entry::Vacant(v) = index.entry(sig) {
                v.insert(reps.len());
                reps.push(u);
            }
        }
        let mut states = Vec::with_capacity(reps.len());
        let mut transitions = Vec::new();
        for (id, u) in reps.iter().enumerate() {
            let name = if u.is_empty() { "ε".to_string() } else { format!("{u:?}") };
            states.push(State::new(name, self.cells[*u]));
            let cval = self.cval(u);
            let mut done: HashSet<(crate::word::Symbol, RegionIndex)> = HashSet::new();
            for l in &self.letters {
                let r = match &cval {
                    CkTop::Top => RegionIndex::AboveK,
                    CkTop::Value(c) => region_of(&(c + &l.delay), k),
                };
                if !done.insert((l.symbol.clone(), r)) {
                    continue;
                }
                let target = index[&self.signature(&u.extended(l))];
                transitions.push(Transition::new(id, target, l.symbol.clone(), region_to_guard(r, k), r.is_int()));
            }
        }
        let ta = OneClockTA::new(self.alphabet.clone(), states, 0, transitions)?.with_k(Some(k));
        KAcceptor::new(ta, k)
    }

    pub fn snapshot(&self, event: &str) -> TableSnapshot {
        let rows: Vec<&TimedWord> = self.u1.iter().chain(self.u2.iter()).collect();
        TableSnapshot {
            event: event.to_string(),
            u1: self.u1.clone(),
            u2: self.u2.clone(),
            e: self.e.clone(),
            entries: rows.iter().map(|u| self.e.iter().map(|e| self.cells[&u.concat(e)] as u8).collect()).collect(),
            cvals: rows.iter().map(|u| self.cval(u)).collect(),
        }
    }
}
