use std::collections::{HashMap, VecDeque};

use super::{
    complete, normalize_guards, region_to_guard, strictify, OneClockTA, State, StateId, Transition, SINK_NAME,
};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::region::{region_of, symbolic_letters, RegionIndex, SymbolicLetter};
use crate::word::{Alphabet, TimedWord};

/// A complete strict deterministic 1-IRTA whose states each carry a unique region of `≡^K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KAcceptor {
    ta: OneClockTA,
    k: u32,
    region_map: Vec<RegionIndex>,
    sink: Option<StateId>,
}

impl KAcceptor {
    /// Validates `ta` as a K-acceptor. Unreachable states and transitions that can never
    /// fire from their source's region are removed.
    pub fn new(ta: OneClockTA, k: u32) -> Result<Self> {
        if let Some(t) = ta.first_non_region_form(k) {
            return Err(Error::NotRegionForm { k, guard: t.guard.to_string() });
        }
        if !ta.is_strict() || !ta.is_irta() {
            return Err(Error::NotKAcceptor("an equality guard must reset and no other guard may".into()));
        }
        if !ta.is_deterministic() {
            return Err(Error::NotKAcceptor("automaton is not deterministic".into()));
        }
        let mut missing = None;
        let seen = ta.explore_regions(k, |q, a, r| {
            missing.get_or_insert_with(|| format!("state `{}` has no move on {a} in region {r}", ta.state(q).name));
        });
        if let Some(msg) = missing {
            return Err(Error::NotKAcceptor(msg));
        }
        let mut region_map = Vec::with_capacity(seen.len());
        let mut keep = Vec::with_capacity(seen.len());
        for (q, regions) in seen.iter().enumerate() {
            if regions.len() > 1 {
                let mut rs: Vec<_> = regions.iter().copied().collect();
                rs.sort();
                return Err(Error::NotKAcceptor(format!(
                    "state `{}` is reached in regions {} and {}",
                    ta.state(q).name,
                    rs[0],
                    rs[1]
                )));
            }
            keep.push(!regions.is_empty());
            if let Some(r) = regions.iter().next() {
                region_map.push(*r);
            }
        }
        let pruned = ta.restrict(&keep);
        let live: Vec<Transition> = pruned
            .transitions()
            .iter()
            .filter(|t| t.guard.as_region(k).is_some_and(|g| g >= region_map[t.source]))
            .cloned()
            .collect();
        let ta = OneClockTA::new(pruned.alphabet().clone(), pruned.states().to_vec(), pruned.initial(), live)?
            .with_k(Some(k));
        let sink = ta.states().iter().position(|s| s.name.starts_with(SINK_NAME));
        Ok(KAcceptor { ta, k, region_map, sink })
    }

    pub fn ta(&self) -> &OneClockTA {
        &self.ta
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.ta.alphabet()
    }

    pub fn num_states(&self) -> usize {
        self.ta.num_states()
    }

    pub fn initial(&self) -> StateId {
        self.ta.initial()
    }

    pub fn region(&self, q: StateId) -> RegionIndex {
        self.region_map[q]
    }

    pub fn region_map(&self) -> &[RegionIndex] {
        &self.region_map
    }

    /// A state added by [`complete`], when there is one.
    pub fn sink(&self) -> Option<StateId> {
        self.sink
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.ta.is_accepting(q)
    }

    pub fn member(&self, w: &TimedWord) -> bool {
        self.state_after(w).is_some_and(|q| self.ta.is_accepting(q))
    }

    /// State reached on `w` from the initial configuration.
    pub fn state_after(&self, w: &TimedWord) -> Option<StateId> {
        self.ta.run(w).ok().map(|r| r.last().state)
    }

    /// The unique successor of `q` when the clock reaches region `r` and `symbol` is read.
    pub fn step_region(&self, q: StateId, r: RegionIndex, symbol: &crate::word::Symbol) -> Option<StateId> {
        let g = region_to_guard(r, self.k);
        self.ta.outgoing(q).find(|(_, t)| &t.symbol == symbol && t.guard == g).map(|(_, t)| t.target)
    }

    pub fn symbolic_dfa(&self) -> SymbolicDfa {
        SymbolicDfa::new(self)
    }
}

/// A K-acceptor read as a DFA over `Σ_K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicDfa {
    letters: Vec<SymbolicLetter>,
    delta: Vec<Vec<StateId>>,
    accepting: Vec<bool>,
    initial: StateId,
}

impl SymbolicDfa {
    fn new(acc: &KAcceptor) -> Self {
        let k = acc.k();
        let letters = symbolic_letters(acc.alphabet(), k);
        let delta = (0..acc.num_states())
            .map(|q| {
                let base = acc.region(q).representative(k);
                letters
                    .iter()
                    .map(|l| {
                        let r = region_of(&(&base + &l.delay), k);
                        acc.step_region(q, r, &l.symbol).expect("K-acceptors are complete")
                    })
                    .collect()
            })
            .collect();
        let accepting = (0..acc.num_states()).map(|q| acc.is_accepting(q)).collect();
        SymbolicDfa { letters, delta, accepting, initial: acc.initial() }
    }

    pub fn letters(&self) -> &[SymbolicLetter] {
        &self.letters
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    /// Successor of `q` on the `i`-th letter of [`letters`](Self::letters).
    pub fn next(&self, q: StateId, i: usize) -> StateId {
        self.delta[q][i]
    }

    /// Runs a word of `Σ_K^*`; `None` if some letter is not in `Σ_K`.
    pub fn run(&self, w: &TimedWord) -> Option<StateId> {
        let mut q = self.initial;
        for l in w.letters() {
            let i = self.letters.binary_search(l).ok()?;
            q = self.delta[q][i];
        }
        Some(q)
    }

    pub fn accepts(&self, w: &TimedWord) -> Option<bool> {
        self.run(w).map(|q| self.accepting[q])
    }
}

/// Product of `b` with the regions of `≡^k`, starting from `(q_I, {0})`.
pub fn to_k_acceptor(b: &OneClockTA, k: u32) -> Result<KAcceptor> {
    if b.max_constant() > k {
        return Err(Error::Precondition(format!("maximal constant {} exceeds K={k}", b.max_constant())));
    }
    if let Some(t) = b.first_non_region_form(k) {
        return Err(Error::NotRegionForm { k, guard: t.guard.to_string() });
    }
    let flags = b.clone().with_k(Some(k)).validate();
    if !flags.strict || !flags.deterministic || !flags.complete {
        return Err(Error::Precondition(format!(
            "expected a strict, deterministic and complete automaton (strict={}, deterministic={}, complete={})",
            flags.strict, flags.deterministic, flags.complete
        )));
    }
    let mut index: HashMap<(StateId, RegionIndex), StateId> = HashMap::new();
    let mut pairs = vec![(b.initial(), RegionIndex::Int(0))];
    index.insert(pairs[0], 0);
    let mut transitions = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let (q, r) = pairs[id];
        for r2 in r.successors(k) {
            let v: Rational = r2.representative(k);
            for a in b.alphabet().iter() {
                let (_, t) = b
                    .outgoing(q)
                    .find(|(_, t)| &t.symbol == a && t.guard.contains(&v))
                    .expect("completeness checked above");
                let next = (t.target, if t.reset { RegionIndex::Int(0) } else { r2 });
                let target = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    queue.push_back(pairs.len() - 1);
                    pairs.len() - 1
                });
                transitions.push(Transition::new(id, target, a.clone(), region_to_guard(r2, k), r2.is_int()));
            }
        }
    }
    let states = pairs
        .iter()
        .map(|&(q, r)| {
            let s = b.state(q);
            State::new(format!("{}@{}", s.name, r), s.accepting)
        })
        .collect();
    let ta = OneClockTA::new(b.alphabet().clone(), states, 0, transitions)?.with_k(Some(k));
    KAcceptor::new(ta, k)
}

/// Guard normalization, strictification, completion and the region product.
pub fn build_k_acceptor(a: &OneClockTA, k: u32) -> Result<KAcceptor> {
    let normalized = normalize_guards(a, k)?.automaton;
    let strict = strictify(&normalized)?;
    let completed = complete(&strict, k)?;
    to_k_acceptor(&completed, k)
}
