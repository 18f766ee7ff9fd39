//! One-clock timed automata: representation, timed semantics and structural checks.
//!
//! A [`OneClockTA`] houses every automaton variant the crate manipulates. Validation
//! computes the determinism, completeness, integer-reset and strictness flags; the
//! submodules turn an arbitrary integer-reset automaton into a [`KAcceptor`].

mod acceptor;
mod dot;
mod guard;
mod json;
mod normalize;
mod strictify;

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::region::{region_of, RegionIndex};
use crate::word::{Alphabet, Symbol, TimedWord};

pub use acceptor::{build_k_acceptor, to_k_acceptor, KAcceptor, SymbolicDfa};
pub use dot::{from_dot, to_dot};
pub use guard::{region_to_guard, Atom, Guard};
pub use json::{from_json, to_json, to_json_value};
pub use normalize::{complete, normalize_guards, Normalized, SINK_NAME};
pub use strictify::strictify;

pub type StateId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    pub name: String,
    pub accepting: bool,
}

impl State {
    pub fn new(name: impl Into<String>, accepting: bool) -> Self {
        State { name: name.into(), accepting }
    }
}

/// `(source, target, symbol, guard, reset)`. `reset == true` sets the clock to zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub source: StateId,
    pub target: StateId,
    pub symbol: Symbol,
    pub guard: Guard,
    pub reset: bool,
}

impl Transition {
    pub fn new(source: StateId, target: StateId, symbol: impl Into<Symbol>, guard: Guard, reset: bool) -> Self {
        Transition { source, target, symbol: symbol.into(), guard, reset }
    }
}

/// A state together with a clock value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    pub state: StateId,
    pub clock: Rational,
}

impl Config {
    pub fn initial(state: StateId) -> Self {
        Config { state, clock: Rational::zero() }
    }
}

/// The unique run of a deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub configs: Vec<Config>,
    pub transitions: Vec<usize>,
}

impl Run {
    pub fn last(&self) -> &Config {
        self.configs.last().expect("a run starts with a configuration")
    }
}

/// The run blocked: no transition is enabled at letter `step`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stuck {
    pub step: usize,
    pub config: Config,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub deterministic: bool,
    pub complete: bool,
    pub irta: bool,
    pub strict: bool,
    pub max_constant: u32,
}

/// `A = (Q, q_I, T, F)` over one clock `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneClockTA {
    alphabet: Alphabet,
    states: Vec<State>,
    initial: StateId,
    transitions: Vec<Transition>,
    k: Option<u32>,
    outgoing: Vec<Vec<usize>>,
}

impl OneClockTA {
    pub fn new(alphabet: Alphabet, states: Vec<State>, initial: StateId, transitions: Vec<Transition>) -> Result<Self> {
        if initial >= states.len() {
            return Err(Error::BadInitial(initial));
        }
        let mut outgoing = vec![Vec::new(); states.len()];
        for (i, t) in transitions.iter().enumerate() {
            for s in [t.source, t.target] {
                if s >= states.len() {
                    return Err(Error::DanglingState { transition: i, state: s });
                }
            }
            if !alphabet.contains(&t.symbol) {
                return Err(Error::UnknownSymbol(t.symbol.to_string()));
            }
            outgoing[t.source].push(i);
        }
        Ok(OneClockTA { alphabet, states, initial, transitions, k: None, outgoing })
    }

    /// Attaches a declared constant `K`.
    pub fn with_k(mut self, k: Option<u32>) -> Self {
        self.k = k;
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, q: StateId) -> &State {
        &self.states[q]
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn k(&self) -> Option<u32> {
        self.k
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.states[q].accepting
    }

    /// Transition ids leaving `q`, in declaration order.
    pub fn outgoing(&self, q: StateId) -> impl Iterator<Item = (usize, &Transition)> + '_ {
        self.outgoing[q].iter().map(move |&i| (i, &self.transitions[i]))
    }

    pub fn max_constant(&self) -> u32 {
        self.transitions.iter().map(|t| t.guard.max_constant()).max().unwrap_or(0)
    }

    /// The constant `K` for which every guard is in region form, if one exists.
    pub fn region_form_constant(&self) -> Option<u32> {
        let mut above: Option<u32> = None;
        for t in &self.transitions {
            match t.guard {
                Guard::Conj(_) => return None,
                Guard::Above(m) => match above {
                    Some(k) if k != m => return None,
                    _ => above = Some(m),
                },
                _ => {}
            }
        }
        let k = above.unwrap_or_else(|| self.max_constant().max(self.k.unwrap_or(0)));
        self.transitions.iter().all(|t| t.guard.is_region_form(k)).then_some(k)
    }

    /// Whether every guard is in region form for exactly `k`.
    pub fn is_region_form(&self, k: u32) -> bool {
        self.transitions.iter().all(|t| t.guard.is_region_form(k))
    }

    pub fn first_non_region_form(&self, k: u32) -> Option<&Transition> {
        self.transitions.iter().find(|t| !t.guard.is_region_form(k))
    }

    pub fn is_deterministic(&self) -> bool {
        self.outgoing.iter().all(|ids| {
            ids.iter().enumerate().all(|(n, &i)| {
                ids[n + 1..].iter().all(|&j| {
                    let (a, b) = (&self.transitions[i], &self.transitions[j]);
                    a.symbol != b.symbol || !a.guard.overlaps(&b.guard)
                })
            })
        })
    }

    /// First transition resetting on a guard whose denotation is not a single integer.
    pub fn first_non_irta(&self) -> Option<usize> {
        self.transitions.iter().position(|t| t.reset && !t.guard.is_equality())
    }

    pub fn is_irta(&self) -> bool {
        self.first_non_irta().is_none()
    }

    pub fn is_strict(&self) -> bool {
        self.region_form_constant().is_some()
            && self.transitions.iter().all(|t| matches!(t.guard, Guard::Eq(_)) == t.reset)
    }

    /// Symbolic region reachability from `(q_I, {0})` with regions of `≡^k`.
    /// Calls `on_missing` for every reachable (state, letter, region) with no enabled transition.
    pub(crate) fn explore_regions(
        &self,
        k: u32,
        mut on_missing: impl FnMut(StateId, &Symbol, RegionIndex),
    ) -> Vec<HashSet<RegionIndex>> {
        let mut seen: Vec<HashSet<RegionIndex>> = vec![HashSet::new(); self.states.len()];
        let mut queue = VecDeque::new();
        seen[self.initial].insert(RegionIndex::Int(0));
        queue.push_back((self.initial, RegionIndex::Int(0)));
        while let Some((q, r)) = queue.pop_front() {
            for r2 in r.successors(k) {
                let v = r2.representative(k);
                for a in self.alphabet.iter() {
                    let mut any = false;
                    for (_, t) in self.outgoing(q) {
                        if &t.symbol != a || !t.guard.contains(&v) {
                            continue;
                        }
                        any = true;
                        let next = if t.reset { RegionIndex::Int(0) } else { r2 };
                        if seen[t.target].insert(next) {
                            queue.push_back((t.target, next));
                        }
                    }
                    if !any {
                        on_missing(q, a, r2);
                    }
                }
            }
        }
        seen
    }

    /// The constant used for region-level analysis: large enough for every guard.
    pub(crate) fn analysis_constant(&self) -> u32 {
        self.max_constant().max(self.k.unwrap_or(0))
    }

    /// Every reachable configuration has an enabled transition on every letter and delay.
    pub fn is_complete(&self) -> bool {
        let mut complete = true;
        self.explore_regions(self.analysis_constant(), |_, _, _| complete = false);
        complete
    }

    pub fn validate(&self) -> Flags {
        Flags {
            deterministic: self.is_deterministic(),
            complete: self.is_complete(),
            irta: self.is_irta(),
            strict: self.is_strict(),
            max_constant: self.max_constant(),
        }
    }

    fn enabled<'a>(
        &'a self,
        config: &'a Config,
        v: &'a Rational,
        symbol: &'a Symbol,
    ) -> impl Iterator<Item = (usize, &'a Transition)> + 'a {
        self.outgoing(config.state).filter(move |(_, t)| &t.symbol == symbol && t.guard.contains(v))
    }

    /// The run from `start`, following the first enabled transition at each step.
    pub fn run_from(&self, start: Config, w: &TimedWord) -> Result<Run, Stuck> {
        let mut configs = vec![start];
        let mut transitions = Vec::with_capacity(w.len());
        for (step, l) in w.letters().iter().enumerate() {
            let cur = configs.last().expect("non-empty");
            let v = &cur.clock + &l.delay;
            let found = self.outgoing(cur.state).find(|(_, t)| t.symbol == l.symbol && t.guard.contains(&v));
            let (id, t) = match found {
                Some(found) => found,
                None => return Err(Stuck { step, config: cur.clone() }),
            };
            let clock = if t.reset { Rational::zero() } else { v };
            transitions.push(id);
            configs.push(Config { state: t.target, clock });
        }
        Ok(Run { configs, transitions })
    }

    pub fn run(&self, w: &TimedWord) -> Result<Run, Stuck> {
        self.run_from(Config::initial(self.initial), w)
    }

    /// Configurations reachable from `start` on `w`, for any automaton.
    pub fn reachable_configs(&self, start: Config, w: &TimedWord) -> Vec<Config> {
        let mut cur = vec![start];
        for l in w.letters() {
            let mut next: Vec<Config> = Vec::new();
            for c in &cur {
                let v = &c.clock + &l.delay;
                for (_, t) in self.enabled(c, &v, &l.symbol) {
                    let clock = if t.reset { Rational::zero() } else { v.clone() };
                    let nc = Config { state: t.target, clock };
                    if !next.contains(&nc) {
                        next.push(nc);
                    }
                }
            }
            if next.is_empty() {
                return next;
            }
            cur = next;
        }
        cur
    }

    /// `w ∈ L(q, x)`.
    pub fn member_from(&self, start: Config, w: &TimedWord) -> bool {
        self.reachable_configs(start, w).iter().any(|c| self.states[c.state].accepting)
    }

    /// `w ∈ L(A)`.
    pub fn member(&self, w: &TimedWord) -> bool {
        self.member_from(Config::initial(self.initial), w)
    }

    /// Drops states not reachable in the region abstraction, keeping the initial state.
    pub fn prune_unreachable(&self) -> OneClockTA {
        let seen = self.explore_regions(self.analysis_constant(), |_, _, _| {});
        let keep: Vec<bool> = seen.iter().map(|s| !s.is_empty()).collect();
        self.restrict(&keep)
    }

    /// Keeps the states flagged in `keep` and transitions among them.
    pub(crate) fn restrict(&self, keep: &[bool]) -> OneClockTA {
        let mut map = vec![usize::MAX; self.states.len()];
        let mut states = Vec::new();
        for (q, s) in self.states.iter().enumerate() {
            if keep[q] {
                map[q] = states.len();
                states.push(s.clone());
            }
        }
        let transitions = self
            .transitions
            .iter()
            .filter(|t| keep[t.source] && keep[t.target])
            .map(|t| Transition { source: map[t.source], target: map[t.target], ..t.clone() })
            .collect();
        OneClockTA::new(self.alphabet.clone(), states, map[self.initial], transitions)
            .expect("restriction keeps references valid")
            .with_k(self.k)
    }

    /// Region of the clock value reached in state `q` by `w`, when the run exists.
    pub fn region_after(&self, w: &TimedWord, k: u32) -> Option<(StateId, RegionIndex)> {
        self.run(w).ok().map(|r| {
            let c = r.last();
            (c.state, region_of(&c.clock, k))
        })
    }
}
