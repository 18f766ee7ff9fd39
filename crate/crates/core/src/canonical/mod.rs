//! Canonical forms of K-acceptors.
//!
//! [`minimize`] refines the partition of states keyed by (region, acceptance) until it is
//! stable under every letter of `Σ_K`, then quotients. Equivalence of two acceptors is
//! decided on the product of their symbolic DFAs, which is exact because every timed word
//! has a half-integral stand-in reaching the same state ([`half_integral_witness`]).

mod oracle;
mod witness;

use std::collections::{HashMap, VecDeque};

use crate::automaton::{KAcceptor, OneClockTA, StateId, SymbolicDfa, Transition};
use crate::error::{Error, Result};
use crate::word::TimedWord;

pub use oracle::syntactic_equiv_oracle;
pub use witness::half_integral_witness;

/// A partition of the states of an acceptor into blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatePartition {
    /// Block index of every state.
    pub block_of: Vec<usize>,
    /// Number of refinement rounds until the partition stabilized.
    pub iterations: usize,
}

impl StatePartition {
    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    /// States of each block, in increasing order.
    pub fn blocks(&self) -> Vec<Vec<StateId>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (q, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(q);
        }
        blocks
    }

    pub fn same_block(&self, p: StateId, q: StateId) -> bool {
        self.block_of[p] == self.block_of[q]
    }
}

/// Numbers keys by first occurrence.
fn renumber<K: std::hash::Hash + Eq>(keys: Vec<K>) -> Vec<usize> {
    let mut ids = HashMap::new();
    keys.into_iter()
        .map(|k| {
            let n = ids.len();
            *ids.entry(k).or_insert(n)
        })
        .collect()
}

/// The coarsest stable refinement of the (region, acceptance) partition.
pub fn partition(b: &KAcceptor) -> StatePartition {
    let dfa = b.symbolic_dfa();
    let n = dfa.num_states();
    let mut block_of = renumber((0..n).map(|q| (b.region(q), b.is_accepting(q))).collect());
    let mut count = block_of.iter().max().map_or(0, |m| m + 1);
    let mut iterations = 0;
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|q| (block_of[q], (0..dfa.letters().len()).map(|i| block_of[dfa.next(q, i)]).collect()))
            .collect();
        let next = renumber(keys);
        let next_count = next.iter().max().map_or(0, |m| m + 1);
        if next_count == count {
            return StatePartition { block_of, iterations };
        }
        block_of = next;
        count = next_count;
        iterations += 1;
    }
}

/// The quotient of `b` by its stable partition; states are numbered in breadth-first order.
pub fn minimize(b: &KAcceptor) -> KAcceptor {
    let p = partition(b);
    let blocks = p.blocks();
    let rep = |blk: usize| blocks[blk][0];
    let ta = b.ta();
    let mut order = vec![p.block_of[b.initial()]];
    let mut new_id: HashMap<usize, StateId> = HashMap::from([(order[0], 0)]);
    let mut i = 0;
    while i < order.len() {
        for (_, t) in ta.outgoing(rep(order[i])) {
            let blk = p.block_of[t.target];
            if let std::collections::hash_map::Entry::Vacant(v) = new_id.entry(blk) {
                v.insert(order.len());
                order.push(blk);
            }
        }
        i += 1;
    }
    let states = order.iter().map(|&blk| ta.state(rep(blk)).clone()).collect();
    let transitions = order
        .iter()
        .enumerate()
        .flat_map(|(src, &blk)| {
            let new_id = &new_id;
            let block_of = &p.block_of;
            ta.outgoing(rep(blk)).map(move |(_, t)| Transition {
                source: src,
                target: new_id[&block_of[t.target]],
                ..t.clone()
            })
        })
        .collect();
    let quotient = OneClockTA::new(ta.alphabet().clone(), states, 0, transitions)
        .expect("quotient references existing blocks")
        .with_k(Some(b.k()));
    KAcceptor::new(quotient, b.k()).expect("the quotient of a K-acceptor is a K-acceptor")
}

/// Breadth-first search over pairs of DFA states; letters are tried in `Σ_K` order, so the
/// first pair found that disagrees on acceptance yields the shortlex-least word.
fn first_disagreement(d1: &SymbolicDfa, d2: &SymbolicDfa, start: (StateId, StateId)) -> Option<TimedWord> {
    let letters = d1.letters();
    type Pair = (StateId, StateId);
    let mut parent: HashMap<Pair, Option<(Pair, usize)>> = HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    let disagree = |(p, q): (StateId, StateId)| d1.is_accepting(p) != d2.is_accepting(q);
    let mut found = disagree(start).then_some(start);
    while found.is_none() {
        let Some(cur) = queue.pop_front() else { break };
        for i in 0..letters.len() {
            let next = (d1.next(cur.0, i), d2.next(cur.1, i));
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next, Some((cur, i)));
            if disagree(next) {
                found = Some(next);
                break;
            }
            queue.push_back(next);
        }
    }
    let mut node = found?;
    let mut rev = Vec::new();
    while let Some((prev, i)) = parent[&node] {
        rev.push(letters[i].clone());
        node = prev;
    }
    rev.reverse();
    Some(TimedWord::from_letters(rev))
}

/// A shortest word of `Σ_K^*` accepted from exactly one of `p`, `q`, with the clock in
/// their common region.
pub fn distinguishing_word(b: &KAcceptor, p: StateId, q: StateId) -> Result<Option<TimedWord>> {
    if b.region(p) != b.region(q) {
        return Err(Error::Precondition(format!("states {p} and {q} carry different regions")));
    }
    let d = b.symbolic_dfa();
    Ok(first_disagreement(&d, &d, (p, q)))
}

/// `None` when the two acceptors recognize the same timed language, otherwise the
/// shortlex-least half-integral word on which they differ.
pub fn equivalent(b1: &KAcceptor, b2: &KAcceptor) -> Result<Option<TimedWord>> {
    if b1.k() != b2.k() {
        return Err(Error::Mismatch(format!("K={} vs K={}", b1.k(), b2.k())));
    }
    if b1.alphabet() != b2.alphabet() {
        return Err(Error::Mismatch("alphabets differ".into()));
    }
    let (d1, d2) = (b1.symbolic_dfa(), b2.symbolic_dfa());
    Ok(first_disagreement(&d1, &d2, (d1.initial(), d2.initial())))
}

/// Whether a renaming of states maps `b1` onto `b2`, guards and resets included.
pub fn isomorphic(b1: &KAcceptor, b2: &KAcceptor) -> bool {
    if b1.k() != b2.k() || b1.alphabet() != b2.alphabet() || b1.num_states() != b2.num_states() {
        return false;
    }
    let moves = |b: &KAcceptor, q: StateId| -> HashMap<_, _> {
        b.ta().outgoing(q).map(|(_, t)| ((t.symbol.clone(), t.guard.clone()), (t.target, t.reset))).collect()
    };
    let mut map: Vec<Option<StateId>> = vec![None; b1.num_states()];
    let mut used = vec![false; b2.num_states()];
    let mut queue = VecDeque::from([(b1.initial(), b2.initial())]);
    map[b1.initial()] = Some(b2.initial());
    used[b2.initial()] = true;
    while let Some((p, q)) = queue.pop_front() {
        if b1.is_accepting(p) != b2.is_accepting(q) || b1.region(p) != b2.region(q) {
            return false;
        }
        let (m1, m2) = (moves(b1, p), moves(b2, q));
        if m1.len() != m2.len() {
            return false;
        }
        for (key, (t1, r1)) in m1 {
            let Some(&(t2, r2)) = m2.get(&key) else { return false };
            if r1 != r2 {
                return false;
            }
            match map[t1] {
                Some(existing) if existing != t2 => return false,
                Some(_) => {}
                None => {
                    if used[t2] {
                        return false;
                    }
                    map[t1] = Some(t2);
                    used[t2] = true;
                    queue.push_back((t1, t2));
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{from_json, Guard, State};
    use crate::word::Alphabet;

    fn fixture(name: &str) -> KAcceptor {
        let text =
            std::fs::read_to_string(format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))).unwrap();
        let ta = from_json(&text).unwrap();
        let k = ta.k().unwrap();
        KAcceptor::new(ta, k).unwrap()
    }

    fn w(s: &str) -> TimedWord {
        s.parse().unwrap()
    }

    #[test]
    fn fig4_is_minimal() {
        let b = fixture("fig4");
        let m = minimize(&b);
        assert_eq!(m.num_states(), 6);
        assert!(isomorphic(&m, &b));
        assert_eq!(equivalent(&m, &b).unwrap(), None);
    }

    #[test]
    fn duplicate_states_merge() {
        let ta = OneClockTA::new(
            Alphabet::new(["a"]),
            vec![State::new("p", false), State::new("f1", true), State::new("f2", true), State::new("g", false)],
            0,
            vec![
                Transition::new(0, 1, "a", Guard::Eq(0), true),
                Transition::new(0, 3, "a", Guard::Above(0), false),
                Transition::new(1, 2, "a", Guard::Eq(0), true),
                Transition::new(1, 3, "a", Guard::Above(0), false),
                Transition::new(2, 1, "a", Guard::Eq(0), true),
                Transition::new(2, 3, "a", Guard::Above(0), false),
                Transition::new(3, 3, "a", Guard::Above(0), false),
            ],
        )
        .unwrap();
        let b = KAcceptor::new(ta, 0).unwrap();
        let m = minimize(&b);
        assert_eq!(m.num_states(), 3);
        assert_eq!(equivalent(&m, &b).unwrap(), None);
        assert!(partition(&b).same_block(1, 2));
    }

    #[test]
    fn distinguishing_words() {
        let b = fixture("fig4");
        let (eps, one_one) = (0, 5);
        assert_eq!(distinguishing_word(&b, eps, one_one).unwrap(), Some(w("1:a")));
        assert_eq!(distinguishing_word(&b, 2, 2).unwrap(), None);
        assert!(distinguishing_word(&b, 0, 1).is_err());
    }

    #[test]
    fn l_versus_m() {
        let cex = equivalent(&fixture("fig4"), &fixture("fig3")).unwrap().unwrap();
        assert_eq!(cex, TimedWord::empty());
        let t1 = fixture("fig6");
        let cex = equivalent(&t1, &fixture("fig4")).unwrap().unwrap();
        assert_ne!(t1.member(&cex), fixture("fig4").member(&cex));
        assert!(t1.member(&w("1:a; 1:a; 1:a")));
        assert!(!fixture("fig4").member(&w("1:a; 1:a; 1:a")));
    }

    #[test]
    fn mismatch_errors() {
        let a = fixture("fig4");
        let ta = OneClockTA::new(
            Alphabet::new(["a"]),
            vec![State::new("p", false), State::new("g", false)],
            0,
            vec![
                Transition::new(0, 0, "a", Guard::Eq(0), true),
                Transition::new(0, 1, "a", Guard::Above(0), false),
                Transition::new(1, 1, "a", Guard::Above(0), false),
            ],
        )
        .unwrap();
        let b = KAcceptor::new(ta, 0).unwrap();
        assert!(matches!(equivalent(&a, &b), Err(Error::Mismatch(_))));
    }
}
