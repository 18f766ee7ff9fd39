use std::collections::HashMap;

use super::{normalize_guards, region_to_guard, Guard, OneClockTA, State, StateId, Transition};
use crate::error::{Error, Result};
use crate::region::RegionIndex;

/// Turns an integer-reset automaton into a strict one. Guards that are not in region form
/// are first split with [`normalize_guards`] at the automaton's maximal constant.
///
/// Each round removes one bad transition `x=m` without reset, picking the largest `m`
/// (lowest id on ties). The target is replaced by a copy of the automaton shifted by `m`
/// time units, entered with a reset; copies of guards whose constant drops below zero are
/// discarded, and `K<x` in the copy is split into the regions above `K-m`.
pub fn strictify(a: &OneClockTA) -> Result<OneClockTA> {
    if let Some(i) = a.first_non_irta() {
        return Err(Error::NotIrta(i));
    }
    let normalized;
    let a = match a.region_form_constant() {
        Some(_) => a,
        None => {
            normalized = normalize_guards(a, a.k().unwrap_or(0).max(a.max_constant()))?.automaton;
            &normalized
        }
    };
    let k = a
        .region_form_constant()
        .ok_or_else(|| Error::Precondition("guards must be normalized to region form".into()))?;
    let mut cur = a.clone().with_k(Some(k));
    while let Some((id, m)) = pick_bad(&cur) {
        cur = split(&cur, id, m, k).prune_unreachable();
    }
    Ok(cur)
}

fn pick_bad(a: &OneClockTA) -> Option<(usize, u32)> {
    let mut best: Option<(usize, u32)> = None;
    for (i, t) in a.transitions().iter().enumerate() {
        if let (Guard::Eq(m), false) = (&t.guard, t.reset) {
            if best.is_none_or(|(_, b)| *m > b) {
                best = Some((i, *m));
            }
        }
    }
    best
}

struct Builder<'a> {
    a: &'a OneClockTA,
    states: Vec<State>,
    transitions: Vec<Transition>,
    hats: HashMap<StateId, StateId>,
    pending: Vec<StateId>,
}

impl Builder<'_> {
    fn copy(&self, q: StateId) -> StateId {
        self.a.num_states() + q
    }

    /// State of the layer where the clock is known to exceed `K` forever.
    fn hat(&mut self, q: StateId) -> StateId {
        if let Some(&h) = self.hats.get(&q) {
            return h;
        }
        let h = self.states.len();
        let s = self.a.state(q);
        self.states.push(State::new(format!("{}^", s.name), s.accepting));
        self.hats.insert(q, h);
        self.pending.push(q);
        h
    }

    fn push(&mut self, source: StateId, target: StateId, t: &Transition, guard: Guard, reset: bool) {
        self.transitions.push(Transition { source, target, symbol: t.symbol.clone(), guard, reset });
    }
}

fn split(a: &OneClockTA, bad: usize, m: u32, k: u32) -> OneClockTA {
    let n = a.num_states();
    let mut states = a.states().to_vec();
    for s in a.states() {
        states.push(State::new(format!("{}'", s.name), s.accepting));
    }
    let mut b = Builder { a, states, transitions: Vec::new(), hats: HashMap::new(), pending: Vec::new() };

    for (i, t) in a.transitions().iter().enumerate() {
        if i != bad {
            b.transitions.push(t.clone());
        }
    }
    let theta = &a.transitions()[bad];
    b.push(theta.source, n + theta.target, theta, Guard::Eq(m), true);

    for t in a.transitions() {
        let (s, s2) = (b.copy(t.source), b.copy(t.target));
        match (&t.guard, t.reset) {
            (Guard::Eq(c), true) if *c >= m => b.push(s, t.target, t, Guard::Eq(c - m), true),
            (Guard::Eq(c), false) if *c == m => b.push(s, s2, t, Guard::Eq(0), true),
            (Guard::Open(c), false) if *c >= m => b.push(s, s2, t, Guard::Open(c - m), false),
            (Guard::Above(_), false) if m == 0 => b.push(s, s2, t, Guard::Above(k), false),
            (Guard::Above(_), false) => {
                for c in k - m..k {
                    b.push(s, s2, t, Guard::Open(c), false);
                }
                for c in k - m + 1..=k {
                    let h = b.hat(t.target);
                    b.push(s, h, t, Guard::Eq(c), true);
                }
                b.push(s, s2, t, Guard::Above(k), false);
            }
            _ => {}
        }
    }

    while let Some(q) = b.pending.pop() {
        let from = b.hats[&q];
        for (_, t) in a.outgoing(q) {
            if !matches!(t.guard, Guard::Above(_)) {
                continue;
            }
            let to = b.hat(t.target);
            for r in RegionIndex::all(k) {
                b.push(from, to, t, region_to_guard(r, k), r.is_int());
            }
        }
    }

    let Builder { states, transitions, .. } = b;
    OneClockTA::new(a.alphabet().clone(), states, a.initial(), transitions)
        .expect("construction only references existing states")
        .with_k(Some(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{normalize_guards, Atom};
    use crate::word::{Alphabet, TimedWord};

    fn fig1() -> OneClockTA {
        OneClockTA::new(
            Alphabet::new(["a"]),
            vec![State::new("qI", false), State::new("q", true)],
            0,
            vec![
                Transition::new(0, 1, "a", Guard::Eq(1), false),
                Transition::new(0, 0, "a", Guard::Conj(vec![Atom::Lt(1)]), false),
                Transition::new(1, 1, "a", Guard::Eq(1), false),
            ],
        )
        .unwrap()
    }

    #[test]
    fn fig1_becomes_strict() {
        let n = normalize_guards(&fig1(), 1).unwrap().automaton;
        assert_eq!(strictify(&fig1()).unwrap(), strictify(&n).unwrap());
        let s = strictify(&n).unwrap();
        assert!(s.is_strict());
        assert!(s.is_deterministic());
        assert!(s.max_constant() <= 1);
        for (word, expected) in
            [("1:a", true), ("1/2:a; 1/2:a", true), ("1:a; 0:a", true), ("1:a; 1:a", false), ("1/2:a", false)]
        {
            let w: TimedWord = word.parse().unwrap();
            assert_eq!(s.member(&w), expected, "{word}");
        }
    }

    #[test]
    fn strict_input_unchanged() {
        let a = OneClockTA::new(
            Alphabet::new(["a"]),
            vec![State::new("p", false), State::new("q", true)],
            0,
            vec![Transition::new(0, 1, "a", Guard::Eq(1), true), Transition::new(0, 0, "a", Guard::Open(0), false)],
        )
        .unwrap();
        assert_eq!(strictify(&a).unwrap(), a.clone().with_k(Some(1)));
    }

    #[test]
    fn rejects_non_irta() {
        let a = OneClockTA::new(
            Alphabet::new(["a"]),
            vec![State::new("p", false)],
            0,
            vec![Transition::new(0, 0, "a", Guard::Open(0), true)],
        )
        .unwrap();
        assert_eq!(strictify(&a), Err(Error::NotIrta(0)));
    }

    #[test]
    fn above_guard_in_shifted_copy() {
        // p --a, x=1 (keep)--> q --b, 1<x--> f: accepts (1·a)(t·b) with t > 0.
        let a = OneClockTA::new(
            Alphabet::new(["a", "b"]),
            vec![State::new("p", false), State::new("q", false), State::new("f", true)],
            0,
            vec![Transition::new(0, 1, "a", Guard::Eq(1), false), Transition::new(1, 2, "b", Guard::Above(1), false)],
        )
        .unwrap();
        let s = strictify(&a).unwrap();
        assert!(s.is_strict());
        for (word, expected) in [("1:a; 1/2:b", true), ("1:a; 1:b", true), ("1:a; 7/3:b", true), ("1:a; 0:b", false)] {
            let w: TimedWord = word.parse().unwrap();
            assert_eq!(s.member(&w), expected, "{word}");
        }
    }
}
