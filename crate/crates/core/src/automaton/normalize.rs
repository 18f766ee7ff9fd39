use log::warn;

use super::{region_to_guard, OneClockTA, State, Transition};
use crate::error::{Error, Result};
use crate::region::RegionIndex;

/// Name given to the non-accepting sink added by [`complete`].
pub const SINK_NAME: &str = "__sink";

/// Result of [`normalize_guards`]: the automaton plus notes about dropped transitions.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub automaton: OneClockTA,
    pub diagnostics: Vec<String>,
}

/// Splits every guard into the region-form guards of `≡^k` it covers.
pub fn normalize_guards(a: &OneClockTA, k: u32) -> Result<Normalized> {
    if a.max_constant() > k {
        return Err(Error::Precondition(format!("K={k} is below the maximal constant {}", a.max_constant())));
    }
    let mut transitions = Vec::new();
    let mut diagnostics = Vec::new();
    for (i, t) in a.transitions().iter().enumerate() {
        if t.guard.is_region_form(k) {
            transitions.push(t.clone());
            continue;
        }
        let regions = t.guard.covered_regions(k);
        if regions.is_empty() {
            let msg = format!("transition {i} dropped: guard {} is unsatisfiable", t.guard);
            warn!("{msg}");
            diagnostics.push(msg);
        }
        for r in regions {
            transitions.push(Transition { guard: region_to_guard(r, k), ..t.clone() });
        }
    }
    let automaton =
        OneClockTA::new(a.alphabet().clone(), a.states().to_vec(), a.initial(), transitions)?.with_k(Some(k));
    Ok(Normalized { automaton, diagnostics })
}

/// Adds a non-accepting sink receiving every missing (state, letter, region) move.
/// An automaton that is already complete is returned unchanged.
pub fn complete(a: &OneClockTA, k: u32) -> Result<OneClockTA> {
    if let Some(t) = a.first_non_region_form(k) {
        return Err(Error::NotRegionForm { k, guard: t.guard.to_string() });
    }
    let a = a.clone().with_k(Some(k));
    if a.is_complete() {
        return Ok(a);
    }
    let mut states = a.states().to_vec();
    let sink = states.len();
    states.push(State::new(SINK_NAME, false));
    let mut transitions = a.transitions().to_vec();
    for q in 0..states.len() {
        for sym in a.alphabet().iter() {
            for r in RegionIndex::all(k) {
                let v = r.representative(k);
                let covered = q != sink && a.outgoing(q).any(|(_, t)| &t.symbol == sym && t.guard.contains(&v));
                if !covered {
                    transitions.push(Transition::new(q, sink, sym.clone(), region_to_guard(r, k), r.is_int()));
                }
            }
        }
    }
    Ok(OneClockTA::new(a.alphabet().clone(), states, a.initial(), transitions)?.with_k(Some(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{Atom, Guard};
    use crate::word::{Alphabet, TimedWord};

    fn single(g: Guard, k: u32) -> Vec<Guard> {
        let a = OneClockTA::new(
            Alphabet::new(["a"]),
            vec![State::new("p", true)],
            0,
            vec![Transition::new(0, 0, "a", g, false)],
        )
        .unwrap();
        normalize_guards(&a, k).unwrap().automaton.transitions().iter().map(|t| t.guard.clone()).collect()
    }

    #[test]
    fn splits() {
        assert_eq!(single(Guard::Conj(vec![Atom::Lt(1)]), 1), vec![Guard::Eq(0), Guard::Open(0)]);
        assert_eq!(single(Guard::Eq(1), 1), vec![Guard::Eq(1)]);
        assert_eq!(
            single(Guard::Conj(vec![Atom::Gt(1)]), 3),
            vec![Guard::Open(1), Guard::Eq(2), Guard::Open(2), Guard::Eq(3), Guard::Above(3)]
        );
        assert_eq!(single(Guard::Above(1), 2), vec![Guard::Open(1), Guard::Eq(2), Guard::Above(2)]);
    }

    #[test]
    fn unsatisfiable_dropped_with_diagnostic() {
        let a = OneClockTA::new(
            Alphabet::new(["a"]),
            vec![State::new("p", true)],
            0,
            vec![Transition::new(0, 0, "a", Guard::Conj(vec![Atom::Lt(1), Atom::Gt(1)]), false)],
        )
        .unwrap();
        let n = normalize_guards(&a, 1).unwrap();
        assert!(n.automaton.transitions().is_empty());
        assert_eq!(n.diagnostics.len(), 1);
    }

    #[test]
    fn constant_too_small() {
        let a = OneClockTA::new(
            Alphabet::new(["a"]),
            vec![State::new("p", true)],
            0,
            vec![Transition::new(0, 0, "a", Guard::Eq(2), true)],
        )
        .unwrap();
        assert!(matches!(normalize_guards(&a, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn completion_of_empty_automaton() {
        let a = OneClockTA::new(Alphabet::new(["a"]), vec![State::new("p", false)], 0, vec![]).unwrap();
        let c = complete(&a, 0).unwrap();
        assert_eq!(c.num_states(), 2);
        for q in 0..2 {
            assert_eq!(c.outgoing(q).count(), 2);
        }
        assert!(c.validate().complete);
        assert!(c.is_strict());
    }

    #[test]
    fn completion_is_idempotent_and_preserves_language() {
        let a = OneClockTA::new(
            Alphabet::new(["a"]),
            vec![State::new("p", false), State::new("q", true)],
            0,
            vec![Transition::new(0, 1, "a", Guard::Eq(1), true), Transition::new(1, 1, "a", Guard::Eq(0), true)],
        )
        .unwrap();
        let c = complete(&a, 1).unwrap();
        assert!(c.is_complete() && c.is_deterministic());
        assert_eq!(complete(&c, 1).unwrap(), c);
        for s in ["1:a", "1:a; 0:a", "1/2:a", "1:a; 1:a", ""] {
            let word: TimedWord = s.parse().unwrap();
            assert_eq!(a.member(&word), c.member(&word), "{s}");
        }
    }

    #[test]
    fn completion_rejects_conjunctions() {
        let a = OneClockTA::new(
            Alphabet::new(["a"]),
            vec![State::new("p", false)],
            0,
            vec![Transition::new(0, 0, "a", Guard::Conj(vec![Atom::Lt(1)]), false)],
        )
        .unwrap();
        assert!(matches!(complete(&a, 1), Err(Error::NotRegionForm { .. })));
    }
}
