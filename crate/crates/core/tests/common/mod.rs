#![allow(dead_code)]

use irta_core::automaton::{from_json, region_to_guard, KAcceptor, OneClockTA, State, Transition};
use irta_core::region::symbolic_alphabet;
use irta_core::word::sum_sigma;
use irta_core::{ck, Alphabet, Rational, RegionIndex, TimedLetter, TimedWord};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> OneClockTA {
    let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    from_json(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

pub fn acceptor(name: &str) -> KAcceptor {
    let ta = fixture(name);
    let k = ta.k().unwrap();
    KAcceptor::new(ta, k).unwrap()
}

pub fn w(s: &str) -> TimedWord {
    s.parse().unwrap()
}

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Language of `fig1`: total elapsed time is exactly 1.
pub fn sigma_is_one(u: &TimedWord) -> bool {
    sum_sigma(u) == Rational::one()
}

/// Language of `fig3`: `c^1(u) = 0`.
pub fn ck1_is_zero(u: &TimedWord) -> bool {
    ck(u, 1).is_zero()
}

/// Every word of `Σ_K^{≤n}`, shortest first.
pub fn symbolic_words(alphabet: &Alphabet, k: u32, n: usize) -> Vec<TimedWord> {
    let letters = symbolic_alphabet(alphabet, k).unwrap();
    let mut out = vec![TimedWord::empty()];
    let mut layer = vec![TimedWord::empty()];
    for _ in 0..n {
        layer = layer.iter().flat_map(|u| letters.iter().map(move |l| u.extended(l))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

const DENOMINATORS: [i64; 7] = [1, 2, 3, 4, 5, 7, 10];

pub fn random_rational<R: Rng>(rng: &mut R, max: u32) -> Rational {
    let d = *DENOMINATORS.choose(rng).unwrap();
    Rational::new(rng.gen_range(0..=max as i64 * d), d).unwrap()
}

pub fn random_word<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_len: usize, max_delay: u32) -> TimedWord {
    let len = rng.gen_range(0..=max_len);
    TimedWord::from_letters(
        (0..len)
            .map(|_| TimedLetter::new(random_rational(rng, max_delay), alphabet.symbols().choose(rng).unwrap().clone()))
            .collect(),
    )
}

/// A value in the same region of `≡^k` as `x`.
pub fn random_equivalent<R: Rng>(rng: &mut R, x: &Rational, k: u32) -> Rational {
    let frac = Rational::new(rng.gen_range(1..20), 20).unwrap();
    match irta_core::region_of(x, k) {
        RegionIndex::Int(_) => x.clone(),
        RegionIndex::Frac(m) => Rational::from_int(m as u64) + frac,
        RegionIndex::AboveK => Rational::from_int(k as u64 + rng.gen_range(0..4)) + frac,
    }
}

/// A random value of the region `r`.
pub fn random_in_region<R: Rng>(rng: &mut R, r: RegionIndex, k: u32) -> Rational {
    random_equivalent(rng, &r.representative(k), k)
}

/// A random K-acceptor with `n ≥ K+2` candidate states. States `0..K+2` carry the
/// regions `{0}`, `(0,1)`, ..., `(K-1,K)`, `(K,∞)`; the others get random regions in that set.
pub fn random_acceptor<R: Rng>(rng: &mut R, k: u32, n: usize, alphabet: &Alphabet) -> KAcceptor {
    let mut regions = vec![RegionIndex::Int(0)];
    regions.extend((0..k).map(RegionIndex::Frac));
    regions.push(RegionIndex::AboveK);
    let base = regions.len();
    let n = n.max(base);
    for _ in base..n {
        let r = regions[rng.gen_range(0..base)];
        regions.push(r);
    }
    let states: Vec<State> = (0..n).map(|q| State::new(format!("s{q}"), rng.gen_bool(0.4))).collect();
    let mut transitions = Vec::new();
    for q in 0..n {
        for r2 in regions[q].successors(k) {
            let needed = if r2.is_int() { RegionIndex::Int(0) } else { r2 };
            let candidates: Vec<usize> = (0..n).filter(|&p| regions[p] == needed).collect();
            for a in alphabet.iter() {
                let target = *candidates.choose(rng).unwrap();
                transitions.push(Transition::new(q, target, a.clone(), region_to_guard(r2, k), r2.is_int()));
            }
        }
    }
    let ta = OneClockTA::new(alphabet.clone(), states, 0, transitions).unwrap().with_k(Some(k));
    KAcceptor::new(ta, k).unwrap()
}

/// Shortlex-least access word of every state, over `Σ_K`.
pub fn access_words(b: &KAcceptor) -> Vec<Option<TimedWord>> {
    let dfa = b.symbolic_dfa();
    let mut out = vec![None; b.num_states()];
    out[dfa.initial()] = Some(TimedWord::empty());
    let mut queue = std::collections::VecDeque::from([dfa.initial()]);
    while let Some(p) = queue.pop_front() {
        for (i, l) in dfa.letters().iter().enumerate() {
            let t = dfa.next(p, i);
            if out[t].is_none() {
                out[t] = Some(out[p].as_ref().unwrap().extended(l));
                queue.push_back(t);
            }
        }
    }
    out
}

/// Clock value after reading `delays` from 0 in a strict automaton with constant `k`,
/// together with the indices after which the clock is reset.
pub fn oracle_ck(delays: &[Rational], k: u32) -> (Rational, Vec<usize>) {
    let mut block = Rational::zero();
    let mut resets = vec![0];
    for (i, d) in delays.iter().enumerate() {
        block = &block + d;
        if block.is_integer() && block <= Rational::from_int(k as u64) {
            block = Rational::zero();
            resets.push(i + 1);
        }
    }
    (block, resets)
}

pub fn word_delays(u: &TimedWord) -> Vec<Rational> {
    u.delays().cloned().collect()
}

/// A deterministic integer-reset automaton with region guards; equality guards reset at random.
pub fn random_det_irta<R: Rng>(rng: &mut R, k: u32, n: usize, alphabet: &Alphabet) -> OneClockTA {
    let states = (0..n).map(|q| State::new(format!("q{q}"), rng.gen_bool(0.4))).collect();
    let mut transitions = Vec::new();
    for q in 0..n {
        for a in alphabet.iter() {
            for r in RegionIndex::all(k) {
                if rng.gen_bool(0.75) {
                    let reset = r.is_int() && rng.gen_bool(0.5);
                    transitions.push(Transition::new(q, rng.gen_range(0..n), a.clone(), region_to_guard(r, k), reset));
                }
            }
        }
    }
    OneClockTA::new(alphabet.clone(), states, 0, transitions).unwrap()
}

/// A possibly nondeterministic integer-reset automaton with arbitrary guards.
pub fn random_irta<R: Rng>(rng: &mut R, k: u32, n: usize, alphabet: &Alphabet) -> OneClockTA {
    use irta_core::automaton::{Atom, Guard};
    let states = (0..n).map(|q| State::new(format!("q{q}"), rng.gen_bool(0.4))).collect();
    let mut transitions = Vec::new();
    for _ in 0..n * alphabet.len() * 3 {
        let m = rng.gen_range(0..=k);
        let (guard, reset) = match rng.gen_range(0..5) {
            0 => (Guard::Eq(m), rng.gen_bool(0.5)),
            1 if m < k => (Guard::Open(m), false),
            2 => (Guard::Above(m), false),
            3 if m > 0 => (Guard::Conj(vec![Atom::Lt(m)]), false),
            4 => (Guard::Conj(vec![Atom::Gt(m), Atom::Lt(rng.gen_range(m + 1..=k + 1))]), false),
            _ => (Guard::Eq(m), false),
        };
        let a = alphabet.symbols().choose(rng).unwrap().clone();
        transitions.push(Transition::new(rng.gen_range(0..n), rng.gen_range(0..n), a, guard, reset));
    }
    OneClockTA::new(alphabet.clone(), states, 0, transitions).unwrap()
}
