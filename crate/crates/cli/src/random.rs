use irta_core::automaton::{region_to_guard, KAcceptor, OneClockTA, State, Transition};
use irta_core::{Alphabet, RegionIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random K-acceptor. The first `K+2` states cover the regions `{0}`, `(m,m+1)` and
/// `(K,∞)` so that every transition has a target; states unreachable from the initial one
/// are dropped.
pub fn acceptor(seed: u64, k: u32, states: usize, symbols: &[&str]) -> KAcceptor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = Alphabet::new(symbols.iter().copied());
    let mut regions = vec![RegionIndex::Int(0)];
    regions.extend((0..k).map(RegionIndex::Frac));
    regions.push(RegionIndex::AboveK);
    let base = regions.len();
    let n = states.max(base);
    for _ in base..n {
        regions.push(regions[rng.gen_range(0..base)]);
    }
    let states = (0..n).map(|q| State::new(format!("s{q}"), rng.gen_bool(0.4))).collect();
    let mut transitions = Vec::new();
    for q in 0..n {
        for r in regions[q].successors(k) {
            let needed = if r.is_int() { RegionIndex::Int(0) } else { r };
            let candidates: Vec<usize> = (0..n).filter(|&p| regions[p] == needed).collect();
            for a in alphabet.iter() {
                let target = *candidates.choose(&mut rng).expect("every region has a state");
                transitions.push(Transition::new(q, target, a.clone(), region_to_guard(r, k), r.is_int()));
            }
        }
    }
    let ta = OneClockTA::new(alphabet, states, 0, transitions).expect("valid references").with_k(Some(k));
    KAcceptor::new(ta, k).expect("built region by region")
}
