use std::collections::HashSet;

use crate::automaton::{Config, KAcceptor};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::region::{ck_top, is_symbolic_word, symbolic_letters};
use crate::word::{TimedLetter, TimedWord};

/// One timed step; clock values above `K` are collapsed to `K + 1/2`, which no guard
/// with constants at most `K` can tell apart.
fn step(b: &KAcceptor, c: &Config, l: &TimedLetter) -> Option<Config> {
    let v = &c.clock + &l.delay;
    let (_, t) = b.ta().outgoing(c.state).find(|(_, t)| t.symbol == l.symbol && t.guard.contains(&v))?;
    let kq = Rational::from_int(b.k() as u64);
    let clock = if t.reset {
        Rational::zero()
    } else if v > kq {
        kq + Rational::half()
    } else {
        v
    };
    Some(Config { state: t.target, clock })
}

fn accepts(b: &KAcceptor, c: &Option<Config>) -> bool {
    c.as_ref().is_some_and(|c| b.is_accepting(c.state))
}

/// Decides `u ≈ v` for the language of `b` by brute force: equal `c^K_⊤` and agreement of
/// `uz` and `vz` on every `z ∈ Σ_K` of length at most `depth` (default: number of states).
pub fn syntactic_equiv_oracle(b: &KAcceptor, u: &TimedWord, v: &TimedWord, depth: Option<usize>) -> Result<bool> {
    for x in [u, v] {
        if !is_symbolic_word(x, b.k()) {
            return Err(Error::NotHalfIntegral(x.to_string()));
        }
    }
    if ck_top(u, b.k()) != ck_top(v, b.k()) {
        return Ok(false);
    }
    let depth = depth.unwrap_or(b.num_states());
    let start = |w: &TimedWord| b.ta().run(w).ok().map(|r| r.last().clone());
    let first = (start(u), start(v));
    if accepts(b, &first.0) != accepts(b, &first.1) {
        return Ok(false);
    }
    let letters = symbolic_letters(b.alphabet(), b.k());
    let mut seen = HashSet::from([first.clone()]);
    let mut layer = vec![first];
    for _ in 0..depth {
        let mut next_layer = Vec::new();
        for (cu, cv) in &layer {
            for l in &letters {
                let pair = (cu.as_ref().and_then(|c| step(b, c, l)), cv.as_ref().and_then(|c| step(b, c, l)));
                if accepts(b, &pair.0) != accepts(b, &pair.1) {
                    return Ok(false);
                }
                if seen.insert(pair.clone()) {
                    next_layer.push(pair);
                }
            }
        }
        if next_layer.is_empty() {
            break;
        }
        layer = next_layer;
    }
    Ok(true)
}
