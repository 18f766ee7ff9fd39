mod common;

use common::*;
use irta_core::automaton::{build_k_acceptor, KAcceptor, OneClockTA, State, Transition};
use irta_core::canonical::{
    distinguishing_word, equivalent, half_integral_witness, isomorphic, minimize, partition, syntactic_equiv_oracle,
};
use irta_core::word::{is_half_integral, is_small};
use irta_core::{Alphabet, Rational, TimedLetter, TimedWord};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Two copies of every state; each transition switches copy. Same language, twice the states.
fn doubled(b: &KAcceptor) -> OneClockTA {
    let ta = b.ta();
    let n = ta.num_states();
    let states =
        (0..2 * n).map(|i| State::new(format!("{}#{}", ta.state(i % n).name, i / n), ta.is_accepting(i % n))).collect();
    let transitions = (0..2)
        .flat_map(|c| {
            ta.transitions().iter().map(move |t| Transition {
                source: t.source + c * n,
                target: t.target + (1 - c) * n,
                ..t.clone()
            })
        })
        .collect();
    OneClockTA::new(ta.alphabet().clone(), states, ta.initial(), transitions).unwrap()
}

#[test]
fn reference_acceptors_are_canonical() {
    for (name, size) in [("fig3", 3), ("fig4", 6), ("fig6", 4)] {
        let b = acceptor(name);
        let m = minimize(&b);
        assert_eq!(m.num_states(), size, "{name}");
        assert!(isomorphic(&m, &b), "{name}");
    }
}

#[test]
fn fig6_and_fig4_differ_first_on_three_letters() {
    let (t1, target) = (acceptor("fig6"), acceptor("fig4"));
    let cex = equivalent(&t1, &target).unwrap().unwrap();
    let brute = symbolic_words(target.alphabet(), 1, 4).into_iter().find(|u| t1.member(u) != target.member(u)).unwrap();
    assert_eq!(cex, brute);
}

#[test]
fn distinguishing_words_separate_states() {
    let b = acceptor("fig4");
    let access = access_words(&b);
    for p in 0..b.num_states() {
        for q in 0..b.num_states() {
            if b.region(p) != b.region(q) {
                assert!(distinguishing_word(&b, p, q).is_err());
                continue;
            }
            match distinguishing_word(&b, p, q).unwrap() {
                None => assert_eq!(p, q),
                Some(z) => {
                    let (u, v) = (access[p].as_ref().unwrap(), access[q].as_ref().unwrap());
                    assert_ne!(b.member(&u.concat(&z)), b.member(&v.concat(&z)));
                }
            }
        }
    }
}

#[test]
fn witness_rejects_non_symbolic_prefix() {
    assert!(half_integral_witness(&w("1/3:a"), &w("1/2:a"), 1).is_err());
}

#[test]
fn witness_cases() {
    assert_eq!(half_integral_witness(&TimedWord::empty(), &w("1/5:a"), 1).unwrap(), w("1/2:a"));
    assert_eq!(half_integral_witness(&TimedWord::empty(), &w("7/3:a"), 1).unwrap(), w("3/2:a"));
    assert_eq!(half_integral_witness(&TimedWord::empty(), &w("1:a; 3:a"), 2).unwrap(), w("1:a; 5/2:a"));
    // 0.7 + 0.6 crosses an integer, so the second delay needs an extra unit.
    assert_eq!(half_integral_witness(&TimedWord::empty(), &w("7/10:a; 3/5:a"), 2).unwrap(), w("1/2:a; 1:a"));
}

fn natural_delay(x: u32) -> TimedWord {
    TimedWord::from_letters(vec![TimedLetter::new(Rational::from_int(x as u64), "a")])
}

/// `{(x·a) | x ∈ ℕ}` is recognized by no K-acceptor: `(K+1)·a` and `(K+1+1/10)·a` always
/// reach the same state.
#[test]
fn naturals_are_not_recognizable() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let ab = Alphabet::new(["a"]);
    for _ in 0..200 {
        let k = rng.gen_range(0..4);
        let n = rng.gen_range(k as usize + 2..10);
        let b = random_acceptor(&mut rng, k, n, &ab);
        let inside = natural_delay(k + 1);
        let outside = TimedWord::from_letters(vec![TimedLetter::new(q(&format!("{}/10", 10 * (k + 1) + 1)), "a")]);
        assert_eq!(b.state_after(&inside), b.state_after(&outside));
        let correct_on_samples = symbolic_words(&ab, k, 3)
            .iter()
            .chain([&inside, &outside])
            .all(|u| b.member(u) == (u.len() == 1 && u.letters()[0].delay.is_integer()));
        assert!(!correct_on_samples);
    }
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn minimization_is_sound_and_idempotent(seed in any::<u64>(), k in 0u32..3, extra in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_acceptor(&mut rng, k, k as usize + 2 + extra, &Alphabet::new(["a", "b"]));
        let m = minimize(&b);
        prop_assert!(equivalent(&m, &b).unwrap().is_none());
        prop_assert!(m.num_states() <= b.num_states());
        prop_assert!(isomorphic(&minimize(&m), &m));
        let p = partition(&b);
        for blk in p.blocks() {
            prop_assert!(blk.iter().all(|&q| b.region(q) == b.region(blk[0]) && b.is_accepting(q) == b.is_accepting(blk[0])));
        }
    }

    #[test]
    fn canonicity(seed in any::<u64>(), k in 0u32..3, extra in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = random_acceptor(&mut rng, k, k as usize + 2 + extra, &Alphabet::new(["a"]));
        let other = build_k_acceptor(&doubled(&b), k).unwrap();
        prop_assert!(isomorphic(&minimize(&other), &minimize(&b)));
    }

    #[test]
    fn counterexamples_are_shortlex_least(seed in any::<u64>(), k in 0u32..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ab = Alphabet::new(["a", "b"]);
        let b1 = random_acceptor(&mut rng, k, k as usize + 3, &ab);
        let b2 = random_acceptor(&mut rng, k, k as usize + 3, &ab);
        let brute = symbolic_words(&ab, k, 3).into_iter().find(|u| b1.member(u) != b2.member(u));
        let cex = equivalent(&b1, &b2).unwrap();
        match (brute, cex) {
            (Some(x), Some(y)) => prop_assert_eq!(x, y),
            (None, Some(y)) => prop_assert!(y.len() > 3 && b1.member(&y) != b2.member(&y)),
            (Some(x), None) => prop_assert!(false, "missed {}", x),
            (None, None) => {}
        }
    }

    #[test]
    fn oracle_agrees_with_partition(seed in any::<u64>(), k in 0u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = (k as usize + 2).max(rng.gen_range(2..=8));
        let b = random_acceptor(&mut rng, k, n, &Alphabet::new(["a"]));
        let p = partition(&b);
        let access = access_words(&b);
        for s in 0..b.num_states() {
            for t in 0..b.num_states() {
                let (u, v) = (access[s].as_ref().unwrap(), access[t].as_ref().unwrap());
                prop_assert_eq!(syntactic_equiv_oracle(&b, u, v, None).unwrap(), p.same_block(s, t));
            }
        }
    }

    #[test]
    fn witness_after_symbolic_prefix(seed in any::<u64>(), k in 0u32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ab = Alphabet::new(["a", "b"]);
        let b = random_acceptor(&mut rng, k, k as usize + 5, &ab);
        let prefixes = symbolic_words(&ab, k, 2);
        for _ in 0..50 {
            let u0 = &prefixes[rng.gen_range(0..prefixes.len())];
            let u = random_word(&mut rng, &ab, 5, k + 2);
            let v = half_integral_witness(u0, &u, k).unwrap();
            prop_assert!(is_half_integral(&v) && is_small(&v, k));
            prop_assert_eq!(b.state_after(&u0.concat(&u)), b.state_after(&u0.concat(&v)), "{} {}", u0, u);
        }
    }
}
