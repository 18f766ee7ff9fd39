use crate::automaton::KAcceptor;
use crate::canonical::equivalent;
use crate::rational::Rational;
use crate::word::{Alphabet, TimedLetter, TimedWord};

/// Answers membership and equivalence queries about a hidden timed language.
pub trait Teacher {
    fn membership(&mut self, w: &TimedWord) -> bool;

    /// `None` if the hypothesis recognizes the hidden language, otherwise a word it
    /// misclassifies.
    fn equivalence(&mut self, hypothesis: &KAcceptor) -> Option<TimedWord>;

    fn membership_queries(&self) -> usize;

    fn equivalence_queries(&self) -> usize;
}

/// A teacher backed by a known K-acceptor.
#[derive(Clone, Debug)]
pub struct SimulatedTeacher {
    target: KAcceptor,
    mq: usize,
    eq: usize,
}

impl SimulatedTeacher {
    pub fn new(target: KAcceptor) -> Self {
        SimulatedTeacher { target, mq: 0, eq: 0 }
    }

    pub fn target(&self) -> &KAcceptor {
        &self.target
    }
}

impl Teacher for SimulatedTeacher {
    fn membership(&mut self, w: &TimedWord) -> bool {
        self.mq += 1;
        self.target.member(w)
    }

    fn equivalence(&mut self, hypothesis: &KAcceptor) -> Option<TimedWord> {
        self.eq += 1;
        equivalent(hypothesis, &self.target).expect("hypothesis shares the target's alphabet and K")
    }

    fn membership_queries(&self) -> usize {
        self.mq
    }

    fn equivalence_queries(&self) -> usize {
        self.eq
    }
}

/// A teacher for a language given as a predicate. Equivalence is checked exhaustively on
/// every word up to a length bound whose delays are multiples of `1/denominator` up to
/// `max_delay`; the first misclassified word in shortlex order is returned.
pub struct PredicateTeacher<F> {
    predicate: F,
    tests: Vec<TimedWord>,
    mq: usize,
    eq: usize,
}

impl<F: Fn(&TimedWord) -> bool> PredicateTeacher<F> {
    pub fn new(alphabet: &Alphabet, predicate: F, max_len: usize, denominator: u32, max_delay: u32) -> Self {
        let delays: Vec<Rational> = (0..=max_delay as i64 * denominator as i64)
            .map(|n| Rational::new(n, denominator as i64).expect("positive denominator"))
            .collect();
        let mut letters: Vec<TimedLetter> =
            delays.iter().flat_map(|d| alphabet.iter().map(move |a| TimedLetter::new(d.clone(), a.clone()))).collect();
        letters.sort();
        let mut tests = vec![TimedWord::empty()];
        let mut layer = vec![TimedWord::empty()];
        for _ in 0..max_len {
            layer = layer.iter().flat_map(|w| letters.iter().map(move |l| w.extended(l))).collect();
            tests.extend(layer.iter().cloned());
        }
        PredicateTeacher { predicate, tests, mq: 0, eq: 0 }
    }

    pub fn test_words(&self) -> &[TimedWord] {
        &self.tests
    }
}

impl<F: Fn(&TimedWord) -> bool> Teacher for PredicateTeacher<F> {
    fn membership(&mut self, w: &TimedWord) -> bool {
        self.mq += 1;
        (self.predicate)(w)
    }

    fn equivalence(&mut self, hypothesis: &KAcceptor) -> Option<TimedWord> {
        self.eq += 1;
        self.tests.iter().find(|w| hypothesis.member(w) != (self.predicate)(w)).cloned()
    }

    fn membership_queries(&self) -> usize {
        self.mq
    }

    fn equivalence_queries(&self) -> usize {
        self.eq
    }
}
