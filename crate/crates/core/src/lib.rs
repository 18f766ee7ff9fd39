//! One-clock integer-reset timed automata.
//!
//! The crate covers the full pipeline from an arbitrary one-clock integer-reset
//! timed automaton to its canonical form:
//!
//! * [`word`], [`rational`] and [`region`]: exact timed words, region equivalence,
//!   integral positions and the clock value `c^K` every strict automaton agrees on;
//! * [`rescale`]: the rescaling bijections between residuals of region-equivalent words;
//! * [`automaton`]: representation, semantics, strictification, completion and
//!   K-acceptor construction;
//! * [`canonical`]: minimization, equivalence with counterexamples and the
//!   half-integral witness construction;
//! * [`learner`]: an L*-style learner for the canonical K-acceptor.

pub mod automaton;
pub mod canonical;
pub mod error;
pub mod learner;
pub mod rational;
pub mod region;
pub mod rescale;
pub mod word;

pub use error::{Error, Result};
pub use rational::Rational;
pub use region::{ck, ck_top, integral_positions, region_equiv, region_of, CkTop, RegionIndex, SymbolicLetter};
pub use word::{Alphabet, Symbol, TimedLetter, TimedWord};
