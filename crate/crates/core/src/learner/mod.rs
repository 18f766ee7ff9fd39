//! Active learning of the canonical K-acceptor of a timed language.
//!
//! The learner asks membership queries on words of `Σ_K^*` only and keeps an
//! [`ObservationTable`] whose rows also record `c^K_⊤`. Closed and consistent tables
//! yield conjectures; counterexamples are mapped to half-integral words and all their
//! prefixes join the upper part of the table.

mod table;
mod teacher;

use log::{debug, warn};

use crate::automaton::KAcceptor;
use crate::canonical::half_integral_witness;
use crate::error::{Error, Result};
use crate::region::is_symbolic_word;
use crate::word::{Alphabet, TimedWord};

pub use table::{Inconsistency, ObservationTable, RowSignature, TableSnapshot};
pub use teacher::{PredicateTeacher, SimulatedTeacher, Teacher};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_equivalence_queries: usize,
    pub max_membership_queries: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_equivalence_queries: 100, max_membership_queries: 1_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct LearnResult {
    pub acceptor: KAcceptor,
    pub membership_queries: usize,
    pub equivalence_queries: usize,
    pub snapshots: Vec<TableSnapshot>,
}

/// Knobs for [`learn`].
#[derive(Clone, Copy, Debug, Default)]
pub struct LearnOptions {
    pub limits: Limits,
    pub record_snapshots: bool,
}

fn check_mq(teacher: &dyn Teacher, limits: &Limits) -> Result<()> {
    if teacher.membership_queries() > limits.max_membership_queries {
        return Err(Error::LimitExceeded(format!("more than {} membership queries", limits.max_membership_queries)));
    }
    Ok(())
}

/// Makes the table closed and consistent.
pub fn stabilize(table: &mut ObservationTable, teacher: &mut dyn Teacher, limits: &Limits) -> Result<()> {
    loop {
        check_mq(teacher, limits)?;
        if let Some(w) = table.is_closed() {
            debug!("not closed: moving {w:?} to U1");
            table.close_step(&w, teacher);
            continue;
        }
        if let Some(v) = table.is_consistent() {
            debug!("not consistent: adding column {:?}", v.new_column());
            table.consistency_step(&v, teacher);
            continue;
        }
        return Ok(());
    }
}

/// Adds a counterexample to the table, first replacing it by a half-integral stand-in
/// when needed.
pub fn process_counterexample(table: &mut ObservationTable, cex: &TimedWord, teacher: &mut dyn Teacher) {
    let k = table.k();
    let word = if is_symbolic_word(cex, k) {
        cex.clone()
    } else {
        let w = half_integral_witness(&TimedWord::empty(), cex, k).expect("ε is half-integral");
        if teacher.membership(cex) != teacher.membership(&w) {
            warn!("counterexample {cex} and its half-integral stand-in {w} disagree; the language is not recognized by a K-acceptor");
        }
        w
    };
    table.add_prefixes(&word, teacher);
}

/// Learns the canonical K-acceptor of the teacher's language.
pub fn learn(teacher: &mut dyn Teacher, alphabet: &Alphabet, k: u32, options: LearnOptions) -> Result<LearnResult> {
    let limits = options.limits;
    let mut snapshots = Vec::new();
    let mut table = ObservationTable::new(alphabet, k, teacher)?;
    if options.record_snapshots {
        snapshots.push(table.snapshot("init"));
    }
    loop {
        stabilize(&mut table, teacher, &limits)?;
        let hypothesis = table.conjecture()?;
        if options.record_snapshots {
            snapshots.push(table.snapshot("conjecture"));
        }
        if teacher.equivalence_queries() >= limits.max_equivalence_queries {
            return Err(Error::LimitExceeded(format!(
                "more than {} equivalence queries",
                limits.max_equivalence_queries
            )));
        }
        match teacher.equivalence(&hypothesis) {
            None => {
                return Ok(LearnResult {
                    acceptor: hypothesis,
                    membership_queries: teacher.membership_queries(),
                    equivalence_queries: teacher.equivalence_queries(),
                    snapshots,
                })
            }
            Some(cex) => {
                debug!("counterexample {cex:?} for a {}-state conjecture", hypothesis.num_states());
                process_counterexample(&mut table, &cex, teacher);
                if options.record_snapshots {
                    snapshots.push(table.snapshot("counterexample"));
                }
            }
        }
    }
}
