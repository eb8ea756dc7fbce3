//! Free-group words, presentations and the standard algorithms on them:
//! coset enumeration, Reidemeister–Schreier, Smith normal form and a checker
//! for hand-written relation derivations.

mod coset;
mod derivation;
mod homs;
mod presentation;
mod schreier;
mod smith;
mod word;

pub use coset::{todd_coxeter, CosetStatus, CosetTable};
pub use derivation::{
    check_derivation, cubic_relations, cubic_relations_for, cubic_script, lemma_script, mod_pow, DerivationScript,
    FactRef, Justification, Step, StepOutcome, Verdict as DerivationVerdict,
};
pub use homs::{all_homs, count_homs};
pub use presentation::{parse_word, parse_word_list, Presentation, SymbolTable};
pub use schreier::{reidemeister_schreier, SubgroupData};
pub use smith::{abelianization, relator_matrix, smith_normal_form, IntMatrix, SmithForm};
pub use word::{default_names, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("generator images do not generate the target group (reached {reached} of {order})")]
    NotGenerating { reached: usize, order: usize },
    #[error("brute-force guard exceeded: {needed} candidates > limit {limit}")]
    SizeGuard { needed: u128, limit: u128 },
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
}
