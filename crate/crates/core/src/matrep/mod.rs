//! Exact 3×3 matrix groups: the representations `π` (over `E = Q(ω)(r)`) and
//! `ρ` (over `F₃(t)`) of `Γ`, their congruence filtrations, elementary-matrix
//! search and the supporting finite checks.

mod congruence;
mod evaluator;
mod grading;
mod intertwiner;
mod mat3;
mod nilpotency;
mod order;
mod search;
mod steinberg;

pub use congruence::{
    displayed_char0_span, finite_image_subgroup, index_reconstruction, kernel_words, KernelWords,
    level0_char0, level0_char3, level1_log_char0, level1_log_char3, level1_span,
    permutation_matrix, sl3_f3_order, standard_unitriangular, Ambient, SubspaceGf3,
};
pub use evaluator::{
    check_relators, pi_eisen_parts, pi_generators, pi_matrices, rho_from, rho_generators,
    rho_matrices, EvalMode, RelatorCheck, RelatorReport, WordEvaluator,
};
pub use grading::{
    clear_content, descend_and_normalize, grading_consistent, graded_weight, mu, normalize_psl,
    Normalized,
};
pub use intertwiner::{automorphism_intertwiner_search, IntertwinerResult};
pub use mat3::{Mat3, ProjMat3};
pub use nilpotency::{nilpotency_witness, NilpotencyWitness};
pub use order::{bounded_no_relation, infinite_order_certificate, NoRelation, OrderVerdict};
pub use search::{
    elementary_word_search, elementary_word_search_char0, packed_residue, search_all, EisenProj,
    ElementaryTarget, PackedU, SearchConfig, SearchElem, SearchOutcome, SearchStats,
};
pub use steinberg::{steinberg_closure, SteinbergVerdict};

use thiserror::Error;

use crate::exactfields::ArithError;
use crate::fpgroup::GroupError;
use crate::polymap::PolymapError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrepError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("transcription check failed: {0}")]
    Transcription(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("not in Γ°: graded weight {0} is not divisible by 3")]
    NotInGammaCirc(i64),
    #[error("not in PSL₃(Z[ω]): determinant {0} after content normalization")]
    NotInPsl3(String),
    #[error("grading violated: {0}")]
    Grading(String),
    #[error("congruence level precondition: {0}")]
    Level(String),
    #[error("guard exceeded: {needed} > limit {limit}")]
    Guard { needed: u128, limit: u128 },
    #[error("images do not generate U₊: {0}")]
    NotGenerating(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Polymap(#[from] PolymapError),
}
