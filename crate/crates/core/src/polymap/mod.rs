//! Finite differences of maps between finite groups, polynomial-degree tests,
//! brute-force classification of unital polynomial maps, and the explicit
//! order-27 model of `Pol₂(C₃)`.

mod group;
mod iso;
mod maps;
mod pol2;

pub use group::{cycle_notation, parse_group, FiniteGroup};
pub use iso::{automorphisms, extend_homomorphism, find_isomorphism, is_isomorphic_small};
pub use maps::{
    beta, classify_unital_polynomial_maps, degree_at_most, delta, DegreeOracle, MapTable,
};
pub use pol2::{build_pol2_model, ModelCheck, Pol2Model};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolymapError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("brute-force guard exceeded: {needed} candidates > limit {limit}")]
    Guard { needed: u128, limit: u128 },
    #[error("model check failed: {0}")]
    ModelCheck(String),
    #[error("domain/codomain mismatch: {0}")]
    Mismatch(String),
}

/// The target groups named in the theory: `S₃`, `C₉ ⋊ C₃` (action `×4`), the
/// Heisenberg group mod 3, and `C₉ × C₃`.
pub fn battery() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::symmetric3(),
        FiniteGroup::metacyclic(9, 3, 4).expect("4^3 = 1 mod 9"),
        FiniteGroup::heisenberg(3),
        FiniteGroup::direct_product(&FiniteGroup::cyclic(9), &FiniteGroup::cyclic(3)),
    ]
}
