//! Exact re-derivation of polynomial-map structure on `C₃`.
//!
//! The crate covers the finite-difference calculus of maps between groups, the
//! universal groups `Pol₂(C₃)` and `Pol₃(C₃) ≅ Γ = ⟨a, b | (ba)³, (ab⁻¹a)³,
//! [ba, ab⁻¹a]⟩`, and the two explicit matrix representations of `Γ` (over
//! `Q(ω, r)` and over `F₃(t)`) with their congruence-level analysis. Every
//! computation is exact; results are packaged as [`cert::Certificate`]s.

pub mod exactfields;
pub mod fpgroup;
pub mod matrep;
pub mod polymap;
pub mod cert;
