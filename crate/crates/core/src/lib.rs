//! An exact-arithmetic kernel for differential graded Lie algebras, current
//! algebra functors and their extension cocycles.
//!
//! The crate builds cones of Lie algebras, central and abelian extensions of
//! those cones, deformed semidirect products with graded modules, and finite
//! commutative differential graded algebra models of form spaces. On top of
//! these it computes two current-algebra functors as explicit Lie algebras on
//! subquotient bases, extracts the characteristic 2-cocycles of the resulting
//! extensions, and certifies — by exhaustive checks over basis tuples, in
//! exact rational arithmetic — every algebraic identity the constructions are
//! supposed to satisfy.
//!
//! Module layout:
//!
//! * [`scalar`], [`graded`], [`linalg`] — the exact sparse linear algebra
//!   substrate (ℚ scalars, graded spaces, echelon forms, subquotients).
//! * [`dgla`] — dglas, CDGAs, 𝔤-differential spaces, their validators, tensor
//!   products with Koszul signs, shifts and complex cohomology.
//! * [`fixtures`] — the shipped catalogue of Lie algebras and CDGA models.
//! * [`constructions`] — cones, dual-cone modules, central extensions,
//!   (ω,δ)-deformed semidirect products and the tower built from a cubic
//!   invariant.
//! * [`functors`] — the two current-algebra functors, the four-term exact
//!   sequence, functoriality and preservation of short exact sequences.
//! * [`cocycles`] — Chevalley–Eilenberg machinery, invariant forms, cocycle
//!   extraction from computed extensions, closed-form evaluators and
//!   comparison up to coboundary.
//! * [`certify`] — the deterministic certification suite behind
//!   `currents certify --all`.

pub mod certificate;
pub mod certify;
pub mod cocycles;
pub mod constructions;
pub mod dgla;
pub mod error;
pub mod fixtures;
pub mod functors;
pub mod graded;
pub mod linalg;
pub mod report;
pub mod scalar;

pub use certificate::{Certificate, Check};
pub use error::CoreError;
pub use scalar::Scalar;
