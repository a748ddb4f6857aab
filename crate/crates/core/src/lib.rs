//! Exact computation of local algebraic degrees.
//!
//! Given a polynomial map `f : A^n -> A^n` with an isolated zero at the
//! origin over `Q` or `F_p` (p an odd prime), this crate computes the
//! finite-dimensional local algebra `Q_0(f)`, its distinguished socle
//! element, and the associated symmetric bilinear form, then classifies the
//! result in the Grothendieck–Witt ring of the base field: rank,
//! discriminant, signature, Hasse invariants, Witt index and anisotropic
//! kernel.
//!
//! All arithmetic is exact — arbitrary-precision rationals over `Q`,
//! residues over `F_p` — with no floating point anywhere.
//!
//! Module map:
//!
//! * [`field`] — the two coefficient fields and square-class utilities.
//! * [`poly`] — multivariate polynomials under grevlex, maps `A^n -> A^n`.
//! * [`groebner`] — Buchberger's algorithm, normal forms, staircases.
//! * [`localalg`] — the local algebra `Q_0(f)` and its socle element.
//! * [`ekl`] — the bilinear form pipeline: functional, Gram matrix,
//!   congruence diagonalization.
//! * [`gw`] — Grothendieck–Witt arithmetic and classification.
//! * [`transforms`] — degree-preserving and degree-scaling map surgeries.
//! * [`experiments`] — randomized surveys and the deterministic check suite.

pub mod ekl;
pub mod error;
pub mod experiments;
pub mod field;
pub mod groebner;
pub mod gw;
pub mod localalg;
pub mod poly;
pub mod transforms;

pub use error::Error;
pub use field::{FieldElement, FieldSpec, SquareClass};
pub use poly::{Monomial, MonomialOrder, PolyMap, Polynomial};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
