//! Preprojective algebras of generalized Dynkin type as bound quiver
//! algebras over exact fields.
//!
//! The crate builds the algebras P(Δ), their deformations P^f(Δ), the
//! canonical socle deformations P*(Δ) and the θ-parameterized presentations
//! used in their classification; computes structural invariants (Cartan
//! data, socle, Nakayama permutation, symmetry); and checks the explicit
//! algebra homomorphisms between them.
//!
//! Everything is generic over the coefficient field through [`field::Scalar`];
//! the two instances are GF(p) ([`field::Fp`]) and the rationals
//! ([`field::Rat`]).

pub mod catalog;
pub mod dsl;
pub mod field;
pub mod freealg;
pub mod linalg;
pub mod morphisms;
pub mod presentations;
pub mod quiver;
pub mod quotient;
pub mod structure;
pub mod verify;

pub use field::{FieldError, FieldSpec, Fp, Rat, Scalar};
pub use freealg::{ElemError, FreeElem, NcPoly, PathId};
pub use quiver::{
    build_dynkin_quiver, exceptional_vertex, Arrow, ArrowId, DynkinType, Family, Quiver,
    QuiverError, VertexId,
};

/// Quotient algebra with GF(p) coefficients.
pub type FpAlgebra = quotient::QuotientAlgebra<Fp>;
/// Quotient algebra over the rationals.
pub type RatAlgebra = quotient::QuotientAlgebra<Rat>;
