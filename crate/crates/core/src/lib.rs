//! Return words, return substitutions and exact spectra of primitive
//! substitutions.
//!
//! The crate is organised bottom-up:
//!
//! - [`words`]: letters, words, occurrences, bounded period detection;
//! - [`substitution`]: morphisms, substitutions, incidence matrices, fixed points;
//! - [`matrix`], [`poly`], [`spectrum`]: exact integer linear algebra,
//!   characteristic polynomials, dominant eigenvalues, multiplicative dependence;
//! - [`returns`]: return words, derived sequences, return substitutions, derivation towers;
//! - [`relations`]: morphism and matrix relations between a substitution and
//!   its return substitutions, and the shared-fixed-point analyses;
//! - [`circularity`]: interpretations, synchronisation delays, injectivity;
//! - [`periodic`]: presentations of periodic sequences as codings of fixed points.

pub mod circularity;
pub mod corpus;
pub mod error;
pub mod limits;
pub mod matrix;
pub mod periodic;
pub mod poly;
pub mod report;
pub mod relations;
pub mod returns;
pub mod spectrum;
pub mod substitution;
pub mod words;

pub use error::{Error, Result};
pub use matrix::{is_primitive, IncidenceMatrix, IntMatrix};
pub use poly::IntPolynomial;
pub use report::Check;
pub use spectrum::{Spectrum, RootEnclosure};
pub use substitution::{FixedPointPrefix, Morphism, Substitution};
pub use words::{Alphabet, Letter, Word};
