//! Exact-arithmetic invariants of knots and a combinatorial calculus of
//! capped gropes and Whitney towers.
//!
//! The crate is organized around five subsystems:
//!
//! * [`knot`] — Seifert-matrix algebra: Alexander polynomials, certified
//!   Levine-Tristram signatures at exact angles, Arf, composition, and
//!   hyperbolicity tests.
//! * [`covers`] — homology of branched cyclic covers, linking forms,
//!   metabolizer enumeration, and the Gilmer-Livingston inequality.
//! * [`families`] — step-function signature models, exact angle
//!   interleaving, and the satellite knot families used by the
//!   obstruction pipeline.
//! * [`gropes`] — rooted-tree models of capped gropes and Whitney towers,
//!   height calculus, rewriting operations with exterior handle
//!   bookkeeping, and ABRS schedules.
//! * [`obstructions`] — membership / non-membership certificates for the
//!   grope, Whitney-tower, and solvable bi-filtrations.
//!
//! All core arithmetic is exact. Matrices and Laurent polynomials are
//! generic over an integer scalar (see [`scalar::IntScalar`]); the
//! concrete aliases below fix the default instantiation used by the
//! public operations.

pub mod angle;
pub mod covers;
pub mod dyadic;
mod error;
pub mod families;
pub mod fields;
pub mod gropes;
pub mod hermitian;
pub mod knot;
pub mod matrix;
pub mod obstructions;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};

/// Default exact integer scalar.
pub type Int = num_bigint::BigInt;
/// Default exact rational scalar.
pub type Rat = num_rational::BigRational;

/// Integer matrix over the default scalar.
pub type IntMat = matrix::Mat<Int>;
/// Laurent polynomial over the default scalar.
pub type LaurentPoly = poly::Laurent<Int>;
/// Seifert matrix over the default scalar.
pub type SeifertMatrix = knot::Seifert<Int>;

/// Interval-refinement precision floor, in fractional bits.
pub const PRECISION_START_BITS: u32 = 64;
/// Interval-refinement precision cap, in fractional bits.
pub const PRECISION_CAP_BITS: u32 = 4096;
