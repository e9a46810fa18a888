//! Closed-form exponential and logarithm maps for rotations in dimensions
//! 3, 4, and 5.
//!
//! Rotations here are plain orthogonal matrices with determinant one, and
//! their generators are antisymmetric matrices. In dimension 3 the pair
//! (axis, angle) does everything; in dimensions 4 and 5 a rotation turns in
//! two orthogonal planes at once, and the crate decomposes its generator
//! into the two commuting wedge products behind those planes. Everything is
//! a closed form in the entries: no eigen-solvers, no iteration.
//!
//! The modules:
//!
//! - [`smallmat`]: fixed-dimension vectors/matrices and the half-trace norm
//! - [`wedge`]: outer/wedge products, the 3d cross-product map, projections
//! - [`so3`]: 3d rotations, axis-angle extraction, the 3d exp and log
//! - [`decomp`]: splitting a 4x4/5x5 generator into commuting wedge parts
//! - [`expmap`]: closed-form exponentials, dispatched by degeneracy class
//! - [`logmap`]: closed-form logarithms with all the pi-angle branches
//! - [`oracle`]: series exponential and seeded random input generation
//!
//! The `oracle` module is deliberately independent of the closed forms: it
//! is the reference the rest of the crate is tested against.

pub mod decomp;
mod error;
pub mod expmap;
pub mod logmap;
pub mod oracle;
pub mod smallmat;
pub mod so3;
pub mod wedge;

pub use error::Error;
pub use smallmat::{Matrix, Vector};

/// Default tolerance for validating that an input is antisymmetric or a
/// rotation. Inputs are checked, never repaired: a matrix that fails comes
/// back as an error rather than being silently re-orthonormalized.
pub const VALIDATION_TOL: f64 = 1e-9;
