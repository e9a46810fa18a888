//! Outer and wedge products, the 3d cross-product map, and plane projections.
//!
//! The outer product `u (x) v` sends `w` to `(v . w) u`, i.e. it has entries
//! `u_i v_j`. The wedge product `u ^ v = u (x) v - v (x) u` is the rank-2
//! antisymmetric map that encodes the oriented two-plane spanned by `u`, `v`
//! together with a magnitude. Its key algebra, used all over the crate:
//!
//!   (u ^ v)^2 = -|u ^ v|^2 proj_uv        (proj_uv projects onto the plane)
//!   (u ^ v)^3 = -|u ^ v|^2 (u ^ v)

use crate::error::Error;
use crate::smallmat::{Matrix, Vector};

/// Relative degeneracy threshold for plane construction, scaled by
/// max(1, |u| |v|) so the test is invariant under common rescaling.
pub const TAU_PLANE: f64 = 1e-10;

fn check_same_dim(u: &Vector, v: &Vector) -> Result<(), Error> {
    if u.dim() != v.dim() {
        Err(Error::DimensionMismatch {
            left: u.dim(),
            right: v.dim(),
        })
    } else {
        Ok(())
    }
}

/// Outer product: `(u (x) v) w = (v . w) u`, with entries `u_i v_j`.
pub fn outer(u: &Vector, v: &Vector) -> Result<Matrix, Error> {
    check_same_dim(u, v)?;
    Matrix::from_fn(u.dim(), |i, j| u[i] * v[j])
}

/// Wedge product `u ^ v = u (x) v - v (x) u`; antisymmetric to the last bit.
pub fn wedge(u: &Vector, v: &Vector) -> Result<Matrix, Error> {
    check_same_dim(u, v)?;
    Matrix::from_fn(u.dim(), |i, j| u[i] * v[j] - v[i] * u[j])
}

/// `|u ^ v| = sqrt(|u|^2 |v|^2 - (u . v)^2)`, clamping the radicand at zero
/// when rounding drives it slightly negative.
pub fn wedge_norm(u: &Vector, v: &Vector) -> Result<f64, Error> {
    check_same_dim(u, v)?;
    let d = u.dot(v);
    Ok((u.dot(u) * v.dot(v) - d * d).max(0.0).sqrt())
}

/// The cross-product map of a 3-vector: `lambda_map(u) w = u x w`.
pub fn lambda_map(u: &Vector) -> Result<Matrix, Error> {
    if u.dim() != 3 {
        return Err(Error::WrongDimension {
            op: "lambda_map",
            expected: "3",
            got: u.dim(),
        });
    }
    Matrix::from_rows(&[
        [0.0, -u[2], u[1]],
        [u[2], 0.0, -u[0]],
        [-u[1], u[0], 0.0],
    ])
}

/// Orthogonal projection onto the two-plane spanned by `u` and `v`, computed
/// as `-(u ^ v)^2 / |u ^ v|^2`. Errors when the pair does not span a plane.
pub fn plane_projection(u: &Vector, v: &Vector) -> Result<Matrix, Error> {
    let norm = wedge_norm(u, v)?;
    if norm <= TAU_PLANE * (u.norm() * v.norm()).max(1.0) {
        return Err(Error::DegeneratePlane { wedge_norm: norm });
    }
    let w = wedge(u, v)?;
    Ok(-(w * w) * (1.0 / (norm * norm)))
}

/// An ordered pair of vectors spanning a two-plane; the ordering is the
/// plane's orientation.
#[derive(Debug, Clone, Copy)]
pub struct WedgeFactors {
    u: Vector,
    v: Vector,
}

impl WedgeFactors {
    pub fn new(u: Vector, v: Vector) -> Result<Self, Error> {
        // reuse the plane threshold so a degenerate pair is rejected here
        let norm = wedge_norm(&u, &v)?;
        if norm <= TAU_PLANE * (u.norm() * v.norm()).max(1.0) {
            return Err(Error::DegeneratePlane { wedge_norm: norm });
        }
        Ok(WedgeFactors { u, v })
    }

    pub fn u(&self) -> &Vector {
        &self.u
    }

    pub fn v(&self) -> &Vector {
        &self.v
    }

    pub fn wedge(&self) -> Matrix {
        wedge(&self.u, &self.v).expect("dimensions validated at construction")
    }

    pub fn norm(&self) -> f64 {
        wedge_norm(&self.u, &self.v).expect("dimensions validated at construction")
    }

    pub fn projection(&self) -> Matrix {
        plane_projection(&self.u, &self.v).expect("span validated at construction")
    }
}
