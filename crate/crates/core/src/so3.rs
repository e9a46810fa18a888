//! Rotations in three dimensions: the axis-angle rotation formula, its
//! matrix form, the closed-form exponential of an antisymmetric 3x3 matrix,
//! and angle/axis extraction with the theta = 0 and theta = pi branches.
//!
//! The extraction side divides by sin(theta), so angles within `TAU_ZERO` of
//! zero and `TAU_PI` of pi are routed to the dedicated branches where the
//! division would amplify rounding past the accuracy target.

use std::f64::consts::PI;

use crate::error::Error;
use crate::smallmat::{Matrix, Vector};
use crate::wedge::{lambda_map, outer};

/// Angles at or below this route to the identity branch.
pub const TAU_ZERO: f64 = 1e-8;
/// Angles within this of pi route to the reflection branch.
pub const TAU_PI: f64 = 1e-7;
/// How far an axis may be from unit length.
pub const UNIT_AXIS_TOL: f64 = 1e-9;

fn check_dim3(op: &'static str, n: usize) -> Result<(), Error> {
    if n == 3 {
        Ok(())
    } else {
        Err(Error::WrongDimension {
            op,
            expected: "3",
            got: n,
        })
    }
}

fn check_unit_axis(u: &Vector) -> Result<(), Error> {
    let norm = u.norm();
    if (norm - 1.0).abs() > UNIT_AXIS_TOL {
        Err(Error::NonUnitAxis { norm })
    } else {
        Ok(())
    }
}

/// A rotation angle in `[0, pi]` together with its unit axis; the canonical
/// representation an extraction produces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle {
    pub theta: f64,
    pub axis: Vector,
}

impl AxisAngle {
    pub fn new(theta: f64, axis: Vector) -> Result<Self, Error> {
        check_dim3("AxisAngle", axis.dim())?;
        check_unit_axis(&axis)?;
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::SpecialAngle {
                theta,
                region: "outside [0, pi]",
            });
        }
        Ok(AxisAngle { theta, axis })
    }
}

/// The logarithm of a 3d rotation, split by angle region.
#[derive(Debug, Clone)]
pub enum Log3Outcome {
    /// theta ~ 0: the rotation is the identity and the log is zero.
    Identity,
    /// 0 < theta < pi: the unique principal log `f = theta * Lambda_axis`.
    Generic { axis_angle: AxisAngle, f: Matrix },
    /// theta ~ pi: reflection in the plane orthogonal to the axis. Only the
    /// projection onto the axis is determined; the axis sign is a convention
    /// (largest-magnitude component made positive).
    Pi { proj: Matrix, axis: Vector },
}

impl Log3Outcome {
    pub fn branch_name(&self) -> &'static str {
        match self {
            Log3Outcome::Identity => "Identity",
            Log3Outcome::Generic { .. } => "Generic",
            Log3Outcome::Pi { .. } => "Pi",
        }
    }

    /// A concrete antisymmetric generator whose exponential reproduces the
    /// source rotation.
    pub fn materialize(&self) -> Matrix {
        match self {
            Log3Outcome::Identity => Matrix::raw_zeros(3),
            Log3Outcome::Generic { f, .. } => *f,
            Log3Outcome::Pi { axis, .. } => {
                lambda_map(axis).expect("axis validated at construction") * PI
            }
        }
    }
}

/// Applies the rotation by `theta` about the unit axis `u` to `v`:
/// `cos(theta) v + (1 - cos(theta))(u . v) u + sin(theta) u x v`.
pub fn rodrigues_apply(theta: f64, u: &Vector, v: &Vector) -> Result<Vector, Error> {
    check_dim3("rodrigues_apply", u.dim())?;
    check_dim3("rodrigues_apply", v.dim())?;
    check_unit_axis(u)?;
    let (c, s) = (theta.cos(), theta.sin());
    Ok(*v * c + *u * ((1.0 - c) * u.dot(v)) + u.cross(v)? * s)
}

/// The rotation matrix `cos(theta) I + (1 - cos(theta)) proj_u
/// + sin(theta) Lambda_u` for a unit axis `u`.
pub fn rotation3(theta: f64, u: &Vector) -> Result<Matrix, Error> {
    check_dim3("rotation3", u.dim())?;
    check_unit_axis(u)?;
    let (c, s) = (theta.cos(), theta.sin());
    let id = Matrix::raw_identity(3);
    Ok(id * c + outer(u, u)? * (1.0 - c) + lambda_map(u)? * s)
}

/// Closed-form exponential of an antisymmetric 3x3 matrix.
///
/// The input is skew-symmetrized after a tolerance check; the angle is its
/// half-trace norm and the axis is read straight off the entries.
pub fn exp_so3(a: &Matrix) -> Result<Matrix, Error> {
    check_dim3("exp_so3", a.dim())?;
    a.validate_antisymmetric(crate::VALIDATION_TOL)?;
    let f = a.skew_part();
    let theta = f.half_trace_norm();
    if theta <= TAU_ZERO {
        return Ok(Matrix::raw_identity(3));
    }
    let u = Vector::new(&[
        f[(2, 1)] / theta,
        f[(0, 2)] / theta,
        f[(1, 0)] / theta,
    ])?;
    rotation3(theta, &u)
}

/// The rotation angle in `[0, pi]` from the trace, with the arccos argument
/// clamped against rounding.
pub fn angle_of(r: &Matrix) -> Result<f64, Error> {
    check_dim3("angle_of", r.dim())?;
    r.validate_rotation(crate::VALIDATION_TOL)?;
    Ok((0.5 * (r.trace() - 1.0)).clamp(-1.0, 1.0).acos())
}

/// The unit rotation axis read off `R - R^t`, valid only for angles away
/// from 0 and pi.
pub fn axis_of(r: &Matrix, theta: f64) -> Result<Vector, Error> {
    check_dim3("axis_of", r.dim())?;
    r.validate_rotation(crate::VALIDATION_TOL)?;
    if theta <= TAU_ZERO {
        return Err(Error::SpecialAngle {
            theta,
            region: "zero",
        });
    }
    if theta >= PI - TAU_PI {
        return Err(Error::SpecialAngle { theta, region: "pi" });
    }
    let d = *r - r.transpose();
    // d = 2 sin(theta) Lambda_u, so the axis components sit at the same
    // positions as in Lambda_u
    Vector::new(&[d[(2, 1)], d[(0, 2)], d[(1, 0)]])?.normalized()
}

/// Logarithm of a 3d rotation with the default validation tolerance.
pub fn log_so3(r: &Matrix) -> Result<Log3Outcome, Error> {
    log_so3_with_tol(r, crate::VALIDATION_TOL)
}

/// Logarithm of a 3d rotation, validating the input within `tol`.
pub fn log_so3_with_tol(r: &Matrix, tol: f64) -> Result<Log3Outcome, Error> {
    check_dim3("log_so3", r.dim())?;
    r.validate_rotation(tol)?;
    let theta = (0.5 * (r.trace() - 1.0)).clamp(-1.0, 1.0).acos();

    if theta <= TAU_ZERO {
        return Ok(Log3Outcome::Identity);
    }

    if theta < PI - TAU_PI {
        let d = *r - r.transpose();
        let axis = Vector::new(&[d[(2, 1)], d[(0, 2)], d[(1, 0)]])?.normalized()?;
        let f = lambda_map(&axis)? * theta;
        return Ok(Log3Outcome::Generic {
            axis_angle: AxisAngle::new(theta, axis)?,
            f,
        });
    }

    // theta ~ pi: R is reflection in the plane orthogonal to the axis and
    // proj onto the axis is (I + R) / 2. The axis is its dominant column,
    // determined up to sign; fix the sign deterministically.
    let proj = (Matrix::raw_identity(3) + *r) * 0.5;
    let mut best = 0;
    for j in 1..3 {
        if proj.column(j).norm() > proj.column(best).norm() {
            best = j;
        }
    }
    let mut axis = proj.column(best).normalized()?;
    let mut dominant = 0;
    for i in 1..3 {
        if axis[i].abs() > axis[dominant].abs() {
            dominant = i;
        }
    }
    if axis[dominant] < 0.0 {
        axis = -axis;
    }
    Ok(Log3Outcome::Pi { proj, axis })
}
