//! Logarithms of rotations in dimensions 4 and 5, plus the simple-rotation
//! log that works in any supported dimension.
//!
//! The two block angles of a rotation R are recovered from tr(R) and
//! tr(R^2):
//!
//!   delta = tr(R^2)/2 - tr(R)^2/4 + (n-4) tr(R)/2 - n(n-6)/4
//!   y_+-  = (tr(R) - n + 4)/4  +-  sqrt(delta)/2,      theta_+- = acos(y_+-)
//!
//! Note the ordering: y_plus >= y_minus, so theta_plus is the SMALLER angle.
//! This is the opposite of the decomposition module, which orders the parts
//! by descending norm. Each side keeps its native convention; consumers that
//! need a fixed order should sort on the angles.
//!
//! Away from the degenerate cases the two wedge parts come out of the linear
//! system joining R - R^t and R^2 - R^2t. The degenerate cases (an angle at
//! 0 or pi, or equal angles) each get their own branch, selected by
//! thresholds on y and sqrt(delta); past those thresholds the generic
//! formulas would divide by a vanishing sine or a vanishing sqrt(delta).

use std::f64::consts::PI;

use crate::error::Error;
use crate::expmap::exp_son;
use crate::smallmat::{Matrix, Vector};
use crate::so3;
use crate::wedge::wedge;

/// "y near +-1" means within this of the endpoint. The y values come out of
/// traces with absolute noise around 4e-15 at exactly-degenerate rotations
/// (measured over seeded corpora of series-built fixtures), so the threshold
/// sits a couple of decades above that floor.
pub const TAU_Y: f64 = 1e-13;
/// "delta ~ 0" means sqrt(delta) at or below this. At an exactly isoclinic
/// rotation the trace rounding alone produces phantom sqrt(delta) up to
/// about 1.1e-7, so anything below a few times that is indistinguishable
/// from zero.
pub const TAU_DELTA: f64 = 5e-7;
/// Norm of the antisymmetric part below which every block angle counts as
/// 0 or pi exactly; `|skew(R)| = sqrt(sum of sin^2)` measures those angles
/// to absolute rounding, far more sharply than the traces do.
pub const TAU_SKEW: f64 = 1e-8;

/// Spectral data of a 4x4 or 5x5 rotation: the discriminant, the clamped
/// cosines of the two block angles (y_plus >= y_minus), and the angles
/// themselves (theta_plus <= theta_minus).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angles45 {
    pub delta: f64,
    pub y_plus: f64,
    pub y_minus: f64,
    pub theta_plus: f64,
    pub theta_minus: f64,
}

/// The logarithm of a rotation, split by branch. Every `f` payload is
/// antisymmetric and exponentiates back to the source rotation; projection
/// payloads are symmetric and idempotent and only determine a plane (or
/// four-plane), not an oriented generator.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)] // payloads top out at three 5x5 matrices
pub enum LogOutcome {
    /// Both angles ~ 0.
    Identity { n: usize },
    /// Distinct angles, both inside (0, pi): the unique principal log and
    /// its two wedge parts. `f_plus` carries the smaller angle.
    Generic {
        f: Matrix,
        f_plus: Matrix,
        f_minus: Matrix,
    },
    /// Equal angles inside (0, pi): a log exists but its split into wedge
    /// parts is not unique.
    Isoclinic { f: Matrix },
    /// One angle ~ 0, the other inside (0, pi): a simple rotation.
    Simple { f: Matrix, theta: f64 },
    /// A simple rotation by pi: only the rotation plane is determined,
    /// through `proj2 = (I - R)/2`.
    SimplePi { proj2: Matrix },
    /// Both angles ~ pi: multiplication by -1 on a four-plane, determined
    /// through `proj4 = (I - R)/2`.
    FourPlanePi { proj4: Matrix },
    /// One angle inside (0, pi), the other ~ pi:
    /// `R = exp(f_plus) - 2 proj_minus`.
    MixedPi { f_plus: Matrix, proj_minus: Matrix },
}

impl LogOutcome {
    pub fn branch_name(&self) -> &'static str {
        match self {
            LogOutcome::Identity { .. } => "Identity",
            LogOutcome::Generic { .. } => "Generic",
            LogOutcome::Isoclinic { .. } => "Isoclinic",
            LogOutcome::Simple { .. } => "Simple",
            LogOutcome::SimplePi { .. } => "SimplePi",
            LogOutcome::FourPlanePi { .. } => "FourPlanePi",
            LogOutcome::MixedPi { .. } => "MixedPi",
        }
    }
}

/// Simple-rotation logarithm (any supported dimension): the angle comes from
/// the trace, `theta = acos((tr R - n + 2)/2)`, and for 0 < theta < pi the
/// unique log is `f = (theta / 2 sin(theta)) (R - R^t)`.
pub fn log_simple(r: &Matrix) -> Result<(f64, Matrix), Error> {
    r.validate_rotation(crate::VALIDATION_TOL)?;
    let n = r.dim() as f64;
    let theta = (0.5 * (r.trace() - n + 2.0)).clamp(-1.0, 1.0).acos();
    if theta <= so3::TAU_ZERO {
        return Err(Error::SpecialAngle {
            theta,
            region: "zero",
        });
    }
    if theta >= PI - so3::TAU_PI {
        return Err(Error::SpecialAngle { theta, region: "pi" });
    }
    let f = rescale_to_norm(simple_log_from_angle(r, theta), theta);
    // a non-simple rotation fed in by mistake produces an f that is not a
    // wedge; catch it through the cube identity
    let norm = f.half_trace_norm();
    let f3 = f * f * f;
    let residual = (f3 + f * (norm * norm)).max_abs();
    if residual > crate::expmap::RANK2_TOL * norm.max(1.0).powi(3) {
        return Err(Error::NotSimpleGenerator { residual });
    }
    Ok((theta, f))
}

/// `(theta / 2 sin(theta)) (R - R^t)`, shared by several branches that have
/// already pinned the angle down.
fn simple_log_from_angle(r: &Matrix, theta: f64) -> Matrix {
    r.skew_part() * (theta / theta.sin())
}

fn rescale_to_norm(f: Matrix, target: f64) -> Matrix {
    let norm = f.half_trace_norm();
    if norm > 0.0 {
        f * (target / norm)
    } else {
        f
    }
}

/// `h(y) = theta / sin(theta)` for `y = cos(theta)`; smooth on (-1, 1) with
/// `h(1) = 1`.
fn h_of_y(y: f64) -> f64 {
    1.0 / crate::expmap::sinc(y.clamp(-1.0, 1.0).acos())
}

/// `dh/dy` at `y = cos(theta)`, the confluent limit of the divided
/// difference of `h`.
fn h_prime(y: f64) -> f64 {
    let theta = y.clamp(-1.0, 1.0).acos();
    let sin = theta.sin();
    (theta * y - sin) / (sin * sin * sin)
}

/// Spectral angles of a 4x4 or 5x5 rotation.
pub fn spectral_angles(r: &Matrix) -> Result<Angles45, Error> {
    check_dim45("spectral_angles", r.dim())?;
    r.validate_rotation(crate::VALIDATION_TOL)?;
    let r2 = *r * *r;
    Ok(angles_from_traces(r.dim(), r.trace(), r2.trace()))
}

fn check_dim45(op: &'static str, n: usize) -> Result<(), Error> {
    if (4..=5).contains(&n) {
        Ok(())
    } else {
        Err(Error::WrongDimension {
            op,
            expected: "4 or 5",
            got: n,
        })
    }
}

fn angles_from_traces(n: usize, tr: f64, tr2: f64) -> Angles45 {
    let nf = n as f64;
    let delta =
        (0.5 * tr2 - 0.25 * tr * tr + 0.5 * (nf - 4.0) * tr - 0.25 * nf * (nf - 6.0)).max(0.0);
    let mid = 0.25 * (tr - nf + 4.0);
    let half_sqrt = 0.5 * delta.sqrt();
    let y_plus = (mid + half_sqrt).clamp(-1.0, 1.0);
    let y_minus = (mid - half_sqrt).clamp(-1.0, 1.0);
    Angles45 {
        delta,
        y_plus,
        y_minus,
        theta_plus: y_plus.acos(),
        theta_minus: y_minus.acos(),
    }
}

/// Logarithm of a 4x4 or 5x5 rotation with the default validation tolerance.
/// 3x3 inputs are rejected; use `so3::log_so3` for those.
pub fn log45(r: &Matrix) -> Result<LogOutcome, Error> {
    log45_with_tol(r, crate::VALIDATION_TOL)
}

/// Logarithm of a 4x4 or 5x5 rotation, validating the input within `tol`.
pub fn log45_with_tol(r: &Matrix, tol: f64) -> Result<LogOutcome, Error> {
    let n = r.dim();
    check_dim45("log45", n)?;
    r.validate_rotation(tol)?;

    let r2 = *r * *r;
    let ang = angles_from_traces(n, r.trace(), r2.trace());
    debug_assert!(ang.y_plus >= ang.y_minus - 1e-12);
    let sqrt_delta = ang.delta.sqrt();
    // mean cosine of the block angles; the phantom sqrt(delta) that trace
    // rounding injects into y_plus and y_minus cancels in their mean
    let mid_y = (0.5 * (ang.y_plus + ang.y_minus)).clamp(-1.0, 1.0);
    let skew = r.skew_part();

    if skew.half_trace_norm() <= TAU_SKEW {
        // every block angle is 0 or pi (to rounding), leaving exactly three
        // shapes, told apart by the mean cosine sitting at 1, 0, or -1:
        if mid_y >= 0.5 {
            // (a) all angles ~ 0
            return Ok(LogOutcome::Identity { n });
        }
        if mid_y <= -0.5 {
            // (b) both angles ~ pi: -1 on a four-plane (the whole space
            // when n = 4)
            let proj4 = (Matrix::raw_identity(n) - *r) * 0.5;
            return Ok(LogOutcome::FourPlanePi { proj4 });
        }
        // one angle ~ 0 and one ~ pi: a simple rotation by pi
        return Ok(LogOutcome::SimplePi {
            proj2: (Matrix::raw_identity(n) - *r) * 0.5,
        });
    }

    if sqrt_delta <= TAU_DELTA {
        // (c) equal angles inside (0, pi). The coefficient theta/sin(theta)
        // is taken as 1/sinc so the tiny-angle end needs no special case;
        // near pi the norm is restored from the angle, which the traces
        // know far better than the sine.
        let theta = mid_y.acos();
        let mut f = skew * (1.0 / crate::expmap::sinc(theta));
        if theta > PI / 2.0 {
            f = rescale_to_norm(f, theta * std::f64::consts::SQRT_2);
        }
        return Ok(LogOutcome::Isoclinic { f });
    }

    // distinct angles from here on. The y endpoint tests inherit the noise
    // of sqrt(delta), which grows as 1/sqrt(delta) when the discriminant
    // shrinks, so the threshold widens accordingly.
    let tau_y_eff = TAU_Y.max(100.0 * f64::EPSILON / sqrt_delta);

    if 1.0 - ang.y_plus <= tau_y_eff {
        // (d) smaller angle ~ 0: a simple rotation by theta_minus
        if 1.0 + ang.y_minus <= tau_y_eff {
            return Ok(LogOutcome::SimplePi {
                proj2: (Matrix::raw_identity(n) - *r) * 0.5,
            });
        }
        let theta = ang.theta_minus;
        return Ok(LogOutcome::Simple {
            f: rescale_to_norm(simple_log_from_angle(r, theta), theta),
            theta,
        });
    }

    if 1.0 + ang.y_minus <= tau_y_eff {
        // (e) larger angle ~ pi, smaller inside (0, pi): the pi-plane leaves
        // no trace in R - R^t, so recover the non-pi part first and take the
        // rest as the reflected plane
        let theta = ang.theta_plus;
        let f_plus = rescale_to_norm(simple_log_from_angle(r, theta), theta);
        let proj_minus = (exp_son(&f_plus)? - *r) * 0.5;
        return Ok(LogOutcome::MixedPi { f_plus, proj_minus });
    }

    // (f) generic: invert the 2x2 system linking R - R^t and R^2 - R^2t
    let d1 = *r - r.transpose();
    let d2 = r2 - r2.transpose();
    let f_plus = (d1 * ang.y_minus - d2 * 0.5)
        * (-ang.theta_plus / (2.0 * ang.theta_plus.sin() * sqrt_delta));
    let f_minus = (d1 * ang.y_plus - d2 * 0.5)
        * (ang.theta_minus / (2.0 * ang.theta_minus.sin() * sqrt_delta));
    // each part has norm theta by construction; restoring that exactly
    // strips the magnitude error picked up from sin(theta) when an angle
    // sits close to (but outside) a pi threshold
    let f_plus = rescale_to_norm(f_plus, ang.theta_plus);
    let f_minus = rescale_to_norm(f_minus, ang.theta_minus);
    let f = if sqrt_delta <= 1e-3 && ang.y_minus >= -0.99 {
        // near the isoclinic manifold the split into parts is poorly
        // conditioned (noise in y divided by sqrt(delta), twice), but the
        // principal log itself is not: in the exact rearrangement
        //
        //   f = (h(y+) + h(y-))/2 * (R - R^t)/2
        //       + dd_h * ((R^2 - R^2t)/2 - y_mid (R - R^t)) / 2
        //
        // with h(y) = theta/sin(theta) and dd_h its divided difference
        // across [y-, y+], every factor stays O(1)-conditioned
        let h_bar = 0.5 * (h_of_y(ang.y_plus) + h_of_y(ang.y_minus));
        let dd_h = if sqrt_delta > 1e-5 {
            (h_of_y(ang.y_plus) - h_of_y(ang.y_minus)) / sqrt_delta
        } else {
            h_prime(mid_y)
        };
        d1 * (0.5 * h_bar) + (d2 * 0.5 - d1 * mid_y) * (0.5 * dd_h)
    } else {
        f_plus + f_minus
    };
    Ok(LogOutcome::Generic { f, f_plus, f_minus })
}

/// Picks a concrete antisymmetric generator for the outcome. Branches that
/// only determine a plane get a deterministic representative: the plane
/// basis is extracted from the projection by column-pivoted Gram-Schmidt
/// with a sign convention, and each plane contributes a wedge scaled by pi.
pub fn materialize(outcome: &LogOutcome) -> Matrix {
    match outcome {
        LogOutcome::Identity { n } => Matrix::raw_zeros(*n),
        LogOutcome::Generic { f, .. }
        | LogOutcome::Isoclinic { f }
        | LogOutcome::Simple { f, .. } => *f,
        LogOutcome::SimplePi { proj2 } => pi_generator_from_projection(proj2, 2),
        LogOutcome::FourPlanePi { proj4 } => pi_generator_from_projection(proj4, 4),
        LogOutcome::MixedPi { f_plus, proj_minus } => {
            *f_plus + pi_generator_from_projection(proj_minus, 2)
        }
    }
}

fn pi_generator_from_projection(p: &Matrix, rank: usize) -> Matrix {
    let basis = projection_basis(p, rank);
    let mut out = Matrix::raw_zeros(p.dim());
    for pair in basis.chunks(2) {
        out = out + wedge(&pair[0], &pair[1]).expect("basis vectors share the dimension") * PI;
    }
    out
}

/// Orthonormal basis of the range of a projection of known rank: columns
/// ordered by norm (ties by index), orthonormalized by modified
/// Gram-Schmidt with a re-orthogonalization pass, signs fixed by making the
/// largest-magnitude component positive.
fn projection_basis(p: &Matrix, rank: usize) -> Vec<Vector> {
    let n = p.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        p.column(b)
            .norm()
            .partial_cmp(&p.column(a).norm())
            .expect("finite norms")
            .then(a.cmp(&b))
    });

    let mut basis: Vec<Vector> = Vec::with_capacity(rank);
    for &j in &order {
        if basis.len() == rank {
            break;
        }
        let mut v = p.column(j);
        for _pass in 0..2 {
            for q in &basis {
                v = v - *q * q.dot(&v);
            }
        }
        let norm = v.norm();
        if norm < 1e-6 {
            continue;
        }
        let mut v = v * (1.0 / norm);
        let mut dominant = 0;
        for i in 1..n {
            if v[i].abs() > v[dominant].abs() {
                dominant = i;
            }
        }
        if v[dominant] < 0.0 {
            v = -v;
        }
        basis.push(v);
    }
    assert_eq!(
        basis.len(),
        rank,
        "projection payload does not have rank {rank}"
    );
    basis
}
