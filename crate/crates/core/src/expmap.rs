//! Closed-form exponentials of antisymmetric matrices.
//!
//! A rank-2 generator `f` with angle `theta = |f|` exponentiates as
//!
//!   exp(f) = I + (sin(theta)/theta) f + ((1 - cos(theta))/theta^2) f^2,
//!
//! which is the simple-rotation formula with the plane projection eliminated
//! in favor of `f^2`. In dimensions 4 and 5 a general generator with
//! distinct angles exponentiates through the quartic polynomial
//!
//!   exp(f) = I + (A f + B f^2 + C f^3 + D f^4) / sqrt(Delta),
//!
//! and an isoclinic generator (equal angles, `f^3 = -theta^2 f`) reuses the
//! rank-2 shape with the block angle in place of the norm. `exp_son` is the
//! dispatcher that picks the right branch from the trace invariants.
//!
//! The coefficients A..D are differences of like terms divided by
//! sqrt(Delta), so the generic formula is never evaluated near the
//! isoclinic manifold where the cancellation would be catastrophic; the
//! thresholds live in `decomp::classify`.

use crate::decomp::{classify, invariants_raw, Invariants45, SplitClass};
use crate::error::Error;
use crate::smallmat::Matrix;
use crate::so3::exp_so3;

/// Relative tolerance for the rank-2 / isoclinic cube checks,
/// scaled by max(1, theta)^3 since the residual is cubic in the generator.
pub const RANK2_TOL: f64 = 1e-8;

/// Below this angle the trigonometric weight functions switch to their
/// cancellation-free forms.
const SMALL_ANGLE: f64 = 1e-4;

/// `sin(x) / x`, continuous through zero.
pub(crate) fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// `(1 - cos(x)) / x^2` via the half-angle identity for small `x`, where the
/// direct form loses half its digits.
pub(crate) fn one_minus_cos_over_sq(x: f64) -> f64 {
    if x.abs() < SMALL_ANGLE {
        let s = sinc(0.5 * x);
        0.5 * s * s
    } else {
        (1.0 - x.cos()) / (x * x)
    }
}

fn cube_residual(f: &Matrix, theta_sq: f64) -> f64 {
    let f3 = *f * *f * *f;
    (f3 + *f * theta_sq).max_abs()
}

fn rank2_bound(theta: f64) -> f64 {
    RANK2_TOL * theta.max(1.0).powi(3)
}

/// The four scalar weights of the dimension-4/5 exponential, as functions
/// of the two rotation angles. All four vanish as the angles merge, which
/// is why the isoclinic case gets its own branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exp45Coefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Exp45Coefficients {
    pub fn new(theta_plus: f64, theta_minus: f64) -> Self {
        let (tp2, tm2) = (theta_plus * theta_plus, theta_minus * theta_minus);
        let (sp, sm) = (sinc(theta_plus), sinc(theta_minus));
        let (cp, cm) = (
            one_minus_cos_over_sq(theta_plus),
            one_minus_cos_over_sq(theta_minus),
        );
        Exp45Coefficients {
            a: tp2 * sm - tm2 * sp,
            b: tp2 * cm - tm2 * cp,
            c: sm - sp,
            d: cm - cp,
        }
    }
}

/// The polynomial weights of the generic exponential with the 1/sqrt(Delta)
/// already folded in: `exp(f) = I + alpha f + beta f^2 + gamma f^3
/// + zeta f^4`.
///
/// gamma and zeta are divided differences of `sin(sqrt(x))/sqrt(x)` and
/// `(1 - cos(sqrt(x)))/x` across the two squared angles. When the angles
/// are comparable the naive difference cancels, so it is rewritten through
/// the half-sum/half-difference identities
///
///   dd_c = (s cos(s) sinc(d) - sin(s) cos(d)) / (2 s a b)
///   dd_d = ((cos(s) cos(d) - 1) + (a^2 + b^2) sin(s) sinc(d) / (4 s))
///          / (a^2 b^2)
///
/// with s = (a + b)/2 and d = (a - b)/2, which stay conditioned as d -> 0.
/// When the angles are far apart (b < a/3) those denominators degrade
/// instead and the direct difference form is well conditioned, so the two
/// regimes split at b = a/3.
pub(crate) fn scaled_weights(theta_plus: f64, theta_minus: f64) -> (f64, f64, f64, f64) {
    let (a, b) = (theta_plus, theta_minus);
    let tm2 = b * b;
    if b >= a / 3.0 {
        let s = 0.5 * (a + b);
        let d = 0.5 * (a - b);
        let dd_c = (s * s.cos() * sinc(d) - s.sin() * d.cos()) / (2.0 * s * a * b);
        let dd_d = ((s.cos() * d.cos() - 1.0) + (a * a + b * b) * s.sin() * sinc(d) / (4.0 * s))
            / (a * a * b * b);
        let gamma = -dd_c;
        let zeta = -dd_d;
        let alpha = sinc(b) + tm2 * gamma;
        let beta = one_minus_cos_over_sq(b) + tm2 * zeta;
        (alpha, beta, gamma, zeta)
    } else {
        let c = Exp45Coefficients::new(a, b);
        let inv_sqrt_delta = 1.0 / (a * a - b * b);
        (
            c.a * inv_sqrt_delta,
            c.b * inv_sqrt_delta,
            c.c * inv_sqrt_delta,
            c.d * inv_sqrt_delta,
        )
    }
}

/// Exponential of a rank-2 (simple) generator in any supported dimension.
/// The input must satisfy `f^3 = -|f|^2 f` within tolerance.
pub fn exp_simple(f: &Matrix) -> Result<Matrix, Error> {
    f.validate_antisymmetric(crate::VALIDATION_TOL)?;
    let f = f.skew_part();
    let theta = f.half_trace_norm();
    if theta <= crate::decomp::TAU_ZERO {
        return Ok(Matrix::raw_identity(f.dim()));
    }
    let residual = cube_residual(&f, theta * theta);
    if residual > rank2_bound(theta) {
        return Err(Error::NotSimpleGenerator { residual });
    }
    let f2 = f * f;
    Ok(Matrix::raw_identity(f.dim())
        + f * sinc(theta)
        + f2 * one_minus_cos_over_sq(theta))
}

/// Exponential of a 4x4 or 5x5 generator with distinct nonzero angles.
/// `inv` must be the invariants of this same (skew-symmetrized) `f`.
pub fn exp45_generic(f: &Matrix, inv: &Invariants45) -> Result<Matrix, Error> {
    if !(4..=5).contains(&f.dim()) {
        return Err(Error::WrongDimension {
            op: "exp45_generic",
            expected: "4 or 5",
            got: f.dim(),
        });
    }
    let class = classify(inv, f.half_trace_norm());
    if class != SplitClass::Generic {
        return Err(Error::WrongClass {
            op: "exp45_generic",
            expected: "Generic",
            got: class.name(),
        });
    }
    let (alpha, beta, gamma, zeta) = scaled_weights(inv.theta_plus(), inv.theta_minus());
    let f2 = *f * *f;
    let f3 = f2 * *f;
    let f4 = f2 * f2;
    Ok(Matrix::raw_identity(f.dim()) + *f * alpha + f2 * beta + f3 * gamma + f4 * zeta)
}

/// Exponential of an isoclinic generator with block angle `theta`; relies on
/// `f^3 = -theta^2 f`, which is checked.
pub fn exp45_isoclinic(f: &Matrix, theta: f64) -> Result<Matrix, Error> {
    if !(4..=5).contains(&f.dim()) {
        return Err(Error::WrongDimension {
            op: "exp45_isoclinic",
            expected: "4 or 5",
            got: f.dim(),
        });
    }
    if theta <= crate::decomp::TAU_ZERO {
        return Err(Error::SpecialAngle {
            theta,
            region: "zero",
        });
    }
    let residual = cube_residual(f, theta * theta);
    if residual > rank2_bound(theta) {
        return Err(Error::NotIsoclinicGenerator { residual });
    }
    let f2 = *f * *f;
    Ok(Matrix::raw_identity(f.dim())
        + *f * sinc(theta)
        + f2 * one_minus_cos_over_sq(theta))
}

/// The exponential map for any supported antisymmetric matrix: n = 3 goes
/// through the axis-angle closed form, n = 4 and 5 dispatch on the
/// degeneracy class of the generator.
pub fn exp_son(f: &Matrix) -> Result<Matrix, Error> {
    f.validate_antisymmetric(crate::VALIDATION_TOL)?;
    let f = f.skew_part();
    if f.dim() == 3 {
        return exp_so3(&f);
    }
    let f_norm = f.half_trace_norm();
    let inv = invariants_raw(&f);
    match classify(&inv, f_norm) {
        SplitClass::Zero => Ok(Matrix::raw_identity(f.dim())),
        SplitClass::Simple => exp_simple(&f),
        SplitClass::Isoclinic => {
            // in this class theta_plus and theta_minus agree; their mean
            // square is free of the sqrt(Delta) rounding that the individual
            // angles carry
            let theta = (0.5 * (inv.theta_plus_sq + inv.theta_minus_sq)).sqrt();
            exp45_isoclinic(&f, theta)
        }
        SplitClass::Generic => exp45_generic(&f, &inv),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{random_orthogonal_wedge_pair, series_exp, RngSeed, SplitMix64};
    use crate::smallmat::Vector;
    use crate::wedge::wedge;
    use std::f64::consts::PI;

    fn basis_wedge(n: usize, i: usize, j: usize) -> Matrix {
        wedge(&Vector::basis(n, i).unwrap(), &Vector::basis(n, j).unwrap()).unwrap()
    }

    #[test]
    fn exp_simple_of_zero() {
        for n in 3..=5 {
            assert_eq!(
                exp_simple(&Matrix::zeros(n).unwrap()).unwrap(),
                Matrix::identity(n).unwrap()
            );
        }
    }

    #[test]
    fn exp_simple_quarter_turn_block() {
        let r = exp_simple(&(basis_wedge(4, 0, 1) * (PI / 2.0))).unwrap();
        let expected = Matrix::from_rows(&[
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        assert!(r.max_abs_diff(&expected) <= 1e-15);
    }

    #[test]
    fn exp_simple_matches_series() {
        let mut rng = SplitMix64::new(RngSeed(501));
        for n in 3..=5 {
            for _ in 0..100 {
                let (f, _) = random_orthogonal_wedge_pair(n.max(4), 1.0, 0.0, rng.derive_seed())
                    .unwrap();
                // reuse the 4/5 generator for those dims; build 3d wedges directly
                let f = if n == 3 {
                    let u = Vector::new(&[
                        rng.uniform(-1.0, 1.0),
                        rng.uniform(-1.0, 1.0),
                        rng.uniform(-1.0, 1.0),
                    ])
                    .unwrap();
                    let v = Vector::new(&[
                        rng.uniform(-1.0, 1.0),
                        rng.uniform(-1.0, 1.0),
                        rng.uniform(-1.0, 1.0),
                    ])
                    .unwrap();
                    wedge(&u, &v).unwrap()
                } else {
                    f * rng.uniform(0.1, 2.0 * PI)
                };
                let closed = exp_simple(&f).unwrap();
                assert!(closed.max_abs_diff(&series_exp(&f)) <= 1e-10);
                assert!(closed.orthogonality_residual() <= 1e-11);
            }
        }
    }

    #[test]
    fn exp_simple_rejects_generic_generators() {
        let f = basis_wedge(4, 0, 1) * 1.0 + basis_wedge(4, 2, 3) * 0.5;
        assert!(matches!(
            exp_simple(&f),
            Err(Error::NotSimpleGenerator { .. })
        ));
    }

    #[test]
    fn plane_rotation_action() {
        // exp(theta u ^ v) sends u to cos(theta) u - sin(theta) v, sends v to
        // sin(theta) u + cos(theta) v, and fixes the orthogonal complement
        let mut rng = SplitMix64::new(RngSeed(503));
        for _ in 0..100 {
            let q = crate::oracle::random_orthogonal(5, &mut rng);
            let (u, v, w) = (q.column(0), q.column(1), q.column(2));
            let theta = rng.uniform(-2.0 * PI, 2.0 * PI);
            let r = exp_simple(&(wedge(&u, &v).unwrap() * theta)).unwrap();
            let ru = r.apply(&u).unwrap();
            let rv = r.apply(&v).unwrap();
            let rw = r.apply(&w).unwrap();
            assert!((ru - (u * theta.cos() - v * theta.sin())).max_abs() <= 1e-12);
            assert!((rv - (u * theta.sin() + v * theta.cos())).max_abs() <= 1e-12);
            assert!((rw - w).max_abs() <= 1e-12);
        }
    }

    #[test]
    fn exp45_generic_block_composition() {
        let f = basis_wedge(4, 0, 1) * (PI / 2.0) + basis_wedge(4, 2, 3) * (PI / 3.0);
        let inv = invariants_raw(&f);
        let direct = exp45_generic(&f, &inv).unwrap();
        let composed = exp_simple(&(basis_wedge(4, 0, 1) * (PI / 2.0))).unwrap()
            * exp_simple(&(basis_wedge(4, 2, 3) * (PI / 3.0))).unwrap();
        assert!(direct.max_abs_diff(&composed) <= 1e-13);
    }

    #[test]
    fn exp45_generic_matches_series() {
        let mut rng = SplitMix64::new(RngSeed(509));
        for n in 4..=5 {
            for _ in 0..200 {
                let a = rng.uniform(0.1, PI);
                let b = rng.uniform(0.1, PI);
                if (a - b).abs() < 0.05 {
                    continue;
                }
                let (w_plus, w_minus) =
                    random_orthogonal_wedge_pair(n, a.max(b), a.min(b), rng.derive_seed())
                        .unwrap();
                let f = w_plus + w_minus;
                let inv = invariants_raw(&f);
                let closed = exp45_generic(&f, &inv).unwrap();
                assert!(closed.max_abs_diff(&series_exp(&f)) <= 1e-10);

                // trace identity: tr R = n - 2(1 - cos th+) - 2(1 - cos th-)
                let expected_trace = n as f64
                    - 2.0 * (1.0 - inv.theta_plus().cos())
                    - 2.0 * (1.0 - inv.theta_minus().cos());
                assert!((closed.trace() - expected_trace).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn exp45_generic_rejects_isoclinic_input() {
        let f = (basis_wedge(4, 0, 1) + basis_wedge(4, 2, 3)) * 1.2;
        let inv = invariants_raw(&f);
        assert!(matches!(
            exp45_generic(&f, &inv),
            Err(Error::WrongClass { .. })
        ));
    }

    #[test]
    fn exp45_isoclinic_quarter_turns() {
        let theta = PI / 2.0;
        let f = (basis_wedge(4, 0, 1) + basis_wedge(4, 2, 3)) * theta;
        let r = exp45_isoclinic(&f, theta).unwrap();
        let expected = Matrix::from_rows(&[
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0, 0.0],
        ])
        .unwrap();
        assert!(r.max_abs_diff(&expected) <= 1e-15);

        // the half-trace norm of this f is theta * sqrt(2), not theta
        assert!((f.half_trace_norm() - theta * 2.0f64.sqrt()).abs() <= 1e-12);
    }

    #[test]
    fn exp45_isoclinic_matches_series() {
        let mut rng = SplitMix64::new(RngSeed(521));
        for n in 4..=5 {
            for _ in 0..100 {
                let theta = rng.uniform(0.05, PI);
                let (w_plus, w_minus) =
                    random_orthogonal_wedge_pair(n, 1.0, 1.0, rng.derive_seed()).unwrap();
                let f = (w_plus + w_minus) * theta;
                let closed = exp45_isoclinic(&f, theta).unwrap();
                assert!(closed.max_abs_diff(&series_exp(&f)) <= 1e-10);
            }
        }
    }

    #[test]
    fn exp45_isoclinic_first_order_limit() {
        let theta = 1e-9;
        let f = (basis_wedge(4, 0, 1) + basis_wedge(4, 2, 3)) * theta;
        let r = exp45_isoclinic(&f, theta).unwrap();
        let first_order = Matrix::identity(4).unwrap() + f;
        assert!(r.max_abs_diff(&first_order) <= 1e-8 * theta);
    }

    #[test]
    fn exp45_isoclinic_rejects_mismatched_angle() {
        let f = basis_wedge(4, 0, 1) * 1.0 + basis_wedge(4, 2, 3) * 0.3;
        assert!(matches!(
            exp45_isoclinic(&f, 1.0),
            Err(Error::NotIsoclinicGenerator { .. })
        ));
    }

    #[test]
    fn exp_son_zero_is_identity() {
        for n in 3..=5 {
            assert_eq!(
                exp_son(&Matrix::zeros(n).unwrap()).unwrap(),
                Matrix::identity(n).unwrap()
            );
        }
    }

    #[test]
    fn exp_son_matches_series_all_dims() {
        let mut rng = SplitMix64::new(RngSeed(523));
        for n in 3..=5 {
            for _ in 0..200 {
                let f = crate::oracle::random_antisym(n, 1.0, rng.derive_seed()).unwrap();
                let target = rng.uniform(0.0, 2.0 * PI);
                let norm = f.half_trace_norm();
                let f = if norm > 0.0 { f * (target / norm) } else { f };
                let closed = exp_son(&f).unwrap();
                assert!(
                    closed.max_abs_diff(&series_exp(&f)) <= 1e-10,
                    "n={n} residual {}",
                    closed.max_abs_diff(&series_exp(&f))
                );
                assert!(closed.orthogonality_residual() <= 1e-11);
                assert!((closed.det() - 1.0).abs() <= 1e-11);
            }
        }
    }

    #[test]
    fn exp_son_sum_identity_for_orthogonal_parts() {
        // exp(f+ + f-) = I + (exp(f+) - I) + (exp(f-) - I), and the factors
        // commute
        let mut rng = SplitMix64::new(RngSeed(541));
        for n in 4..=5 {
            for _ in 0..100 {
                let (f_plus, f_minus) = random_orthogonal_wedge_pair(
                    n,
                    rng.uniform(0.1, 2.5),
                    rng.uniform(0.1, 2.5),
                    rng.derive_seed(),
                )
                .unwrap();
                let joint = exp_son(&(f_plus + f_minus)).unwrap();
                let r_plus = exp_son(&f_plus).unwrap();
                let r_minus = exp_son(&f_minus).unwrap();
                let id = Matrix::identity(n).unwrap();
                let summed = id + (r_plus - id) + (r_minus - id);
                assert!(joint.max_abs_diff(&summed) <= 1e-10);
                assert!(joint.max_abs_diff(&(r_plus * r_minus)) <= 1e-10);
            }
        }
    }

    #[test]
    fn n4_quartic_elimination_agrees() {
        // in dimension 4 the projections sum to the identity, which lets the
        // f^4 term be rewritten as -th+^2 th-^2 I - (th+^2 + th-^2) f^2
        let mut rng = SplitMix64::new(RngSeed(547));
        for _ in 0..100 {
            let a = rng.uniform(0.2, 3.0);
            let b = rng.uniform(0.2, 3.0);
            if (a - b).abs() < 0.05 {
                continue;
            }
            let (w_plus, w_minus) =
                random_orthogonal_wedge_pair(4, a.max(b), a.min(b), rng.derive_seed()).unwrap();
            let f = w_plus + w_minus;
            let inv = invariants_raw(&f);
            let direct = exp45_generic(&f, &inv).unwrap();

            let coeffs = Exp45Coefficients::new(inv.theta_plus(), inv.theta_minus());
            let s = inv.delta.sqrt();
            let (tp2, tm2) = (inv.theta_plus_sq, inv.theta_minus_sq);
            let f2 = f * f;
            let f3 = f2 * f;
            let id = Matrix::identity(4).unwrap();
            let variant = id * (1.0 - coeffs.d * tp2 * tm2 / s)
                + (f * coeffs.a + f2 * (coeffs.b - coeffs.d * (tp2 + tm2)) + f3 * coeffs.c)
                    * (1.0 / s);
            assert!(direct.max_abs_diff(&variant) <= 1e-10);
        }
    }

    #[test]
    fn scaled_weight_regimes_agree() {
        // both evaluation regimes are exact rearrangements of the same
        // quantity; compare them across the switch point
        for &(a, b) in &[(2.0, 0.7), (3.0, 1.0001), (1.0, 0.34), (6.0, 2.1)] {
            let direct = {
                let c = Exp45Coefficients::new(a, b);
                let inv = 1.0 / (a * a - b * b);
                (c.a * inv, c.b * inv, c.c * inv, c.d * inv)
            };
            let (alpha, beta, gamma, zeta) = scaled_weights(a, b);
            assert!((alpha - direct.0).abs() <= 1e-12);
            assert!((beta - direct.1).abs() <= 1e-12);
            assert!((gamma - direct.2).abs() <= 1e-12);
            assert!((zeta - direct.3).abs() <= 1e-12);
        }
    }

    #[test]
    fn exp45_generic_is_stable_near_the_isoclinic_boundary() {
        // an angle gap of 1e-7 sits just outside the isoclinic threshold;
        // the divided-difference weights keep full accuracy there
        // angles stay moderate so the true sqrt(Delta) sits above both the
        // isoclinic threshold and the trace-rounding floor
        let mut rng = SplitMix64::new(RngSeed(563));
        for _ in 0..20 {
            let theta = rng.uniform(0.5, 1.5);
            let gap = 1e-7;
            let (w_plus, w_minus) = random_orthogonal_wedge_pair(
                5,
                theta + 0.5 * gap,
                theta - 0.5 * gap,
                rng.derive_seed(),
            )
            .unwrap();
            let f = w_plus + w_minus;
            let inv = invariants_raw(&f);
            assert_eq!(classify(&inv, f.half_trace_norm()), SplitClass::Generic);
            let closed = exp45_generic(&f, &inv).unwrap();
            assert!(closed.max_abs_diff(&series_exp(&f)) <= 1e-10);
        }
    }

    #[test]
    fn exp_son_handles_rotated_isoclinic_generators() {
        // exactly isoclinic generators in a random plane basis: the trace
        // invariants carry rounding noise, so the dispatcher has to take its
        // block angle from the stable mean
        let mut rng = SplitMix64::new(RngSeed(569));
        for n in 4..=5 {
            for _ in 0..50 {
                let theta = rng.uniform(0.1, PI);
                let (w_plus, w_minus) =
                    random_orthogonal_wedge_pair(n, 1.0, 1.0, rng.derive_seed()).unwrap();
                let f = (w_plus + w_minus) * theta;
                let closed = exp_son(&f).unwrap();
                assert!(closed.max_abs_diff(&series_exp(&f)) <= 1e-10);
            }
        }
    }

    #[test]
    fn coefficients_vanish_as_angles_merge() {
        let c = Exp45Coefficients::new(1.0 + 1e-9, 1.0);
        assert!(c.a.abs() <= 1e-8);
        assert!(c.b.abs() <= 1e-8);
        assert!(c.c.abs() <= 1e-8);
        assert!(c.d.abs() <= 1e-8);

        let c = Exp45Coefficients::new(2.0, 1.0);
        assert!(c.a.is_finite() && c.a != 0.0);
    }

    #[test]
    fn branch_continuity_near_isoclinic_manifold() {
        // with an angle gap of 1e-6 the generic formula and the isoclinic
        // formula at the averaged angle agree to the gap's order
        let mut rng = SplitMix64::new(RngSeed(557));
        for _ in 0..20 {
            let theta = rng.uniform(0.5, 2.5);
            let gap = 1e-6;
            let (w_plus, w_minus) = random_orthogonal_wedge_pair(
                5,
                theta + 0.5 * gap,
                theta - 0.5 * gap,
                rng.derive_seed(),
            )
            .unwrap();
            let f = w_plus + w_minus;
            let inv = invariants_raw(&f);
            assert_eq!(classify(&inv, f.half_trace_norm()), SplitClass::Generic);
            let generic = exp45_generic(&f, &inv).unwrap();
            let averaged = 0.5 * (inv.theta_plus() + inv.theta_minus());
            // the cube check would reject this nearly-isoclinic f only for
            // much larger gaps; evaluate the formula directly
            let f2 = f * f;
            let iso_form = Matrix::identity(5).unwrap()
                + f * sinc(averaged)
                + f2 * one_minus_cos_over_sq(averaged);
            assert!(generic.max_abs_diff(&iso_form) <= 1e-6);
        }
    }

    #[test]
    fn small_angle_weights_are_stable() {
        // above the switch point the direct form is the reference; below it
        // the Taylor value 1/2 - x^2/24 is
        for &x in &[1e-4, 1e-3, 0.1, 1.0, PI] {
            let direct = (1.0 - x.cos()) / (x * x);
            assert!((one_minus_cos_over_sq(x) - direct).abs() <= 1e-12);
        }
        for &x in &[0.0, 1e-12, 1e-8, 1e-5] {
            let taylor = 0.5 - x * x / 24.0;
            assert!((one_minus_cos_over_sq(x) - taylor).abs() <= 1e-15);
            assert!(sinc(x) <= 1.0 && sinc(x) > 0.999);
        }
        assert_eq!(sinc(0.0), 1.0);
        assert_eq!(one_minus_cos_over_sq(0.0), 0.5);
    }
}
