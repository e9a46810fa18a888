//! Orthogonal decomposition of a 4x4 or 5x5 antisymmetric matrix into two
//! commuting wedge parts, by closed form.
//!
//! For antisymmetric `f` the two trace invariants
//!
//!   Delta        = tr(f^4) - tr(f^2)^2 / 4
//!   theta_+-^2   = -tr(f^2) / 4  +-  sqrt(Delta) / 2
//!
//! are nonnegative, and when Delta > 0 the parts
//!
//!   f_+- = -+ (theta_-+^2 f + f^3) / sqrt(Delta)
//!
//! are wedge products with `f_+ f_- = 0`, `f_+ + f_- = f`, and norms
//! `theta_+-`. The decomposition is unique up to ordering; here the parts
//! are always ordered `theta_plus >= theta_minus`. When Delta ~ 0 the two
//! angles coincide (an isoclinic generator) and no unique pair exists, so
//! none is produced.

use crate::error::Error;
use crate::smallmat::Matrix;

/// Below this (times max(1, |f|)) a norm counts as zero.
pub const TAU_ZERO: f64 = 1e-10;
/// Below this (times max(1, |f|^2)) sqrt(Delta) counts as isoclinic. Delta
/// is quartic in f, hence the quadratic scale factor.
pub const TAU_ISO: f64 = 1e-8;

/// Degeneracy class of an antisymmetric generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitClass {
    /// `f = 0`.
    Zero,
    /// One vanishing angle: `f` is already a wedge product.
    Simple,
    /// Equal angles: decomposition exists but is not unique.
    Isoclinic,
    /// Distinct nonzero angles: unique decomposition.
    Generic,
}

impl SplitClass {
    pub fn name(&self) -> &'static str {
        match self {
            SplitClass::Zero => "Zero",
            SplitClass::Simple => "Simple",
            SplitClass::Isoclinic => "Isoclinic",
            SplitClass::Generic => "Generic",
        }
    }
}

/// The trace invariants of an antisymmetric 4x4 or 5x5 matrix, clamped to
/// their provable nonnegative ranges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invariants45 {
    pub delta: f64,
    pub theta_plus_sq: f64,
    pub theta_minus_sq: f64,
}

impl Invariants45 {
    pub fn theta_plus(&self) -> f64 {
        self.theta_plus_sq.sqrt()
    }

    pub fn theta_minus(&self) -> f64 {
        self.theta_minus_sq.sqrt()
    }
}

/// Result of decomposing an antisymmetric 4x4 or 5x5 matrix. The parts are
/// present for every class except `Isoclinic`, where fabricating one of the
/// infinitely many valid pairs would not be reproducible.
#[derive(Debug, Clone)]
pub struct SpectralSplit {
    pub class: SplitClass,
    pub delta: f64,
    pub theta_plus: f64,
    pub theta_minus: f64,
    pub f_plus: Option<Matrix>,
    pub f_minus: Option<Matrix>,
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

/// Trace invariants of `f`, which is skew-symmetrized after a tolerance
/// check. Rounding can push Delta or the squared angles slightly negative;
/// both are clamped at zero, where exact arithmetic proves they belong.
pub fn invariants_of(f: &Matrix) -> Result<Invariants45, Error> {
    check_dim45("invariants_of", f.dim())?;
    f.validate_antisymmetric(crate::VALIDATION_TOL)?;
    Ok(invariants_raw(&f.skew_part()))
}

pub(crate) fn invariants_raw(f: &Matrix) -> Invariants45 {
    let f2 = *f * *f;
    let f4 = f2 * f2;
    let t2 = f2.trace();
    let t4 = f4.trace();
    let delta = (t4 - 0.25 * t2 * t2).max(0.0);
    let half_sqrt = 0.5 * delta.sqrt();
    Invariants45 {
        delta,
        theta_plus_sq: (-0.25 * t2 + half_sqrt).max(0.0),
        theta_minus_sq: (-0.25 * t2 - half_sqrt).max(0.0),
    }
}

/// Threshold policy around the exact cases Delta = 0 and theta_minus = 0.
pub fn classify(inv: &Invariants45, f_norm: f64) -> SplitClass {
    if f_norm <= TAU_ZERO {
        SplitClass::Zero
    } else if inv.theta_minus() <= TAU_ZERO * f_norm.max(1.0) {
        SplitClass::Simple
    } else if inv.delta.sqrt() <= TAU_ISO * (f_norm * f_norm).max(1.0) {
        SplitClass::Isoclinic
    } else {
        SplitClass::Generic
    }
}

/// Decomposes `f` into commuting wedge parts, classifying degeneracies.
pub fn orthogonal_decompose(f: &Matrix) -> Result<SpectralSplit, Error> {
    check_dim45("orthogonal_decompose", f.dim())?;
    f.validate_antisymmetric(crate::VALIDATION_TOL)?;
    let f = f.skew_part();
    let n = f.dim();
    let f_norm = f.half_trace_norm();
    let inv = invariants_raw(&f);
    let class = classify(&inv, f_norm);

    let split = match class {
        SplitClass::Zero => SpectralSplit {
            class,
            delta: inv.delta,
            theta_plus: 0.0,
            theta_minus: 0.0,
            f_plus: Some(Matrix::raw_zeros(n)),
            f_minus: Some(Matrix::raw_zeros(n)),
        },
        SplitClass::Simple => SpectralSplit {
            class,
            delta: inv.delta,
            theta_plus: inv.theta_plus(),
            theta_minus: 0.0,
            f_plus: Some(f),
            f_minus: Some(Matrix::raw_zeros(n)),
        },
        SplitClass::Isoclinic => SpectralSplit {
            class,
            delta: inv.delta,
            theta_plus: inv.theta_plus(),
            theta_minus: inv.theta_minus(),
            f_plus: None,
            f_minus: None,
        },
        SplitClass::Generic => {
            let inv_sqrt_delta = 1.0 / inv.delta.sqrt();
            // one cube shared between both parts keeps them exactly
            // complementary up to a single subtraction
            let f3 = f * f * f;
            let f_plus = -(f * inv.theta_minus_sq + f3) * inv_sqrt_delta;
            let f_minus = (f * inv.theta_plus_sq + f3) * inv_sqrt_delta;
            SpectralSplit {
                class,
                delta: inv.delta,
                theta_plus: inv.theta_plus(),
                theta_minus: inv.theta_minus(),
                f_plus: Some(f_plus),
                f_minus: Some(f_minus),
            }
        }
    };
    Ok(split)
}
