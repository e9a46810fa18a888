//! Python bindings: matrices cross the boundary as nested lists of floats,
//! logs and decompositions come back as dicts keyed like the CLI output.
//!
//! Build with `cargo build -p rotexp-py --release` and import the produced
//! cdylib as `rotexp_py` (see python/smoke_test.py).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rotexp::decomp::orthogonal_decompose;
use rotexp::logmap::{self, LogOutcome};
use rotexp::oracle::{self, RngSeed};
use rotexp::smallmat::{Matrix, Vector};
use rotexp::so3::{self, Log3Outcome};
use rotexp::wedge;

fn value_err(err: rotexp::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn to_matrix(rows: &[Vec<f64>]) -> PyResult<Matrix> {
    Matrix::from_rows(rows).map_err(value_err)
}

fn to_vector(components: &[f64]) -> PyResult<Vector> {
    Vector::new(components).map_err(value_err)
}

/// Closed-form exponential of an antisymmetric matrix (n = 3, 4, or 5).
#[pyfunction]
fn exp(f: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
    let f = to_matrix(&f)?;
    Ok(rotexp::expmap::exp_son(&f).map_err(value_err)?.rows())
}

/// Exponential of a rank-2 (single-plane) generator.
#[pyfunction]
fn exp_simple(f: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
    let f = to_matrix(&f)?;
    Ok(rotexp::expmap::exp_simple(&f).map_err(value_err)?.rows())
}

/// Reference exponential by scaling and squaring of the Taylor series.
#[pyfunction]
fn series_exp(m: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
    Ok(oracle::series_exp(&to_matrix(&m)?).rows())
}

/// Logarithm of a rotation. Returns a dict with the branch tag, a
/// `generator` whose exponential reproduces the input, and the branch's
/// own payload (angles, parts, projections).
#[pyfunction]
fn log<'py>(py: Python<'py>, r: Vec<Vec<f64>>) -> PyResult<Bound<'py, PyDict>> {
    let r = to_matrix(&r)?;
    let out = PyDict::new(py);
    if r.dim() == 3 {
        let outcome = so3::log_so3(&r).map_err(value_err)?;
        out.set_item("branch", outcome.branch_name())?;
        out.set_item("generator", outcome.materialize().rows())?;
        match &outcome {
            Log3Outcome::Identity => {}
            Log3Outcome::Generic { axis_angle, .. } => {
                out.set_item("theta", axis_angle.theta)?;
                out.set_item("axis", axis_angle.axis.as_slice().to_vec())?;
            }
            Log3Outcome::Pi { proj, axis } => {
                out.set_item("projection", proj.rows())?;
                out.set_item("axis", axis.as_slice().to_vec())?;
            }
        }
        return Ok(out);
    }

    let angles = logmap::spectral_angles(&r).map_err(value_err)?;
    let outcome = logmap::log45(&r).map_err(value_err)?;
    out.set_item("branch", outcome.branch_name())?;
    out.set_item("generator", logmap::materialize(&outcome).rows())?;
    out.set_item("delta", angles.delta)?;
    out.set_item("y_plus", angles.y_plus)?;
    out.set_item("y_minus", angles.y_minus)?;
    out.set_item("theta_plus", angles.theta_plus)?;
    out.set_item("theta_minus", angles.theta_minus)?;
    match &outcome {
        LogOutcome::Generic { f_plus, f_minus, .. } => {
            out.set_item("f_plus", f_plus.rows())?;
            out.set_item("f_minus", f_minus.rows())?;
        }
        LogOutcome::Simple { theta, .. } => {
            out.set_item("theta", *theta)?;
        }
        LogOutcome::SimplePi { proj2 } => {
            out.set_item("projection", proj2.rows())?;
        }
        LogOutcome::FourPlanePi { proj4 } => {
            out.set_item("projection", proj4.rows())?;
        }
        LogOutcome::MixedPi { f_plus, proj_minus } => {
            out.set_item("f_plus", f_plus.rows())?;
            out.set_item("projection", proj_minus.rows())?;
        }
        LogOutcome::Identity { .. } | LogOutcome::Isoclinic { .. } => {}
    }
    Ok(out)
}

/// Orthogonal decomposition of a 4x4 or 5x5 antisymmetric matrix into
/// commuting wedge parts.
#[pyfunction]
fn decompose<'py>(py: Python<'py>, f: Vec<Vec<f64>>) -> PyResult<Bound<'py, PyDict>> {
    let f = to_matrix(&f)?;
    let split = orthogonal_decompose(&f).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("class", split.class.name())?;
    out.set_item("delta", split.delta)?;
    out.set_item("theta_plus", split.theta_plus)?;
    out.set_item("theta_minus", split.theta_minus)?;
    if let Some(f_plus) = &split.f_plus {
        out.set_item("f_plus", f_plus.rows())?;
    }
    if let Some(f_minus) = &split.f_minus {
        out.set_item("f_minus", f_minus.rows())?;
    }
    Ok(out)
}

/// Spectral data of a 4x4 or 5x5 rotation: discriminant, block-angle
/// cosines, block angles.
#[pyfunction]
fn spectral_angles<'py>(py: Python<'py>, r: Vec<Vec<f64>>) -> PyResult<Bound<'py, PyDict>> {
    let angles = logmap::spectral_angles(&to_matrix(&r)?).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("delta", angles.delta)?;
    out.set_item("y_plus", angles.y_plus)?;
    out.set_item("y_minus", angles.y_minus)?;
    out.set_item("theta_plus", angles.theta_plus)?;
    out.set_item("theta_minus", angles.theta_minus)?;
    Ok(out)
}

/// Rotation by `theta` about the unit 3-vector `axis`.
#[pyfunction]
fn rotation3(theta: f64, axis: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
    Ok(so3::rotation3(theta, &to_vector(&axis)?)
        .map_err(value_err)?
        .rows())
}

/// Outer product u (x) v with entries u_i v_j.
#[pyfunction]
fn outer(u: Vec<f64>, v: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
    Ok(wedge::outer(&to_vector(&u)?, &to_vector(&v)?)
        .map_err(value_err)?
        .rows())
}

/// Wedge product u ^ v = u (x) v - v (x) u.
#[pyfunction]
fn wedge_product(u: Vec<f64>, v: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
    Ok(wedge::wedge(&to_vector(&u)?, &to_vector(&v)?)
        .map_err(value_err)?
        .rows())
}

/// `|u ^ v| = sqrt(|u|^2 |v|^2 - (u . v)^2)`.
#[pyfunction]
fn wedge_norm(u: Vec<f64>, v: Vec<f64>) -> PyResult<f64> {
    wedge::wedge_norm(&to_vector(&u)?, &to_vector(&v)?).map_err(value_err)
}

/// The matrix norm `sqrt(tr(A A^t) / 2)`.
#[pyfunction]
fn half_trace_norm(m: Vec<Vec<f64>>) -> PyResult<f64> {
    Ok(to_matrix(&m)?.half_trace_norm())
}

/// Validity residuals and kind classification of a matrix.
#[pyfunction]
fn check<'py>(py: Python<'py>, m: Vec<Vec<f64>>) -> PyResult<Bound<'py, PyDict>> {
    let m = to_matrix(&m)?;
    let out = PyDict::new(py);
    out.set_item("antisymmetry_residual", m.antisymmetry_residual())?;
    out.set_item("orthogonality_residual", m.orthogonality_residual())?;
    out.set_item("determinant", m.det())?;
    out.set_item(
        "is_antisymmetric",
        m.validate_antisymmetric(rotexp::VALIDATION_TOL).is_ok(),
    )?;
    out.set_item("is_rotation", m.validate_rotation(rotexp::VALIDATION_TOL).is_ok())?;
    Ok(out)
}

/// Seeded random rotation, reproducible across platforms.
#[pyfunction]
fn random_rotation(n: usize, seed: u64) -> PyResult<Vec<Vec<f64>>> {
    Ok(oracle::random_rotation(n, RngSeed(seed))
        .map_err(value_err)?
        .rows())
}

/// Seeded random antisymmetric matrix with entries in [-scale, scale].
#[pyfunction]
fn random_antisym(n: usize, scale: f64, seed: u64) -> PyResult<Vec<Vec<f64>>> {
    Ok(oracle::random_antisym(n, scale, RngSeed(seed))
        .map_err(value_err)?
        .rows())
}

#[pymodule]
fn rotexp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(exp, m)?)?;
    m.add_function(wrap_pyfunction!(exp_simple, m)?)?;
    m.add_function(wrap_pyfunction!(series_exp, m)?)?;
    m.add_function(wrap_pyfunction!(log, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_angles, m)?)?;
    m.add_function(wrap_pyfunction!(rotation3, m)?)?;
    m.add_function(wrap_pyfunction!(outer, m)?)?;
    m.add_function(wrap_pyfunction!(wedge_product, m)?)?;
    m.add_function(wrap_pyfunction!(wedge_norm, m)?)?;
    m.add_function(wrap_pyfunction!(half_trace_norm, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(random_rotation, m)?)?;
    m.add_function(wrap_pyfunction!(random_antisym, m)?)?;
    m.add("VALIDATION_TOL", rotexp::VALIDATION_TOL)?;
    Ok(())
}
