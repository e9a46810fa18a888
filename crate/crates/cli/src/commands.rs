//! The five subcommands. Each consumes a parsed matrix document, runs the
//! library, and produces a `ResultDocument`; input problems surface as
//! `CliError::InvalidInput` (exit 1) and breached internal checks as
//! `CliError::Internal` (exit 2).

use std::f64::consts::PI;
use std::time::Instant;

use rotexp::decomp::{classify, invariants_of, orthogonal_decompose};
use rotexp::expmap::exp_son;
use rotexp::logmap::{log45_with_tol, materialize, spectral_angles, LogOutcome};
use rotexp::oracle::{random_antisym, series_exp, RngSeed, SplitMix64};
use rotexp::smallmat::Matrix;
use rotexp::so3::{log_so3_with_tol, Log3Outcome};

use crate::docs::{BenchReport, CliError, MatrixDocument, MatrixKind, ResultDocument};

/// A rotation produced internally must at least pass this; failing it means
/// the closed forms misbehaved, not the caller.
const INTERNAL_ROTATION_TOL: f64 = 1e-8;
/// A materialized log must reproduce its rotation this well.
const ROUND_TRIP_LIMIT: f64 = 1e-6;

pub fn cmd_exp(doc: &MatrixDocument, tol: f64) -> Result<ResultDocument, CliError> {
    let m = doc.to_matrix()?;
    let mut result = ResultDocument::new("exp");
    result.input = Some(doc.clone());
    result.diagnostics.antisymmetry_residual = Some(m.antisymmetry_residual());

    match doc.kind {
        Some(MatrixKind::Rotation) => {
            return Err(CliError::InvalidInput(
                "exp expects an antisymmetric generator, not a rotation".into(),
            ))
        }
        Some(MatrixKind::General) => {
            let warning = format!(
                "input tagged general: using its antisymmetric part \
                 (residual {:.3e})",
                m.antisymmetry_residual()
            );
            eprintln!("warning: {warning}");
            result.diagnostics.warnings.push(warning);
        }
        Some(MatrixKind::Antisymmetric) | None => {
            m.validate_antisymmetric(tol).map_err(CliError::invalid)?;
        }
    }
    let f = m.skew_part();

    let rotation = exp_son(&f)?;
    let ortho = rotation.orthogonality_residual();
    result.diagnostics.orthogonality_residual = Some(ortho);
    if ortho > INTERNAL_ROTATION_TOL || (rotation.det() - 1.0).abs() > INTERNAL_ROTATION_TOL {
        return Err(CliError::Internal(format!(
            "exp produced an invalid rotation: orthogonality {ortho:.3e}, det {}",
            rotation.det()
        )));
    }

    if f.dim() == 3 {
        let theta = f.half_trace_norm();
        result.outputs.class = Some(if theta <= rotexp::so3::TAU_ZERO {
            "Zero".into()
        } else {
            "Simple".into()
        });
        result.outputs.theta_plus = Some(theta);
    } else {
        let inv = invariants_of(&f)?;
        let class = classify(&inv, f.half_trace_norm());
        result.outputs.class = Some(class.name().into());
        result.outputs.theta_plus = Some(inv.theta_plus());
        result.outputs.theta_minus = Some(inv.theta_minus());
        result.outputs.delta = Some(inv.delta);
    }
    result.outputs.rotation = Some(MatrixDocument::from_matrix(
        &rotation,
        Some(MatrixKind::Rotation),
    ));
    Ok(result)
}

pub fn cmd_log(doc: &MatrixDocument, tol: f64) -> Result<ResultDocument, CliError> {
    let m = doc.to_matrix()?;
    m.validate_rotation(tol).map_err(CliError::invalid)?;

    let mut result = ResultDocument::new("log");
    result.input = Some(doc.clone());
    result.diagnostics.orthogonality_residual = Some(m.orthogonality_residual());

    let generator = if m.dim() == 3 {
        let outcome = log_so3_with_tol(&m, tol)?;
        match &outcome {
            Log3Outcome::Identity => {
                result.outputs.class = Some("Identity".into());
            }
            Log3Outcome::Generic { axis_angle, .. } => {
                result.outputs.class = Some("Generic".into());
                result.outputs.theta = Some(axis_angle.theta);
                result.outputs.axis = Some(axis_angle.axis.as_slice().to_vec());
            }
            Log3Outcome::Pi { axis, .. } => {
                // report the rotation-plane projection, consistent with the
                // higher-dimensional pi branches
                result.outputs.class = Some("SimplePi".into());
                result.outputs.theta = Some(PI);
                result.outputs.axis = Some(axis.as_slice().to_vec());
                let proj2 = (Matrix::identity(3).unwrap() - m) * 0.5;
                result.outputs.projection =
                    Some(MatrixDocument::from_matrix(&proj2, None));
            }
        }
        outcome.materialize()
    } else {
        let ang = spectral_angles(&m)?;
        let outcome = log45_with_tol(&m, tol)?;
        result.outputs.class = Some(outcome.branch_name().into());
        result.outputs.delta = Some(ang.delta);
        result.outputs.y_plus = Some(ang.y_plus);
        result.outputs.y_minus = Some(ang.y_minus);
        result.outputs.theta_plus = Some(ang.theta_plus);
        result.outputs.theta_minus = Some(ang.theta_minus);
        match &outcome {
            LogOutcome::Generic { f_plus, f_minus, .. } => {
                result.outputs.f_plus = Some(MatrixDocument::from_matrix(
                    f_plus,
                    Some(MatrixKind::Antisymmetric),
                ));
                result.outputs.f_minus = Some(MatrixDocument::from_matrix(
                    f_minus,
                    Some(MatrixKind::Antisymmetric),
                ));
            }
            LogOutcome::Simple { theta, .. } => {
                result.outputs.theta = Some(*theta);
            }
            LogOutcome::SimplePi { proj2 } => {
                result.outputs.projection = Some(MatrixDocument::from_matrix(proj2, None));
            }
            LogOutcome::FourPlanePi { proj4 } => {
                result.outputs.projection = Some(MatrixDocument::from_matrix(proj4, None));
            }
            LogOutcome::MixedPi { f_plus, proj_minus } => {
                result.outputs.f_plus = Some(MatrixDocument::from_matrix(
                    f_plus,
                    Some(MatrixKind::Antisymmetric),
                ));
                result.outputs.projection =
                    Some(MatrixDocument::from_matrix(proj_minus, None));
            }
            LogOutcome::Identity { .. } | LogOutcome::Isoclinic { .. } => {}
        }
        materialize(&outcome)
    };

    let back = exp_son(&generator)?;
    let residual = back.max_abs_diff(&m);
    result.diagnostics.round_trip_residual = Some(residual);
    result.outputs.generator = Some(MatrixDocument::from_matrix(
        &generator,
        Some(MatrixKind::Antisymmetric),
    ));
    if residual > ROUND_TRIP_LIMIT {
        return Err(CliError::Internal(format!(
            "round-trip residual {residual:.3e} exceeds {ROUND_TRIP_LIMIT:.0e}"
        )));
    }
    Ok(result)
}

pub fn cmd_decompose(doc: &MatrixDocument, tol: f64) -> Result<ResultDocument, CliError> {
    let m = doc.to_matrix()?;
    if m.dim() == 3 {
        return Err(CliError::InvalidInput(
            "decompose requires n in {4, 5}".into(),
        ));
    }
    if doc.kind == Some(MatrixKind::Rotation) {
        return Err(CliError::InvalidInput(
            "decompose expects an antisymmetric generator, not a rotation".into(),
        ));
    }
    m.validate_antisymmetric(tol).map_err(CliError::invalid)?;
    let f = m.skew_part();

    let split = orthogonal_decompose(&f)?;
    let mut result = ResultDocument::new("decompose");
    result.input = Some(doc.clone());
    result.diagnostics.antisymmetry_residual = Some(m.antisymmetry_residual());
    result.outputs.class = Some(split.class.name().into());
    result.outputs.delta = Some(split.delta);
    result.outputs.theta_plus = Some(split.theta_plus);
    result.outputs.theta_minus = Some(split.theta_minus);
    if let (Some(f_plus), Some(f_minus)) = (&split.f_plus, &split.f_minus) {
        result.diagnostics.reconstruction_residual =
            Some((*f_plus + *f_minus).max_abs_diff(&f));
        result.diagnostics.annihilation_residual = Some((*f_plus * *f_minus).max_abs());
        result.outputs.f_plus = Some(MatrixDocument::from_matrix(
            f_plus,
            Some(MatrixKind::Antisymmetric),
        ));
        result.outputs.f_minus = Some(MatrixDocument::from_matrix(
            f_minus,
            Some(MatrixKind::Antisymmetric),
        ));
    }
    Ok(result)
}

pub fn cmd_check(doc: &MatrixDocument, tol: f64) -> Result<ResultDocument, CliError> {
    let m = doc.to_matrix()?;
    let mut result = ResultDocument::new("check");
    result.input = Some(doc.clone());
    result.diagnostics.antisymmetry_residual = Some(m.antisymmetry_residual());
    result.diagnostics.orthogonality_residual = Some(m.orthogonality_residual());
    result.outputs.determinant = Some(m.det());

    let mut qualifies = Vec::new();
    if m.validate_antisymmetric(tol).is_ok() {
        qualifies.push("antisymmetric".to_string());
    }
    if m.validate_rotation(tol).is_ok() {
        qualifies.push("rotation".to_string());
    }
    result.outputs.qualifies_as = Some(qualifies);
    Ok(result)
}

fn quantiles(mut samples: Vec<f64>) -> (f64, f64) {
    samples.sort_by(|a, b| a.partial_cmp(b).expect("finite timings"));
    let median = samples[samples.len() / 2];
    let p90 = samples[(samples.len() * 9 / 10).min(samples.len() - 1)];
    (median, p90)
}

pub fn cmd_bench(dim: usize, trials: usize, seed: u64) -> Result<ResultDocument, CliError> {
    if !(3..=5).contains(&dim) {
        return Err(CliError::InvalidInput(format!(
            "bench requires --dim in {{3, 4, 5}}, got {dim}"
        )));
    }
    if trials == 0 {
        return Err(CliError::InvalidInput("bench requires --trials >= 1".into()));
    }

    // derive one generator per trial from the master seed, rescaled to a
    // norm drawn from (0, 2 pi); identical seeds reproduce the exact corpus
    let mut master = SplitMix64::new(RngSeed(seed));
    let inputs: Vec<Matrix> = (0..trials)
        .map(|_| {
            let target = master.uniform(0.0, 2.0 * PI);
            let f = random_antisym(dim, 1.0, master.derive_seed())?;
            let norm = f.half_trace_norm();
            Ok(if norm > 0.0 { f * (target / norm) } else { f })
        })
        .collect::<Result<_, rotexp::Error>>()?;

    let mut closed_ns = Vec::with_capacity(trials);
    let mut series_ns = Vec::with_capacity(trials);
    let mut log_ns = Vec::with_capacity(trials);
    let mut max_exp_residual: f64 = 0.0;
    let mut max_roundtrip_residual: f64 = 0.0;

    for f in &inputs {
        let t0 = Instant::now();
        let closed = exp_son(f)?;
        closed_ns.push(t0.elapsed().as_nanos() as f64);

        let t1 = Instant::now();
        let series = series_exp(f);
        series_ns.push(t1.elapsed().as_nanos() as f64);

        max_exp_residual = max_exp_residual.max(closed.max_abs_diff(&series));

        let t2 = Instant::now();
        let generator = if dim == 3 {
            log_so3_with_tol(&closed, INTERNAL_ROTATION_TOL)?.materialize()
        } else {
            materialize(&log45_with_tol(&closed, INTERNAL_ROTATION_TOL)?)
        };
        log_ns.push(t2.elapsed().as_nanos() as f64);

        let back = exp_son(&generator)?;
        max_roundtrip_residual = max_roundtrip_residual.max(back.max_abs_diff(&closed));
    }

    let (exp_closed_median_ns, exp_closed_p90_ns) = quantiles(closed_ns);
    let (exp_series_median_ns, exp_series_p90_ns) = quantiles(series_ns);
    let (log_materialize_median_ns, log_materialize_p90_ns) = quantiles(log_ns);

    let mut result = ResultDocument::new("bench");
    if exp_closed_median_ns > exp_series_median_ns {
        let note = format!(
            "closed-form exp median latency ({exp_closed_median_ns} ns) exceeds \
             the series oracle median ({exp_series_median_ns} ns)"
        );
        eprintln!("note: {note}");
        result.diagnostics.notes.push(note);
    }
    result.outputs.bench = Some(BenchReport {
        dim,
        trials,
        seed,
        exp_closed_median_ns,
        exp_closed_p90_ns,
        exp_series_median_ns,
        exp_series_p90_ns,
        log_materialize_median_ns,
        log_materialize_p90_ns,
        max_exp_residual,
        max_roundtrip_residual,
    });
    Ok(result)
}
