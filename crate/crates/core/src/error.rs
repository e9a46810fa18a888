use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported dimension {0}: this library handles n in {{3, 4, 5}}")]
    UnsupportedDimension(usize),

    #[error("{op} requires dimension {expected}, got {got}")]
    WrongDimension {
        op: &'static str,
        expected: &'static str,
        got: usize,
    },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("non-finite component at index {index}")]
    NonFiniteComponent { index: usize },

    #[error("matrix is not antisymmetric: residual {residual:.3e} exceeds {tol:.3e}")]
    NotAntisymmetric { residual: f64, tol: f64 },

    #[error(
        "matrix is not a rotation: orthogonality residual {orthogonality:.3e}, \
         determinant {determinant:.12}"
    )]
    NotRotation { orthogonality: f64, determinant: f64 },

    #[error("axis must be a unit vector: |u| = {norm:.12}")]
    NonUnitAxis { norm: f64 },

    #[error("vectors do not span a two-plane: |u ^ v| = {wedge_norm:.3e}")]
    DegeneratePlane { wedge_norm: f64 },

    #[error("generator is not a simple (rank <= 2) wedge: cube residual {residual:.3e}")]
    NotSimpleGenerator { residual: f64 },

    #[error("generator is not isoclinic for the given angle: cube residual {residual:.3e}")]
    NotIsoclinicGenerator { residual: f64 },

    #[error("angle {theta} falls in the {region} region: use the dedicated branch")]
    SpecialAngle { theta: f64, region: &'static str },

    #[error("{op} called on a {got} input, expected {expected}")]
    WrongClass {
        op: &'static str,
        expected: &'static str,
        got: &'static str,
    },

    #[error("tolerance must be a positive finite number, got {0}")]
    InvalidTolerance(f64),
}
