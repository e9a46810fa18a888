//! Independent reference implementations and reproducible input generation.
//!
//! `series_exp` is the ground truth the closed-form exponentials are checked
//! against: plain scaling-and-squaring on the Taylor series, tuned for
//! auditability rather than speed. The generators are all driven by
//! SplitMix64 so that a seed pins down the exact same inputs on every
//! platform and every run.

use std::f64::consts::PI;

use crate::error::Error;
use crate::smallmat::{check_dim, Matrix, Vector};
use crate::wedge::wedge;

/// Number of Taylor terms summed after scaling the argument below 1/2.
/// The first dropped term is bounded by 0.5^21 / 21! ~ 9e-27, far below
/// double precision.
const SERIES_TERMS: usize = 20;

/// Seed for the crate's pseudorandom generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngSeed(pub u64);

/// SplitMix64 (Steele, Lea, Flood 2014), the generator behind every random
/// suite in this crate. State advances by the golden-gamma constant
/// 0x9E3779B97F4A7C15 and each output is finalized with two xor-shift
/// multiplies (0xBF58476D1CE4E5B9, 0x94D049BB133111EB). Identical seeds give
/// identical streams on every platform.
///
/// A stream is a single mutable cursor, so keep each instance on one thread;
/// for parallel corpora, split child seeds off a master with `derive_seed`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: RngSeed) -> Self {
        SplitMix64 { state: seed.0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from [0, 1) with 53 significant bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Splits off a child seed; the stream of derived seeds is itself
    /// deterministic.
    pub fn derive_seed(&mut self) -> RngSeed {
        RngSeed(self.next_u64())
    }
}

/// Matrix exponential by scaling and squaring of the Taylor series.
///
/// The argument is halved until its max-abs row sum is at most 1/2, the
/// series is summed to a fixed 20 terms, and the result is squared back up.
/// Relative accuracy is around 1e-13 for arguments with norm up to 4*pi.
pub fn series_exp(a: &Matrix) -> Matrix {
    let norm = a.max_row_sum();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = *a * 0.5f64.powi(squarings);

    let mut sum = Matrix::raw_identity(a.dim());
    let mut term = Matrix::raw_identity(a.dim());
    for k in 1..=SERIES_TERMS {
        term = (term * scaled) * (1.0 / k as f64);
        sum = sum + term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// Antisymmetric matrix with independent entries uniform in
/// [-scale, scale] above the diagonal, drawn row-major.
pub fn random_antisym(n: usize, scale: f64, seed: RngSeed) -> Result<Matrix, Error> {
    check_dim(n)?;
    let mut rng = SplitMix64::new(seed);
    let mut m = Matrix::raw_zeros(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.uniform(-scale, scale);
            m.set(i, j, v);
            m.set(j, i, -v);
        }
    }
    Ok(m)
}

/// A random rotation: the series exponential of a random antisymmetric
/// matrix with entry scale pi.
pub fn random_rotation(n: usize, seed: RngSeed) -> Result<Matrix, Error> {
    Ok(series_exp(&random_antisym(n, PI, seed)?))
}

/// A pair `(a * q1 ^ q2, b * q3 ^ q4)` built on the first four columns of a
/// random orthogonal matrix; the two wedges annihilate each other by
/// construction.
pub fn random_orthogonal_wedge_pair(
    n: usize,
    a: f64,
    b: f64,
    seed: RngSeed,
) -> Result<(Matrix, Matrix), Error> {
    if !(4..=5).contains(&n) {
        return Err(Error::WrongDimension {
            op: "random_orthogonal_wedge_pair",
            expected: "4 or 5",
            got: n,
        });
    }
    let mut rng = SplitMix64::new(seed);
    let q = random_orthogonal(n, &mut rng);
    let f_plus = wedge(&q.column(0), &q.column(1))? * a;
    let f_minus = wedge(&q.column(2), &q.column(3))? * b;
    Ok((f_plus, f_minus))
}

/// Random orthogonal matrix: modified Gram-Schmidt (run twice per column)
/// over a matrix of sums of uniforms, redrawing in the rare case a pivot
/// degenerates.
pub(crate) fn random_orthogonal(n: usize, rng: &mut SplitMix64) -> Matrix {
    'redraw: loop {
        let mut cols: Vec<Vector> = (0..n)
            .map(|_| {
                let comps: Vec<f64> = (0..n)
                    .map(|_| {
                        rng.uniform(-1.0, 1.0) + rng.uniform(-1.0, 1.0) + rng.uniform(-1.0, 1.0)
                    })
                    .collect();
                Vector::new(&comps).expect("finite components")
            })
            .collect();

        for j in 0..n {
            let mut v = cols[j];
            for _pass in 0..2 {
                for q in cols.iter().take(j) {
                    v = v - *q * q.dot(&v);
                }
            }
            let norm = v.norm();
            if norm < 0.05 {
                continue 'redraw;
            }
            cols[j] = v * (1.0 / norm);
        }

        let mut q = Matrix::raw_zeros(n);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                q.set(i, j, col[i]);
            }
        }
        return q;
    }
}
