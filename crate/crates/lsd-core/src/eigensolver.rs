//! Discrete spectra of 1D Hamiltonians -d^2/dx^2 + V(x) on a uniform grid.
//!
//! The operator is discretized with the second-order central-difference
//! Laplacian and Dirichlet walls at both grid ends, giving a symmetric
//! tridiagonal matrix. Eigenvalues come from bisection on Sturm-sequence
//! sign counts: the number of negative pivots of the LDL^T factorization of
//! T - lambda I equals the number of eigenvalues below lambda.

use crate::deformation::Spectrum;
use crate::error::{Error, Result};

/// Uniform grid on [x_min, x_max] with `n_points` interior points.
///
/// The spacing is h = (x_max - x_min) / (n_points + 1); interior points sit
/// at x_i = x_min + (i + 1) h. Both ends carry Dirichlet walls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !x_min.is_finite() || !x_max.is_finite() || x_min >= x_max {
            return Err(Error::InvalidGridBounds { x_min, x_max });
        }
        if n_points < 3 {
            return Err(Error::GridTooCoarse(n_points));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points as f64 + 1.0)
    }

    pub fn interior_point(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 1.0) * self.spacing()
    }
}

/// Symmetric tridiagonal matrix; only the main diagonal and one off-diagonal
/// are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    diagonal: Vec<f64>,
    off_diagonal: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() != diagonal.len() - 1 {
            return Err(Error::TridiagonalShape {
                dimension: diagonal.len(),
                expected: diagonal.len().saturating_sub(1),
                got: off_diagonal.len(),
            });
        }
        Ok(Self {
            diagonal,
            off_diagonal,
        })
    }

    pub fn dimension(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &[f64] {
        &self.off_diagonal
    }

    /// Gershgorin bounds: every eigenvalue lies in [lo, hi].
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.dimension();
        let mut lo = f64::MAX;
        let mut hi = f64::MIN;
        for i in 0..n {
            let left = if i > 0 {
                self.off_diagonal[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.off_diagonal[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }
}

/// Eigenvalues in ascending order plus a per-eigenvalue residual bound (the
/// half-width of the final bisection bracket).
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub eigenvalues: Vec<f64>,
    pub residual_bounds: Vec<f64>,
}

/// Builds the Dirichlet finite-difference matrix for -d^2/dx^2 + V(x):
/// diagonal_i = 2/h^2 + V(x_i), off_diagonal_i = -1/h^2.
pub fn discretize<V: Fn(f64) -> f64>(potential: V, grid: &Grid1D) -> Result<TridiagonalMatrix> {
    let n = grid.n_points();
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let mut diagonal = Vec::with_capacity(n);
    for i in 0..n {
        let x = grid.interior_point(i);
        let v = potential(x);
        if !v.is_finite() {
            return Err(Error::NonFinitePotential { x, index: i });
        }
        diagonal.push(2.0 * inv_h2 + v);
    }
    let off_diagonal = vec![-inv_h2; n - 1];
    TridiagonalMatrix::new(diagonal, off_diagonal)
}

/// Number of eigenvalues of `m` strictly below `lambda`, via the Sturm
/// sequence (negative pivots of the LDL^T factorization of m - lambda I).
pub fn sturm_count(m: &TridiagonalMatrix, lambda: f64) -> usize {
    let d = &m.diagonal;
    let e = &m.off_diagonal;
    // Pivot guard in the LAPACK style: relative to the largest off-diagonal
    // squared, so near-zero pivots cannot blow up the recurrence.
    let max_e_sq = e.iter().fold(0.0_f64, |acc, &v| acc.max(v * v));
    let pivmin = f64::MIN_POSITIVE * max_e_sq.max(1.0);

    let mut count = 0;
    let mut q = d[0] - lambda;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        let q_safe = if q.abs() < pivmin {
            if q < 0.0 {
                -pivmin
            } else {
                pivmin
            }
        } else {
            q
        };
        q = (d[i] - lambda) - e[i - 1] * e[i - 1] / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

const MAX_BISECTIONS: usize = 140;

/// The k lowest eigenvalues of a symmetric tridiagonal matrix by Sturm
/// bisection. Each bracket is bisected to relative machine precision (well
/// inside 1e-10 of the spectral range).
pub fn eigenvalues_tridiagonal(m: &TridiagonalMatrix, k: usize) -> Result<EigenResult> {
    let n = m.dimension();
    if k == 0 || k > n {
        return Err(Error::EigenCountOutOfRange {
            requested: k,
            dimension: n,
        });
    }
    let (mut lo, mut hi) = m.gershgorin_bounds();
    // Open the bracket slightly so strict counts behave at the extremes.
    let pad = 1e-12 * (hi - lo).abs().max(1.0);
    lo -= pad;
    hi += pad;

    let mut eigenvalues = Vec::with_capacity(k);
    let mut residual_bounds = Vec::with_capacity(k);
    let mut lower = lo;
    for index in 0..k {
        // Eigenvalue #index is the infimum of { lambda : count(lambda) > index }.
        let mut a = lower;
        let mut b = hi;
        for _ in 0..MAX_BISECTIONS {
            if (b - a) <= 2.0 * f64::EPSILON * a.abs().max(b.abs()) {
                break;
            }
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break; // interval no longer splittable in f64
            }
            if sturm_count(m, mid) <= index {
                a = mid;
            } else {
                b = mid;
            }
        }
        eigenvalues.push(0.5 * (a + b));
        residual_bounds.push(0.5 * (b - a));
        // The next eigenvalue cannot lie below this bracket's lower end.
        lower = a;
    }
    Ok(EigenResult {
        eigenvalues,
        residual_bounds,
    })
}

/// Discretizes, solves for the k lowest levels, applies `energy_shift`, and
/// packages the result as a positive `Spectrum`.
pub fn solve_spectrum<V: Fn(f64) -> f64>(
    potential: V,
    grid: &Grid1D,
    k: usize,
    energy_shift: f64,
) -> Result<Spectrum> {
    if !energy_shift.is_finite() {
        return Err(Error::NonFinite {
            name: "energy_shift",
            value: energy_shift,
        });
    }
    let matrix = discretize(potential, grid)?;
    let result = eigenvalues_tridiagonal(&matrix, k)?;
    let mut shifted = Vec::with_capacity(k);
    for (i, &ev) in result.eigenvalues.iter().enumerate() {
        let value = ev + energy_shift;
        if value <= 0.0 {
            return Err(Error::NonPositiveShiftedEigenvalue { index: i, value });
        }
        shifted.push(value);
    }
    Spectrum::from_energies(shifted)
}
