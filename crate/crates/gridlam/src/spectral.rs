//! Laplacian eigenvalues.
//!
//! The spectrum of a complete multipartite graph has a closed form; a cyclic
//! Jacobi eigensolver provides the independent cross-check and handles
//! arbitrary graphs. The matrices here are tiny dense symmetric ones
//! (N <= ~64), for which Jacobi is simple and provably convergent, so no
//! external numerics dependency is pulled in.

use thiserror::Error;

use crate::graphs::{Graph, PartitionSpec};

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("matrix is not symmetric: |a[{0}][{1}] - a[{1}][{0}]| = {2}")]
    NotSymmetric(usize, usize, f64),
    #[error("matrix is not square")]
    NotSquare,
    #[error("Jacobi iteration failed to converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("drawing is degenerate: all positions are zero")]
    ZeroDrawing,
    #[error("drawing is not centered: coordinate sums {0:?}")]
    NotCentered(Vec<f64>),
}

const SYMMETRY_TOL: f64 = 1e-12;
const OFF_DIAG_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

/// Non-decreasing Laplacian eigenvalues. `lambda_2` is the algebraic
/// connectivity; `lambda_N` the largest eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn lambda2(&self) -> f64 {
        self.eigenvalues[1]
    }

    pub fn lambda_max(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }
}

/// Closed-form Laplacian spectrum of `K_{n_1,...,n_r}` as exact integers:
/// one 0, then `N - n_i` with multiplicity `n_i - 1` for each class, then `N`
/// with multiplicity `r - 1`.
pub fn multipartite_eigenvalues_exact(spec: &PartitionSpec) -> Vec<i64> {
    let n = spec.total() as i64;
    let mut vals = Vec::with_capacity(spec.total());
    vals.push(0);
    for &ni in spec.class_sizes() {
        for _ in 1..ni {
            vals.push(n - ni as i64);
        }
    }
    for _ in 1..spec.num_classes() {
        vals.push(n);
    }
    vals.sort_unstable();
    vals
}

/// Closed-form multipartite spectrum as a [`Spectrum`] (values are small
/// integers, exactly representable).
pub fn multipartite_spectrum(spec: &PartitionSpec) -> Spectrum {
    Spectrum {
        eigenvalues: multipartite_eigenvalues_exact(spec)
            .into_iter()
            .map(|v| v as f64)
            .collect(),
    }
}

/// Eigenvalues of a dense symmetric matrix via cyclic Jacobi rotations,
/// sweeping until the off-diagonal Frobenius norm drops below 1e-10.
pub fn symmetric_eigenvalues(matrix: &[Vec<f64>]) -> Result<Spectrum, SpectralError> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(SpectralError::NotSquare);
    }
    for i in 0..n {
        for j in i + 1..n {
            let diff = (matrix[i][j] - matrix[j][i]).abs();
            if diff > SYMMETRY_TOL {
                return Err(SpectralError::NotSymmetric(i, j, diff));
            }
        }
    }
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut sweeps = 0;
    while off_diagonal_frobenius(&a) >= OFF_DIAG_TOL {
        if sweeps >= MAX_SWEEPS {
            return Err(SpectralError::NoConvergence(MAX_SWEEPS));
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eigenvalues.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(Spectrum { eigenvalues })
}

/// Eigenvalues of a graph Laplacian.
pub fn laplacian_spectrum(g: &Graph) -> Result<Spectrum, SpectralError> {
    let l: Vec<Vec<f64>> = g
        .laplacian()
        .into_iter()
        .map(|row| row.into_iter().map(|x| x as f64).collect())
        .collect();
    symmetric_eigenvalues(&l)
}

fn off_diagonal_frobenius(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i][j] * a[i][j];
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation zeroing `a[p][q]`, using the numerically stable
/// tangent formula.
fn rotate(a: &mut [Vec<f64>], p: usize, q: usize) {
    let apq = a[p][q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    let t = if theta >= 0.0 {
        1.0 / (theta + (1.0 + theta * theta).sqrt())
    } else {
        1.0 / (theta - (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = a.len();
    let app = a[p][p];
    let aqq = a[q][q];
    a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
    a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
    a[p][q] = 0.0;
    a[q][p] = 0.0;
    for i in 0..n {
        if i != p && i != q {
            let aip = a[i][p];
            let aiq = a[i][q];
            a[i][p] = c * aip - s * aiq;
            a[p][i] = a[i][p];
            a[i][q] = s * aip + c * aiq;
            a[q][i] = a[i][q];
        }
    }
}

/// Normalized drawing energy of real positions: sum of squared edge lengths
/// divided by the sum of squared norms.
pub fn rayleigh_energy(g: &Graph, positions: &[Vec<f64>]) -> Result<f64, SpectralError> {
    let denom: f64 = positions
        .iter()
        .map(|v| v.iter().map(|c| c * c).sum::<f64>())
        .sum();
    if denom == 0.0 {
        return Err(SpectralError::ZeroDrawing);
    }
    let num: f64 = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            positions[u]
                .iter()
                .zip(&positions[v])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
        })
        .sum();
    Ok(num / denom)
}

/// Checks the variational sandwich for a zero-mean drawing:
/// `lambda_2(G) - eps <= lambda(v) <= lambda_N(G) + eps` with `eps = 1e-9`.
pub fn embedding_bounds_check(g: &Graph, positions: &[Vec<f64>]) -> Result<bool, SpectralError> {
    let dim = positions.first().map_or(0, Vec::len);
    let mut sums = vec![0.0; dim];
    let mut scale: f64 = 1.0;
    for v in positions {
        for (s, c) in sums.iter_mut().zip(v) {
            *s += c;
            scale = scale.max(c.abs());
        }
    }
    if sums.iter().any(|s| s.abs() > 1e-6 * scale) {
        return Err(SpectralError::NotCentered(sums));
    }
    let lam = rayleigh_energy(g, positions)?;
    let spectrum = laplacian_spectrum(g)?;
    let eps = 1e-9;
    Ok(spectrum.lambda2() - eps <= lam && lam <= spectrum.lambda_max() + eps)
}
