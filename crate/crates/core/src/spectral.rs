//! Numerical checks of the line-graph spectral bounds.
//!
//! For any hypergraph, the smallest adjacency eigenvalue of its line graph
//! is at least `-k_max`, because `A + k_max·I = RᵀR + C` is a Gram matrix
//! plus a nonnegative diagonal. For linear `k`-uniform hypergraphs with
//! `L > N`, `-k` is an eigenvalue of multiplicity at least `L - N`.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incidence::IncidenceMatrix;
use crate::linegraph::{line_graph, LineGraph};
use crate::Hypergraph;

/// Largest dimension handled by the dense symmetric eigensolver.
pub const DENSE_EIGEN_LIMIT: usize = 2000;
/// Default tolerance for bound and multiplicity checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Relative residual at which the iterative solver accepts a Ritz value.
pub const LANCZOS_TOLERANCE: f64 = 1e-8;

const LANCZOS_MAX_BASIS: usize = 200;
const LANCZOS_START_SEED: u64 = 0x5eed;

/// Outcome of [`verify_bound`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub lambda_min: f64,
    pub k_max: usize,
    pub bound_satisfied: bool,
    /// Number of eigenvalues at `-k`; present only for linear `k`-uniform
    /// inputs solved densely.
    pub multiplicity_at_minus_k: Option<usize>,
    pub tolerance: f64,
}

impl SpectralReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SpectralOptions {
    pub tolerance: f64,
    /// Above this many line-graph nodes only `λ_min` is computed, iteratively.
    pub dense_limit: usize,
    pub lanczos_tolerance: f64,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            dense_limit: DENSE_EIGEN_LIMIT,
            lanczos_tolerance: LANCZOS_TOLERANCE,
        }
    }
}

/// All eigenvalues of a symmetric matrix, ascending.
pub fn eigenvalues(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    eigenvalues_with_limit(a, DENSE_EIGEN_LIMIT)
}

pub fn eigenvalues_with_limit(a: &DMatrix<f64>, limit: usize) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::InvalidGraph(format!(
            "matrix is {}x{}, not square",
            a.nrows(),
            a.ncols()
        )));
    }
    let n = a.nrows();
    if n > limit {
        return Err(Error::TooLarge { dim: n, limit });
    }
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (a[(i, j)], a[(j, i)]);
            if (x - y).abs() > 1e-12 * x.abs().max(y.abs()).max(1.0) {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut values: Vec<f64> = SymmetricEigen::new(a.clone()).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Smallest eigenvalue of a graph's weighted adjacency matrix by Lanczos
/// iteration with full reorthogonalization and explicit restarts.
///
/// Stops when the Ritz residual falls below `tol·max(1, |θ|)`; fails after
/// `10·n` matrix-vector products.
pub fn smallest_eigenvalue_sparse(g: &LineGraph, tol: f64) -> Result<f64> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::InvalidGraph("graph has no nodes".into()));
    }
    let matvec = |x: &[f64], y: &mut [f64]| {
        y.fill(0.0);
        for &(a, b, t) in g.edges() {
            let (a, b, t) = (a as usize, b as usize, t as f64);
            y[a] += t * x[b];
            y[b] += t * x[a];
        }
    };
    lanczos_smallest(n, matvec, tol, 10 * n.max(1))
}

pub(crate) fn lanczos_smallest(
    n: usize,
    matvec: impl Fn(&[f64], &mut [f64]),
    tol: f64,
    max_matvecs: usize,
) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(LANCZOS_START_SEED);
    let mut start: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    normalize(&mut start);

    let max_basis = n.min(LANCZOS_MAX_BASIS);
    let mut matvecs = 0;
    let mut w = vec![0.0; n];
    loop {
        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        loop {
            let m = basis.len() - 1;
            matvec(&basis[m], &mut w);
            matvecs += 1;
            let alpha = dot(&w, &basis[m]);
            for _ in 0..2 {
                for v in &basis {
                    let c = dot(&w, v);
                    axpy(-c, v, &mut w);
                }
            }
            let beta = dot(&w, &w).sqrt();
            alphas.push(alpha);

            let full = basis.len() == max_basis;
            let scale = alphas.iter().chain(&betas).fold(1.0f64, |s, x| s.max(x.abs()));
            let breakdown = beta <= 1e-12 * scale;
            let check = breakdown || full || matvecs >= max_matvecs || alphas.len().is_multiple_of(10);
            if check {
                let (theta, ritz) = smallest_ritz_pair(&alphas, &betas);
                let residual = beta * ritz[ritz.len() - 1].abs();
                if breakdown || residual <= tol * theta.abs().max(1.0) {
                    return Ok(theta);
                }
                if matvecs >= max_matvecs {
                    return Err(Error::NoConvergence { iterations: matvecs });
                }
                if full {
                    let mut next = vec![0.0; n];
                    for (coef, v) in ritz.iter().zip(&basis) {
                        axpy(*coef, v, &mut next);
                    }
                    normalize(&mut next);
                    start = next;
                    break;
                }
            }
            betas.push(beta);
            let mut next = w.clone();
            next.iter_mut().for_each(|x| *x /= beta);
            basis.push(next);
        }
    }
}

fn smallest_ritz_pair(alphas: &[f64], betas: &[f64]) -> (f64, Vec<f64>) {
    let m = alphas.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alphas[i];
        if i + 1 < m {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let (idx, theta) = eig
        .eigenvalues
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty tridiagonal");
    (theta, eig.eigenvectors.column(idx).iter().copied().collect())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn normalize(v: &mut [f64]) {
    let norm = dot(v, v).sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
}

fn to_f64(m: &DMatrix<i64>) -> DMatrix<f64> {
    m.map(|x| x as f64)
}

/// Checks `λ_min(A_l(H)) ≥ -k_max` with default options.
pub fn verify_bound(h: &Hypergraph, tol: f64) -> Result<SpectralReport> {
    verify_bound_with(
        h,
        &SpectralOptions {
            tolerance: tol,
            ..SpectralOptions::default()
        },
    )
}

pub fn verify_bound_with(h: &Hypergraph, opts: &SpectralOptions) -> Result<SpectralReport> {
    let k_max = h.k_max()?;
    let g = line_graph(h);
    let tol = opts.tolerance;
    let (lambda_min, multiplicity) = if g.node_count() <= opts.dense_limit {
        let values = eigenvalues_with_limit(&to_f64(&g.to_dense()), opts.dense_limit)?;
        let multiplicity = match h.uniform_depth() {
            Some(k) if h.is_linear() => {
                let target = -(k as f64);
                let window = tol * (k as f64).max(1.0);
                Some(values.iter().filter(|&&v| (v - target).abs() <= window).count())
            }
            _ => None,
        };
        (values[0], multiplicity)
    } else {
        (smallest_eigenvalue_sparse(&g, opts.lanczos_tolerance)?, None)
    };
    Ok(SpectralReport {
        lambda_min,
        k_max,
        bound_satisfied: lambda_min >= -(k_max as f64) - tol,
        multiplicity_at_minus_k: multiplicity,
        tolerance: tol,
    })
}

/// Guaranteed multiplicity of `-k` for a linear `k`-uniform hypergraph:
/// `L - N` when positive, otherwise 0. `None` for other hypergraphs.
pub fn guaranteed_multiplicity(h: &Hypergraph) -> Option<usize> {
    h.uniform_depth()
        .filter(|_| h.is_linear())
        .map(|_| h.link_count().saturating_sub(h.node_count()))
}

/// Checks that `RᵀR` is positive semidefinite and that `RᵀR` and `RRᵀ`
/// share their nonzero eigenvalues.
pub fn gram_psd_check(r: &IncidenceMatrix, tol: f64) -> Result<bool> {
    let d = to_f64(&r.to_dense());
    let left = eigenvalues(&(d.transpose() * &d))?;
    let right = eigenvalues(&(&d * d.transpose()))?;
    let top = left.last().copied().unwrap_or(0.0).abs().max(1.0);
    if left.first().is_some_and(|&v| v < -tol * top) {
        return Ok(false);
    }
    let nonzero = |v: &[f64]| -> Vec<f64> { v.iter().copied().filter(|x| x.abs() > tol * top).collect() };
    let (a, b) = (nonzero(&left), nonzero(&right));
    Ok(a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= tol * x.abs().max(1.0)))
}
