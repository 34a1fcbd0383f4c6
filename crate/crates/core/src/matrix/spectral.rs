use serde::Serialize;

use super::{mat_vec, transpose, AdjacencyView, MatrixError, ValueVector};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub eigenvalue: f64,
    /// Non-negative, unit 1-norm.
    pub vector: ValueVector,
    pub iterations: usize,
    /// Max-norm of `M·v - λ·v` for the operator actually iterated.
    pub residual: f64,
    pub damped: bool,
    pub converged: bool,
    /// Undamped iteration on a matrix with sinks, or an iterate that
    /// collapsed to zero. The result is then not a ranking.
    pub degenerate: bool,
}

/// Power iteration for the dominant eigenvector of `Aᵀ`, starting from the
/// all-ones vector and renormalizing to unit 1-norm each step.
///
/// With `damping = Some(d)` the operator is `d·Aᵀ + (1-d)/N` in every
/// cell, which is strictly positive and always converges. Without damping
/// the plain `Aᵀ` is used; mass that reaches a sink leaves the system and
/// the result is flagged degenerate. Failing to reach `tol` within
/// `max_iter` steps is not an error: the last iterate is returned with
/// `converged = false`.
pub fn principal_eigenvector(
    a: &AdjacencyView,
    damping: Option<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<SpectralResult, MatrixError> {
    let n = a.len();
    if n == 0 {
        return Err(MatrixError::Empty);
    }
    if !(tol > 0.0) {
        return Err(MatrixError::InvalidTolerance);
    }
    if let Some(d) = damping {
        if !(d > 0.0 && d <= 1.0) {
            return Err(MatrixError::InvalidDamping(d));
        }
    }
    if a.entries.iter().flatten().all(|&x| x == 0.0) {
        return Err(MatrixError::ZeroMatrix);
    }

    let mut op = transpose(&a.entries);
    if let Some(d) = damping {
        let teleport = (1.0 - d) / n as f64;
        for x in op.iter_mut().flatten() {
            *x = d * *x + teleport;
        }
    }

    let mut degenerate = damping.is_none() && !a.zero_rows().is_empty();
    let mut v = vec![1.0 / n as f64; n];
    let mut iterations = 0;
    let (lambda, residual) = loop {
        let w = mat_vec(&op, &v);
        let lambda: f64 = w.iter().sum();
        if lambda <= 0.0 {
            // v lies in the kernel, so (v, 0) is an exact eigenpair.
            degenerate = true;
            break (0.0, max_diff(&w, &v, 0.0));
        }
        let residual = max_diff(&w, &v, lambda);
        if residual < tol || iterations == max_iter {
            break (lambda, residual);
        }
        iterations += 1;
        v = w.into_iter().map(|x| x / lambda).collect();
    };

    Ok(SpectralResult {
        eigenvalue: lambda,
        vector: ValueVector { node_order: a.node_order.clone(), values: v },
        iterations,
        residual,
        damped: damping.is_some(),
        converged: residual < tol,
        degenerate,
    })
}

fn max_diff(w: &[f64], v: &[f64], lambda: f64) -> f64 {
    w.iter().zip(v).map(|(x, y)| (x - lambda * y).abs()).fold(0.0, f64::max)
}
