//! Small dense helpers on top of nalgebra's Schur and SVD.

use nalgebra::{DMatrix, DVector, Schur};

use crate::error::{Error, Result};
use crate::laurent::C64;

/// Eigenvalues of a general complex matrix from its complex Schur form.
///
/// The shifted QR iteration occasionally stalls on highly structured input
/// (real sector matrices with many repeated eigenvalues). A stalled attempt
/// is retried on the index-reversed similar matrix, then with a deflation
/// threshold of 1e-14.
pub fn complex_eigenvalues(m: &DMatrix<C64>) -> Result<Vec<C64>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let reversed = DMatrix::from_fn(n, n, |i, j| m[(n - 1 - i, n - 1 - j)]);
    let attempts = [(m, f64::EPSILON, 1000 * n), (&reversed, f64::EPSILON, 1000 * n), (m, 1e-14, 10_000 * n)];
    for (matrix, eps, max_iter) in attempts {
        if let Some(schur) = Schur::try_new(matrix.clone(), eps, max_iter) {
            return schur
                .eigenvalues()
                .map(|v| v.iter().copied().collect())
                .ok_or_else(|| Error::Numeric("Schur form is not triangular".into()));
        }
    }
    Err(Error::Numeric(format!("complex Schur iteration did not converge (order {n})")))
}

/// Full SVD with singular values sorted ascending. Rows are padded with zeros
/// so that the returned right singular vectors always span `C^ncols`.
/// Returns `(singular values, right singular vectors as columns)`; the first
/// `ncols - nrows` values are exact zeros when the input is wide.
pub fn right_singular_ascending(m: &DMatrix<C64>) -> (Vec<f64>, Vec<DVector<C64>>) {
    let cols = m.ncols();
    if cols == 0 {
        return (Vec::new(), Vec::new());
    }
    let rows = m.nrows().max(cols);
    let mut padded = DMatrix::<C64>::zeros(rows, cols);
    padded.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^H");
    let mut idx: Vec<usize> = (0..cols).collect();
    idx.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let values = idx.iter().map(|&i| svd.singular_values[i]).collect();
    let vectors = idx.iter().map(|&i| v_t.row(i).adjoint()).collect();
    (values, vectors)
}

/// Orthonormal basis of the null space of `m`, counting singular values at
/// or below `tol` as zero.
pub fn null_space(m: &DMatrix<C64>, tol: f64) -> Vec<DVector<C64>> {
    let (values, vectors) = right_singular_ascending(m);
    values
        .into_iter()
        .zip(vectors)
        .take_while(|(s, _)| *s <= tol)
        .map(|(_, v)| v)
        .collect()
}

/// Orthonormal basis of the span of `vectors` (thin SVD, rank cutoff `tol`).
pub fn orthonormalize(vectors: &[DVector<C64>], tol: f64) -> Vec<DVector<C64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = DMatrix::from_columns(vectors);
    let svd = m.svd(true, false);
    let u = svd.u.expect("requested U");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    idx.into_iter()
        .filter(|&i| svd.singular_values[i] > tol)
        .map(|i| u.column(i).into_owned())
        .collect()
}

/// `max_i |(M v - lambda v)_i|`.
pub fn residual_inf(m: &DMatrix<C64>, v: &DVector<C64>, lambda: f64) -> f64 {
    (m * v - v * C64::new(lambda, 0.0))
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
}
