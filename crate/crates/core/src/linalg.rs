//! Small dense linear-algebra helpers shared across modules.

use nalgebra::DMatrix;

use crate::C64;

/// Numerical rank: number of singular values above `tol * σ_max`.
pub fn numerical_rank(m: &DMatrix<C64>, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0_f64, f64::max);
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * smax).count()
}

/// Orthonormal basis (as columns) of the column space of `m`.
///
/// Singular values at or below `tol · max(σ_max, scale)` are discarded;
/// `scale` is an absolute floor so that a matrix of pure rounding noise
/// yields an empty basis instead of a normalized-up one.
pub fn column_basis(m: &DMatrix<C64>, tol: f64, scale: f64) -> DMatrix<C64> {
    let rows = m.nrows();
    if rows == 0 || m.ncols() == 0 {
        return DMatrix::zeros(rows, 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let cut = tol * smax.max(scale);
    let keep: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > cut)
        .map(|(i, _)| i)
        .collect();
    let mut out = DMatrix::zeros(rows, keep.len());
    for (c, &i) in keep.iter().enumerate() {
        out.set_column(c, &u.column(i));
    }
    out
}

/// Largest absolute entry.
pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn commutator(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    a * b - b * a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_rank_one() {
        let m = DMatrix::from_fn(3, 3, |i, j| C64::new((i + 1) as f64 * (j + 2) as f64, 0.0));
        assert_eq!(numerical_rank(&m, 1e-10), 1);
        assert_eq!(numerical_rank(&DMatrix::<C64>::zeros(2, 2), 1e-10), 0);
    }

    #[test]
    fn column_basis_is_orthonormal() {
        let m = DMatrix::from_fn(4, 3, |i, j| C64::new((i * j) as f64, (i + j) as f64));
        let q = column_basis(&m, 1e-10, 1.0);
        let g = q.adjoint() * &q;
        let id = DMatrix::<C64>::identity(q.ncols(), q.ncols());
        assert!(max_abs(&(g - id)) < 1e-12);
    }
}
