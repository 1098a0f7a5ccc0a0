//! The d-mode one-particle space and its kernel calculus.
//!
//! A real orthonormal basis is fixed once and for all, so the canonical
//! pairing is the unconjugated dot product and a kernel `κ` with
//! `⟨κ, η⊗ξ⟩ = ηᵀκξ` has the same matrix as the operator it represents.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::numerical_rank;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeConfig {
    pub d: usize,
    pub tolerance: f64,
    pub orbit_cap: usize,
}

impl ModeConfig {
    pub fn new(d: usize, tolerance: f64, orbit_cap: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidConfig("mode count d must be at least 1".into()));
        }
        if !(tolerance >= 0.0) {
            return Err(Error::InvalidConfig("tolerance must be nonnegative".into()));
        }
        if orbit_cap == 0 {
            return Err(Error::InvalidConfig("orbit_cap must be at least 1".into()));
        }
        Ok(Self {
            d,
            tolerance,
            orbit_cap,
        })
    }
}

/// A vector of the complexified one-particle space.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeVector(pub DVector<C64>);

impl ModeVector {
    pub fn new(coords: Vec<C64>) -> Self {
        Self(DVector::from_vec(coords))
    }

    pub fn real(coords: &[f64]) -> Self {
        Self::new(coords.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zeros(d: usize) -> Self {
        Self(DVector::zeros(d))
    }

    /// The `i`-th basis vector (0-based).
    pub fn basis(d: usize, i: usize) -> Self {
        let mut v = DVector::zeros(d);
        v[i] = C64::new(1.0, 0.0);
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &DVector<C64> {
        &self.0
    }

    pub fn conjugate(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn scale(&self, c: C64) -> Self {
        Self(&self.0 * c)
    }

    /// Hermitian norm `‖ξ‖`.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.0 - &other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// A two-slot kernel, equivalently an operator on the one-particle space.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelMatrix(pub DMatrix<C64>);

impl KernelMatrix {
    pub fn new(entries: DMatrix<C64>) -> Self {
        Self(entries)
    }

    pub fn zeros(d: usize) -> Self {
        Self(DMatrix::zeros(d, d))
    }

    /// The kernel `τ` of the identity operator.
    pub fn identity(d: usize) -> Self {
        Self(DMatrix::identity(d, d))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let d = rows.len();
        Self(DMatrix::from_fn(d, d, |i, j| C64::new(rows[i][j], 0.0)))
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let d = rows.len();
        Self(DMatrix::from_fn(d, rows.first().map_or(0, |r| r.len()), |i, j| rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn conjugate(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self(&self.0 * c)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    pub fn symmetric_part(&self) -> Self {
        Self((&self.0 + self.0.transpose()) * C64::new(0.5, 0.0))
    }

    pub fn skew_part(&self) -> Self {
        Self((&self.0 - self.0.transpose()) * C64::new(0.5, 0.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.0 - &other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-entry deviation from `κᵀ = -κ`.
    pub fn skew_deviation(&self) -> f64 {
        (&self.0 + self.0.transpose()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn symmetry_deviation(&self) -> f64 {
        (&self.0 - self.0.transpose()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_skew(&self, tol: f64) -> bool {
        self.0.is_square() && self.skew_deviation() <= tol
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.0.is_square() && self.symmetry_deviation() <= tol
    }

    pub fn apply(&self, v: &ModeVector) -> Result<ModeVector> {
        check_dim(self.dim(), v.len())?;
        Ok(ModeVector(&self.0 * &v.0))
    }

    /// `S^k`, with `S^0 = Id`.
    pub fn pow(&self, k: usize) -> Self {
        let mut out = DMatrix::identity(self.dim(), self.dim());
        for _ in 0..k {
            out = &self.0 * out;
        }
        Self(out)
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `⟨ξ, η⟩ = Σ ξᵢηᵢ`, no conjugation.
pub fn bilinear_pair(xi: &ModeVector, eta: &ModeVector) -> Result<C64> {
    check_dim(xi.len(), eta.len())?;
    Ok(xi.0.iter().zip(eta.0.iter()).map(|(a, b)| a * b).sum())
}

/// `(f₂ * f₁)(s,t) = Σ_u f₂(s,u) f₁(u,t)`.
pub fn convolve(f2: &KernelMatrix, f1: &KernelMatrix) -> Result<KernelMatrix> {
    check_dim(f2.0.ncols(), f1.0.nrows())?;
    check_dim(f2.0.nrows(), f1.0.ncols())?;
    Ok(KernelMatrix(&f2.0 * &f1.0))
}

/// `[ζ, Sζ, …, S^kmax ζ]`; always `kmax + 1` vectors.
pub fn orbit(s: &KernelMatrix, zeta: &ModeVector, kmax: usize) -> Result<Vec<ModeVector>> {
    check_dim(s.dim(), zeta.len())?;
    let mut out = Vec::with_capacity(kmax + 1);
    let mut cur = zeta.clone();
    out.push(cur.clone());
    for _ in 0..kmax {
        cur = s.apply(&cur)?;
        out.push(cur.clone());
    }
    Ok(out)
}

/// Numerical rank of the orbit vectors taken as columns.
pub fn orbit_span_dim(s: &KernelMatrix, zeta: &ModeVector, kmax: usize, tol: f64) -> Result<usize> {
    let vs = orbit(s, zeta, kmax)?;
    Ok(vectors_rank(&vs, tol))
}

pub fn vectors_rank(vs: &[ModeVector], tol: f64) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let d = vs[0].len();
    let m = DMatrix::from_fn(d, vs.len(), |i, j| vs[j].0[i]);
    numerical_rank(&m, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn rot() -> KernelMatrix {
        KernelMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]])
    }

    #[test]
    fn pairing_examples() {
        let e1 = ModeVector::real(&[1.0, 0.0]);
        assert_eq!(bilinear_pair(&e1, &e1).unwrap(), c(1.0, 0.0));
        let iso = ModeVector::new(vec![c(1.0, 0.0), c(0.0, -1.0)]);
        assert!(bilinear_pair(&iso, &iso).unwrap().norm() < 1e-15);
        let x = ModeVector::real(&[1.0, 2.0]);
        let y = ModeVector::real(&[3.0, -1.0]);
        assert_eq!(bilinear_pair(&x, &y).unwrap(), c(1.0, 0.0));
        assert!(matches!(
            bilinear_pair(&x, &ModeVector::zeros(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn convolution_examples() {
        let k = rot();
        assert_eq!(convolve(&KernelMatrix::identity(2), &k).unwrap(), k);
        assert_eq!(convolve(&k, &KernelMatrix::zeros(2)).unwrap(), KernelMatrix::zeros(2));
        let sq = convolve(&k, &k).unwrap();
        assert_eq!(sq, KernelMatrix::from_real_rows(&[&[-1.0, 0.0], &[0.0, -1.0]]));
        assert!(convolve(&k, &KernelMatrix::zeros(3)).is_err());
    }

    #[test]
    fn skew_predicates() {
        assert!(rot().is_skew(0.0));
        let ki = KernelMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(0.0, 0.0)]]);
        assert!(ki.is_skew(0.0));
        assert!(!ki.is_symmetric(0.0));
        assert!(KernelMatrix::identity(3).is_symmetric(0.0));
        assert_eq!(rot().transpose().transpose(), rot());
    }

    #[test]
    fn orbit_examples() {
        let e1 = ModeVector::real(&[1.0, 0.0]);
        let o = orbit(&rot(), &e1, 2).unwrap();
        assert_eq!(o, vec![e1.clone(), ModeVector::real(&[0.0, -1.0]), ModeVector::real(&[-1.0, 0.0])]);
        let o0 = orbit(&KernelMatrix::zeros(2), &e1, 2).unwrap();
        assert_eq!(o0[1], ModeVector::zeros(2));
        assert_eq!(o0[2], ModeVector::zeros(2));
        assert_eq!(o0.len(), 3);

        // Sζ = ζ for ζ = (1, -i)
        let s = KernelMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(0.0, 0.0)]]);
        let z = ModeVector::new(vec![c(1.0, 0.0), c(0.0, -1.0)]);
        let o = orbit(&s, &z, 1).unwrap();
        assert!(o[1].max_abs_diff(&z) < 1e-15);
        assert_eq!(orbit_span_dim(&s, &z, 1, 1e-10).unwrap(), 1);
    }

    #[test]
    fn orbit_span_examples() {
        let e1 = ModeVector::real(&[1.0, 0.0]);
        assert_eq!(orbit_span_dim(&rot(), &e1, 1, 1e-10).unwrap(), 2);
        assert_eq!(orbit_span_dim(&rot(), &e1, 5, 1e-10).unwrap(), 2);
        assert_eq!(orbit_span_dim(&KernelMatrix::zeros(2), &e1, 3, 1e-10).unwrap(), 1);
    }

    #[test]
    fn config_validation() {
        assert!(ModeConfig::new(0, 1e-10, 3).is_err());
        assert!(ModeConfig::new(2, -1.0, 3).is_err());
        assert!(ModeConfig::new(2, 1e-10, 0).is_err());
        assert!(ModeConfig::new(2, 0.0, 1).is_ok());
    }
}
