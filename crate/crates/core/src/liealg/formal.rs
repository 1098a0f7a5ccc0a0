//! Operators carrying the skew parts of two-slot pure kernels as extra
//! "phantom" data.
//!
//! `Ξ_{0,2}(λ)` only sees the symmetric part of `λ`, so `Δ_G(S)` vanishes
//! for skew `S`. The formal algebra keeps `skew(λ)` around and brackets it
//! with the quadratic family by the natural action on bilinear forms, plus
//! the term `skew(2σκ)` that the literal kernel formula assigns to the
//! symmetric part `σ`:
//!
//! `[Ξ_{0,2}(σ + π), Ξ_{1,1}(κ)] ↦ skew(2σκ) + πκ + κᵀπ`
//! `[Ξ_{1,1}(κ), Ξ_{2,0}(σ + π)] ↦ skew(2κσ) + κπ + πκᵀ`
//!
//! The second rule is the adjoint mirror of the first. Phantoms bracket to
//! zero against everything else. These rules reproduce the tabulated
//! relations for `Δ_G(S)` but are not guaranteed to satisfy Jacobi; the
//! structure-constant Jacobi residual reports how far off they are.

use crate::error::Result;
use crate::modespace::KernelMatrix;
use crate::tensor::KernelTensor;
use crate::wick::{Signature, SymbolicOperator};
use crate::C64;

const LOWER: Signature = Signature::new(0, 2);
const UPPER: Signature = Signature::new(2, 0);
const QUAD: Signature = Signature::new(1, 1);

#[derive(Debug, Clone, PartialEq)]
pub struct FormalOperator {
    op: SymbolicOperator,
    lower: KernelMatrix,
    upper: KernelMatrix,
}

impl FormalOperator {
    pub fn from_symbolic(op: SymbolicOperator) -> Self {
        let d = op.dim();
        Self {
            op,
            lower: KernelMatrix::zeros(d),
            upper: KernelMatrix::zeros(d),
        }
    }

    /// `lower`/`upper` are taken as given; callers pass skew matrices.
    pub fn with_phantoms(op: SymbolicOperator, lower: KernelMatrix, upper: KernelMatrix) -> Self {
        Self { op, lower, upper }
    }

    /// `Ξ_{l,m}(κ)` keeping the skew part of a two-slot pure kernel.
    pub fn from_raw(sig: Signature, kernel: &KernelTensor) -> Result<Self> {
        let mut out = Self::from_symbolic(SymbolicOperator::make(sig, kernel)?);
        if sig == LOWER {
            out.lower = kernel.to_matrix().skew_part();
        } else if sig == UPPER {
            out.upper = kernel.to_matrix().skew_part();
        }
        Ok(out)
    }

    /// `Δ_G(S)` with the skew part of `S` retained.
    pub fn generalized_gross(s: &KernelMatrix) -> Self {
        Self::from_raw(LOWER, &KernelTensor::from_matrix(s)).expect("order-2 signature")
    }

    pub fn realized(&self) -> &SymbolicOperator {
        &self.op
    }

    pub fn into_realized(self) -> SymbolicOperator {
        self.op
    }

    pub fn lower_phantom(&self) -> &KernelMatrix {
        &self.lower
    }

    pub fn upper_phantom(&self) -> &KernelMatrix {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn has_phantom(&self) -> bool {
        self.lower.max_abs() > 0.0 || self.upper.max_abs() > 0.0
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            op: self.op.scale(c),
            lower: self.lower.scale(c),
            upper: self.upper.scale(c),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            op: self.op.add(&other.op)?,
            lower: self.lower.add(&other.lower),
            upper: self.upper.add(&other.upper),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// `Ξ_{0,2}(λ)† = Ξ_{2,0}(λ†)` and `skew(λ†) = −conj(skew λ)`.
    pub fn adjoint(&self) -> Self {
        let neg = C64::new(-1.0, 0.0);
        Self {
            op: self.op.adjoint(),
            lower: self.upper.conjugate().scale(neg),
            upper: self.lower.conjugate().scale(neg),
        }
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        let op = self.op.bracket(&other.op)?;
        let lower = lower_action(self, other).sub(&lower_action(other, self));
        let upper = upper_action(self, other).sub(&upper_action(other, self));
        Ok(Self { op, lower, upper })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.op
            .max_abs_diff(&other.op)
            .max(self.lower.max_abs_diff(&other.lower))
            .max(self.upper.max_abs_diff(&other.upper))
    }
}

fn skew_of(m: &nalgebra::DMatrix<C64>) -> KernelMatrix {
    KernelMatrix(m.clone()).skew_part()
}

/// Phantom part of `[a_{(0,2)}, b_{(1,1)}]`.
fn lower_action(a: &FormalOperator, b: &FormalOperator) -> KernelMatrix {
    let sigma = a.op.matrix_term(LOWER).0;
    let pi = &a.lower.0;
    let kappa = b.op.matrix_term(QUAD).0;
    let two = C64::new(2.0, 0.0);
    let m = skew_of(&(&sigma * &kappa * two)).0 + pi * &kappa + kappa.transpose() * pi;
    KernelMatrix(m)
}

/// Phantom part of `[a_{(1,1)}, b_{(2,0)}]`.
fn upper_action(a: &FormalOperator, b: &FormalOperator) -> KernelMatrix {
    let kappa = a.op.matrix_term(QUAD).0;
    let sigma = b.op.matrix_term(UPPER).0;
    let pi = &b.upper.0;
    let two = C64::new(2.0, 0.0);
    let m = skew_of(&(&kappa * &sigma * two)).0 + &kappa * pi + pi * kappa.transpose();
    KernelMatrix(m)
}
