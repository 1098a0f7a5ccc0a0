//! Creation and annihilation derivatives, and their iterates.
//!
//! `D⁺_ζ Ξ = [a(ζ), Ξ]`, `D⁻_ζ Ξ = −[a*(ζ), Ξ]`. The iterates bracket
//! against the operator itself:
//! `D^{k+}_ζ Ξ = [D^{(k−1)+}_ζ Ξ, Ξ]`, `D^{k−}_ζ Ξ = −[D^{(k−1)−}_ζ Ξ, Ξ]`.

use crate::error::{Error, Result};
use crate::fock::{FockMatrix, FockSpace};
use crate::linalg::commutator;
use crate::modespace::ModeVector;
use crate::wick::SymbolicOperator;
use crate::C64;

pub const DEFAULT_ORDER_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeSign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeSpec {
    pub sign: DerivativeSign,
    pub order: usize,
    pub direction: ModeVector,
}

impl DerivativeSpec {
    pub fn new(sign: DerivativeSign, order: usize, direction: ModeVector) -> Result<Self> {
        Self::with_cap(sign, order, direction, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(sign: DerivativeSign, order: usize, direction: ModeVector, cap: usize) -> Result<Self> {
        if order > cap {
            return Err(Error::DerivativeOrder { order, cap });
        }
        Ok(Self {
            sign,
            order,
            direction,
        })
    }
}

pub fn d_plus(zeta: &ModeVector, op: &SymbolicOperator) -> Result<SymbolicOperator> {
    SymbolicOperator::annihilation(zeta).bracket(op)
}

pub fn d_minus(zeta: &ModeVector, op: &SymbolicOperator) -> Result<SymbolicOperator> {
    Ok(SymbolicOperator::creation(zeta).bracket(op)?.scale(C64::new(-1.0, 0.0)))
}

pub fn iterated(spec: &DerivativeSpec, op: &SymbolicOperator) -> Result<SymbolicOperator> {
    let mut cur = match spec.sign {
        DerivativeSign::Plus => d_plus(&spec.direction, op)?,
        DerivativeSign::Minus => d_minus(&spec.direction, op)?,
    };
    for _ in 0..spec.order {
        cur = cur.bracket(op)?;
        if spec.sign == DerivativeSign::Minus {
            cur = cur.scale(C64::new(-1.0, 0.0));
        }
    }
    Ok(cur)
}

/// Matrix counterpart of [`d_plus`].
pub fn fock_d_plus(space: &FockSpace, zeta: &ModeVector, op: &FockMatrix) -> Result<FockMatrix> {
    Ok(commutator(&space.annihilation_op(zeta)?, op))
}

/// Matrix counterpart of [`d_minus`].
pub fn fock_d_minus(space: &FockSpace, zeta: &ModeVector, op: &FockMatrix) -> Result<FockMatrix> {
    Ok(-commutator(&space.creation_op(zeta)?, op))
}

pub fn fock_iterated(space: &FockSpace, spec: &DerivativeSpec, op: &FockMatrix) -> Result<FockMatrix> {
    let mut cur = match spec.sign {
        DerivativeSign::Plus => fock_d_plus(space, &spec.direction, op)?,
        DerivativeSign::Minus => fock_d_minus(space, &spec.direction, op)?,
    };
    for _ in 0..spec.order {
        cur = commutator(&cur, op);
        if spec.sign == DerivativeSign::Minus {
            cur = -cur;
        }
    }
    Ok(cur)
}
