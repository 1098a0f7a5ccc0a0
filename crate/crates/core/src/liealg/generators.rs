//! Named generator sets.

use crate::error::{Error, Result};
use crate::modespace::{orbit, orbit_span_dim, KernelMatrix, ModeConfig, ModeVector};
use crate::tensor::KernelTensor;
use crate::wick::{Signature, SymbolicOperator};

use super::formal::FormalOperator;

#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub label: String,
    pub op: FormalOperator,
}

impl Generator {
    pub fn new(label: impl Into<String>, op: SymbolicOperator) -> Self {
        Self {
            label: label.into(),
            op: FormalOperator::from_symbolic(op),
        }
    }

    pub fn formal(label: impl Into<String>, op: FormalOperator) -> Self {
        Self {
            label: label.into(),
            op,
        }
    }

    pub fn realized(&self) -> &SymbolicOperator {
        self.op.realized()
    }
}

pub fn realized_ops(gens: &[Generator]) -> Vec<SymbolicOperator> {
    gens.iter().map(|g| g.realized().clone()).collect()
}

pub fn formal_ops(gens: &[Generator]) -> Vec<FormalOperator> {
    gens.iter().map(|g| g.op.clone()).collect()
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch { expected, got });
    }
    Ok(())
}

/// `Id, a(ζ), a*(ζ), N, Δ_G`.
pub fn base_generators(zeta: &ModeVector) -> Vec<Generator> {
    let d = zeta.len();
    vec![
        Generator::new("Id", SymbolicOperator::identity(d)),
        Generator::new("a(ζ)", SymbolicOperator::annihilation(zeta)),
        Generator::new("a*(ζ)", SymbolicOperator::creation(zeta)),
        Generator::new("N", SymbolicOperator::number(d)),
        Generator::new("Δ_G", SymbolicOperator::gross_laplacian(d)),
    ]
}

/// `N, Ξ_{0,m_1}(κ_1), …, Ξ_{0,m_n}(κ_n)` with `m_i` the kernel orders.
pub fn pure_annihilation_generators(d: usize, kernels: &[KernelTensor]) -> Result<Vec<Generator>> {
    let mut out = vec![Generator::new("N", SymbolicOperator::number(d))];
    for (i, k) in kernels.iter().enumerate() {
        check_dim(d, k.dim())?;
        let sig = Signature::new(0, k.order());
        out.push(Generator::formal(format!("Ξ_{{0,{}}}(κ_{})", k.order(), i + 1), FormalOperator::from_raw(sig, k)?));
    }
    Ok(out)
}

/// Orbit vectors `S^k ζ`, kept while the span keeps growing (at most
/// `orbit_cap + 1` of them).
pub fn orbit_prefix(s: &KernelMatrix, zeta: &ModeVector, cfg: &ModeConfig) -> Result<Vec<ModeVector>> {
    let vs = orbit(s, zeta, cfg.orbit_cap)?;
    let mut prev = 0;
    let mut out = Vec::new();
    for (k, v) in vs.into_iter().enumerate() {
        let dim = orbit_span_dim(s, zeta, k, cfg.tolerance)?;
        if dim == prev {
            break;
        }
        prev = dim;
        out.push(v);
    }
    Ok(out)
}

/// `Id, a(S^kζ), a*(S^kζ), N, Λ(S), Δ_G, Δ_G(S)` for skew `S`.
pub fn standard_generators(s: &KernelMatrix, zeta: &ModeVector, cfg: &ModeConfig) -> Result<Vec<Generator>> {
    check_dim(cfg.d, s.dim())?;
    check_dim(cfg.d, zeta.len())?;
    let dev = s.skew_deviation();
    if dev > cfg.tolerance {
        return Err(Error::NotSkew { deviation: dev });
    }
    let d = cfg.d;
    let orb = orbit_prefix(s, zeta, cfg)?;
    let mut out = vec![Generator::new("Id", SymbolicOperator::identity(d))];
    for (k, v) in orb.iter().enumerate() {
        out.push(Generator::new(format!("a(S^{k}ζ)"), SymbolicOperator::annihilation(v)));
    }
    for (k, v) in orb.iter().enumerate() {
        out.push(Generator::new(format!("a*(S^{k}ζ)"), SymbolicOperator::creation(v)));
    }
    out.push(Generator::new("N", SymbolicOperator::number(d)));
    out.push(Generator::new("Λ(S)", SymbolicOperator::conservation(s)));
    out.push(Generator::new("Δ_G", SymbolicOperator::gross_laplacian(d)));
    out.push(Generator::formal("Δ_G(S)", FormalOperator::generalized_gross(s)));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintResidual {
    pub name: &'static str,
    pub residual: f64,
}

/// Residuals of the fixed-point hypotheses: the four equations
/// `KL = L̄K = K`, `K̄K = L`, `conj(Kζ) = ζ`, `Lζ = ζ`, then symmetry of `K`
/// and self-adjointness of `L`.
pub fn fixed_point_constraints(k: &KernelMatrix, l: &KernelMatrix, zeta: &ModeVector) -> Result<Vec<ConstraintResidual>> {
    check_dim(k.dim(), l.dim())?;
    check_dim(k.dim(), zeta.len())?;
    let kl = KernelMatrix(&k.0 * &l.0);
    let lbar_k = KernelMatrix(l.conjugate().0 * &k.0);
    let kbar_k = KernelMatrix(k.conjugate().0 * &k.0);
    let kz = k.apply(zeta)?.conjugate();
    let lz = l.apply(zeta)?;
    Ok(vec![
        ConstraintResidual {
            name: "KL = conj(L)K = K",
            residual: kl.max_abs_diff(k).max(lbar_k.max_abs_diff(k)),
        },
        ConstraintResidual {
            name: "conj(K)K = L",
            residual: kbar_k.max_abs_diff(l),
        },
        ConstraintResidual {
            name: "conj(Kζ) = ζ",
            residual: kz.max_abs_diff(zeta),
        },
        ConstraintResidual {
            name: "Lζ = ζ",
            residual: lz.max_abs_diff(zeta),
        },
        ConstraintResidual {
            name: "K symmetric",
            residual: k.symmetry_deviation(),
        },
        ConstraintResidual {
            name: "L self-adjoint",
            residual: l.max_abs_diff(&l.adjoint()),
        },
    ])
}

/// `Id, a(ζ), a*(ζ), Λ(L), Δ_G(K), Δ*_G(K)`; the first violated hypothesis
/// is reported as an error.
pub fn fixed_point_generators(k: &KernelMatrix, l: &KernelMatrix, zeta: &ModeVector, tol: f64) -> Result<Vec<Generator>> {
    for c in fixed_point_constraints(k, l, zeta)? {
        if c.residual > tol {
            return Err(Error::Constraint {
                constraint: c.name.to_string(),
                residual: c.residual,
            });
        }
    }
    let d = k.dim();
    let dg = FormalOperator::generalized_gross(k);
    Ok(vec![
        Generator::new("Id", SymbolicOperator::identity(d)),
        Generator::new("a(ζ)", SymbolicOperator::annihilation(zeta)),
        Generator::new("a*(ζ)", SymbolicOperator::creation(zeta)),
        Generator::new("Λ(L)", SymbolicOperator::conservation(l)),
        Generator::formal("Δ*_G(K)", dg.adjoint()),
        Generator::formal("Δ_G(K)", dg),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_truncation() {
        let s = KernelMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        let cfg = ModeConfig::new(2, 1e-10, 6).unwrap();
        let z = ModeVector::real(&[1.0, 0.0]);
        assert_eq!(orbit_prefix(&s, &z, &cfg).unwrap().len(), 2);
        let g = standard_generators(&s, &z, &cfg).unwrap();
        assert_eq!(g.len(), 9);
        assert!(standard_generators(&KernelMatrix::identity(2), &z, &cfg).is_err());
    }

    #[test]
    fn fixed_point_hypotheses() {
        let k = KernelMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let z = ModeVector::real(&[1.0, 0.0]);
        let res = fixed_point_constraints(&k, &k, &z).unwrap();
        assert!(res.iter().all(|c| c.residual == 0.0));
        assert_eq!(fixed_point_generators(&k, &k, &z, 1e-12).unwrap().len(), 6);
        let bad = ModeVector::real(&[0.0, 1.0]);
        assert!(matches!(
            fixed_point_generators(&k, &k, &bad, 1e-12),
            Err(Error::Constraint { .. })
        ));
    }
}
