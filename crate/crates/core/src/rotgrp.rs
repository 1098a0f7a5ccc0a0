//! One-parameter rotation subgroups `g_θ = exp(θX)` for skew `X`, and
//! their second quantization.

use crate::error::{Error, Result};
use crate::fock::{FockMatrix, FockSpace};
use crate::linalg::{commutator, max_abs};
use crate::modespace::KernelMatrix;
use crate::tensor::KernelTensor;
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct FlowSpec {
    pub generator: KernelMatrix,
    pub thetas: Vec<f64>,
    pub steps: usize,
}

impl FlowSpec {
    pub fn new(generator: KernelMatrix, thetas: Vec<f64>, steps: usize, tol: f64) -> Result<Self> {
        require_skew(&generator, tol)?;
        if thetas.is_empty() {
            return Err(Error::InvalidConfig("theta grid is empty".into()));
        }
        Ok(Self {
            generator,
            thetas,
            steps,
        })
    }
}

fn require_skew(x: &KernelMatrix, tol: f64) -> Result<()> {
    let dev = x.skew_deviation();
    if dev > tol {
        return Err(Error::NotSkew { deviation: dev });
    }
    Ok(())
}

/// `exp(θX)`.
pub fn one_particle_flow(x: &KernelMatrix, theta: f64, tol: f64) -> Result<KernelMatrix> {
    require_skew(x, tol)?;
    Ok(KernelMatrix((&x.0 * C64::new(theta, 0.0)).exp()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorResiduals {
    /// `‖dΓ(X) − 2 Ξ_{1,1}(X/2)‖_max`
    pub kernel_identity: f64,
    /// `max_θ ‖Γ(e^{θX}) − e^{θ dΓ(X)}‖_max`
    pub flow_exponential: f64,
}

pub fn generator_identity_check(space: &FockSpace, x: &KernelMatrix, thetas: &[f64]) -> Result<GeneratorResiduals> {
    let tol = space.config().mode.tolerance;
    require_skew(x, tol)?;
    let dgamma = space.differential_second_quantization(x)?;
    let half = x.scale(C64::new(0.5, 0.0));
    let xi11 = space.build_xi(1, 1, &KernelTensor::from_matrix(&half))?;
    let kernel_identity = max_abs(&(&dgamma - xi11 * C64::new(2.0, 0.0)));
    let mut flow_exponential: f64 = 0.0;
    for &theta in thetas {
        let g = one_particle_flow(x, theta, tol)?;
        let lifted = space.second_quantization(&g)?;
        let exp = (&dgamma * C64::new(theta, 0.0)).exp();
        flow_exponential = flow_exponential.max(max_abs(&(lifted - exp)));
    }
    Ok(GeneratorResiduals {
        kernel_identity,
        flow_exponential,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceResiduals {
    /// `‖[Γ(g), Ξ]‖_max`
    pub commutator: f64,
    /// `‖Γ(g)⁻¹ Ξ Γ(g) − Ξ‖_max`
    pub conjugation: f64,
    /// `‖Γ(g) Ξ Γ(g) − Ξ‖_max`, the condition read literally.
    pub literal: f64,
}

impl InvarianceResiduals {
    /// The invariance verdict uses the conjugation form; for
    /// sector-preserving `Ξ` this coincides with the commutator form.
    pub fn residual(&self) -> f64 {
        self.conjugation
    }
}

/// Rotation invariance of `Ξ` under `g_θ = exp(θX)`. `Γ(g)` is block
/// diagonal over sectors, so no guard band is needed.
pub fn rotation_invariance_check(
    space: &FockSpace,
    op: &FockMatrix,
    x: &KernelMatrix,
    theta: f64,
) -> Result<InvarianceResiduals> {
    let tol = space.config().mode.tolerance;
    let g = one_particle_flow(x, theta, tol)?;
    let g_inv = one_particle_flow(x, -theta, tol)?;
    let lift = space.second_quantization(&g)?;
    let lift_inv = space.second_quantization(&g_inv)?;
    Ok(InvarianceResiduals {
        commutator: max_abs(&commutator(&lift, op)),
        conjugation: max_abs(&(&lift_inv * op * &lift - op)),
        literal: max_abs(&(&lift * op * &lift - op)),
    })
}

/// `‖(Γ(g_h) − Id)/h − dΓ(X)‖_max` for each step `h`.
pub fn finite_difference_errors(space: &FockSpace, x: &KernelMatrix, steps: &[f64]) -> Result<Vec<f64>> {
    let tol = space.config().mode.tolerance;
    let dgamma = space.differential_second_quantization(x)?;
    let id = space.identity();
    steps
        .iter()
        .map(|&h| {
            let lift = space.second_quantization(&one_particle_flow(x, h, tol)?)?;
            Ok(max_abs(&((lift - &id) * C64::new(1.0 / h, 0.0) - &dgamma)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockConfig;
    use nalgebra::DMatrix;

    fn rot() -> KernelMatrix {
        KernelMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]])
    }

    #[test]
    fn planar_rotation() {
        let g = one_particle_flow(&rot(), std::f64::consts::FRAC_PI_2, 1e-12).unwrap();
        assert!(g.max_abs_diff(&rot()) < 1e-14);
        let g0 = one_particle_flow(&rot(), 0.0, 1e-12).unwrap();
        assert!(g0.max_abs_diff(&KernelMatrix::identity(2)) < 1e-15);
        let g = one_particle_flow(&rot(), 0.37, 1e-12).unwrap();
        let r = &g.0.transpose() * &g.0 - DMatrix::<C64>::identity(2, 2);
        assert!(max_abs(&r) < 1e-12);
        assert!(one_particle_flow(&KernelMatrix::identity(2), 0.1, 1e-12).is_err());
    }

    #[test]
    fn zero_generator() {
        let sp = FockSpace::new(FockConfig::small(2, 4).unwrap());
        let r = generator_identity_check(&sp, &KernelMatrix::zeros(2), &[0.1, -0.3]).unwrap();
        assert_eq!(r.kernel_identity, 0.0);
        assert!(r.flow_exponential < 1e-15);
    }

    #[test]
    fn flow_property() {
        let x = KernelMatrix::from_real_rows(&[&[0.0, 0.4, -1.0], &[-0.4, 0.0, 0.3], &[1.0, -0.3, 0.0]]);
        let a = one_particle_flow(&x, 0.2, 1e-12).unwrap();
        let b = one_particle_flow(&x, 0.5, 1e-12).unwrap();
        let ab = one_particle_flow(&x, 0.7, 1e-12).unwrap();
        assert!(max_abs(&(&a.0 * &b.0 - &ab.0)) < 1e-12);
    }

    #[test]
    fn flow_spec_validation() {
        assert!(FlowSpec::new(rot(), vec![], 4, 1e-12).is_err());
        assert!(FlowSpec::new(KernelMatrix::identity(2), vec![0.1], 4, 1e-12).is_err());
        assert!(FlowSpec::new(rot(), vec![0.1], 4, 1e-12).is_ok());
    }
}
