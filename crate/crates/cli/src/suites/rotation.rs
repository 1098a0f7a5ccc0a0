//! Rotation flows `exp(θS)` and their second quantization.

use qwn_core::linalg::max_abs;
use qwn_core::rotgrp::{finite_difference_errors, generator_identity_check, one_particle_flow, rotation_invariance_check};
use qwn_core::wick::to_fock;
use qwn_core::{KernelTensor, SymbolicOperator, C64};

use super::{Ctx, Recorder, SuiteRun};

const KERNEL_LIMIT: f64 = 1e-13;
const FLOW_LIMIT: f64 = 1e-10;
const INVARIANCE_LIMIT: f64 = 1e-11;
const CONTROL_FLOOR: f64 = 0.1;
const STEPS: [f64; 4] = [1e-2, 5e-3, 2.5e-3, 1.25e-3];

pub fn run(ctx: &Ctx, rec: &mut Recorder) -> SuiteRun {
    let sp = &ctx.space;
    let tol = ctx.cfg.tolerance;
    let x = ctx.cfg.s_matrix();
    let zeta = ctx.cfg.zeta_vector();
    let thetas = &ctx.cfg.theta_grid;
    let half = x.scale(C64::new(0.5, 0.0));

    rec.le("kernel X/2 is skew", half.skew_deviation(), KERNEL_LIMIT);
    let g = generator_identity_check(sp, &x, thetas)?;
    rec.le("dΓ(X) = 2Ξ_{1,1}(X/2)", g.kernel_identity, KERNEL_LIMIT);
    rec.le("Γ(e^{θX}) = e^{θ dΓ(X)} on the θ grid", g.flow_exponential, FLOW_LIMIT);

    let dgamma = sp.differential_second_quantization(&x)?;
    let r = max_abs(&(&dgamma - sp.build_xi(1, 1, &KernelTensor::from_matrix(&x))?));
    rec.le("dΓ(X) = Ξ_{1,1}(X)", r, KERNEL_LIMIT);
    let r = max_abs(&(&dgamma - sp.rotation_op(&half)?));
    rec.le("R_κ = 2Ξ_{1,1}(κ) with κ = X/2 generates the flow", r, KERNEL_LIMIT);
    let r = max_abs(&(sp.rotation_op(&half)? - to_fock(sp, &SymbolicOperator::rotation(&half, tol)?)?));
    rec.le("R_κ matrix agrees with the symbolic R_κ", r, KERNEL_LIMIT);

    // Γ is a homomorphism and moves exponential vectors
    let (mut functor, mut coherent): (f64, f64) = (0.0, 0.0);
    let phi = sp.exponential_vector(&zeta.scale(C64::new(0.5, 0.0)))?;
    for &t in thetas {
        let g1 = one_particle_flow(&x, t, tol)?;
        let g2 = one_particle_flow(&x, 0.5 * t, tol)?;
        let prod = qwn_core::KernelMatrix(&g1.0 * &g2.0);
        let lhs = sp.second_quantization(&prod)?;
        let rhs = sp.second_quantization(&g1)? * sp.second_quantization(&g2)?;
        functor = functor.max(max_abs(&(lhs - rhs)));
        let moved = sp.second_quantization(&g1)? * &phi;
        let direct = sp.exponential_vector(&g1.apply(&zeta.scale(C64::new(0.5, 0.0)))?)?;
        coherent = coherent.max((moved - direct).camax());
    }
    rec.le("Γ(g₁g₂) = Γ(g₁)Γ(g₂)", functor, FLOW_LIMIT);
    rec.le("Γ(g)φ_ξ = φ_{gξ}", coherent, FLOW_LIMIT);

    let (n, lap) = (sp.number_op(), sp.gross_laplacian());
    let (mut inv, mut literal, mut comm): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for &t in thetas {
        for op in [&n, &lap] {
            let res = rotation_invariance_check(sp, op, &x, t)?;
            inv = inv.max(res.residual());
            literal = literal.max(res.literal);
            comm = comm.max(res.commutator);
        }
    }
    rec.le("Γ(g)⁻¹ Ξ Γ(g) = Ξ for Ξ ∈ {N, Δ_G}", inv, INVARIANCE_LIMIT);
    rec.value("commutator form ‖[Γ(g), Ξ]‖ for N, Δ_G", comm);
    rec.value("literal form ‖Γ(g) Ξ Γ(g) − Ξ‖ for N, Δ_G", literal);

    let t_max = thetas.iter().copied().fold(0.0, |a: f64, b| if b.abs() > a.abs() { b } else { a });
    let control = rotation_invariance_check(sp, &sp.annihilation_op(&zeta)?, &x, t_max)?;
    rec.gt("negative control: a(ζ) is not invariant", control.residual(), CONTROL_FLOOR);

    let errs = finite_difference_errors(sp, &x, &STEPS)?;
    let mut worst_ratio: f64 = 0.0;
    for w in errs.windows(2) {
        worst_ratio = worst_ratio.max((w[0] / w[1] - 2.0).abs());
    }
    if errs.iter().all(|e| *e < 1e-14) {
        rec.note("finite differences exact: the flow is trivial");
    } else {
        rec.le("finite differences converge at first order (|ratio − 2|)", worst_ratio, 0.1);
    }
    Ok(())
}
