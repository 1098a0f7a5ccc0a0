//! Ideals generated by single elements of the orbit algebra.

use qwn_core::liealg::{contains_identity, ideal_closure, orbit_prefix, realized_ops, standard_generators, CoordMode, FormalOperator};
use qwn_core::modespace::bilinear_pair;
use qwn_core::{ModeVector, SymbolicOperator, C64};

use super::lie::close;
use super::{Ctx, Recorder, SuiteRun};

/// The five cases: `a(S^kζ)`, `a*(S^kζ)`, `N`, `Λ(S)`, `Δ_G`.
fn cases(s: &qwn_core::KernelMatrix, orbit: &[ModeVector]) -> Vec<(String, SymbolicOperator, C64)> {
    let d = s.dim();
    let zz = bilinear_pair(&orbit[0], &orbit[0]).expect("same dimension");
    let mut out = Vec::new();
    for (k, v) in orbit.iter().enumerate() {
        let p = bilinear_pair(v, v).expect("same dimension");
        out.push((format!("a(S^{k}ζ)"), SymbolicOperator::annihilation(v), p));
        out.push((format!("a*(S^{k}ζ)"), SymbolicOperator::creation(v), p));
    }
    out.push(("N".into(), SymbolicOperator::number(d), zz));
    out.push(("Λ(S)".into(), SymbolicOperator::conservation(s), zz));
    out.push(("Δ_G".into(), SymbolicOperator::gross_laplacian(d), zz));
    out
}

pub fn run(ctx: &Ctx, rec: &mut Recorder) -> SuiteRun {
    let cfg = ctx.cfg;
    let d = cfg.d;
    let tol = cfg.tolerance;
    let s = cfg.s_matrix();
    let zeta = cfg.zeta_vector();

    let orbit = orbit_prefix(&s, &zeta, &ctx.mode)?;
    let gens = standard_generators(&s, &zeta, &ctx.mode)?;
    let real = close(&realized_ops(&gens), d, 2, CoordMode::Realized)?;
    let mut asserted = 0;
    for (name, x, pairing) in cases(&s, &orbit) {
        let sub = ideal_closure(&x, &real.basis)?;
        let has_id = contains_identity(&sub, &real.basis)?;
        rec.value(format!("ideal({name}): dimension"), sub.dim() as f64);
        // the argument needs the relevant pairing to be nonzero
        if pairing.norm() > tol {
            asserted += 1;
            rec.holds(format!("ideal({name}) contains Id"), has_id);
        } else {
            rec.note(format!("ideal({name}): pairing vanishes, contains Id = {has_id} (not asserted)"));
        }
    }
    if asserted == 0 {
        rec.flag("ζ is isotropic for every case; nothing was asserted");
    }

    // ⟨Δ_G(S)⟩ is a one-dimensional ideal once the skew kernel is kept
    let formal = close(&qwn_core::liealg::formal_ops(&gens), d, 2, CoordMode::Formal)?;
    let sub = ideal_closure(&FormalOperator::generalized_gross(&s), &formal.basis)?;
    rec.eq("formal ideal(Δ_G(S)): dimension", sub.dim(), 1);
    rec.holds("formal ideal(Δ_G(S)) misses Id", !contains_identity(&sub, &formal.basis)?);

    // isotropic direction: reported only
    if d >= 2 {
        let mut iso = ModeVector::zeros(d);
        iso.0[0] = C64::new(1.0, 0.0);
        iso.0[1] = C64::new(0.0, 1.0);
        let orbit = orbit_prefix(&s, &iso, &ctx.mode)?;
        let gens = standard_generators(&s, &iso, &ctx.mode)?;
        let b = close(&realized_ops(&gens), d, 2, CoordMode::Realized)?;
        rec.value("isotropic ζ: algebra dimension", b.basis.dim() as f64);
        for (name, x, _) in cases(&s, &orbit) {
            let sub = ideal_closure(&x, &b.basis)?;
            let has_id = contains_identity(&sub, &b.basis)?;
            rec.value(format!("isotropic ζ: ideal({name}) dimension"), sub.dim() as f64);
            rec.note(format!("isotropic ζ: ideal({name}) has dimension {} and contains Id = {has_id}", sub.dim()));
        }
    }
    Ok(())
}
