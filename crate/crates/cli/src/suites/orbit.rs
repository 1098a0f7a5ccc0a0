//! Orbits `S^kζ` and the finiteness of the algebra they generate.

use qwn_core::liealg::{orbit_prefix, realized_ops, standard_generators, CoordMode};
use qwn_core::linalg::numerical_rank;
use qwn_core::modespace::{orbit, vectors_rank};

use super::lie::{both, close, eigenvector_example, EIGEN};
use super::{Ctx, Recorder, SuiteRun};

pub fn run(ctx: &Ctx, rec: &mut Recorder) -> SuiteRun {
    let cfg = ctx.cfg;
    let d = cfg.d;
    let tol = cfg.tolerance;
    let s = cfg.s_matrix();
    let zeta = cfg.zeta_vector();

    let rank = numerical_rank(&s.0, tol);
    let vs = orbit(&s, &zeta, cfg.orbit_cap)?;
    let tail_rank = vectors_rank(&vs[1..], tol);
    rec.value("rank of S", rank as f64);
    rec.value("orbit span dimension", vectors_rank(&vs, tol) as f64);
    rec.holds("S^kζ (k ≥ 1) stays in the range of S", tail_rank <= rank);

    // the closure terminates when the orbit spans a finite space
    let gens = standard_generators(&s, &zeta, &ctx.mode)?;
    let b = close(&realized_ops(&gens), d, 2, CoordMode::Realized)?;
    let kept = orbit_prefix(&s, &zeta, &ctx.mode)?.len();
    rec.holds("orbit algebra closes in finitely many rounds", b.basis.dim() > 0);
    rec.value("orbit algebra (realized) dimension", b.basis.dim() as f64);

    // smallest k with S^kζ ∥ ζ, if any
    let eigen_k = (1..vs.len()).find(|&k| vectors_rank(&[vs[0].clone(), vs[k].clone()], tol) <= 1);
    match eigen_k {
        Some(k) => rec.note(format!("ζ is an eigenvector of S^{k}; the orbit spans {kept} vectors")),
        None => rec.note(format!("ζ is not an eigenvector of S^k for k ≤ {}", cfg.orbit_cap)),
    }

    if d >= 2 {
        let (s, z) = eigenvector_example(d);
        rec.value("eigenvector example: |Sζ − ζ|", s.apply(&z)?.max_abs_diff(&z));
        let gens = standard_generators(&s, &z, &ctx.mode)?;
        let (row, real, formal) = both(EIGEN, &gens, d, 2, Some(7))?;
        rec.eq("eigenvector example: formal dimension", formal.analysis.dim, 7);
        rec.value("eigenvector example: realized dimension", real.analysis.dim as f64);
        if real.analysis.dim != formal.analysis.dim {
            rec.note(format!(
                "eigenvector example: the stated dimension 7 counts Δ_G(S), which vanishes as an operator; realized dimension {}",
                real.analysis.dim
            ));
        }
        rec.dimension(row);
    }
    Ok(())
}
