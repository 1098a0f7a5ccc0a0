//! Lie closures of the named generator sets.
//!
//! Every generator set is closed twice: as operators ("realized"), where
//! `Δ_G(S)` vanishes for skew `S`, and with the skew kernels kept as
//! separate formal basis elements ("formal").

use qwn_core::liealg::{
    base_generators, closure, fixed_point_generators, formal_ops, orbit_prefix, pure_annihilation_generators,
    realized_ops, standard_generators, CoordMode, Coordinatizer, Generator, LieAnalysis, LieBasis, LieElement,
    DEFAULT_MAX_ROUNDS,
};
use qwn_core::{KernelMatrix, ModeVector, C64};

use super::{Ctx, Recorder, SuiteFailure, SuiteRun};
use crate::config::RunConfig;
use crate::report::{AlgebraSummary, DimensionRow};
use crate::rng;

/// Closure tolerance; coordinates are O(1), so this is relative in practice.
pub const CLOSURE_TOL: f64 = 1e-9;

pub struct Closed<E> {
    pub basis: LieBasis<E>,
    pub analysis: LieAnalysis,
}

pub fn close<E: LieElement>(gens: &[E], d: usize, m_max: usize, mode: CoordMode) -> Result<Closed<E>, SuiteFailure> {
    let layout = Coordinatizer::new(d, m_max, mode);
    let basis = closure(gens, &layout, CLOSURE_TOL, DEFAULT_MAX_ROUNDS)?;
    let analysis = LieAnalysis::of(&basis)?;
    Ok(Closed { basis, analysis })
}

pub fn summary(a: &LieAnalysis) -> AlgebraSummary {
    AlgebraSummary {
        dim: a.dim,
        derived_series: a.derived_series.clone(),
        lower_central_series: a.lower_central_series.clone(),
        solvable: a.solvable,
        nilpotent: a.nilpotent,
        killing_rank: a.killing_rank,
        contains_identity: a.contains_identity,
        jacobi_residual: a.jacobi_residual,
    }
}

/// Realized and formal closures of `gens`, as a dimension row.
pub fn both(
    algebra: &str,
    gens: &[Generator],
    d: usize,
    m_max: usize,
    stated: Option<usize>,
) -> Result<(DimensionRow, Closed<qwn_core::SymbolicOperator>, Closed<qwn_core::liealg::FormalOperator>), SuiteFailure> {
    let realized = close(&realized_ops(gens), d, m_max, CoordMode::Realized)?;
    let formal = close(&formal_ops(gens), d, m_max, CoordMode::Formal)?;
    let (r, f) = (realized.analysis.dim, formal.analysis.dim);
    let matches = stated.map(|s| {
        match (s == r, s == f) {
            (true, true) => "both",
            (true, false) => "realized",
            (false, true) => "formal",
            (false, false) => "neither",
        }
        .to_string()
    });
    let row = DimensionRow {
        algebra: algebra.to_string(),
        generators: gens.iter().map(|g| g.label.clone()).collect(),
        realized: summary(&realized.analysis),
        formal: Some(summary(&formal.analysis)),
        stated_dim: stated,
        stated_matches: matches,
    };
    Ok((row, realized, formal))
}

fn realized_only(algebra: &str, gens: &[Generator], d: usize, m_max: usize, stated: Option<usize>) -> Result<(DimensionRow, LieAnalysis), SuiteFailure> {
    let closed = close(&realized_ops(gens), d, m_max, CoordMode::Realized)?;
    let dim = closed.analysis.dim;
    let row = DimensionRow {
        algebra: algebra.to_string(),
        generators: gens.iter().map(|g| g.label.clone()).collect(),
        realized: summary(&closed.analysis),
        formal: None,
        stated_dim: stated,
        stated_matches: stated.map(|s| if s == dim { "realized" } else { "neither" }.to_string()),
    };
    Ok((row, closed.analysis))
}

pub const BASE: &str = "base ⟨Id, a(ζ), a*(ζ), N, Δ_G⟩";
pub const PURE: &str = "pure annihilation ⟨N, Ξ_{0,2}(κ₁), Ξ_{0,3}(κ₂)⟩";
pub const ORBIT: &str = "orbit algebra ⟨Id, a(S^kζ), a*(S^kζ), N, Λ(S), Δ_G, Δ_G(S)⟩";
pub const FIXED: &str = "fixed point ⟨Id, a(ζ), a*(ζ), Λ(L), Δ*_G(K), Δ_G(K)⟩";
pub const EIGEN: &str = "eigenvector example Sζ = ζ";

pub fn run_structure(ctx: &Ctx, rec: &mut Recorder) -> SuiteRun {
    let cfg = ctx.cfg;
    let d = cfg.d;
    let zeta = cfg.zeta_vector();

    let (row, a) = realized_only(BASE, &base_generators(&zeta), d, 2, Some(5))?;
    rec.eq("base: dimension", a.dim, 5);
    rec.holds("base: solvable", a.solvable);
    rec.holds("base: not nilpotent", !a.nilpotent);
    rec.dimension(row);

    let mut r = ctx.rng()?;
    let kernels = vec![rng::tensor(&mut r, d, 2), rng::tensor(&mut r, d, 3)];
    let gens = pure_annihilation_generators(d, &kernels)?;
    let (row, a) = realized_only(PURE, &gens, d, 3, Some(3))?;
    rec.eq("pure annihilation (n = 2): dimension", a.dim, 3);
    rec.holds("pure annihilation: solvable", a.solvable);
    rec.holds("pure annihilation: not nilpotent", !a.nilpotent);
    rec.dimension(row);

    let s = cfg.s_matrix();
    let orbit_len = orbit_prefix(&s, &zeta, &ctx.mode)?.len();
    let gens = standard_generators(&s, &zeta, &ctx.mode)?;
    // one generator per listed operator, Δ_G(S) included
    let stated = 5 + 2 * orbit_len;
    let (row, real, formal) = both(ORBIT, &gens, d, 2, Some(stated))?;
    let (ra, fa) = (&real.analysis, &formal.analysis);
    rec.holds("orbit algebra (realized): solvable", ra.solvable);
    rec.holds("orbit algebra (realized): not nilpotent", !ra.nilpotent);
    rec.holds("orbit algebra (formal): solvable", fa.solvable);
    rec.holds("orbit algebra (formal): not nilpotent", !fa.nilpotent);
    // h⁽¹⁾ = ⟨Id, a(S^kζ), a*(S^kζ), Δ_G, Δ_G(S)⟩, h⁽²⁾ = ⟨Id, a(S^kζ)⟩, h⁽³⁾ = 0
    let r = orbit_len;
    rec.eq("orbit algebra (formal): derived series", fa.derived_series.clone(), vec![stated, 3 + 2 * r, 1 + r, 0]);
    let lcs_tail = fa.lower_central_series.last().copied();
    rec.eq("orbit algebra (formal): lower central series stabilizes at h⁽¹⁾", lcs_tail, Some(3 + 2 * r));
    rec.value("orbit algebra: orbit vectors kept", r as f64);
    rec.value("orbit algebra (realized): dimension", ra.dim as f64);
    rec.value("orbit algebra (formal): dimension", fa.dim as f64);
    rec.value("orbit algebra (formal): Jacobi residual", fa.jacobi_residual);
    rec.value("orbit algebra (realized): Jacobi residual", ra.jacobi_residual);
    if ra.dim != fa.dim {
        rec.note(format!(
            "Δ_G(S) vanishes as an operator for skew S, so the realized closure has dimension {} against {} formally",
            ra.dim, fa.dim
        ));
    }
    rec.dimension(row);
    Ok(())
}

pub fn run_semisimple(ctx: &Ctx, rec: &mut Recorder) -> SuiteRun {
    let cfg = ctx.cfg;
    let d = cfg.d;
    let zeta = cfg.zeta_vector();
    let s = cfg.s_matrix();
    let gens = standard_generators(&s, &zeta, &ctx.mode)?;
    let mut algebras: Vec<(String, LieAnalysis)> = vec![
        (BASE.into(), close(&realized_ops(&base_generators(&zeta)), d, 2, CoordMode::Realized)?.analysis),
        (format!("{ORBIT} (realized)"), close(&realized_ops(&gens), d, 2, CoordMode::Realized)?.analysis),
        (format!("{ORBIT} (formal)"), close(&formal_ops(&gens), d, 2, CoordMode::Formal)?.analysis),
    ];
    match fixed_point_generators(&cfg.k_matrix(), &cfg.l_matrix(), &zeta, cfg.tolerance) {
        Ok(g) => algebras.push((FIXED.into(), close(&realized_ops(&g), d, 2, CoordMode::Realized)?.analysis)),
        Err(e) => rec.note(format!("fixed-point algebra skipped: {e}")),
    }
    let mut with_id = 0;
    for (name, a) in &algebras {
        rec.value(format!("{name}: Killing rank"), a.killing_rank as f64);
        rec.value(format!("{name}: dimension"), a.dim as f64);
        if a.contains_identity {
            with_id += 1;
            rec.holds(format!("{name}: Killing form degenerate (rank < dim)"), a.killing_rank < a.dim);
            rec.holds(format!("{name}: not semisimple"), !a.semisimple);
        }
    }
    rec.holds("at least one closed algebra contains Id", with_id > 0);
    // the orbit algebra has the nonzero solvable ideal h⁽¹⁾
    let orbit = &algebras[2].1;
    rec.holds("orbit algebra: h⁽¹⁾ is a nonzero solvable ideal", orbit.derived_series.get(1).is_some_and(|&x| x > 0) && orbit.solvable);
    Ok(())
}

/// Eigenvector example: `S = [[0, i], [−i, 0]]` on the first two modes and
/// `ζ = e₀ − i e₁`, so `Sζ = ζ`.
pub fn eigenvector_example(d: usize) -> (KernelMatrix, ModeVector) {
    let mut s = KernelMatrix::zeros(d);
    s.0[(0, 1)] = C64::new(0.0, 1.0);
    s.0[(1, 0)] = C64::new(0.0, -1.0);
    let mut z = ModeVector::zeros(d);
    z.0[0] = C64::new(1.0, 0.0);
    z.0[1] = C64::new(0.0, -1.0);
    (s, z)
}

/// Dimension rows for the `closure` subcommand.
pub fn closure_tables(cfg: &RunConfig) -> Result<Vec<DimensionRow>, SuiteFailure> {
    let d = cfg.d;
    let mode = qwn_core::ModeConfig::new(d, cfg.tolerance, cfg.orbit_cap)?;
    let zeta = cfg.zeta_vector();
    let mut rows = vec![realized_only(BASE, &base_generators(&zeta), d, 2, Some(5))?.0];
    let s = cfg.s_matrix();
    match standard_generators(&s, &zeta, &mode) {
        Ok(gens) => {
            let stated = 5 + 2 * orbit_prefix(&s, &zeta, &mode)?.len();
            rows.push(both(ORBIT, &gens, d, 2, Some(stated))?.0);
        }
        Err(e) => return Err(SuiteFailure(format!("orbit algebra: {e}"))),
    }
    if let Ok(gens) = fixed_point_generators(&cfg.k_matrix(), &cfg.l_matrix(), &zeta, cfg.tolerance) {
        rows.push(realized_only(FIXED, &gens, d, 2, Some(6))?.0);
    }
    if d >= 2 {
        let (s, z) = eigenvector_example(d);
        let gens = standard_generators(&s, &z, &mode)?;
        rows.push(both(EIGEN, &gens, d, 2, Some(7))?.0);
    }
    Ok(rows)
}
