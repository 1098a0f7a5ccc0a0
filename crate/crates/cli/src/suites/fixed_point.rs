use qwn_core::liealg::{fixed_point_constraints, fixed_point_generators, realized_ops, CoordMode};

use super::lie::{close, summary, FIXED};
use super::{Ctx, Recorder, SuiteRun};
use crate::report::DimensionRow;

/// The four hypotheses hold exactly for the intended inputs; this only
/// absorbs rounding in user-supplied matrices.
const EXACT: f64 = 1e-12;

pub fn run(ctx: &Ctx, rec: &mut Recorder) -> SuiteRun {
    let cfg = ctx.cfg;
    let (k, l, zeta) = (cfg.k_matrix(), cfg.l_matrix(), cfg.zeta_vector());
    let mut ok = true;
    for c in fixed_point_constraints(&k, &l, &zeta)? {
        ok &= rec.le(format!("hypothesis {}", c.name), c.residual, EXACT);
    }
    if !ok {
        rec.note("hypotheses violated; the closure was not attempted");
        return Ok(());
    }
    let gens = fixed_point_generators(&k, &l, &zeta, EXACT)?;
    let closed = close(&realized_ops(&gens), cfg.d, 2, CoordMode::Realized)?;
    let a = &closed.analysis;
    rec.eq("closure dimension", a.dim, 6);
    rec.holds("adjoint-closed", closed.basis.is_adjoint_closed()?);
    rec.value("adjoint residual", closed.basis.adjoint_residual()?);
    // the derived series stops once it stabilizes, at most dim steps in
    rec.holds("not solvable: derived series does not reach 0", !a.solvable);
    rec.value("derived series length", a.derived_series.len() as f64);
    rec.dimension(DimensionRow {
        algebra: FIXED.into(),
        generators: gens.iter().map(|g| g.label.clone()).collect(),
        realized: summary(a),
        formal: None,
        stated_dim: Some(6),
        stated_matches: Some(if a.dim == 6 { "realized" } else { "neither" }.into()),
    });
    Ok(())
}
