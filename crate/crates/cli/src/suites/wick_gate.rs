//! Normal-ordered products against dense matrix products. Every suite that
//! builds operators through symbolic products waits for this one.

use qwn_core::linalg::max_abs;
use qwn_core::wick::to_fock;
use qwn_core::{Signature, SymbolicOperator};

use super::{Ctx, Recorder, SuiteRun};
use crate::rng;

const LIMIT: f64 = 1e-10;
const DRAWS: usize = 2;

pub fn supported(m_max: usize) -> Vec<Signature> {
    let mut v = vec![
        Signature::new(0, 0),
        Signature::new(0, 1),
        Signature::new(1, 0),
        Signature::new(1, 1),
        Signature::new(0, 2),
        Signature::new(2, 0),
    ];
    for m in 3..=m_max {
        v.push(Signature::new(0, m));
        v.push(Signature::new(m, 0));
    }
    v
}

pub fn run(ctx: &Ctx, rec: &mut Recorder) -> SuiteRun {
    let sp = &ctx.space;
    let d = sp.d();
    let guard = ctx.cfg.guard();
    let mut r = ctx.rng()?;
    let sigs = supported(ctx.cfg.m_max);
    let (mut worst, mut worst_bracket): (f64, f64) = (0.0, 0.0);
    let (mut tried, mut skipped) = (0usize, 0usize);
    for &sa in &sigs {
        for &sb in &sigs {
            for _ in 0..DRAWS {
                let a = SymbolicOperator::make(sa, &rng::tensor(&mut r, d, sa.order()))?;
                let b = SymbolicOperator::make(sb, &rng::tensor(&mut r, d, sb.order()))?;
                if b.creator_degree().max(a.creator_degree()) > guard {
                    skipped += 1;
                    continue;
                }
                tried += 1;
                let (fa, fb) = (to_fock(sp, &a)?, to_fock(sp, &b)?);
                let ab = to_fock(sp, &a.wick_product(&b)?)?;
                let direct = &fa * &fb;
                let res = sp.guarded_equal(&ab, &direct, b.creator_degree())?;
                worst = worst.max(res / max_abs(&ab).max(1.0));

                let br = to_fock(sp, &a.bracket(&b)?)?;
                let direct = &fa * &fb - &fb * &fa;
                let deg = a.creator_degree().max(b.creator_degree());
                let res = sp.guarded_equal(&br, &direct, deg)?;
                worst_bracket = worst_bracket.max(res / max_abs(&br).max(1.0));
            }
        }
    }
    rec.le("normal-ordered product vs matrix product (relative, guarded)", worst, LIMIT);
    rec.le("symbolic bracket vs matrix commutator (relative, guarded)", worst_bracket, LIMIT);
    rec.value("pairs tried", tried as f64);
    if skipped > 0 {
        rec.note(format!("{skipped} draws skipped: creator degree exceeds the guard band {guard}"));
    }
    Ok(())
}
