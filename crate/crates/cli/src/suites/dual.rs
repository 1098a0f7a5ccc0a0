//! The coefficient-space action of `Ξ_{l,m}(κ)` against its Fock matrix.

use super::wick_gate::supported;
use super::{Ctx, Recorder, SuiteRun};
use crate::rng;

const CASES: usize = 50;
const LIMIT: f64 = 1e-12;

pub fn run(ctx: &Ctx, rec: &mut Recorder) -> SuiteRun {
    let sp = &ctx.space;
    let d = sp.d();
    let top = sp.max_occupation();
    let mut r = ctx.rng()?;
    let sigs = supported(ctx.cfg.m_max);
    let mut worst: f64 = 0.0;
    let mut roundtrip: f64 = 0.0;
    for case in 0..CASES {
        let sig = sigs[case % sigs.len()];
        let kappa = rng::tensor(&mut r, d, sig.order());
        let s = rng::sequence(&mut r, d, top);
        let v = sp.coeffs_to_fock(&s)?;
        let via_coeffs = sp.coeffs_to_fock(&sp.apply_contraction(sig.creators, sig.annihilators, &kappa, &s)?)?;
        let via_matrix = sp.build_xi(sig.creators, sig.annihilators, &kappa)? * &v;
        worst = worst.max((via_coeffs - via_matrix).camax());
        roundtrip = roundtrip.max(sp.fock_to_coeffs(&v)?.max_abs_diff(&s));
    }
    rec.le("apply_contraction vs build_xi on 50 random cases", worst, LIMIT);
    rec.le("coefficient roundtrip through the Fock basis", roundtrip, LIMIT);
    Ok(())
}
