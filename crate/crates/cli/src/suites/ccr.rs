use qwn_core::linalg::{commutator, max_abs};
use qwn_core::wick::to_fock;
use qwn_core::{ModeVector, SymbolicOperator, C64};

use super::{Ctx, Recorder, SuiteRun};

const LIMIT: f64 = 1e-12;

pub fn run(ctx: &Ctx, rec: &mut Recorder) -> SuiteRun {
    let sp = &ctx.space;
    let d = sp.d();
    let id = sp.identity();
    let zero = sp.zeros();
    let (mut mixed, mut ann, mut cre, mut sym): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..d {
        let ai = sp.mode_annihilator(i)?;
        let ai_star = sp.mode_creator(i)?;
        for j in 0..d {
            let aj = sp.mode_annihilator(j)?;
            let aj_star = sp.mode_creator(j)?;
            let delta = if i == j { id.clone() } else { zero.clone() };
            mixed = mixed.max(sp.guarded_equal(&commutator(&ai, &aj_star), &delta, 1)?);
            ann = ann.max(sp.guarded_equal(&commutator(&ai, &aj), &zero, 0)?);
            cre = cre.max(sp.guarded_equal(&commutator(&ai_star, &aj_star), &zero, 2)?);

            let s = SymbolicOperator::annihilation(&ModeVector::basis(d, i))
                .bracket(&SymbolicOperator::creation(&ModeVector::basis(d, j)))?;
            let expect = SymbolicOperator::scalar(d, C64::new(if i == j { 1.0 } else { 0.0 }, 0.0));
            sym = sym.max(s.max_abs_diff(&expect));
        }
    }
    rec.le("[a_i, a_j*] = δ_ij Id (guarded)", mixed, LIMIT);
    rec.le("[a_i, a_j] = 0 (guarded)", ann, LIMIT);
    rec.le("[a_i*, a_j*] = 0 (guarded)", cre, LIMIT);
    rec.le("[a(e_i), a*(e_j)] = δ_ij Id symbolically", sym, LIMIT);

    // N multiplies sector n by n, and equals Σ a_i* a_i
    let n = sp.number_op();
    let mut diag = sp.zeros();
    let mut sum = sp.zeros();
    for k in 0..sp.dim() {
        diag[(k, k)] = C64::new(sp.sector(k) as f64, 0.0);
    }
    for i in 0..d {
        sum += sp.mode_creator(i)? * sp.mode_annihilator(i)?;
    }
    rec.le("N counts particles", max_abs(&(&n - diag)), LIMIT);
    rec.le("N = Σ a_i* a_i", max_abs(&(&n - sum)), LIMIT);
    rec.le("N = Ξ_{1,1}(τ)", max_abs(&(&n - to_fock(sp, &SymbolicOperator::number(d))?)), LIMIT);

    let mut lap = sp.zeros();
    for i in 0..d {
        let a = sp.mode_annihilator(i)?;
        lap += &a * &a;
    }
    let g = sp.gross_laplacian();
    rec.le("Δ_G = Σ a_i a_i", max_abs(&(&g - lap)), LIMIT);
    rec.le("Δ_G = Ξ_{0,2}(τ)", max_abs(&(&g - to_fock(sp, &SymbolicOperator::gross_laplacian(d))?)), LIMIT);

    // a(f), a*(f) are the linear combinations of the mode operators
    let f = ModeVector::new((0..d).map(|i| C64::new(1.0 + i as f64, -0.5 * i as f64)).collect());
    let mut af = sp.zeros();
    let mut cf = sp.zeros();
    for i in 0..d {
        af += sp.mode_annihilator(i)? * f.0[i];
        cf += sp.mode_creator(i)? * f.0[i];
    }
    let r = max_abs(&(sp.annihilation_op(&f)? - af)).max(max_abs(&(sp.creation_op(&f)? - cf)));
    rec.le("a(f) = Σ f_i a_i, a*(f) = Σ f_i a_i*", r, LIMIT);
    Ok(())
}
