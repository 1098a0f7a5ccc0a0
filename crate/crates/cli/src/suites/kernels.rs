//! Brackets of quadratic kernel operators.

use qwn_core::linalg::commutator;
use qwn_core::modespace::convolve;
use qwn_core::wick::to_fock;
use qwn_core::{FockMatrix, FockSpace, KernelMatrix, KernelTensor, SymbolicOperator, C64};

use super::{Ctx, Recorder, SuiteRun};
use crate::rng;

const CASES: usize = 20;
const EXACT: f64 = 1e-12;
const LIMIT: f64 = 1e-10;

fn quad(k: &KernelMatrix) -> SymbolicOperator {
    SymbolicOperator::conservation(k)
}

fn pair(k: &KernelMatrix) -> SymbolicOperator {
    SymbolicOperator::generalized_gross(k)
}

#[derive(Default)]
struct Worst {
    symbolic: f64,
    cross: f64,
}

impl Worst {
    /// `lhs` is the symbolic bracket, `rhs` its closed form, and `direct`
    /// the matrix commutator of the realized factors.
    fn update(&mut self, sp: &FockSpace, lhs: &SymbolicOperator, rhs: &SymbolicOperator, direct: &FockMatrix) -> SuiteRun {
        self.symbolic = self.symbolic.max(lhs.max_abs_diff(rhs));
        let r = sp.guarded_equal(&to_fock(sp, rhs)?, direct, 1)?;
        self.cross = self.cross.max(r);
        Ok(())
    }

    fn report(&self, rec: &mut Recorder, name: &str) {
        rec.le(format!("{name} (symbolic)"), self.symbolic, EXACT);
        rec.le(format!("{name} (to_fock cross-check)"), self.cross, LIMIT);
    }
}

fn one_particle(sp: &FockSpace, i: usize) -> usize {
    let mut occ = vec![0; sp.d()];
    occ[i] = 1;
    sp.index_of(&occ).expect("M ≥ 1 keeps the one-particle sector")
}

pub fn run(ctx: &Ctx, rec: &mut Recorder) -> SuiteRun {
    let sp = &ctx.space;
    let d = sp.d();
    let mut r = ctx.rng()?;
    let xi11 = |k: &KernelMatrix| sp.build_xi(1, 1, &KernelTensor::from_matrix(k));
    let xi02 = |k: &KernelMatrix| sp.build_xi(0, 2, &KernelTensor::from_matrix(k));
    let tau = KernelMatrix::identity(d);

    let mut number = Worst::default();
    let mut quadratic = Worst::default();
    let mut gross = Worst::default();
    let mut skew = Worst::default();
    let mut leibniz: f64 = 0.0;
    let mut kernel_thm: f64 = 0.0;

    for _ in 0..CASES {
        let f1 = rng::matrix(&mut r, d);
        let f2 = rng::matrix(&mut r, d);
        let rhs = quad(&convolve(&f1, &f2)?.sub(&convolve(&f2, &f1)?));
        number.update(sp, &quad(&f1).bracket(&quad(&f2))?, &rhs, &commutator(&xi11(&f1)?, &xi11(&f2)?))?;

        let lam = rng::matrix(&mut r, d);
        let kap = rng::matrix(&mut r, d);
        let rhs = pair(&convolve(&lam, &kap)?).add(&pair(&convolve(&lam.transpose(), &kap)?))?;
        quadratic.update(sp, &pair(&lam).bracket(&quad(&kap))?, &rhs, &commutator(&xi02(&lam)?, &xi11(&kap)?))?;

        let rhs = pair(&kap).scale(C64::new(2.0, 0.0));
        gross.update(sp, &pair(&tau).bracket(&quad(&kap))?, &rhs, &commutator(&xi02(&tau)?, &xi11(&kap)?))?;

        let s = rng::skew(&mut r, d);
        skew.update(sp, &pair(&s).bracket(&quad(&s))?, &SymbolicOperator::zero(d), &commutator(&xi02(&s)?, &xi11(&s)?))?;

        // [AB, C] = A[B, C] + [A, C]B with A = a(ζ), B = a*(ξ), C = Ξ_{1,1}(κ)
        let (zeta, xi) = (rng::vector(&mut r, d), rng::vector(&mut r, d));
        let (a, b, cc) = (SymbolicOperator::annihilation(&zeta), SymbolicOperator::creation(&xi), quad(&kap));
        let lhs = a.wick_product(&b)?.bracket(&cc)?;
        let rhs = a.wick_product(&b.bracket(&cc)?)?.add(&a.bracket(&cc)?.wick_product(&b)?)?;
        leibniz = leibniz.max(lhs.max_abs_diff(&rhs));

        // ⟨e_i, Ξ_{1,1}(κ) e_j⟩ = κ[i, j] on the one-particle sector
        let m = xi11(&kap)?;
        let mut dev: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let (row, col) = (one_particle(sp, i), one_particle(sp, j));
                dev = dev.max((m[(row, col)] - kap.0[(i, j)]).norm());
            }
        }
        kernel_thm = kernel_thm.max(dev);
    }

    number.report(rec, "[Ξ_{1,1}(f₁), Ξ_{1,1}(f₂)] = Ξ_{1,1}(f₁*f₂ − f₂*f₁)");
    quadratic.report(rec, "[Ξ_{0,2}(λ), Ξ_{1,1}(κ)] = Ξ_{0,2}(λ*κ) + Ξ_{0,2}(λᵀ*κ)");
    gross.report(rec, "[Δ_G, Ξ_{1,1}(κ)] = 2Ξ_{0,2}(κ)");
    skew.report(rec, "[Ξ_{0,2}(κ), Ξ_{1,1}(κ)] = 0 for skew κ");
    rec.le("[AB, C] = A[B, C] + [A, C]B (symbolic)", leibniz, EXACT);
    rec.le("one-particle matrix of Ξ_{1,1}(κ) is κ", kernel_thm, EXACT);
    Ok(())
}
