//! Commutation relations among `Id, a(ζ), a*(ζ), N, Δ_G, Ξ_{0,m}(κ)`.

use qwn_core::linalg::commutator;
use qwn_core::modespace::bilinear_pair;
use qwn_core::{FockMatrix, FockSpace, Signature, SymbolicOperator, C64};

use super::{Ctx, Recorder, SuiteRun};
use crate::rng;

const CASES: usize = 20;
/// Symbolic equality is canonical-form equality up to rounding.
const EXACT: f64 = 1e-12;
const GUARDED: f64 = 1e-10;

struct Item {
    name: &'static str,
    symbolic: f64,
    numeric: f64,
}

impl Item {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            symbolic: 0.0,
            numeric: 0.0,
        }
    }

    fn record(&mut self, sym: (SymbolicOperator, SymbolicOperator), num: (FockMatrix, FockMatrix), deg: usize, sp: &FockSpace) -> SuiteRun {
        self.symbolic = self.symbolic.max(sym.0.max_abs_diff(&sym.1));
        self.numeric = self.numeric.max(sp.guarded_equal(&num.0, &num.1, deg)?);
        Ok(())
    }

    fn report(&self, rec: &mut Recorder) {
        rec.le(format!("{} (symbolic)", self.name), self.symbolic, EXACT);
        rec.le(format!("{} (guarded)", self.name), self.numeric, GUARDED);
    }
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn run(ctx: &Ctx, rec: &mut Recorder) -> SuiteRun {
    let sp = &ctx.space;
    let d = sp.d();
    let mut r = ctx.rng()?;

    let mut items = [
        Item::new("[a(ζ), a*(ζ)] = ⟨ζ,ζ⟩ Id"),
        Item::new("[a(ζ), N] = a(ζ)"),
        Item::new("[a(ζ), Δ_G] = 0"),
        Item::new("[a*(ζ), N] = −a*(ζ)"),
        Item::new("[a*(ζ), Δ_G] = −2a(ζ)"),
        Item::new("[Δ_G, N] = 2Δ_G"),
        Item::new("[N, Ξ_{0,m}(κ)] = −m Ξ_{0,m}(κ), m ∈ {2,3}"),
    ];
    let mut gccr = Item::new("[a(y), a*(ξ)] = ⟨y,ξ⟩ Id");
    let mut pure = Item::new("[Ξ_{0,2}(κ), Ξ_{0,m}(λ)] = 0");
    let mut eigen: f64 = 0.0;

    let (n_s, g_s) = (SymbolicOperator::number(d), SymbolicOperator::gross_laplacian(d));
    let (n_f, g_f) = (sp.number_op(), sp.gross_laplacian());
    let id = sp.identity();
    let zero_s = SymbolicOperator::zero(d);
    let zero_f = sp.zeros();

    for case in 0..CASES {
        let m = 2 + case % 2;
        let zeta = rng::vector(&mut r, d);
        let kappa = rng::tensor(&mut r, d, m);
        let (a_s, c_s) = (SymbolicOperator::annihilation(&zeta), SymbolicOperator::creation(&zeta));
        let (a_f, c_f) = (sp.annihilation_op(&zeta)?, sp.creation_op(&zeta)?);
        let zz = bilinear_pair(&zeta, &zeta)?;

        items[0].record(
            (a_s.bracket(&c_s)?, SymbolicOperator::scalar(d, zz)),
            (commutator(&a_f, &c_f), &id * zz),
            1,
            sp,
        )?;
        items[1].record((a_s.bracket(&n_s)?, a_s.clone()), (commutator(&a_f, &n_f), a_f.clone()), 1, sp)?;
        items[2].record((a_s.bracket(&g_s)?, zero_s.clone()), (commutator(&a_f, &g_f), zero_f.clone()), 0, sp)?;
        items[3].record((c_s.bracket(&n_s)?, c_s.scale(c(-1.0))), (commutator(&c_f, &n_f), &c_f * c(-1.0)), 1, sp)?;
        items[4].record((c_s.bracket(&g_s)?, a_s.scale(c(-2.0))), (commutator(&c_f, &g_f), &a_f * c(-2.0)), 1, sp)?;
        items[5].record((g_s.bracket(&n_s)?, g_s.scale(c(2.0))), (commutator(&g_f, &n_f), &g_f * c(2.0)), 1, sp)?;
        let xi_s = SymbolicOperator::make(Signature::new(0, m), &kappa)?;
        let xi_f = sp.build_xi(0, m, &kappa)?;
        items[6].record(
            (n_s.bracket(&xi_s)?, xi_s.scale(c(-(m as f64)))),
            (commutator(&n_f, &xi_f), &xi_f * c(-(m as f64))),
            1,
            sp,
        )?;

        let y = rng::vector(&mut r, d);
        let xi = rng::vector(&mut r, d);
        let yx = bilinear_pair(&y, &xi)?;
        gccr.record(
            (
                SymbolicOperator::annihilation(&y).bracket(&SymbolicOperator::creation(&xi))?,
                SymbolicOperator::scalar(d, yx),
            ),
            (commutator(&sp.annihilation_op(&y)?, &sp.creation_op(&xi)?), &id * yx),
            1,
            sp,
        )?;

        let k2 = rng::tensor(&mut r, d, 2);
        let lam2_s = SymbolicOperator::make(Signature::new(0, 2), &k2)?;
        let lam2_f = sp.build_xi(0, 2, &k2)?;
        pure.record(
            (lam2_s.bracket(&xi_s)?, zero_s.clone()),
            (commutator(&lam2_f, &xi_f), zero_f.clone()),
            0,
            sp,
        )?;

        // a(f) φ_ξ = ⟨f, ξ⟩ φ_ξ below the cutoff (ξ kept small)
        let xi_small = xi.scale(c(0.5));
        let phi = sp.exponential_vector(&xi_small)?;
        let lhs = &a_f * &phi;
        let rhs = &phi * bilinear_pair(&zeta, &xi_small)?;
        eigen = eigen.max(sp.vector_residual_below(&lhs, &rhs, sp.max_occupation() - 1));
    }

    for it in &items {
        it.report(rec);
    }
    gccr.report(rec);
    pure.report(rec);
    rec.le("a(f) φ_ξ = ⟨f,ξ⟩ φ_ξ below the cutoff", eigen, GUARDED);
    Ok(())
}
