mod common;

use common::*;
use qwn_core::liealg::{
    base_generators, closure, contains_identity, fixed_point_generators, formal_ops, ideal_closure,
    pure_annihilation_generators, realized_ops, standard_generators, CoordMode, Coordinatizer, FormalOperator,
    LieAnalysis, LieBasis, LieElement, StructureConstants,
};
use qwn_core::{FockConfig, FockMatrix, FockSpace, KernelMatrix, ModeConfig, ModeVector, SymbolicOperator, C64};

const TOL: f64 = 1e-9;

fn rot() -> KernelMatrix {
    KernelMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]])
}

fn cfg2() -> ModeConfig {
    ModeConfig::new(2, 1e-10, 6).unwrap()
}

fn realized(gens: &[SymbolicOperator], m_max: usize) -> LieBasis<SymbolicOperator> {
    closure(gens, &Coordinatizer::new(2, m_max, CoordMode::Realized), TOL, 8).unwrap()
}

fn formal(gens: &[FormalOperator], m_max: usize) -> LieBasis<FormalOperator> {
    closure(gens, &Coordinatizer::new(2, m_max, CoordMode::Formal), TOL, 8).unwrap()
}

fn big_space() -> FockSpace {
    FockSpace::new(FockConfig::new(ModeConfig::new(2, 1e-10, 6).unwrap(), 12, 4).unwrap())
}

fn oracle(gens: Vec<FockMatrix>, space: &FockSpace) -> MatrixAlgebra {
    let mut alg = MatrixAlgebra::new(space, 3, TOL);
    alg.close(gens, 8);
    alg
}

#[test]
fn base_algebra_is_five_dimensional_solvable_not_nilpotent() {
    let z = ModeVector::real(&[1.0, 0.0]);
    let b = realized(&realized_ops(&base_generators(&z)), 2);
    let an = LieAnalysis::of(&b).unwrap();
    assert_eq!(an.dim, 5);
    assert!(an.solvable);
    assert!(!an.nilpotent);

    let sp = big_space();
    let alg = oracle(
        vec![
            sp.identity(),
            sp.annihilation_op(&z).unwrap(),
            sp.creation_op(&z).unwrap(),
            sp.number_op(),
            sp.gross_laplacian(),
        ],
        &sp,
    );
    assert_eq!(alg.elements.len(), 5);
    assert_eq!(alg.derived_series(), an.derived_series);
    assert_eq!(alg.lower_central_series(), an.lower_central_series);
}

#[test]
fn pure_annihilation_algebra_has_dimension_n_plus_one() {
    let mut r = rng(11);
    let k1 = random_tensor(&mut r, 2, 2);
    let k2 = random_tensor(&mut r, 2, 3);
    let gens = pure_annihilation_generators(2, &[k1, k2]).unwrap();
    let an = LieAnalysis::of(&realized(&realized_ops(&gens), 3)).unwrap();
    assert_eq!(an.dim, 3);
    assert!(an.solvable && !an.nilpotent);
}

#[test]
fn rotation_example_matches_matrix_oracle() {
    let s = rot();
    let z = ModeVector::real(&[1.0, 0.0]);
    let gens = standard_generators(&s, &z, &cfg2()).unwrap();

    let sp = big_space();
    let sz = s.apply(&z).unwrap();
    let alg = oracle(
        vec![
            sp.identity(),
            sp.annihilation_op(&z).unwrap(),
            sp.annihilation_op(&sz).unwrap(),
            sp.creation_op(&z).unwrap(),
            sp.creation_op(&sz).unwrap(),
            sp.number_op(),
            sp.conservation_op(&s).unwrap(),
            sp.gross_laplacian(),
            sp.generalized_gross(&s).unwrap(),
        ],
        &sp,
    );
    // frozen from the oracle
    assert_eq!(alg.elements.len(), 8);
    assert_eq!(alg.derived_series(), vec![8, 6, 3, 0]);
    assert_eq!(alg.lower_central_series(), vec![8, 6, 6]);

    let r = LieAnalysis::of(&realized(&realized_ops(&gens), 2)).unwrap();
    assert_eq!(r.dim, 8);
    assert_eq!(r.derived_series, vec![8, 6, 3, 0]);
    assert_eq!(r.lower_central_series, vec![8, 6, 6]);
    assert!(r.solvable && !r.nilpotent && !r.semisimple);

    let f = LieAnalysis::of(&formal(&formal_ops(&gens), 2)).unwrap();
    assert_eq!(f.dim, 9);
    assert_eq!(f.derived_series, vec![9, 7, 3, 0]);
    assert_eq!(f.lower_central_series, vec![9, 7, 7]);
}

#[test]
fn eigenvector_example_realized_six_formal_seven() {
    let s = KernelMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(0.0, 0.0)]]);
    let z = ModeVector::new(vec![c(1.0, 0.0), c(0.0, -1.0)]);
    assert!(s.apply(&z).unwrap().max_abs_diff(&z) < 1e-15);
    let gens = standard_generators(&s, &z, &cfg2()).unwrap();
    assert_eq!(realized(&realized_ops(&gens), 2).dim(), 6);
    assert_eq!(formal(&formal_ops(&gens), 2).dim(), 7);
}

#[test]
fn fixed_point_algebra_is_six_dimensional_and_not_solvable() {
    let k = KernelMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]);
    let z = ModeVector::real(&[1.0, 0.0]);
    let gens = fixed_point_generators(&k, &k, &z, 1e-12).unwrap();
    let b = realized(&realized_ops(&gens), 2);
    let an = LieAnalysis::of(&b).unwrap();
    assert_eq!(an.dim, 6);
    assert!(!an.solvable);
    assert_eq!(an.derived_series, vec![6, 6]);
    assert!(b.is_adjoint_closed().unwrap());

    let sp = big_space();
    let alg = oracle(
        vec![
            sp.identity(),
            sp.annihilation_op(&z).unwrap(),
            sp.creation_op(&z).unwrap(),
            sp.conservation_op(&k).unwrap(),
            sp.generalized_gross(&k).unwrap(),
            sp.generalized_gross(&k).unwrap().adjoint(),
        ],
        &sp,
    );
    assert_eq!(alg.elements.len(), 6);
    assert_eq!(alg.derived_series(), vec![6, 6]);
}

#[test]
fn killing_form_degenerate_whenever_identity_present() {
    let z = ModeVector::real(&[1.0, 0.0]);
    let k = KernelMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]);
    let sets = vec![
        base_generators(&z),
        standard_generators(&rot(), &z, &cfg2()).unwrap(),
        fixed_point_generators(&k, &k, &z, 1e-12).unwrap(),
    ];
    for g in sets {
        let b = realized(&realized_ops(&g), 2);
        let an = LieAnalysis::of(&b).unwrap();
        assert!(an.contains_identity);
        assert!(an.killing_rank < an.dim);
        assert!(!an.semisimple);
        let sc = StructureConstants::from_basis(&b).unwrap();
        // Id is central: its ad matrix vanishes
        let (id, _) = b.express(&SymbolicOperator::identity(2)).unwrap();
        let ad_id: nalgebra::DMatrix<C64> = (0..b.dim()).fold(nalgebra::DMatrix::zeros(b.dim(), b.dim()), |acc, i| {
            acc + sc.ad(i) * id[i]
        });
        assert!(ad_id.iter().all(|z| z.norm() < 1e-10));
    }
}

#[test]
fn structure_constants_are_antisymmetric_and_satisfy_jacobi() {
    let z = ModeVector::real(&[1.0, 0.0]);
    let k = KernelMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]);
    for g in [
        standard_generators(&rot(), &z, &cfg2()).unwrap(),
        fixed_point_generators(&k, &k, &z, 1e-12).unwrap(),
    ] {
        let sc = StructureConstants::from_basis(&realized(&realized_ops(&g), 2)).unwrap();
        assert!(sc.antisymmetry_residual() == 0.0);
        assert!(sc.jacobi_residual() < 1e-9, "{}", sc.jacobi_residual());
    }
}

#[test]
fn closure_is_idempotent() {
    let z = ModeVector::real(&[1.0, 0.0]);
    let b = realized(&realized_ops(&standard_generators(&rot(), &z, &cfg2()).unwrap()), 2);
    let again = realized(b.elements(), 2);
    assert_eq!(again.dim(), b.dim());
}

#[test]
fn verdicts_invariant_under_generator_mixing() {
    let z = ModeVector::real(&[1.0, 0.0]);
    let gens = realized_ops(&standard_generators(&rot(), &z, &cfg2()).unwrap());
    let base = LieAnalysis::of(&realized(&gens, 2)).unwrap();
    let mut r = rng(5);
    for _ in 0..3 {
        // unit upper-triangular mixing is always invertible
        let n = gens.len();
        let mixed: Vec<SymbolicOperator> = (0..n)
            .map(|i| {
                let items: Vec<(C64, &SymbolicOperator)> = (i..n)
                    .map(|j| (if i == j { c(1.0, 0.0) } else { random_c(&mut r) }, &gens[j]))
                    .collect();
                SymbolicOperator::linear_combination(2, &items).unwrap()
            })
            .collect();
        let an = LieAnalysis::of(&realized(&mixed, 2)).unwrap();
        assert_eq!(an.dim, base.dim);
        assert_eq!(an.derived_series, base.derived_series);
        assert_eq!(an.lower_central_series, base.lower_central_series);
        assert_eq!(an.solvable, base.solvable);
        assert_eq!(an.nilpotent, base.nilpotent);
    }
}

#[test]
fn abelian_annihilation_pair_is_nilpotent() {
    let mut r = rng(3);
    let gens = vec![
        SymbolicOperator::generalized_gross(&random_matrix(&mut r, 2)),
        SymbolicOperator::generalized_gross(&random_matrix(&mut r, 2)),
    ];
    let an = LieAnalysis::of(&realized(&gens, 2)).unwrap();
    assert_eq!(an.dim, 2);
    assert!(an.nilpotent && an.solvable);
}

#[test]
fn ideals_contain_identity_for_non_isotropic_direction() {
    let s = rot();
    let z = ModeVector::real(&[1.0, 0.0]);
    let gens = realized_ops(&standard_generators(&s, &z, &cfg2()).unwrap());
    let b = realized(&gens, 2);
    let sz = s.apply(&z).unwrap();
    let cases = [
        SymbolicOperator::annihilation(&z),
        SymbolicOperator::creation(&sz),
        SymbolicOperator::number(2),
        SymbolicOperator::conservation(&s),
        SymbolicOperator::gross_laplacian(2),
    ];
    for x in &cases {
        let sub = ideal_closure(x, &b).unwrap();
        assert!(contains_identity(&sub, &b).unwrap(), "{x}");
    }
}

#[test]
fn isotropic_direction_ideal_misses_identity() {
    // ζ = (1, −i) has ⟨ζ,ζ⟩ = 0 and is an eigenvector of the rotation
    let s = rot();
    let z = ModeVector::new(vec![c(1.0, 0.0), c(0.0, -1.0)]);
    let gens = realized_ops(&standard_generators(&s, &z, &cfg2()).unwrap());
    let b = realized(&gens, 2);
    let sub = ideal_closure(&SymbolicOperator::annihilation(&z), &b).unwrap();
    assert_eq!(sub.dim(), 1);
    assert!(!contains_identity(&sub, &b).unwrap());
}

#[test]
fn formal_mode_jacobi_is_reported() {
    let z = ModeVector::real(&[1.0, 0.0]);
    let gens = formal_ops(&standard_generators(&rot(), &z, &cfg2()).unwrap());
    let an = LieAnalysis::of(&formal(&gens, 2)).unwrap();
    assert!(an.jacobi_residual.is_finite());
}
