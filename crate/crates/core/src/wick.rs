//! Normal-ordered symbolic operators.
//!
//! A [`SymbolicOperator`] is a finite sum `c·Id + Σ Ξ_{l,m}(κ_{l,m})` with
//! one kernel per signature. Kernels are stored block-symmetrized
//! (symmetric within the `l` creator slots and within the `m` annihilator
//! slots), which makes the representation canonical: two operators are
//! equal iff their slots agree entrywise.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fock::{FockMatrix, FockSpace};
use crate::modespace::{KernelMatrix, ModeVector};
use crate::tensor::KernelTensor;
use crate::C64;

/// Highest total order `l + m` the symbolic layer will represent.
pub const MAX_ORDER: usize = 8;

/// Kernels whose entries all fall below this are pruned from canonical form.
pub const PRUNE_EPS: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub creators: usize,
    pub annihilators: usize,
}

impl Signature {
    pub const SCALAR: Signature = Signature::new(0, 0);

    pub const fn new(creators: usize, annihilators: usize) -> Self {
        Self {
            creators,
            annihilators,
        }
    }

    pub fn order(&self) -> usize {
        self.creators + self.annihilators
    }

    pub fn is_supported(&self) -> bool {
        self.order() <= MAX_ORDER
    }

    pub fn mirrored(&self) -> Self {
        Self::new(self.annihilators, self.creators)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.creators, self.annihilators)
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Number of ways to contract `j` of `m_left` annihilators with `j` of
/// `l_right` creators: `j!·C(m_left,j)·C(l_right,j)`.
pub fn wick_coefficient(m_left: usize, l_right: usize, j: usize) -> f64 {
    factorial(j) * binomial(m_left, j) * binomial(l_right, j)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicOperator {
    d: usize,
    terms: BTreeMap<Signature, KernelTensor>,
}

impl SymbolicOperator {
    pub fn zero(d: usize) -> Self {
        Self {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(d: usize, c: C64) -> Self {
        let mut op = Self::zero(d);
        op.accumulate(Signature::SCALAR, KernelTensor::scalar(d, c));
        op
    }

    pub fn identity(d: usize) -> Self {
        Self::scalar(d, C64::new(1.0, 0.0))
    }

    /// Single-term operator `Ξ_{l,m}(κ)`, canonicalized.
    pub fn make(sig: Signature, kernel: &KernelTensor) -> Result<Self> {
        if !sig.is_supported() {
            return Err(Error::UnsupportedSignature(sig));
        }
        if kernel.order() != sig.order() {
            return Err(Error::DimensionMismatch {
                expected: sig.order(),
                got: kernel.order(),
            });
        }
        let mut op = Self::zero(kernel.dim());
        op.accumulate(sig, kernel.clone());
        Ok(op)
    }

    fn make_matrix(sig: Signature, k: &KernelMatrix) -> Self {
        Self::make(sig, &KernelTensor::from_matrix(k)).expect("order-2 signature")
    }

    /// `a(f) = Ξ_{0,1}(f)`.
    pub fn annihilation(f: &ModeVector) -> Self {
        Self::make(Signature::new(0, 1), &KernelTensor::from_vector(f)).expect("order 1")
    }

    /// `a*(f) = Ξ_{1,0}(f)`.
    pub fn creation(f: &ModeVector) -> Self {
        Self::make(Signature::new(1, 0), &KernelTensor::from_vector(f)).expect("order 1")
    }

    pub fn number(d: usize) -> Self {
        Self::conservation(&KernelMatrix::identity(d))
    }

    pub fn gross_laplacian(d: usize) -> Self {
        Self::generalized_gross(&KernelMatrix::identity(d))
    }

    /// `Λ(S) = Ξ_{1,1}(τ_S)`.
    pub fn conservation(s: &KernelMatrix) -> Self {
        Self::make_matrix(Signature::new(1, 1), s)
    }

    /// `Δ_G(S) = Ξ_{0,2}(τ_S)`; vanishes for skew `S`.
    pub fn generalized_gross(s: &KernelMatrix) -> Self {
        Self::make_matrix(Signature::new(0, 2), s)
    }

    /// `R_κ = 2 Ξ_{1,1}(κ)`.
    pub fn rotation(kappa: &KernelMatrix, tol: f64) -> Result<Self> {
        let dev = kappa.skew_deviation();
        if dev > tol {
            return Err(Error::NotSkew { deviation: dev });
        }
        Ok(Self::conservation(kappa).scale(C64::new(2.0, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Signature, KernelTensor> {
        &self.terms
    }

    pub fn term(&self, sig: Signature) -> Option<&KernelTensor> {
        self.terms.get(&sig)
    }

    /// Coefficient of `Id`.
    pub fn scalar_part(&self) -> C64 {
        self.terms
            .get(&Signature::SCALAR)
            .map_or(C64::new(0.0, 0.0), |t| t.data()[0])
    }

    /// Two-slot kernel of signature `sig` as a matrix (zero if absent).
    pub fn matrix_term(&self, sig: Signature) -> KernelMatrix {
        assert_eq!(sig.order(), 2);
        self.terms
            .get(&sig)
            .map_or_else(|| KernelMatrix::zeros(self.d), |t| t.to_matrix())
    }

    pub fn vector_term(&self, sig: Signature) -> ModeVector {
        assert_eq!(sig.order(), 1);
        self.terms
            .get(&sig)
            .map_or_else(|| ModeVector::zeros(self.d), |t| t.to_vector())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest creator count over all terms.
    pub fn creator_degree(&self) -> usize {
        self.terms.keys().map(|s| s.creators).max().unwrap_or(0)
    }

    pub fn signatures(&self) -> impl Iterator<Item = Signature> + '_ {
        self.terms.keys().copied()
    }

    fn accumulate(&mut self, sig: Signature, kernel: KernelTensor) {
        let sym = kernel.symmetrize_blocks(&[sig.creators, sig.annihilators]);
        match self.terms.get_mut(&sig) {
            Some(t) => t.add_assign_scaled(&sym, C64::new(1.0, 0.0)),
            None => {
                self.terms.insert(sig, sym);
            }
        }
        if self.terms[&sig].max_abs() <= PRUNE_EPS {
            self.terms.remove(&sig);
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = Self::zero(self.d);
        for (sig, t) in &self.terms {
            let s = t.scale(c);
            if s.max_abs() > PRUNE_EPS {
                out.terms.insert(*sig, s);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (sig, t) in &other.terms {
            out.add_canonical(*sig, t, C64::new(1.0, 0.0));
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// `t` is already block-symmetric.
    fn add_canonical(&mut self, sig: Signature, t: &KernelTensor, c: C64) {
        match self.terms.get_mut(&sig) {
            Some(existing) => existing.add_assign_scaled(t, c),
            None => {
                self.terms.insert(sig, t.scale(c));
            }
        }
        if self.terms[&sig].max_abs() <= PRUNE_EPS {
            self.terms.remove(&sig);
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        Ok(())
    }

    /// Normal-ordered product `A·B`.
    ///
    /// For each term pair and each contraction count `j`, the last `j`
    /// annihilator slots of `A` are paired bilinearly with the first `j`
    /// creator slots of `B`; block symmetry makes every choice of pairing
    /// equivalent, so the multiplicity is [`wick_coefficient`].
    pub fn wick_product(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.d);
        for (&sa, ka) in &self.terms {
            for (&sb, kb) in &other.terms {
                let (l1, m1) = (sa.creators, sa.annihilators);
                let (l2, m2) = (sb.creators, sb.annihilators);
                for j in 0..=m1.min(l2) {
                    let sig = Signature::new(l1 + l2 - j, m1 + m2 - j);
                    if !sig.is_supported() {
                        return Err(Error::UnsupportedProduct {
                            left: sa,
                            right: sb,
                            result: sig,
                        });
                    }
                    let raw = ka.contract(kb, j);
                    // raw slots: [u (l1), v' (m1-j), x' (l2-j), y (m2)]
                    let mut perm = Vec::with_capacity(sig.order());
                    perm.extend(0..l1);
                    perm.extend(l1 + m1 - j..l1 + m1 - j + l2 - j);
                    perm.extend(l1..l1 + m1 - j);
                    perm.extend(l1 + m1 - j + l2 - j..raw.order());
                    let arranged = raw.permute_slots(&perm);
                    let coef = wick_coefficient(m1, l2, j);
                    out.accumulate(sig, arranged.scale(C64::new(coef, 0.0)));
                }
            }
        }
        Ok(out)
    }

    /// `[A, B] = AB − BA` in canonical form.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.wick_product(other)?.sub(&other.wick_product(self)?)
    }

    /// Hermitian adjoint: `Ξ_{l,m}(κ) ↦ Ξ_{m,l}(κ†)`.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.d);
        for (sig, t) in &self.terms {
            let (l, m) = (sig.creators, sig.annihilators);
            let mut perm: Vec<usize> = (l..l + m).collect();
            perm.extend(0..l);
            let swapped = t.permute_slots(&perm).conj();
            out.terms.insert(sig.mirrored(), swapped);
        }
        out
    }

    /// Largest entrywise difference over all slots.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut r: f64 = 0.0;
        for (sig, t) in &self.terms {
            r = r.max(match other.terms.get(sig) {
                Some(u) => t.max_abs_diff(u),
                None => t.max_abs(),
            });
        }
        for (sig, u) in &other.terms {
            if !self.terms.contains_key(sig) {
                r = r.max(u.max_abs());
            }
        }
        r
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.d == other.d && self.max_abs_diff(other) <= tol
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|t| t.max_abs()).fold(0.0, f64::max)
    }
}

/// `scalar·Id + Σ build_xi` per term.
pub fn to_fock(space: &FockSpace, op: &SymbolicOperator) -> Result<FockMatrix> {
    let mut m = space.zeros();
    for (sig, t) in op.terms() {
        m += space.build_xi(sig.creators, sig.annihilators, t)?;
    }
    Ok(m)
}

impl fmt::Display for SymbolicOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(sig, t)| {
                if *sig == Signature::SCALAR {
                    format!("{}·Id", t.data()[0])
                } else {
                    format!("Ξ{sig}[|κ|∞={:.3e}]", t.max_abs())
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modespace::bilinear_pair;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn skew() -> KernelMatrix {
        KernelMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]])
    }

    #[test]
    fn coefficient_table() {
        assert_eq!(wick_coefficient(1, 1, 1), 1.0);
        assert_eq!(wick_coefficient(2, 2, 1), 4.0);
        assert_eq!(wick_coefficient(2, 2, 2), 2.0);
        assert_eq!(wick_coefficient(3, 1, 1), 3.0);
        assert_eq!(wick_coefficient(3, 2, 0), 1.0);
    }

    #[test]
    fn make_canonicalizes() {
        let n = SymbolicOperator::number(2);
        assert_eq!(n.matrix_term(Signature::new(1, 1)), KernelMatrix::identity(2));
        assert!(SymbolicOperator::generalized_gross(&skew()).is_zero());
        let euler = SymbolicOperator::gross_laplacian(2)
            .add(&SymbolicOperator::number(2))
            .unwrap();
        assert_eq!(euler.terms().len(), 2);
        assert!(SymbolicOperator::make(Signature::new(MAX_ORDER, 1), &KernelTensor::zeros(2, MAX_ORDER + 1)).is_err());
        assert!(SymbolicOperator::make(Signature::new(1, 1), &KernelTensor::zeros(2, 3)).is_err());
    }

    #[test]
    fn generalized_ccr_product() {
        let y = ModeVector::new(vec![c(0.3, 0.1), c(-1.0, 0.5)]);
        let xi = ModeVector::new(vec![c(2.0, 0.0), c(0.0, 1.0)]);
        let prod = SymbolicOperator::annihilation(&y)
            .wick_product(&SymbolicOperator::creation(&xi))
            .unwrap();
        let pair = bilinear_pair(&y, &xi).unwrap();
        assert!((prod.scalar_part() - pair).norm() < 1e-14);
        let expected_11 = KernelTensor::from_fn(2, 2, |i| xi.0[i[0]] * y.0[i[1]]);
        assert!(prod.term(Signature::new(1, 1)).unwrap().max_abs_diff(&expected_11) < 1e-14);
        let br = SymbolicOperator::annihilation(&y)
            .bracket(&SymbolicOperator::creation(&xi))
            .unwrap();
        assert!(br.approx_eq(&SymbolicOperator::scalar(2, pair), 1e-14));
    }

    #[test]
    fn scalar_bilinearity() {
        let a = SymbolicOperator::annihilation(&ModeVector::real(&[1.0, 2.0]));
        let b = SymbolicOperator::number(2);
        let s = c(0.5, -2.0);
        let lhs = a.scale(s).wick_product(&b).unwrap();
        let rhs = a.wick_product(&b).unwrap().scale(s);
        assert!(lhs.approx_eq(&rhs, 1e-14));
    }

    #[test]
    fn gross_times_adjoint_gross() {
        // Ξ_{0,2}(τ) Ξ_{2,0}(τ) at d=2: scalar 2·tr(τ·τ) = 4, (1,1) part 4τ
        let tau = KernelTensor::from_matrix(&KernelMatrix::identity(2));
        let lower = SymbolicOperator::make(Signature::new(0, 2), &tau).unwrap();
        let upper = SymbolicOperator::make(Signature::new(2, 0), &tau).unwrap();
        let p = lower.wick_product(&upper).unwrap();
        assert!((p.scalar_part() - c(4.0, 0.0)).norm() < 1e-14);
        assert!(p.matrix_term(Signature::new(1, 1)).max_abs_diff(&KernelMatrix::identity(2).scale(c(4.0, 0.0))) < 1e-14);
        assert!(p.term(Signature::new(2, 2)).is_some());
    }

    #[test]
    fn bracket_examples() {
        let d = 2;
        let f1 = KernelMatrix::from_real_rows(&[&[1.0, 2.0], &[0.5, -1.0]]);
        let f2 = KernelMatrix::from_real_rows(&[&[0.0, 3.0], &[1.0, 2.0]]);
        let br = SymbolicOperator::conservation(&f1)
            .bracket(&SymbolicOperator::conservation(&f2))
            .unwrap();
        let expect = SymbolicOperator::conservation(&KernelMatrix(&f1.0 * &f2.0 - &f2.0 * &f1.0));
        assert!(br.approx_eq(&expect, 1e-13));

        let g = SymbolicOperator::gross_laplacian(d);
        let n = SymbolicOperator::number(d);
        assert!(g.bracket(&n).unwrap().approx_eq(&g.scale(c(2.0, 0.0)), 1e-14));

        let k3 = KernelTensor::from_fn(d, 3, |i| c((i[0] + 2 * i[1] + 3 * i[2]) as f64, i[0] as f64));
        let x03 = SymbolicOperator::make(Signature::new(0, 3), &k3).unwrap();
        assert!(n.bracket(&x03).unwrap().approx_eq(&x03.scale(c(-3.0, 0.0)), 1e-13));
    }

    #[test]
    fn adjoint_examples() {
        let f = ModeVector::new(vec![c(1.0, 2.0), c(0.0, -1.0)]);
        let a = SymbolicOperator::annihilation(&f);
        assert!(a.adjoint().approx_eq(&SymbolicOperator::creation(&f.conjugate()), 0.0));
        let mixed = a.add(&SymbolicOperator::conservation(&KernelMatrix::from_rows(&[
            vec![c(1.0, 1.0), c(0.0, 2.0)],
            vec![c(3.0, 0.0), c(-1.0, 0.5)],
        ])))
        .unwrap();
        assert!(mixed.adjoint().adjoint().approx_eq(&mixed, 0.0));
        let n = SymbolicOperator::number(3);
        assert!(n.adjoint().approx_eq(&n, 0.0));
    }

    #[test]
    fn unsupported_product_reports_pair() {
        let big = KernelTensor::zeros(1, MAX_ORDER).scale(c(1.0, 0.0));
        let mut k = big.clone();
        k.set(&[0; MAX_ORDER], c(1.0, 0.0));
        let x = SymbolicOperator::make(Signature::new(MAX_ORDER, 0), &k).unwrap();
        let y = SymbolicOperator::make(Signature::new(0, MAX_ORDER), &k).unwrap();
        match y.wick_product(&x) {
            Err(Error::UnsupportedProduct { left, right, .. }) => {
                assert_eq!(left, Signature::new(0, MAX_ORDER));
                assert_eq!(right, Signature::new(MAX_ORDER, 0));
            }
            other => panic!("expected unsupported product, got {other:?}"),
        }
    }
}
