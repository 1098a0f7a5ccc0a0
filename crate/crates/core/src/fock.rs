//! Truncated bosonic Fock space over `d` modes with total occupation `≤ M`.
//!
//! Every operator is stored as the exact compression `P Ξ P` onto the kept
//! sectors: matrix elements between retained occupation states are exact,
//! and creators acting on the top sector simply leave the space. Identities
//! that rely on the CCR therefore hold on source sectors far enough below
//! the cutoff, which is what [`FockSpace::guarded_equal`] checks.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::modespace::{KernelMatrix, ModeConfig, ModeVector};
use crate::tensor::KernelTensor;
use crate::wick::{Signature, MAX_ORDER};
use crate::C64;

pub type FockMatrix = DMatrix<C64>;
pub type FockVector = DVector<C64>;

pub const DEFAULT_GUARD: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockConfig {
    pub mode: ModeConfig,
    /// Maximum total occupation `M`.
    pub max_occupation: usize,
    /// Guard band available to truncated identity checks.
    pub guard: usize,
}

impl FockConfig {
    pub fn new(mode: ModeConfig, max_occupation: usize, guard: usize) -> Result<Self> {
        if max_occupation == 0 {
            return Err(Error::InvalidConfig("M must be at least 1".into()));
        }
        if max_occupation < guard {
            return Err(Error::InvalidConfig(format!(
                "M = {max_occupation} is smaller than the guard band {guard}"
            )));
        }
        Ok(Self {
            mode,
            max_occupation,
            guard,
        })
    }

    /// Convenience: `d` modes, cutoff `M`, default guard (clamped to `M`),
    /// tolerance `1e-10`.
    pub fn small(d: usize, max_occupation: usize) -> Result<Self> {
        let mode = ModeConfig::new(d, 1e-10, 6)?;
        Self::new(mode, max_occupation, DEFAULT_GUARD.min(max_occupation))
    }

    pub fn d(&self) -> usize {
        self.mode.d
    }
}

/// Occupation numbers `α` of one basis state.
pub type OccupationIndex = Vec<usize>;

/// Graded enumeration: sectors by increasing `|α|`, and inside a sector in
/// descending lexicographic order, so `d=2, M=1` gives `(0,0),(1,0),(0,1)`.
pub fn enumerate_basis(d: usize, max_occupation: usize) -> Vec<OccupationIndex> {
    let mut out = Vec::new();
    for n in 0..=max_occupation {
        let mut cur = vec![0; d];
        compositions(n, 0, &mut cur, &mut out);
    }
    out
}

fn compositions(rest: usize, slot: usize, cur: &mut Vec<usize>, out: &mut Vec<OccupationIndex>) {
    let d = cur.len();
    if slot == d - 1 {
        cur[slot] = rest;
        out.push(cur.clone());
        return;
    }
    for k in (0..=rest).rev() {
        cur[slot] = k;
        compositions(rest - k, slot + 1, cur, out);
    }
    cur[slot] = 0;
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn occupation_factorial(alpha: &[usize]) -> f64 {
    alpha.iter().map(|&a| factorial(a)).product()
}

/// Coefficient sequence `(f_0, …, f_M)` of symmetric tensors.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSequence {
    pub d: usize,
    pub sectors: Vec<KernelTensor>,
}

impl CoeffSequence {
    pub fn new(d: usize, sectors: Vec<KernelTensor>) -> Result<Self> {
        for (n, f) in sectors.iter().enumerate() {
            if f.order() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: f.order(),
                });
            }
            if f.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: f.dim(),
                });
            }
        }
        Ok(Self { d, sectors })
    }

    pub fn zeros(d: usize, max_sector: usize) -> Self {
        Self {
            d,
            sectors: (0..=max_sector).map(|n| KernelTensor::zeros(d, n)).collect(),
        }
    }

    /// `(1, ξ, ξ^{⊗2}/2!, …)` up to sector `max_sector`.
    pub fn exponential(xi: &ModeVector, max_sector: usize) -> Self {
        let d = xi.len();
        let sectors = (0..=max_sector)
            .map(|n| {
                let inv = 1.0 / factorial(n);
                KernelTensor::from_fn(d, n, |idx| {
                    idx.iter().map(|&i| xi.0[i]).product::<C64>() * inv
                })
            })
            .collect();
        Self { d, sectors }
    }

    /// `Σ n! |f_n|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.sectors
            .iter()
            .enumerate()
            .map(|(n, f)| factorial(n) * f.norm_sqr())
            .sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.sectors.len().max(other.sectors.len());
        (0..n)
            .map(|k| match (self.sectors.get(k), other.sectors.get(k)) {
                (Some(a), Some(b)) => a.max_abs_diff(b),
                (Some(a), None) | (None, Some(a)) => a.max_abs(),
                (None, None) => 0.0,
            })
            .fold(0.0, f64::max)
    }
}

/// The truncated Fock space with its enumerated basis.
#[derive(Debug, Clone)]
pub struct FockSpace {
    cfg: FockConfig,
    basis: Vec<OccupationIndex>,
    sectors: Vec<usize>,
    index: HashMap<OccupationIndex, usize>,
}

impl FockSpace {
    pub fn new(cfg: FockConfig) -> Self {
        let basis = enumerate_basis(cfg.d(), cfg.max_occupation);
        let sectors = basis.iter().map(|a| a.iter().sum()).collect();
        let index = basis.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        Self {
            cfg,
            basis,
            sectors,
            index,
        }
    }

    pub fn config(&self) -> &FockConfig {
        &self.cfg
    }

    pub fn d(&self) -> usize {
        self.cfg.d()
    }

    pub fn max_occupation(&self) -> usize {
        self.cfg.max_occupation
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[OccupationIndex] {
        &self.basis
    }

    pub fn index_of(&self, alpha: &[usize]) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    /// Total occupation of basis state `i`.
    pub fn sector(&self, i: usize) -> usize {
        self.sectors[i]
    }

    pub fn identity(&self) -> FockMatrix {
        DMatrix::identity(self.dim(), self.dim())
    }

    pub fn zeros(&self) -> FockMatrix {
        DMatrix::zeros(self.dim(), self.dim())
    }

    fn check_mode(&self, i: usize) -> Result<()> {
        if i >= self.d() {
            return Err(Error::ModeIndex { index: i, d: self.d() });
        }
        Ok(())
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.d() {
            return Err(Error::DimensionMismatch {
                expected: self.d(),
                got,
            });
        }
        Ok(())
    }

    /// `a_i e_α = √α_i e_{α−δ_i}` (0-based mode index).
    pub fn mode_annihilator(&self, i: usize) -> Result<FockMatrix> {
        self.check_mode(i)?;
        let mut m = self.zeros();
        for (col, alpha) in self.basis.iter().enumerate() {
            if alpha[i] == 0 {
                continue;
            }
            let mut target = alpha.clone();
            target[i] -= 1;
            let row = self.index[&target];
            m[(row, col)] = C64::new((alpha[i] as f64).sqrt(), 0.0);
        }
        Ok(m)
    }

    /// Hermitian adjoint of the annihilator; kills the top sector.
    pub fn mode_creator(&self, i: usize) -> Result<FockMatrix> {
        Ok(self.mode_annihilator(i)?.adjoint())
    }

    /// `a(f) = Σ fᵢ aᵢ`, unconjugated.
    pub fn annihilation_op(&self, f: &ModeVector) -> Result<FockMatrix> {
        self.check_len(f.len())?;
        let mut m = self.zeros();
        for i in 0..self.d() {
            m += self.mode_annihilator(i)? * f.0[i];
        }
        Ok(m)
    }

    /// `a*(f) = Σ fᵢ aᵢ†`.
    pub fn creation_op(&self, f: &ModeVector) -> Result<FockMatrix> {
        self.check_len(f.len())?;
        let mut m = self.zeros();
        for i in 0..self.d() {
            m += self.mode_creator(i)? * f.0[i];
        }
        Ok(m)
    }

    /// `Ξ_{l,m}(κ) = Σ κ[u⃗,v⃗] a†_{u1}…a†_{ul} a_{v1}…a_{vm}`.
    ///
    /// The kernel is block-symmetrized first; only that part acts.
    pub fn build_xi(&self, l: usize, m: usize, kappa: &KernelTensor) -> Result<FockMatrix> {
        let sig = Signature::new(l, m);
        if l + m > MAX_ORDER {
            return Err(Error::UnsupportedSignature(sig));
        }
        if kappa.order() != l + m {
            return Err(Error::DimensionMismatch {
                expected: l + m,
                got: kappa.order(),
            });
        }
        self.check_len(kappa.dim())?;
        let sym = kappa.symmetrize_blocks(&[l, m]);
        if l + m == 0 {
            return Ok(self.identity() * sym.data()[0]);
        }
        let d = self.d();
        let mcount = d.pow(m as u32);
        let lcount = d.pow(l as u32);
        let mut out = self.zeros();
        let mut ann = vec![0usize; m];
        let mut cre = vec![0usize; l];
        for (col, beta) in self.basis.iter().enumerate() {
            for vflat in 0..mcount {
                decode(vflat, d, &mut ann);
                let mut state = beta.clone();
                let mut amp = 1.0;
                let mut alive = true;
                for &v in ann.iter().rev() {
                    if state[v] == 0 {
                        alive = false;
                        break;
                    }
                    amp *= (state[v] as f64).sqrt();
                    state[v] -= 1;
                }
                if !alive {
                    continue;
                }
                let inner_sector: usize = self.sectors[col] - m;
                if inner_sector + l > self.cfg.max_occupation {
                    continue;
                }
                for uflat in 0..lcount {
                    let coeff = sym.data()[uflat * mcount + vflat];
                    if coeff == C64::new(0.0, 0.0) {
                        continue;
                    }
                    decode(uflat, d, &mut cre);
                    let mut s2 = state.clone();
                    let mut a2 = amp;
                    for &u in cre.iter().rev() {
                        a2 *= ((s2[u] + 1) as f64).sqrt();
                        s2[u] += 1;
                    }
                    let row = self.index[&s2];
                    out[(row, col)] += coeff * a2;
                }
            }
        }
        Ok(out)
    }

    pub fn number_op(&self) -> FockMatrix {
        let mut m = self.zeros();
        for i in 0..self.dim() {
            m[(i, i)] = C64::new(self.sectors[i] as f64, 0.0);
        }
        m
    }

    /// `Δ_G = Σ aᵢ²`.
    pub fn gross_laplacian(&self) -> FockMatrix {
        self.generalized_gross(&KernelMatrix::identity(self.d()))
            .expect("identity kernel has matching shape")
    }

    /// `Λ(S) = Ξ_{1,1}(τ_S)`.
    pub fn conservation_op(&self, s: &KernelMatrix) -> Result<FockMatrix> {
        self.build_xi(1, 1, &KernelTensor::from_matrix(s))
    }

    /// `Δ_G(S) = Ξ_{0,2}(τ_S)`.
    pub fn generalized_gross(&self, s: &KernelMatrix) -> Result<FockMatrix> {
        self.build_xi(0, 2, &KernelTensor::from_matrix(s))
    }

    /// `R_κ = 2 Ξ_{1,1}(κ)` for skew `κ`.
    pub fn rotation_op(&self, kappa: &KernelMatrix) -> Result<FockMatrix> {
        let dev = kappa.skew_deviation();
        if dev > self.cfg.mode.tolerance {
            return Err(Error::NotSkew { deviation: dev });
        }
        Ok(self.build_xi(1, 1, &KernelTensor::from_matrix(kappa))? * C64::new(2.0, 0.0))
    }

    /// `Γ(T)`: acts as `T^{⊗n}` on sector `n`.
    ///
    /// Built from `Γ(T) a†ᵢ Γ(T)⁻¹ = Σ_s T[s,i] a†_s` applied to the
    /// monomial form of each basis state.
    pub fn second_quantization(&self, t: &KernelMatrix) -> Result<FockMatrix> {
        self.check_len(t.dim())?;
        let d = self.d();
        let mut out = self.zeros();
        for (col, beta) in self.basis.iter().enumerate() {
            // unnormalized monomials Π (a†)^α |0⟩
            let mut state: HashMap<Vec<usize>, C64> = HashMap::new();
            state.insert(vec![0; d], C64::new(1.0, 0.0));
            for (i, &bi) in beta.iter().enumerate() {
                for _ in 0..bi {
                    let mut next: HashMap<Vec<usize>, C64> = HashMap::new();
                    for (alpha, c) in &state {
                        for s in 0..d {
                            let w = t.0[(s, i)];
                            if w == C64::new(0.0, 0.0) {
                                continue;
                            }
                            let mut a2 = alpha.clone();
                            a2[s] += 1;
                            *next.entry(a2).or_insert(C64::new(0.0, 0.0)) += c * w;
                        }
                    }
                    state = next;
                }
            }
            let norm_b = occupation_factorial(beta).sqrt();
            for (alpha, c) in state {
                let row = self.index[&alpha];
                out[(row, col)] += c * (occupation_factorial(&alpha).sqrt() / norm_b);
            }
        }
        Ok(out)
    }

    /// `dΓ(T)`: `Σ_k I^{⊗k} ⊗ T ⊗ I^{⊗(n−1−k)}` on sector `n`, zero on the
    /// vacuum. Each tensor slot holding mode `i` is replaced by `T eᵢ`.
    pub fn differential_second_quantization(&self, t: &KernelMatrix) -> Result<FockMatrix> {
        self.check_len(t.dim())?;
        let d = self.d();
        let mut out = self.zeros();
        for (col, beta) in self.basis.iter().enumerate() {
            let norm_b = occupation_factorial(beta).sqrt();
            for i in 0..d {
                if beta[i] == 0 {
                    continue;
                }
                for s in 0..d {
                    let w = t.0[(s, i)];
                    if w == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let mut alpha = beta.clone();
                    alpha[i] -= 1;
                    alpha[s] += 1;
                    let row = self.index[&alpha];
                    let ratio = occupation_factorial(&alpha).sqrt() / norm_b;
                    out[(row, col)] += w * (beta[i] as f64 * ratio);
                }
            }
        }
        Ok(out)
    }

    /// Truncated exponential vector: coefficient `Π ξᵢ^{αᵢ} / √α!` at `α`.
    pub fn exponential_vector(&self, xi: &ModeVector) -> Result<FockVector> {
        self.check_len(xi.len())?;
        Ok(DVector::from_iterator(
            self.dim(),
            self.basis.iter().map(|alpha| {
                let mono: C64 = alpha
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| xi.0[i].powu(a as u32))
                    .product();
                mono / occupation_factorial(alpha).sqrt()
            }),
        ))
    }

    fn check_symmetric(&self, s: &CoeffSequence) -> Result<()> {
        self.check_len(s.d)?;
        for (n, f) in s.sectors.iter().enumerate() {
            let dev = f.symmetry_deviation();
            if dev > self.cfg.mode.tolerance {
                return Err(Error::NotSymmetric { sector: n, deviation: dev });
            }
        }
        Ok(())
    }

    /// `c_α = √α! · Σ_{tuples of content α} f_n[tuple]`. Sectors above
    /// the cutoff are dropped.
    pub fn coeffs_to_fock(&self, s: &CoeffSequence) -> Result<FockVector> {
        self.check_symmetric(s)?;
        let mut out = DVector::zeros(self.dim());
        for (n, f) in s.sectors.iter().enumerate().take(self.cfg.max_occupation + 1) {
            for flat in 0..f.len() {
                let alpha = content_to_occupation(&f.content_of(flat), self.d());
                debug_assert_eq!(alpha.iter().sum::<usize>(), n);
                out[self.index[&alpha]] += f.data()[flat];
            }
        }
        for (i, alpha) in self.basis.iter().enumerate() {
            out[i] *= occupation_factorial(alpha).sqrt();
        }
        Ok(out)
    }

    /// Inverse of [`coeffs_to_fock`](Self::coeffs_to_fock):
    /// `f_n[tuple] = c_α √α! / n!`.
    pub fn fock_to_coeffs(&self, v: &FockVector) -> Result<CoeffSequence> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        let d = self.d();
        let sectors = (0..=self.cfg.max_occupation)
            .map(|n| {
                let nf = factorial(n);
                let mut t = KernelTensor::zeros(d, n);
                for flat in 0..t.len() {
                    let alpha = content_to_occupation(&t.content_of(flat), d);
                    let c = v[self.index[&alpha]];
                    let val = c * (occupation_factorial(&alpha).sqrt() / nf);
                    let mut idx = vec![0; n];
                    t.unflat_into(flat, &mut idx);
                    t.set(&idx, val);
                }
                t
            })
            .collect();
        Ok(CoeffSequence { d, sectors })
    }

    /// Action of `Ξ_{l,m}(κ)` on a Wiener–Itô coefficient sequence:
    /// `g_{l+n} = sym((n+m)!/n! · κ ⊗_m f_{n+m})`. Outputs above the
    /// cutoff are discarded.
    pub fn apply_contraction(
        &self,
        l: usize,
        m: usize,
        kappa: &KernelTensor,
        s: &CoeffSequence,
    ) -> Result<CoeffSequence> {
        if l + m > MAX_ORDER {
            return Err(Error::UnsupportedSignature(Signature::new(l, m)));
        }
        if kappa.order() != l + m {
            return Err(Error::DimensionMismatch {
                expected: l + m,
                got: kappa.order(),
            });
        }
        self.check_symmetric(s)?;
        let cut = self.cfg.max_occupation;
        let ks = kappa.symmetrize_blocks(&[l, m]);
        let mut out = CoeffSequence::zeros(self.d(), cut);
        for n in 0.. {
            if n + m >= s.sectors.len() || l + n > cut {
                break;
            }
            let f = &s.sectors[n + m];
            let factor = factorial(n + m) / factorial(n);
            let g = ks.contract(f, m).scale(C64::new(factor, 0.0)).symmetrize();
            out.sectors[l + n].add_assign_scaled(&g, C64::new(1.0, 0.0));
        }
        Ok(out)
    }

    /// `max |(A−B)[α,β]|` over all rows and columns with
    /// `|β| ≤ M − creator_degree`.
    pub fn guarded_equal(&self, a: &FockMatrix, b: &FockMatrix, creator_degree: usize) -> Result<f64> {
        if creator_degree > self.cfg.guard {
            return Err(Error::GuardExceeded {
                degree: creator_degree,
                guard: self.cfg.guard,
            });
        }
        Ok(self.residual_below(a, b, self.cfg.max_occupation.saturating_sub(creator_degree)))
    }

    /// Max entry of `A − B` over columns in sectors `≤ top`.
    pub fn residual_below(&self, a: &FockMatrix, b: &FockMatrix, top: usize) -> f64 {
        let mut r: f64 = 0.0;
        for col in 0..self.dim() {
            if self.sectors[col] > top {
                continue;
            }
            for row in 0..self.dim() {
                r = r.max((a[(row, col)] - b[(row, col)]).norm());
            }
        }
        r
    }

    /// Vector analogue of [`residual_below`](Self::residual_below): max
    /// entry over rows in sectors `≤ top`.
    pub fn vector_residual_below(&self, a: &FockVector, b: &FockVector, top: usize) -> f64 {
        (0..self.dim())
            .filter(|&i| self.sectors[i] <= top)
            .map(|i| (a[i] - b[i]).norm())
            .fold(0.0, f64::max)
    }

    /// The unique sector shift `|α| − |β|` over nonzero entries, if any.
    pub fn sector_shift(&self, a: &FockMatrix, tol: f64) -> Option<Option<isize>> {
        let mut shift: Option<isize> = None;
        for col in 0..self.dim() {
            for row in 0..self.dim() {
                if a[(row, col)].norm() <= tol {
                    continue;
                }
                let s = self.sectors[row] as isize - self.sectors[col] as isize;
                match shift {
                    None => shift = Some(s),
                    Some(prev) if prev != s => return None,
                    _ => {}
                }
            }
        }
        Some(shift)
    }

    /// Square block of `a` on sector `n`.
    pub fn sector_block(&self, a: &FockMatrix, n: usize) -> FockMatrix {
        let idx: Vec<usize> = (0..self.dim()).filter(|&i| self.sectors[i] == n).collect();
        DMatrix::from_fn(idx.len(), idx.len(), |r, c| a[(idx[r], idx[c])])
    }
}

fn decode(mut flat: usize, d: usize, out: &mut [usize]) {
    for slot in (0..out.len()).rev() {
        out[slot] = flat % d;
        flat /= d;
    }
}

fn content_to_occupation(content: &[usize], d: usize) -> OccupationIndex {
    let mut alpha = vec![0; d];
    for &i in content {
        alpha[i] += 1;
    }
    alpha
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, max_abs};

    fn space(d: usize, m: usize) -> FockSpace {
        FockSpace::new(FockConfig::small(d, m).unwrap())
    }

    fn binom(n: usize, k: usize) -> usize {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }

    #[test]
    fn basis_enumeration() {
        assert_eq!(enumerate_basis(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        // closed forms: Σ_{n≤8}(n+1) = 45 and C(9,3) = 84
        assert_eq!(enumerate_basis(2, 8).len(), (0..=8).map(|n| n + 1).sum::<usize>());
        assert_eq!(enumerate_basis(2, 8).len(), 45);
        assert_eq!(enumerate_basis(3, 6).len(), binom(9, 3));
        assert_eq!(enumerate_basis(3, 6).len(), 84);
        let b = enumerate_basis(3, 4);
        let sectors: Vec<usize> = b.iter().map(|a| a.iter().sum()).collect();
        assert!(sectors.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn ladder_matrix_single_mode() {
        let sp = space(1, 2);
        let a = sp.mode_annihilator(0).unwrap();
        assert_eq!(a[(0, 1)], C64::new(1.0, 0.0));
        assert!((a[(1, 2)] - C64::new(2f64.sqrt(), 0.0)).norm() < 1e-15);
        let nonzero = a.iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 2);
        assert!(matches!(sp.mode_annihilator(1), Err(Error::ModeIndex { .. })));
    }

    #[test]
    fn guard_band_demonstration() {
        let sp = space(2, 5);
        let a = sp.mode_annihilator(0).unwrap();
        let c = sp.mode_creator(0).unwrap();
        let comm = commutator(&a, &c);
        assert!(sp.guarded_equal(&comm, &sp.identity(), 1).unwrap() < 1e-14);
        // unguarded: top-sector state M·δ₀ yields [a,a†] = −M, off by M+1
        let r0 = sp.guarded_equal(&comm, &sp.identity(), 0).unwrap();
        assert!((r0 - 6.0).abs() < 1e-12, "{r0}");
        assert!(sp.guarded_equal(&comm, &comm, 5).is_err());
    }

    #[test]
    fn number_and_gross() {
        let sp = space(2, 4);
        let tau = KernelTensor::from_matrix(&KernelMatrix::identity(2));
        let n = sp.build_xi(1, 1, &tau).unwrap();
        assert!(max_abs(&(n.clone() - sp.number_op())) < 1e-14);
        let g = sp.build_xi(0, 2, &tau).unwrap();
        let a0 = sp.mode_annihilator(0).unwrap();
        let a1 = sp.mode_annihilator(1).unwrap();
        assert!(max_abs(&(g - (&a0 * &a0 + &a1 * &a1))) < 1e-14);
        let skew = KernelMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        assert!(max_abs(&sp.generalized_gross(&skew).unwrap()) < 1e-15);
        assert!(sp.rotation_op(&KernelMatrix::identity(2)).is_err());
    }

    #[test]
    fn xi_signature_limits() {
        let sp = space(2, 3);
        let big = KernelTensor::zeros(2, MAX_ORDER + 1);
        assert!(matches!(
            sp.build_xi(MAX_ORDER + 1, 0, &big),
            Err(Error::UnsupportedSignature(_))
        ));
        assert!(sp.build_xi(1, 1, &KernelTensor::zeros(2, 3)).is_err());
    }

    #[test]
    fn exponential_vector_basics() {
        let sp = space(2, 6);
        let vac = sp.exponential_vector(&ModeVector::zeros(2)).unwrap();
        assert_eq!(vac[0], C64::new(1.0, 0.0));
        assert!(vac.iter().skip(1).all(|z| z.norm() == 0.0));
        let xi = ModeVector::new(vec![C64::new(0.3, 0.1), C64::new(-0.2, 0.25)]);
        let v = sp.exponential_vector(&xi).unwrap();
        let r = xi.norm().powi(2);
        let partial: f64 = (0..=6).map(|n| r.powi(n) / factorial(n as usize)).sum();
        assert!((v.norm_squared() - partial).abs() < 1e-14);
        assert!(v.norm_squared() <= r.exp());
    }

    #[test]
    fn coefficient_normalization() {
        let sp = space(2, 5);
        let xi = ModeVector::new(vec![C64::new(0.4, -0.1), C64::new(0.1, 0.2)]);
        let seq = CoeffSequence::exponential(&xi, 5);
        let v = sp.coeffs_to_fock(&seq).unwrap();
        let e = sp.exponential_vector(&xi).unwrap();
        assert!((v - &e).camax() < 1e-14);
        assert!((seq.norm_sqr() - e.norm_squared()).abs() < 1e-14);
        let back = sp.fock_to_coeffs(&e).unwrap();
        assert!(back.max_abs_diff(&seq) < 1e-14);

        let mut vac = CoeffSequence::zeros(2, 5);
        vac.sectors[0] = KernelTensor::scalar(2, C64::new(1.0, 0.0));
        let vv = sp.coeffs_to_fock(&vac).unwrap();
        assert_eq!(vv[0], C64::new(1.0, 0.0));
        assert!(vv.iter().skip(1).all(|z| z.norm() == 0.0));
    }

    #[test]
    fn non_symmetric_coefficients_rejected() {
        let sp = space(2, 3);
        let mut seq = CoeffSequence::zeros(2, 3);
        seq.sectors[2].set(&[0, 1], C64::new(1.0, 0.0));
        assert!(matches!(sp.coeffs_to_fock(&seq), Err(Error::NotSymmetric { sector: 2, .. })));
    }

    #[test]
    fn contraction_number_operator_eigenvalues() {
        let sp = space(2, 5);
        let tau = KernelTensor::from_matrix(&KernelMatrix::identity(2));
        let xi = ModeVector::new(vec![C64::new(0.3, 0.0), C64::new(0.0, 0.2)]);
        let seq = CoeffSequence::exponential(&xi, 5);
        let out = sp.apply_contraction(1, 1, &tau, &seq).unwrap();
        for n in 0..=5 {
            let expect = seq.sectors[n].scale(C64::new(n as f64, 0.0));
            assert!(out.sectors[n].max_abs_diff(&expect) < 1e-14);
        }
    }

    #[test]
    fn sector_shift_detection() {
        let sp = space(2, 4);
        assert_eq!(sp.sector_shift(&sp.number_op(), 0.0), Some(Some(0)));
        assert_eq!(sp.sector_shift(&sp.gross_laplacian(), 0.0), Some(Some(-2)));
        let mixed = sp.gross_laplacian() + sp.number_op();
        assert_eq!(sp.sector_shift(&mixed, 0.0), None);
    }
}
