#![allow(dead_code)]

use nalgebra::DMatrix;
use qwn_core::linalg::{commutator, numerical_rank};
use qwn_core::{FockMatrix, FockSpace, KernelMatrix, KernelTensor, ModeVector, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn random_c(r: &mut ChaCha8Rng) -> C64 {
    C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn random_vector(r: &mut ChaCha8Rng, d: usize) -> ModeVector {
    ModeVector::new((0..d).map(|_| random_c(r)).collect())
}

pub fn random_matrix(r: &mut ChaCha8Rng, d: usize) -> KernelMatrix {
    KernelMatrix(DMatrix::from_fn(d, d, |_, _| random_c(r)))
}

pub fn random_skew(r: &mut ChaCha8Rng, d: usize) -> KernelMatrix {
    random_matrix(r, d).skew_part()
}

pub fn random_real_skew(r: &mut ChaCha8Rng, d: usize) -> KernelMatrix {
    let m = DMatrix::from_fn(d, d, |_, _| C64::new(r.gen_range(-1.0..1.0), 0.0));
    KernelMatrix(m).skew_part()
}

pub fn random_tensor(r: &mut ChaCha8Rng, d: usize, order: usize) -> KernelTensor {
    KernelTensor::from_fn(d, order, |_| random_c(r))
}

/// Indices of basis states with total occupation at most `cutoff`.
pub fn low_indices(space: &FockSpace, cutoff: usize) -> Vec<usize> {
    (0..space.dim()).filter(|&i| space.sector(i) <= cutoff).collect()
}

fn low_block_vec(m: &FockMatrix, idx: &[usize]) -> Vec<C64> {
    let mut v = Vec::with_capacity(idx.len() * idx.len());
    for &j in idx {
        for &i in idx {
            v.push(m[(i, j)]);
        }
    }
    v
}

/// Brute-force Lie closure of truncated Fock matrices. Brackets are plain
/// matrix commutators; independence is decided on the block of sectors
/// `≤ cutoff`, far below where truncation corrupts nested commutators.
pub struct MatrixAlgebra {
    pub elements: Vec<FockMatrix>,
    idx: Vec<usize>,
    tol: f64,
}

impl MatrixAlgebra {
    pub fn new(space: &FockSpace, cutoff: usize, tol: f64) -> Self {
        Self {
            elements: Vec::new(),
            idx: low_indices(space, cutoff),
            tol,
        }
    }

    fn rank_of(&self, ms: &[&FockMatrix]) -> usize {
        if ms.is_empty() {
            return 0;
        }
        let cols: Vec<Vec<C64>> = ms.iter().map(|m| low_block_vec(m, &self.idx)).collect();
        let mat = DMatrix::from_fn(cols[0].len(), cols.len(), |i, j| cols[j][i]);
        let smax = mat.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if smax < 1e-9 {
            return 0;
        }
        numerical_rank(&mat, self.tol)
    }

    /// Independent subset of `ms`, greedily in order.
    pub fn independent(&self, ms: Vec<FockMatrix>) -> Vec<FockMatrix> {
        let mut out: Vec<FockMatrix> = Vec::new();
        for m in ms {
            let mut trial: Vec<&FockMatrix> = out.iter().collect();
            trial.push(&m);
            if self.rank_of(&trial) > out.len() {
                out.push(m);
            }
        }
        out
    }

    pub fn close(&mut self, gens: Vec<FockMatrix>, rounds: usize) -> usize {
        self.elements = self.independent(gens);
        for _ in 0..rounds {
            let n = self.elements.len();
            let mut cand = self.elements.clone();
            for i in 0..n {
                for j in (i + 1)..n {
                    cand.push(commutator(&self.elements[i], &self.elements[j]));
                }
            }
            self.elements = self.independent(cand);
            if self.elements.len() == n {
                break;
            }
        }
        self.elements.len()
    }

    fn bracket_span(&self, a: &[FockMatrix], b: &[FockMatrix]) -> Vec<FockMatrix> {
        let mut cand = Vec::new();
        for x in a {
            for y in b {
                cand.push(commutator(x, y));
            }
        }
        self.independent(cand)
    }

    pub fn derived_series(&self) -> Vec<usize> {
        let mut cur = self.elements.clone();
        let mut dims = vec![cur.len()];
        while !cur.is_empty() {
            let next = self.bracket_span(&cur, &cur);
            let stable = next.len() == cur.len();
            dims.push(next.len());
            cur = next;
            if stable {
                break;
            }
        }
        dims
    }

    pub fn lower_central_series(&self) -> Vec<usize> {
        let mut cur = self.elements.clone();
        let mut dims = vec![cur.len()];
        while !cur.is_empty() {
            let next = self.bracket_span(&self.elements, &cur);
            let stable = next.len() == cur.len();
            dims.push(next.len());
            cur = next;
            if stable {
                break;
            }
        }
        dims
    }
}
