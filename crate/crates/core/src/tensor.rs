//! Dense complex tensors over `d` modes, stored row-major.

use std::collections::HashMap;

use crate::modespace::{KernelMatrix, ModeVector};
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct KernelTensor {
    d: usize,
    order: usize,
    data: Vec<C64>,
}

impl KernelTensor {
    pub fn zeros(d: usize, order: usize) -> Self {
        Self {
            d,
            order,
            data: vec![C64::new(0.0, 0.0); d.pow(order as u32)],
        }
    }

    pub fn scalar(d: usize, c: C64) -> Self {
        Self {
            d,
            order: 0,
            data: vec![c],
        }
    }

    pub fn from_vector(v: &ModeVector) -> Self {
        Self {
            d: v.len(),
            order: 1,
            data: v.0.iter().cloned().collect(),
        }
    }

    /// Slot order `(s, t)` with `κ[s,t]` at flat index `s·d + t`.
    pub fn from_matrix(m: &KernelMatrix) -> Self {
        let d = m.dim();
        let mut data = Vec::with_capacity(d * d);
        for s in 0..d {
            for t in 0..d {
                data.push(m.0[(s, t)]);
            }
        }
        Self { d, order: 2, data }
    }

    pub fn from_fn(d: usize, order: usize, mut f: impl FnMut(&[usize]) -> C64) -> Self {
        let mut t = Self::zeros(d, order);
        let mut idx = vec![0usize; order];
        for flat in 0..t.data.len() {
            t.unflat_into(flat, &mut idx);
            t.data[flat] = f(&idx);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn to_matrix(&self) -> KernelMatrix {
        assert_eq!(self.order, 2, "to_matrix on order-{} tensor", self.order);
        let d = self.d;
        KernelMatrix(nalgebra::DMatrix::from_fn(d, d, |s, t| self.data[s * d + t]))
    }

    pub fn to_vector(&self) -> ModeVector {
        assert_eq!(self.order, 1, "to_vector on order-{} tensor", self.order);
        ModeVector::new(self.data.clone())
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.d + i)
    }

    pub fn unflat_into(&self, mut flat: usize, idx: &mut [usize]) {
        for slot in (0..self.order).rev() {
            idx[slot] = flat % self.d;
            flat /= self.d;
        }
    }

    pub fn get(&self, idx: &[usize]) -> C64 {
        self.data[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: C64) {
        let f = self.flat(idx);
        self.data[f] = v;
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            d: self.d,
            order: self.order,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: C64) {
        assert_eq!((self.d, self.order), (other.d, other.order));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * c;
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            d: self.d,
            order: self.order,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.d, self.order), (other.d, other.order));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Hilbert–Schmidt norm squared, `Σ |t[i]|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Reorder slots: output slot `k` takes input slot `perm[k]`.
    pub fn permute_slots(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.order);
        let mut out = Self::zeros(self.d, self.order);
        let mut idx = vec![0usize; self.order];
        let mut src = vec![0usize; self.order];
        for flat in 0..self.data.len() {
            self.unflat_into(flat, &mut idx);
            for k in 0..self.order {
                src[perm[k]] = idx[k];
            }
            out.data[flat] = self.data[self.flat(&src)];
        }
        out
    }

    /// Average over all permutations within each block of consecutive
    /// slots given by `blocks` (block sizes summing to the order).
    ///
    /// Averaging over a permutation group equals averaging over the orbit
    /// of each index tuple, and orbits are exactly tuples with the same
    /// sorted content per block.
    pub fn symmetrize_blocks(&self, blocks: &[usize]) -> Self {
        assert_eq!(blocks.iter().sum::<usize>(), self.order);
        let mut sums: HashMap<Vec<usize>, (C64, usize)> = HashMap::new();
        let mut idx = vec![0usize; self.order];
        for flat in 0..self.data.len() {
            self.unflat_into(flat, &mut idx);
            let key = block_content(&idx, blocks);
            let e = sums.entry(key).or_insert((C64::new(0.0, 0.0), 0));
            e.0 += self.data[flat];
            e.1 += 1;
        }
        let mut out = Self::zeros(self.d, self.order);
        for flat in 0..self.data.len() {
            self.unflat_into(flat, &mut idx);
            let (s, n) = sums[&block_content(&idx, blocks)];
            out.data[flat] = s / n as f64;
        }
        out
    }

    pub fn symmetrize(&self) -> Self {
        self.symmetrize_blocks(&[self.order])
    }

    /// Max deviation from full permutation symmetry.
    pub fn symmetry_deviation(&self) -> f64 {
        self.max_abs_diff(&self.symmetrize())
    }

    /// Contract the last `j` slots of `self` against the first `j` slots of
    /// `other`, bilinearly. Output slots: the remaining slots of `self`
    /// followed by the remaining slots of `other`.
    pub fn contract(&self, other: &Self, j: usize) -> Self {
        assert_eq!(self.d, other.d);
        assert!(j <= self.order && j <= other.order);
        let d = self.d;
        let left_free = self.order - j;
        let right_free = other.order - j;
        let inner = d.pow(j as u32);
        let rstride = d.pow(right_free as u32);
        let lcount = d.pow(left_free as u32);
        let mut out = Self::zeros(d, left_free + right_free);
        for a in 0..lcount {
            for b in 0..rstride {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..inner {
                    acc += self.data[a * inner + k] * other.data[k * rstride + b];
                }
                out.data[a * rstride + b] = acc;
            }
        }
        out
    }

    /// Sorted content of every index tuple, keyed by flat index; used to
    /// group entries by occupation pattern.
    pub fn content_of(&self, flat: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.order];
        self.unflat_into(flat, &mut idx);
        idx.sort_unstable();
        idx
    }
}

fn block_content(idx: &[usize], blocks: &[usize]) -> Vec<usize> {
    let mut key = Vec::with_capacity(idx.len() + blocks.len());
    let mut start = 0;
    for &b in blocks {
        let mut part = idx[start..start + b].to_vec();
        part.sort_unstable();
        key.extend(part);
        key.push(usize::MAX);
        start += b;
    }
    key
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn flat_index_roundtrip() {
        let t = KernelTensor::zeros(3, 4);
        let mut idx = vec![0; 4];
        for f in 0..t.len() {
            t.unflat_into(f, &mut idx);
            assert_eq!(t.flat(&idx), f);
        }
    }

    #[test]
    fn symmetrize_matrix() {
        let m = KernelMatrix::from_real_rows(&[&[1.0, 2.0], &[4.0, 3.0]]);
        let t = KernelTensor::from_matrix(&m).symmetrize();
        assert_eq!(t.to_matrix(), KernelMatrix::from_real_rows(&[&[1.0, 3.0], &[3.0, 3.0]]));
        let skew = KernelMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        assert_eq!(KernelTensor::from_matrix(&skew).symmetrize().max_abs(), 0.0);
    }

    #[test]
    fn block_symmetrize_leaves_blocks_separate() {
        // order 3, blocks [1, 2]: symmetric in slots 1,2 only
        let t = KernelTensor::from_fn(2, 3, |i| c((i[0] * 4 + i[1] * 2 + i[2]) as f64));
        let s = t.symmetrize_blocks(&[1, 2]);
        assert_eq!(s.get(&[0, 0, 1]), s.get(&[0, 1, 0]));
        assert_eq!(s.get(&[0, 0, 1]), c(1.5));
        assert_ne!(s.get(&[1, 0, 0]), s.get(&[0, 1, 0]));
    }

    #[test]
    fn contraction_is_matrix_product() {
        let a = KernelMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = KernelMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 5.0]]);
        let t = KernelTensor::from_matrix(&a).contract(&KernelTensor::from_matrix(&b), 1);
        assert_eq!(t.to_matrix().0, &a.0 * &b.0);
        let full = KernelTensor::from_matrix(&a).contract(&KernelTensor::from_matrix(&b), 2);
        assert_eq!(full.order(), 0);
        assert_eq!(full.data()[0], c(1.0 * 0.0 + 2.0 * 1.0 + -3.0 + 4.0 * 5.0));
    }

    #[test]
    fn permute_slots_transposes() {
        let a = KernelMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let t = KernelTensor::from_matrix(&a).permute_slots(&[1, 0]);
        assert_eq!(t.to_matrix(), a.transpose());
    }
}
