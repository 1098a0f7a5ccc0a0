use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::modespace::KernelMatrix;
use crate::tensor::KernelTensor;
use crate::wick::{Signature, SymbolicOperator};
use crate::C64;

use super::formal::FormalOperator;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordMode {
    /// Phantom slots for the skew parts of two-slot pure kernels.
    Formal,
    /// Operators only; skew `Ξ_{0,2}` / `Ξ_{2,0}` kernels coordinatize to 0.
    Realized,
}

/// Fixed coordinate layout:
/// `[scalar | (0,1) | (1,0) | (1,1) | (0,2) sym | (2,0) sym | (0,m),(m,0) for 3≤m≤m_max | phantoms]`.
///
/// A block-symmetric kernel is determined by its entries on sorted index
/// tuples within each block, so those are the coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Coordinatizer {
    d: usize,
    mode: CoordMode,
    slots: Vec<(Signature, Vec<Vec<usize>>)>,
    skew_pairs: Vec<(usize, usize)>,
}

impl Coordinatizer {
    pub fn new(d: usize, m_max: usize, mode: CoordMode) -> Self {
        let mut sigs = vec![
            Signature::new(0, 0),
            Signature::new(0, 1),
            Signature::new(1, 0),
            Signature::new(1, 1),
            Signature::new(0, 2),
            Signature::new(2, 0),
        ];
        for m in 3..=m_max {
            sigs.push(Signature::new(0, m));
            sigs.push(Signature::new(m, 0));
        }
        let slots = sigs
            .into_iter()
            .map(|sig| {
                let mut tuples = Vec::new();
                for cre in multisets(d, sig.creators) {
                    for ann in multisets(d, sig.annihilators) {
                        let mut t = cre.clone();
                        t.extend(ann);
                        tuples.push(t);
                    }
                }
                (sig, tuples)
            })
            .collect();
        let skew_pairs = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
        Self {
            d,
            mode,
            slots,
            skew_pairs,
        }
    }

    pub fn mode(&self) -> CoordMode {
        self.mode
    }

    pub fn d(&self) -> usize {
        self.d
    }

    fn phantom_len(&self) -> usize {
        match self.mode {
            CoordMode::Formal => 2 * self.skew_pairs.len(),
            CoordMode::Realized => 0,
        }
    }

    pub fn len(&self) -> usize {
        self.slots.iter().map(|(_, t)| t.len()).sum::<usize>() + self.phantom_len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn signatures(&self) -> impl Iterator<Item = Signature> + '_ {
        self.slots.iter().map(|(s, _)| *s)
    }

    fn realized_part(&self, op: &SymbolicOperator, out: &mut Vec<C64>) -> Result<()> {
        if op.dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: op.dim(),
            });
        }
        for sig in op.signatures() {
            if !self.slots.iter().any(|(s, _)| *s == sig) {
                return Err(Error::UnsupportedSignature(sig));
            }
        }
        for (sig, tuples) in &self.slots {
            match op.term(*sig) {
                Some(t) => out.extend(tuples.iter().map(|idx| t.get(idx))),
                None => out.extend(std::iter::repeat_n(C64::new(0.0, 0.0), tuples.len())),
            }
        }
        Ok(())
    }

    fn phantom_part(&self, m: &KernelMatrix, out: &mut Vec<C64>) {
        out.extend(self.skew_pairs.iter().map(|&(i, j)| m.0[(i, j)]));
    }

    pub fn flatten(&self, op: &SymbolicOperator) -> Result<DVector<C64>> {
        let mut out = Vec::with_capacity(self.len());
        self.realized_part(op, &mut out)?;
        out.extend(std::iter::repeat_n(C64::new(0.0, 0.0), self.phantom_len()));
        Ok(DVector::from_vec(out))
    }

    pub fn flatten_formal(&self, op: &FormalOperator) -> Result<DVector<C64>> {
        let mut out = Vec::with_capacity(self.len());
        self.realized_part(op.realized(), &mut out)?;
        if self.mode == CoordMode::Formal {
            self.phantom_part(op.lower_phantom(), &mut out);
            self.phantom_part(op.upper_phantom(), &mut out);
        }
        Ok(DVector::from_vec(out))
    }

    fn check_len(&self, v: &DVector<C64>) -> Result<()> {
        if v.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn unflatten(&self, v: &DVector<C64>) -> Result<SymbolicOperator> {
        self.check_len(v)?;
        let mut op = SymbolicOperator::zero(self.d);
        let mut pos = 0;
        for (sig, tuples) in &self.slots {
            let vals = &v.as_slice()[pos..pos + tuples.len()];
            pos += tuples.len();
            if vals.iter().all(|z| z.norm() == 0.0) {
                continue;
            }
            let (l, m) = (sig.creators, sig.annihilators);
            let kernel = KernelTensor::from_fn(self.d, sig.order(), |idx| {
                let mut key = idx[..l].to_vec();
                key.sort_unstable();
                let mut ann = idx[l..l + m].to_vec();
                ann.sort_unstable();
                key.extend(ann);
                let at = tuples.iter().position(|t| *t == key).expect("layout covers all sorted tuples");
                vals[at]
            });
            op = op.add(&SymbolicOperator::make(*sig, &kernel)?)?;
        }
        Ok(op)
    }

    pub fn unflatten_formal(&self, v: &DVector<C64>) -> Result<FormalOperator> {
        let op = self.unflatten(v)?;
        if self.mode == CoordMode::Realized {
            return Ok(FormalOperator::from_symbolic(op));
        }
        let base = self.len() - self.phantom_len();
        let half = self.skew_pairs.len();
        let lower = self.skew_from(&v.as_slice()[base..base + half]);
        let upper = self.skew_from(&v.as_slice()[base + half..]);
        Ok(FormalOperator::with_phantoms(op, lower, upper))
    }

    fn skew_from(&self, vals: &[C64]) -> KernelMatrix {
        let mut m = KernelMatrix::zeros(self.d);
        for (&(i, j), &z) in self.skew_pairs.iter().zip(vals) {
            m.0[(i, j)] = z;
            m.0[(j, i)] = -z;
        }
        m
    }
}

/// Sorted `k`-tuples over `0..d` (multisets), in lexicographic order.
fn multisets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(d: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(d, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, k, 0, &mut Vec::new(), &mut out);
    out
}
