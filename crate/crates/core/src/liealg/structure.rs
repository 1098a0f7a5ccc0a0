use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::column_basis;
use crate::C64;

use super::closure::{LieBasis, LieElement};

/// `[x_i, x_j] = Σ_k c_{ij}^k x_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    n: usize,
    c: Vec<C64>,
    tol: f64,
    /// Worst least-squares residual when expressing brackets in the basis.
    pub fit_residual: f64,
}

impl StructureConstants {
    pub fn from_basis<E: LieElement>(basis: &LieBasis<E>) -> Result<Self> {
        let n = basis.dim();
        let mut c = vec![C64::new(0.0, 0.0); n * n * n];
        let mut fit_residual: f64 = 0.0;
        let els = basis.elements();
        for i in 0..n {
            for j in (i + 1)..n {
                let b = els[i].lie_bracket(&els[j])?;
                let (x, r) = basis.express(&b)?;
                fit_residual = fit_residual.max(r);
                for k in 0..n {
                    c[(i * n + j) * n + k] = x[k];
                    c[(j * n + i) * n + k] = -x[k];
                }
            }
        }
        let limit = basis.tolerance() * basis.scale();
        if fit_residual > limit.max(1e-9) {
            return Err(Error::OutsideSpan { residual: fit_residual });
        }
        Ok(Self {
            n,
            c,
            tol: basis.tolerance(),
            fit_residual,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> C64 {
        self.c[(i * self.n + j) * self.n + k]
    }

    /// Largest structure constant, floored at 1 so that an abelian algebra
    /// with rounding-level constants does not set its own scale.
    pub fn scale(&self) -> f64 {
        self.c.iter().map(|z| z.norm()).fold(1.0, f64::max)
    }

    /// Bracket of two elements given in basis coordinates.
    pub fn bracket_coords(&self, u: &DVector<C64>, v: &DVector<C64>) -> DVector<C64> {
        let n = self.n;
        let mut out = DVector::zeros(n);
        for i in 0..n {
            if u[i].norm() == 0.0 {
                continue;
            }
            for j in 0..n {
                let w = u[i] * v[j];
                if w.norm() == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out[k] += w * self.get(i, j, k);
                }
            }
        }
        out
    }

    pub fn antisymmetry_residual(&self) -> f64 {
        let n = self.n;
        let mut r: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    r = r.max((self.get(i, j, k) + self.get(j, i, k)).norm());
                }
            }
        }
        r
    }

    /// `max |[[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j]|`.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.n;
        let mut r: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let mut s = C64::new(0.0, 0.0);
                        for l in 0..n {
                            s += self.get(i, j, l) * self.get(l, k, m)
                                + self.get(j, k, l) * self.get(l, i, m)
                                + self.get(k, i, l) * self.get(l, j, m);
                        }
                        r = r.max(s.norm());
                    }
                }
            }
        }
        r
    }

    /// Matrix of `ad x_i`: column `j` holds the coordinates of `[x_i, x_j]`.
    pub fn ad(&self, i: usize) -> DMatrix<C64> {
        DMatrix::from_fn(self.n, self.n, |k, j| self.get(i, j, k))
    }

    /// `B_ij = tr(ad x_i · ad x_j)`.
    pub fn killing_form(&self) -> DMatrix<C64> {
        let ads: Vec<DMatrix<C64>> = (0..self.n).map(|i| self.ad(i)).collect();
        DMatrix::from_fn(self.n, self.n, |i, j| (&ads[i] * &ads[j]).trace())
    }

    /// Rank of the Killing form; entries scale like `c²`, which sets the
    /// absolute floor.
    pub fn killing_rank(&self) -> usize {
        let s = self.scale();
        column_basis(&self.killing_form(), self.tol, s * s).ncols()
    }

    /// Orthonormal basis of `span{[u, v] : u ∈ U, v ∈ V}` (columns).
    pub fn bracket_span(&self, u: &DMatrix<C64>, v: &DMatrix<C64>) -> DMatrix<C64> {
        let mut cols = Vec::with_capacity(u.ncols() * v.ncols());
        for a in u.column_iter() {
            for b in v.column_iter() {
                cols.push(self.bracket_coords(&a.into_owned(), &b.into_owned()));
            }
        }
        if cols.is_empty() {
            return DMatrix::zeros(self.n, 0);
        }
        column_basis(&DMatrix::from_columns(&cols), self.tol, self.scale())
    }

    fn full(&self) -> DMatrix<C64> {
        DMatrix::identity(self.n, self.n)
    }

    /// Dimensions of `g ⊇ [g,g] ⊇ …`, stopping at zero or when stable.
    pub fn derived_series(&self) -> Vec<usize> {
        let mut cur = self.full();
        let mut dims = vec![self.n];
        while cur.ncols() > 0 {
            let next = self.bracket_span(&cur, &cur);
            let stable = next.ncols() == cur.ncols();
            dims.push(next.ncols());
            cur = next;
            if stable {
                break;
            }
        }
        dims
    }

    /// Dimensions of `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ …`, stopping at zero or when stable.
    pub fn lower_central_series(&self) -> Vec<usize> {
        let g = self.full();
        let mut cur = g.clone();
        let mut dims = vec![self.n];
        while cur.ncols() > 0 {
            let next = self.bracket_span(&g, &cur);
            let stable = next.ncols() == cur.ncols();
            dims.push(next.ncols());
            cur = next;
            if stable {
                break;
            }
        }
        dims
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last() == Some(&0)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last() == Some(&0)
    }

    /// Cartan's criterion: nondegenerate Killing form.
    pub fn is_semisimple(&self) -> bool {
        self.n > 0 && self.killing_rank() == self.n
    }

    /// Smallest subspace containing `x` (basis coordinates) and closed under
    /// `[x_j, ·]` for every basis element.
    pub fn ideal_closure(&self, x: &DVector<C64>) -> Subspace {
        let scale = self.scale().max(x.iter().map(|z| z.norm()).fold(0.0, f64::max));
        let mut cur = column_basis(&DMatrix::from_columns(std::slice::from_ref(x)), self.tol, scale);
        loop {
            let mut cols: Vec<DVector<C64>> = cur.column_iter().map(|c| c.into_owned()).collect();
            for v in cur.column_iter() {
                let v = v.into_owned();
                for j in 0..self.n {
                    let mut e = DVector::zeros(self.n);
                    e[j] = C64::new(1.0, 0.0);
                    cols.push(self.bracket_coords(&e, &v));
                }
            }
            if cols.is_empty() {
                return Subspace { vectors: cur };
            }
            let next = column_basis(&DMatrix::from_columns(&cols), self.tol, scale);
            if next.ncols() == cur.ncols() {
                return Subspace { vectors: next };
            }
            cur = next;
        }
    }
}

/// Subspace of a Lie algebra, as orthonormal columns in basis coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    pub vectors: DMatrix<C64>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.vectors.ncols()
    }

    /// Orthogonal-projection residual of `v`.
    pub fn residual(&self, v: &DVector<C64>) -> f64 {
        let proj = &self.vectors * (self.vectors.adjoint() * v);
        (v - proj).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Verdicts for one closed algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAnalysis {
    pub dim: usize,
    pub derived_series: Vec<usize>,
    pub lower_central_series: Vec<usize>,
    pub solvable: bool,
    pub nilpotent: bool,
    pub semisimple: bool,
    pub killing_rank: usize,
    pub contains_identity: bool,
    pub antisymmetry_residual: f64,
    pub jacobi_residual: f64,
    pub fit_residual: f64,
}

impl LieAnalysis {
    pub fn of<E: LieElement>(basis: &LieBasis<E>) -> Result<Self> {
        let sc = StructureConstants::from_basis(basis)?;
        let derived_series = sc.derived_series();
        let lower_central_series = sc.lower_central_series();
        Ok(Self {
            dim: sc.dim(),
            solvable: derived_series.last() == Some(&0),
            nilpotent: lower_central_series.last() == Some(&0),
            derived_series,
            lower_central_series,
            semisimple: sc.is_semisimple(),
            killing_rank: sc.killing_rank(),
            contains_identity: basis.contains_identity()?,
            antisymmetry_residual: sc.antisymmetry_residual(),
            jacobi_residual: sc.jacobi_residual(),
            fit_residual: sc.fit_residual,
        })
    }
}

/// Ideal generated by `x` inside the closed algebra `basis`.
pub fn ideal_closure<E: LieElement>(x: &E, basis: &LieBasis<E>) -> Result<Subspace> {
    let (coords, r) = basis.express(x)?;
    let v = x.coordinates(basis.layout())?;
    let scale = v.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if r > basis.tolerance() * scale {
        return Err(Error::OutsideSpan { residual: r });
    }
    Ok(StructureConstants::from_basis(basis)?.ideal_closure(&coords))
}

/// Whether `sub` (a subspace of `basis`) contains the identity.
pub fn contains_identity<E: LieElement>(sub: &Subspace, basis: &LieBasis<E>) -> Result<bool> {
    let id = E::identity(basis.layout().d());
    let (coords, r) = basis.express(&id)?;
    if r > basis.tolerance() {
        return Ok(false);
    }
    let scale = coords.iter().map(|z| z.norm()).fold(1.0, f64::max);
    Ok(sub.residual(&coords) <= basis.tolerance() * scale)
}
