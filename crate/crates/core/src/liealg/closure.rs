use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::numerical_rank;
use crate::wick::SymbolicOperator;
use crate::C64;

use super::coords::Coordinatizer;
use super::formal::FormalOperator;

/// Anything that can be bracketed and coordinatized.
pub trait LieElement: Clone {
    fn lie_bracket(&self, other: &Self) -> Result<Self>;
    fn coordinates(&self, layout: &Coordinatizer) -> Result<DVector<C64>>;
    fn identity(d: usize) -> Self;
    fn adjoint_element(&self) -> Self;
    fn mode_dim(&self) -> usize;
    fn scaled(&self, c: C64) -> Self;
    fn plus(&self, other: &Self) -> Result<Self>;

    fn linear_combination(d: usize, items: &[(C64, &Self)]) -> Result<Self> {
        let mut acc = Self::identity(d).scaled(C64::new(0.0, 0.0));
        for (c, x) in items {
            acc = acc.plus(&x.scaled(*c))?;
        }
        Ok(acc)
    }
}

impl LieElement for SymbolicOperator {
    fn lie_bracket(&self, other: &Self) -> Result<Self> {
        self.bracket(other)
    }
    fn coordinates(&self, layout: &Coordinatizer) -> Result<DVector<C64>> {
        layout.flatten(self)
    }
    fn identity(d: usize) -> Self {
        SymbolicOperator::identity(d)
    }
    fn adjoint_element(&self) -> Self {
        self.adjoint()
    }
    fn mode_dim(&self) -> usize {
        self.dim()
    }
    fn scaled(&self, c: C64) -> Self {
        self.scale(c)
    }
    fn plus(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
}

impl LieElement for FormalOperator {
    fn lie_bracket(&self, other: &Self) -> Result<Self> {
        self.bracket(other)
    }
    fn coordinates(&self, layout: &Coordinatizer) -> Result<DVector<C64>> {
        layout.flatten_formal(self)
    }
    fn identity(d: usize) -> Self {
        FormalOperator::from_symbolic(SymbolicOperator::identity(d))
    }
    fn adjoint_element(&self) -> Self {
        self.adjoint()
    }
    fn mode_dim(&self) -> usize {
        self.dim()
    }
    fn scaled(&self, c: C64) -> Self {
        self.scale(c)
    }
    fn plus(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
}

/// Numerically independent elements together with their coordinate columns.
#[derive(Debug, Clone)]
pub struct LieBasis<E> {
    layout: Coordinatizer,
    tol: f64,
    floor: f64,
    elements: Vec<E>,
    coords: DMatrix<C64>,
}

impl<E: LieElement> LieBasis<E> {
    pub fn empty(layout: Coordinatizer, tol: f64) -> Self {
        let p = layout.len();
        Self {
            layout,
            tol,
            floor: tol,
            elements: Vec::new(),
            coords: DMatrix::zeros(p, 0),
        }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn coordinates(&self) -> &DMatrix<C64> {
        &self.coords
    }

    pub fn layout(&self) -> &Coordinatizer {
        &self.layout
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    fn grown_with(&self, x: &E) -> Result<Option<DMatrix<C64>>> {
        let v = x.coordinates(&self.layout)?;
        let vmax = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if vmax <= self.floor {
            return Ok(None);
        }
        let n = self.dim();
        let mut grown = self.coords.clone().insert_column(n, C64::new(0.0, 0.0));
        grown.set_column(n, &v);
        Ok((numerical_rank(&grown, self.tol) > n).then_some(grown))
    }

    /// Whether `x` would enlarge the span.
    pub fn is_independent(&self, x: &E) -> Result<bool> {
        Ok(self.grown_with(x)?.is_some())
    }

    /// Appends `x` if its coordinates enlarge the span. Vectors below the
    /// absolute floor are treated as rounding noise.
    pub fn try_push(&mut self, x: E) -> Result<bool> {
        match self.grown_with(&x)? {
            Some(grown) => {
                self.coords = grown;
                self.elements.push(x);
                Ok(true)
            }
            None => Ok(false),
        }
    }

    /// Least-squares coordinates of `v` in this basis, with the max-abs
    /// residual of the fit.
    pub fn express_coords(&self, v: &DVector<C64>) -> Result<(DVector<C64>, f64)> {
        if v.len() != self.layout.len() {
            return Err(Error::DimensionMismatch {
                expected: self.layout.len(),
                got: v.len(),
            });
        }
        if self.dim() == 0 {
            let r = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
            return Ok((DVector::zeros(0), r));
        }
        let svd = self.coords.clone().svd(true, true);
        let x = svd
            .solve(v, 0.0)
            .map_err(|e| Error::InvalidConfig(format!("least squares failed: {e}")))?;
        let r = (&self.coords * &x - v).iter().map(|z| z.norm()).fold(0.0, f64::max);
        Ok((x, r))
    }

    pub fn express(&self, x: &E) -> Result<(DVector<C64>, f64)> {
        self.express_coords(&x.coordinates(&self.layout)?)
    }

    /// Membership with residual threshold `tol · max(1, ‖v‖_max)`.
    pub fn contains(&self, x: &E) -> Result<bool> {
        let v = x.coordinates(&self.layout)?;
        let scale = v.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let (_, r) = self.express_coords(&v)?;
        Ok(r <= self.tol * scale)
    }

    /// Whether the identity lies in the span.
    pub fn contains_identity(&self) -> Result<bool> {
        let d = self.layout.d();
        self.contains(&E::identity(d))
    }

    /// Largest residual of `x†` against the span, over all basis elements.
    pub fn adjoint_residual(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for e in &self.elements {
            let (_, r) = self.express(&e.adjoint_element())?;
            worst = worst.max(r);
        }
        Ok(worst)
    }

    pub fn is_adjoint_closed(&self) -> Result<bool> {
        Ok(self.adjoint_residual()? <= self.tol * self.scale())
    }

    /// Largest coordinate magnitude, used as the absolute scale of the basis.
    pub fn scale(&self) -> f64 {
        self.coords.iter().map(|z| z.norm()).fold(1.0, f64::max)
    }
}

/// Bracket closure of the span of `generators`: every round brackets all
/// pairs not yet tried and appends independent results, until a round adds
/// nothing.
pub fn closure<E: LieElement>(
    generators: &[E],
    layout: &Coordinatizer,
    tol: f64,
    max_rounds: usize,
) -> Result<LieBasis<E>> {
    if max_rounds == 0 {
        return Err(Error::InvalidConfig("max_rounds must be at least 1".into()));
    }
    let mut basis = LieBasis::empty(layout.clone(), tol);
    for g in generators {
        basis.try_push(g.clone())?;
    }
    // pairs (i, j) with j < tried are already done
    let mut tried = 0;
    for _ in 0..max_rounds {
        let n = basis.dim();
        let mut added = false;
        for j in tried..n {
            for i in 0..j {
                let b = basis.elements[i].lie_bracket(&basis.elements[j])?;
                added |= basis.try_push(b)?;
            }
        }
        tried = n;
        if !added {
            return Ok(basis);
        }
    }
    // the last round added elements whose brackets were never tried
    let n = basis.dim();
    for j in tried..n {
        for i in 0..j {
            let b = basis.elements[i].lie_bracket(&basis.elements[j])?;
            if basis.is_independent(&b)? {
                return Err(Error::NotClosed {
                    rounds: max_rounds,
                    dim: basis.dim(),
                });
            }
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::coords::CoordMode;
    use crate::modespace::ModeVector;

    #[test]
    fn heisenberg_closure() {
        let z = ModeVector::real(&[1.0, 0.0]);
        let gens = vec![SymbolicOperator::annihilation(&z), SymbolicOperator::creation(&z)];
        let layout = Coordinatizer::new(2, 2, CoordMode::Realized);
        let b = closure(&gens, &layout, 1e-9, 4).unwrap();
        assert_eq!(b.dim(), 3);
        assert!(b.contains_identity().unwrap());
        assert!(b.is_adjoint_closed().unwrap());
    }

    #[test]
    fn zero_rounds_rejected() {
        let layout = Coordinatizer::new(1, 2, CoordMode::Realized);
        assert!(closure::<SymbolicOperator>(&[], &layout, 1e-9, 0).is_err());
    }

    #[test]
    fn dependent_generators_collapse() {
        let z = ModeVector::real(&[1.0, 2.0]);
        let a = SymbolicOperator::annihilation(&z);
        let gens = vec![a.clone(), a.scale(C64::new(0.0, 3.0))];
        let layout = Coordinatizer::new(2, 2, CoordMode::Realized);
        assert_eq!(closure(&gens, &layout, 1e-9, 2).unwrap().dim(), 1);
    }

    #[test]
    fn non_closure_is_reported() {
        // [a³, a*³] has (2,2) and (1,1) parts; the layout has no (2,2) slot.
        let z = ModeVector::real(&[1.0]);
        let a = SymbolicOperator::annihilation(&z);
        let cube = a.wick_product(&a).unwrap().wick_product(&a).unwrap();
        let gens = vec![cube.clone(), cube.adjoint()];
        let layout = Coordinatizer::new(1, 3, CoordMode::Realized);
        assert!(closure(&gens, &layout, 1e-9, 3).is_err());
    }
}
