use super::{Accumulator, Echelon, Matrix, PivotOrder, SparseVec};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A linear subspace of `K^ambient`, stored by its canonical RREF basis.
///
/// Equality of subspaces is equality of these bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    pub fn span(ambient: usize, vectors: &[SparseVec]) -> Self {
        let mut e = Echelon::new(ambient, PivotOrder::Leftmost);
        e.extend(vectors);
        Self::from_echelon(e)
    }

    pub fn from_echelon(e: Echelon) -> Self {
        let ambient = e.ncols();
        let (rows, pivots) = e.into_rref();
        Subspace { ambient, basis: Matrix::from_rows_unchecked(ambient, rows), pivots }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        Self::span(m.ncols(), m.rows())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, n: usize) -> Result<()> {
        if self.ambient != n {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of K^{} and K^{}",
                self.ambient, n
            )));
        }
        Ok(())
    }

    /// `v` minus its projection along the basis onto the pivot coordinates.
    pub fn residual(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in v {
            acc.add(*i, x);
        }
        for (k, &p) in self.pivots.iter().enumerate() {
            let c = super::get(v, p);
            if !c.is_zero() {
                acc.add_scaled(&-&c, self.basis.row(k));
            }
        }
        acc.finish()
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> Result<bool> {
        if let Some((j, _)) = v.last() {
            if *j >= self.ambient {
                return Err(Error::DimensionMismatch(format!("index {j} outside K^{}", self.ambient)));
            }
        }
        Ok(self.residual(v).is_empty())
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[(usize, Scalar)]) -> Option<Vec<Scalar>> {
        if !self.residual(v).is_empty() {
            return None;
        }
        Some(self.pivots.iter().map(|&p| super::get(v, p)).collect())
    }

    /// Sparse coordinates of a member; panics on non-members.
    pub fn coordinates_sparse(&self, v: &[(usize, Scalar)]) -> SparseVec {
        debug_assert!(self.residual(v).is_empty(), "vector not in subspace");
        self.pivots
            .iter()
            .enumerate()
            .filter_map(|(k, &p)| {
                let c = super::get(v, p);
                (!c.is_zero()).then_some((k, c))
            })
            .collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        other.check_ambient(self.ambient)?;
        Ok(self.basis.rows().iter().all(|r| other.residual(r).is_empty()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient)?;
        let mut rows = self.basis.rows().to_vec();
        rows.extend_from_slice(other.basis.rows());
        Ok(Subspace::span(self.ambient, &rows))
    }

    /// Annihilator under the pairing `sum_i a_i b_i`.
    pub fn perp(&self) -> Subspace {
        self.basis.nullspace()
    }

    /// `(X^perp + Y^perp)^perp`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other.ambient)?;
        Ok(self.perp().sum(&other.perp())?.perp())
    }
}
