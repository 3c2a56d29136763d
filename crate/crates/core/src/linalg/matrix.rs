use std::fmt;

use super::{axpy, dot, Accumulator, Echelon, PivotOrder, SparseVec, Subspace};
use crate::error::{Error, Result};
use crate::par;
use crate::scalar::Scalar;

/// Sparse row-major matrix over exact scalars. No zero entries are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { nrows: n, ncols: n, rows: (0..n).map(|i| vec![(i, Scalar::one())]).collect() }
    }

    pub fn scalar_identity(n: usize, x: &Scalar) -> Self {
        Matrix::identity(n).scale(x)
    }

    /// Builds from sparse rows; entries are sorted, merged and zero-filtered.
    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Result<Self> {
        let nrows = rows.len();
        let rows: Vec<SparseVec> = rows.into_iter().map(super::normalize).collect();
        for r in &rows {
            if let Some((j, _)) = r.last() {
                if *j >= ncols {
                    return Err(Error::DimensionMismatch(format!(
                        "column {j} out of range for {ncols} columns"
                    )));
                }
            }
        }
        Ok(Matrix { nrows, ncols, rows })
    }

    pub(crate) fn from_rows_unchecked(ncols: usize, rows: Vec<SparseVec>) -> Self {
        Matrix { nrows: rows.len(), ncols, rows }
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged dense matrix");
        Matrix { nrows: rows.len(), ncols, rows: rows.iter().map(|r| super::from_dense(r)).collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect();
        Matrix::from_dense(&dense)
    }

    pub fn diagonal(d: &[Scalar]) -> Self {
        let rows = d
            .iter()
            .enumerate()
            .map(|(i, x)| if x.is_zero() { vec![] } else { vec![(i, x.clone())] })
            .collect();
        Matrix { nrows: d.len(), ncols: d.len(), rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        super::get(&self.rows[i], j)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        let r = &mut self.rows[i];
        match r.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => {
                if x.is_zero() {
                    r.remove(k);
                } else {
                    r[k].1 = x;
                }
            }
            Err(k) => {
                if !x.is_zero() {
                    r.insert(k, (j, x));
                }
            }
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.nrows)
    }

    /// `(row, col, value)` for every stored entry, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, j.to_owned(), x)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|r| super::to_dense(r, self.ncols)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                cols[*j].push((i, x.clone()));
            }
        }
        Matrix { nrows: self.ncols, ncols: self.nrows, rows: cols }
    }

    /// Row vector times matrix: `v M`.
    pub fn vec_mul(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, x) in v {
            acc.add_scaled(x, &self.rows[*i]);
        }
        acc.finish()
    }

    /// Matrix times column vector: `M v`.
    pub fn mul_vec(&self, v: &[(usize, Scalar)]) -> SparseVec {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let d = dot(r, v);
                (!d.is_zero()).then_some((i, d))
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let rows = par::map(&self.rows, |r| other.vec_mul(r));
        Ok(Matrix { nrows: self.nrows, ncols: other.ncols, rows })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same(other)?;
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| axpy(a, &Scalar::one(), b)).collect();
        Ok(Matrix { nrows: self.nrows, ncols: self.ncols, rows })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same(other)?;
        let rows =
            self.rows.iter().zip(&other.rows).map(|(a, b)| axpy(a, &Scalar::int(-1), b)).collect();
        Ok(Matrix { nrows: self.nrows, ncols: self.ncols, rows })
    }

    fn check_same(&self, other: &Matrix) -> Result<()> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        Ok(())
    }

    pub fn scale(&self, f: &Scalar) -> Matrix {
        let rows = self.rows.iter().map(|r| super::scale(r, f)).collect();
        Matrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&Scalar::int(-1))
    }

    /// Kronecker product; row `(i, k)` is `i * other.nrows + k`, matching lexicographic order.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut rows = Vec::with_capacity(self.nrows * other.nrows);
        for a in &self.rows {
            for b in &other.rows {
                let mut r = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (j, y) in b {
                        r.push((i * other.ncols + j, x * y));
                    }
                }
                rows.push(r);
            }
        }
        Matrix { nrows: self.nrows * other.nrows, ncols: self.ncols * other.ncols, rows }
    }

    /// Canonical reduced row echelon form (zero rows dropped) and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut e = Echelon::new(self.ncols, PivotOrder::Leftmost);
        e.extend(&self.rows);
        let (rows, piv) = e.into_rref();
        (Matrix { nrows: rows.len(), ncols: self.ncols, rows }, piv)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.ncols, PivotOrder::Leftmost);
        e.extend(&self.rows);
        e.rank()
    }

    /// `{v : M v = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let (r, piv) = self.rref();
        let n = self.ncols;
        let mut is_piv = vec![false; n];
        for &p in &piv {
            is_piv[p] = true;
        }
        // column f of the rref, as (row index -> entry)
        let t = r.transpose();
        let basis: Vec<SparseVec> = (0..n)
            .filter(|&f| !is_piv[f])
            .map(|f| {
                let mut v: SparseVec = t.rows[f].iter().map(|(i, x)| (piv[*i], -x)).collect();
                v.push((f, Scalar::one()));
                super::normalize(v)
            })
            .collect();
        Subspace::span(n, &basis)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.nrows;
        let rows: Vec<SparseVec> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                v.push((n + i, Scalar::one()));
                v
            })
            .collect();
        let aug = Matrix { nrows: n, ncols: 2 * n, rows };
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let rows = r.rows.into_iter().map(|v| v.into_iter().skip(1).map(|(j, x)| (j - n, x)).collect()).collect();
        Ok(Matrix { nrows: n, ncols: n, rows })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.nrows
    }

    pub fn pow(&self, e: i32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Matrix::identity(self.nrows);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.to_dense().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.nrows, self.ncols, self)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    #[test]
    fn rref_small_cases() {
        let (r, p) = Matrix::identity(2).rref();
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);
        let (r, p) = Matrix::from_ints(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r, Matrix::from_ints(&[&[1, 2]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn nullspace_trivial_cases() {
        assert_eq!(Matrix::identity(3).nullspace().dim(), 0);
        assert_eq!(Matrix::zeros(3, 4).nullspace().dim(), 4);
        let m = Matrix::from_ints(&[&[1, 1, 0], &[0, 0, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 1);
        assert!(m.mul_vec(ns.basis().row(0)).is_empty());
    }

    #[test]
    fn inverse_and_powers() {
        let m = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert_eq!(m.pow(-2).unwrap().mul(&m.pow(2).unwrap()).unwrap(), Matrix::identity(2));
        assert_eq!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }

    #[test]
    fn kron_order() {
        let a = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let k = a.kron(&Matrix::identity(2));
        assert_eq!(k.get(1, 3), Scalar::int(2));
        assert_eq!(k.get(2, 0), Scalar::int(3));
    }

    pub(crate) fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(
            proptest::collection::vec((0i64..7, -4i64..5, 1i64..4), cols),
            rows,
        )
        .prop_map(|rs| {
            let dense: Vec<Vec<Scalar>> = rs
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|(z, n, d)| if z < 3 { Scalar::zero() } else { Scalar::Rat(Rational::new(n, d)) })
                        .collect()
                })
                .collect();
            Matrix::from_dense(&dense)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn rref_is_idempotent(m in arb_matrix(20, 50)) {
            let (r, p) = m.rref();
            let (r2, p2) = r.rref();
            prop_assert_eq!(&r, &r2);
            prop_assert_eq!(p, p2);
        }

        #[test]
        fn rank_of_transpose(m in arb_matrix(7, 9)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn nullspace_dimension(m in arb_matrix(6, 10)) {
            let ns = m.nullspace();
            prop_assert_eq!(ns.dim(), 10 - m.rank());
            for v in ns.basis().rows() {
                prop_assert!(m.mul_vec(v).is_empty());
            }
        }
    }
}
