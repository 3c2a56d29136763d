//! Incremental sparse Gaussian elimination.
//!
//! Rows are kept in echelon form with unit pivots and every stored row reduced against the pivots
//! that existed when it was inserted. [`Echelon::into_rref`] finishes with back-substitution.

use std::collections::BTreeMap;

use super::SparseVec;
use crate::par;
use crate::scalar::Scalar;

/// Which end of a row supplies its pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotOrder {
    /// Pivot at the smallest column (standard RREF).
    Leftmost,
    /// Pivot at the largest column.
    Rightmost,
}

const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    order: PivotOrder,
    // internal coordinates: Rightmost order stores column c as ncols-1-c
    rows: Vec<SparseVec>,
    pivot_row: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize, order: PivotOrder) -> Self {
        Echelon { ncols, order, rows: Vec::new(), pivot_row: vec![NONE; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn to_internal(&self, v: &[(usize, Scalar)]) -> SparseVec {
        match self.order {
            PivotOrder::Leftmost => v.to_vec(),
            PivotOrder::Rightmost => {
                v.iter().rev().map(|(i, x)| (self.ncols - 1 - i, x.clone())).collect()
            }
        }
    }

    fn to_external(&self, v: SparseVec) -> SparseVec {
        match self.order {
            PivotOrder::Leftmost => v,
            PivotOrder::Rightmost => {
                v.into_iter().rev().map(|(i, x)| (self.ncols - 1 - i, x)).collect()
            }
        }
    }

    fn reduce_internal(&self, v: SparseVec) -> SparseVec {
        if self.rows.is_empty() {
            return v;
        }
        let mut acc: BTreeMap<usize, Scalar> = v.into_iter().collect();
        let mut out = Vec::new();
        while let Some((c, x)) = acc.pop_first() {
            let p = self.pivot_row[c];
            if p == NONE {
                out.push((c, x));
                continue;
            }
            for (j, y) in &self.rows[p][1..] {
                let t = &x * y;
                match acc.entry(*j) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-t);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get() - &t;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        out
    }

    /// Residual of `v` after eliminating every pivot column (external coordinates).
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let r = self.reduce_internal(self.to_internal(v));
        self.to_external(r)
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce_internal(self.to_internal(v)).is_empty()
    }

    fn insert_reduced(&mut self, r: SparseVec) -> bool {
        let r = self.reduce_internal(r);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.inv().expect("nonzero leading entry");
        let row: SparseVec = r.into_iter().map(|(j, y)| (j, &y * &inv)).collect();
        self.pivot_row[row[0].0] = self.rows.len();
        self.rows.push(row);
        true
    }

    /// Adds `v` to the span; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        let r = self.to_internal(v);
        self.insert_reduced(r)
    }

    /// Inserts many rows, reducing them against the current rows in parallel batches first.
    pub fn extend(&mut self, vs: &[SparseVec]) {
        const BATCH: usize = 256;
        for chunk in vs.chunks(BATCH) {
            let residuals = par::map(chunk, |v| self.reduce_internal(self.to_internal(v)));
            for r in residuals {
                if !r.is_empty() {
                    self.insert_reduced(r);
                }
            }
        }
    }

    /// Pivot columns (external coordinates), in insertion order.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| match self.order {
                PivotOrder::Leftmost => r[0].0,
                PivotOrder::Rightmost => self.ncols - 1 - r[0].0,
            })
            .collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        let c = match self.order {
            PivotOrder::Leftmost => col,
            PivotOrder::Rightmost => self.ncols - 1 - col,
        };
        self.pivot_row[c] != NONE
    }

    /// Fully reduced rows sorted by pivot column ascending (external coordinates), with pivots.
    ///
    /// For `Rightmost` order each row's pivot is its last entry and all other rows vanish there.
    pub fn into_rref(self) -> (Vec<SparseVec>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i][0].0));
        let mut done: Vec<Option<SparseVec>> = vec![None; self.rows.len()];
        for &i in &order {
            let row = &self.rows[i];
            let needs = row[1..].iter().any(|(j, _)| self.pivot_row[*j] != NONE);
            let fin = if !needs {
                row.clone()
            } else {
                let mut acc: BTreeMap<usize, Scalar> = row.iter().cloned().collect();
                for (j, y) in &row[1..] {
                    let p = self.pivot_row[*j];
                    if p == NONE {
                        continue;
                    }
                    let other = done[p].as_ref().expect("larger pivots finished first");
                    for (k, z) in other {
                        let t = y * z;
                        let e = acc.entry(*k).or_insert_with(Scalar::zero);
                        *e = &*e - &t;
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            };
            done[i] = Some(fin);
        }
        let mut out: Vec<(usize, SparseVec)> = order
            .into_iter()
            .map(|i| {
                let r = done[i].take().unwrap();
                let p = r[0].0;
                (p, r)
            })
            .collect();
        out.sort_by_key(|e| e.0);
        match self.order {
            PivotOrder::Leftmost => out.into_iter().map(|(p, r)| (r, p)).unzip(),
            PivotOrder::Rightmost => {
                let n = self.ncols;
                let mut v: Vec<(SparseVec, usize)> = out
                    .into_iter()
                    .map(|(p, r)| {
                        let ext = r.into_iter().rev().map(|(i, x)| (n - 1 - i, x)).collect();
                        (ext, n - 1 - p)
                    })
                    .collect();
                v.sort_by_key(|e| e.1);
                v.into_iter().unzip()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(v: &[(usize, i64)]) -> SparseVec {
        v.iter().map(|(i, x)| (*i, Scalar::int(*x))).collect()
    }

    #[test]
    fn leftmost_rref() {
        let mut e = Echelon::new(3, PivotOrder::Leftmost);
        assert!(e.insert(&sv(&[(0, 2), (1, 4)])));
        assert!(!e.insert(&sv(&[(0, 1), (1, 2)])));
        assert!(e.insert(&sv(&[(1, 1), (2, 1)])));
        let (rows, piv) = e.into_rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(rows[0], sv(&[(0, 1), (2, -2)]));
        assert_eq!(rows[1], sv(&[(1, 1), (2, 1)]));
    }

    #[test]
    fn rightmost_pivots() {
        let mut e = Echelon::new(3, PivotOrder::Rightmost);
        e.insert(&sv(&[(0, 1), (2, 1)]));
        e.insert(&sv(&[(1, 1), (2, 1)]));
        let (rows, piv) = e.into_rref();
        // pivots at the largest columns; residual basis is the leftmost complement
        assert_eq!(piv, vec![1, 2]);
        assert_eq!(rows[0], sv(&[(0, -1), (1, 1)]));
        assert_eq!(rows[1], sv(&[(0, 1), (2, 1)]));
        let mut e = Echelon::new(3, PivotOrder::Rightmost);
        e.insert(&sv(&[(0, 1), (2, 1)]));
        assert_eq!(e.reduce(&sv(&[(2, 3)])), sv(&[(0, -3)]));
    }
}
