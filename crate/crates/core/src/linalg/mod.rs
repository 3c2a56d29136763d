//! Deterministic exact linear algebra on sparse rows.

mod echelon;
mod matrix;
mod solve;
mod subspace;

pub use echelon::{Echelon, PivotOrder};
pub use matrix::Matrix;
pub use solve::LeftSolver;
pub use subspace::Subspace;

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Sparse vector: `(index, value)` pairs, strictly increasing indices, no zero values.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Sorts by index, merges duplicates and drops zeros.
pub fn normalize(mut v: Vec<(usize, Scalar)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = &*y + &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Accumulates `(index, value)` contributions into a sparse vector.
#[derive(Default)]
pub struct Accumulator(BTreeMap<usize, Scalar>);

impl Accumulator {
    pub fn new() -> Self {
        Accumulator(BTreeMap::new())
    }

    pub fn add(&mut self, i: usize, x: &Scalar) {
        if x.is_zero() {
            return;
        }
        match self.0.entry(i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(x.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + x;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, f: &Scalar, v: &[(usize, Scalar)]) {
        if f.is_zero() {
            return;
        }
        for (i, x) in v {
            self.add(*i, &(f * x));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn finish(self) -> SparseVec {
        self.0.into_iter().collect()
    }
}

/// `a + f*b`.
pub fn axpy(a: &[(usize, Scalar)], f: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    if f.is_zero() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f * &b[j].1));
            j += 1;
        } else {
            let s = &a[i].1 + &(f * &b[j].1);
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &[(usize, Scalar)], f: &Scalar) -> SparseVec {
    if f.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, f * x)).collect()
}

pub fn dot(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> Scalar {
    let (mut i, mut j) = (0, 0);
    let mut s = Scalar::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s = &s + &(&a[i].1 * &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    s
}

pub fn to_dense(v: &[(usize, Scalar)], len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn from_dense(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Value at index `i` (zero when absent).
pub fn get(v: &[(usize, Scalar)], i: usize) -> Scalar {
    match v.binary_search_by_key(&i, |e| e.0) {
        Ok(k) => v[k].1.clone(),
        Err(_) => Scalar::zero(),
    }
}
