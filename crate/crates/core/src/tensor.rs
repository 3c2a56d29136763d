//! Sparse multilinear forms on `K^{s+1}`.
//!
//! A multi-index `(l_1, ..., l_m)` is encoded as the base-`(s+1)` integer with `l_1` most
//! significant, so integer order is lexicographic order. The same encoding indexes the rows and
//! columns of every flattening and the coordinates of `E^{\otimes n}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};
use crate::scalar::{FieldDescriptor, Scalar};

/// `dim^len`, panicking on overflow of `u64`.
pub fn power(dim: usize, len: usize) -> u64 {
    (0..len).fold(1u64, |acc, _| acc.checked_mul(dim as u64).expect("tensor index overflow"))
}

pub fn encode(idx: &[usize], dim: usize) -> u64 {
    idx.iter().fold(0u64, |acc, &i| acc * dim as u64 + i as u64)
}

pub fn decode(mut key: u64, dim: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in (0..len).rev() {
        out[slot] = (key % dim as u64) as usize;
        key /= dim as u64;
    }
    out
}

/// `v' = v (1 (x) .. (x) M (x) .. (x) 1)` on `E^{(x)len}` (row convention, `M` at `slot`).
pub fn apply_slot_vec(v: &[(usize, Scalar)], dim: usize, len: usize, slot: usize, m: &Matrix) -> SparseVec {
    let stride = power(dim, len - 1 - slot) as usize;
    let mut acc = crate::linalg::Accumulator::new();
    for (k, x) in v {
        let tau = (k / stride) % dim;
        let base = k - tau * stride;
        for (l, y) in m.row(tau) {
            acc.add(base + l * stride, &(x * y));
        }
    }
    acc.finish()
}

/// `v (M_0 (x) M_1 (x) ... (x) M_{len-1})`.
pub fn apply_slots_vec(v: &[(usize, Scalar)], dim: usize, mats: &[Matrix]) -> SparseVec {
    let len = mats.len();
    mats.iter()
        .enumerate()
        .fold(v.to_vec(), |acc, (k, m)| apply_slot_vec(&acc, dim, len, k, m))
}

/// An arity-`m` form with components `W_{l_1 ... l_m}`.
#[derive(Clone, PartialEq, Eq)]
pub struct MultilinearForm {
    dim: usize,
    arity: usize,
    entries: BTreeMap<u64, Scalar>,
}

impl MultilinearForm {
    pub fn zero(dim: usize, arity: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::invalid(format!("dimension must be at least 2, got {dim}")));
        }
        if arity < 1 {
            return Err(Error::invalid("arity must be at least 1"));
        }
        if (dim as f64).powi(arity as i32) >= u64::MAX as f64 {
            return Err(Error::invalid("dimension^arity does not fit a 64-bit index"));
        }
        Ok(MultilinearForm { dim, arity, entries: BTreeMap::new() })
    }

    /// Builds a form from `(multi-index, value)` pairs; repeated indices are summed.
    pub fn from_entries<I>(dim: usize, arity: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Scalar)>,
    {
        let mut w = Self::zero(dim, arity)?;
        for (idx, x) in entries {
            if idx.len() != arity {
                return Err(Error::invalid(format!(
                    "index {idx:?} has length {}, expected {arity}",
                    idx.len()
                )));
            }
            if let Some(bad) = idx.iter().find(|&&i| i >= dim) {
                return Err(Error::invalid(format!("index {idx:?} has entry {bad} >= {dim}")));
            }
            w.add_key(encode(&idx, dim), &x);
        }
        Ok(w)
    }

    /// Builds a form from a closure evaluated on every multi-index (small arities only).
    pub fn from_fn(dim: usize, arity: usize, f: impl Fn(&[usize]) -> Scalar) -> Result<Self> {
        let mut w = Self::zero(dim, arity)?;
        for key in 0..power(dim, arity) {
            let x = f(&decode(key, dim, arity));
            if !x.is_zero() {
                w.entries.insert(key, x);
            }
        }
        Ok(w)
    }

    /// The bilinear form with matrix `b`.
    pub fn from_matrix(b: &Matrix) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::DimensionMismatch("bilinear form needs a square matrix".into()));
        }
        let d = b.nrows();
        Self::from_entries(d, 2, b.entries().map(|(i, j, x)| (vec![i, j], x.clone())))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: &[usize]) -> Scalar {
        self.get_key(encode(idx, self.dim))
    }

    pub fn get_key(&self, key: u64) -> Scalar {
        self.entries.get(&key).cloned().unwrap_or_default()
    }

    fn add_key(&mut self, key: u64, x: &Scalar) {
        if x.is_zero() {
            return;
        }
        let s = match self.entries.get(&key) {
            Some(y) => y + x,
            None => x.clone(),
        };
        if s.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, s);
        }
    }

    /// Stored `(key, value)` pairs in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (u64, &Scalar)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    /// Stored `(multi-index, value)` pairs in lexicographic order.
    pub fn indexed_entries(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.entries.iter().map(move |(k, v)| (decode(*k, self.dim, self.arity), v))
    }

    /// Components as a sparse vector on `E^{\otimes m}`.
    pub fn to_vector(&self) -> SparseVec {
        self.entries.iter().map(|(k, v)| (*k as usize, v.clone())).collect()
    }

    pub fn field(&self) -> Result<FieldDescriptor> {
        self.entries.values().try_fold(FieldDescriptor::Rational, |f, x| f.join(&x.field()))
    }

    fn check_compatible(&self, other: &MultilinearForm) -> Result<()> {
        if self.dim != other.dim || self.arity != other.arity {
            return Err(Error::DimensionMismatch(format!(
                "forms of shape ({}, {}) and ({}, {})",
                self.dim, self.arity, other.dim, other.arity
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultilinearForm) -> Result<MultilinearForm> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, x) in &other.entries {
            out.add_key(*k, x);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultilinearForm) -> Result<MultilinearForm> {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, f: &Scalar) -> MultilinearForm {
        let mut out = MultilinearForm { dim: self.dim, arity: self.arity, entries: BTreeMap::new() };
        if !f.is_zero() {
            for (k, x) in &self.entries {
                out.entries.insert(*k, f * x);
            }
        }
        out
    }

    /// Matrix with rows indexed by the first `left` slots and columns by the rest.
    pub fn flatten(&self, left: usize) -> Result<Matrix> {
        if left == 0 || left >= self.arity {
            return Err(Error::invalid(format!(
                "flatten needs 0 < left_slots < {}, got {left}",
                self.arity
            )));
        }
        Ok(self.flatten_any(left))
    }

    /// As [`flatten`](Self::flatten) but also allows `left = 0` or `left = m`.
    pub(crate) fn flatten_any(&self, left: usize) -> Matrix {
        let ncols = power(self.dim, self.arity - left);
        let nrows = power(self.dim, left) as usize;
        let mut rows: Vec<SparseVec> = vec![Vec::new(); nrows];
        for (k, x) in &self.entries {
            rows[(k / ncols) as usize].push(((k % ncols) as usize, x.clone()));
        }
        Matrix::from_rows_unchecked(ncols as usize, rows)
    }

    /// Moves slot `slot` to the front, keeping the order of the others.
    pub fn slot_to_front(&self, slot: usize) -> MultilinearForm {
        let mut out = BTreeMap::new();
        for (k, x) in &self.entries {
            let mut idx = decode(*k, self.dim, self.arity);
            let v = idx.remove(slot);
            idx.insert(0, v);
            out.insert(encode(&idx, self.dim), x.clone());
        }
        MultilinearForm { dim: self.dim, arity: self.arity, entries: out }
    }

    /// `W'_{..l..} = sum_t M[t][l] W_{..t..}` at one slot.
    pub fn apply_slot(&self, slot: usize, m: &Matrix) -> MultilinearForm {
        let t = m;
        let stride = power(self.dim, self.arity - 1 - slot);
        let d = self.dim as u64;
        let mut out = MultilinearForm { dim: self.dim, arity: self.arity, entries: BTreeMap::new() };
        for (k, x) in &self.entries {
            let tau = ((k / stride) % d) as usize;
            let base = k - tau as u64 * stride;
            for (l, y) in t.row(tau) {
                out.add_key(base + *l as u64 * stride, &(x * y));
            }
        }
        out
    }

    fn check_square(&self, l: &Matrix) -> Result<()> {
        if l.nrows() != self.dim || l.ncols() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "expected a {0}x{0} matrix, got {1}x{2}",
                self.dim,
                l.nrows(),
                l.ncols()
            )));
        }
        Ok(())
    }

    /// `(w o L)(X_1, ..., X_m) = w(L X_1, ..., L X_m)`.
    pub fn gl_act(&self, l: &Matrix) -> Result<MultilinearForm> {
        self.check_square(l)?;
        if !l.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(self.act_unchecked(l))
    }

    pub(crate) fn act_unchecked(&self, l: &Matrix) -> MultilinearForm {
        (0..self.arity).fold(self.clone(), |w, k| w.apply_slot(k, l))
    }

    /// `w'(X_1, ..., X_m) = w(Q X_m, X_1, ..., X_{m-1})`.
    pub fn cyclic_shift(&self, q: &Matrix) -> Result<MultilinearForm> {
        self.check_square(q)?;
        let top = power(self.dim, self.arity - 1);
        let d = self.dim as u64;
        // rotate the first slot to the last position, then apply Q there
        let rotated: BTreeMap<u64, Scalar> =
            self.entries.iter().map(|(k, x)| ((k % top) * d + k / top, x.clone())).collect();
        let r = MultilinearForm { dim: self.dim, arity: self.arity, entries: rotated };
        Ok(r.apply_slot(self.arity - 1, q))
    }

    pub fn is_q_cyclic(&self, q: &Matrix) -> Result<bool> {
        Ok(self.cyclic_shift(q)? == *self)
    }
}

impl fmt::Debug for MultilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultilinearForm(dim={}, arity={}, {{", self.dim, self.arity)?;
        for (i, (idx, x)) in self.indexed_entries().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{idx:?}: {x}")?;
        }
        write!(f, "}})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn levi_civita(d: usize) -> MultilinearForm {
        MultilinearForm::from_fn(d, d, |idx| {
            let mut seen = vec![false; d];
            for &i in idx {
                if seen[i] {
                    return Scalar::zero();
                }
                seen[i] = true;
            }
            let mut inv = 0;
            for a in 0..d {
                for b in a + 1..d {
                    if idx[a] > idx[b] {
                        inv += 1;
                    }
                }
            }
            Scalar::int(if inv % 2 == 0 { 1 } else { -1 })
        })
        .unwrap()
    }

    #[test]
    fn encoding_is_lexicographic() {
        assert_eq!(encode(&[1, 0, 2], 3), 11);
        assert_eq!(decode(11, 3, 3), vec![1, 0, 2]);
    }

    #[test]
    fn flatten_cases() {
        let b = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let w = MultilinearForm::from_matrix(&b).unwrap();
        assert_eq!(w.flatten(1).unwrap(), b);
        let eps = levi_civita(3);
        let f = eps.flatten(1).unwrap();
        assert_eq!((f.nrows(), f.ncols(), f.rank()), (3, 9, 3));
        assert!(MultilinearForm::zero(3, 3).unwrap().flatten(2).unwrap().is_zero());
        assert!(eps.flatten(0).is_err() && eps.flatten(3).is_err());
    }

    #[test]
    fn bilinear_action_is_congruence() {
        let b = Matrix::from_ints(&[&[1, 2], &[0, 3]]);
        let l = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let w = MultilinearForm::from_matrix(&b).unwrap();
        let expected = l.transpose().mul(&b).unwrap().mul(&l).unwrap();
        assert_eq!(w.gl_act(&l).unwrap().flatten(1).unwrap(), expected);
        assert_eq!(w.gl_act(&Matrix::identity(2)).unwrap(), w);
        assert_eq!(w.gl_act(&Matrix::from_ints(&[&[1, 1], &[1, 1]])), Err(Error::Singular));
    }

    #[test]
    fn levi_civita_cyclicity() {
        let e3 = levi_civita(3);
        assert!(e3.is_q_cyclic(&Matrix::identity(3)).unwrap());
        let e2 = levi_civita(2);
        assert!(e2.is_q_cyclic(&Matrix::identity(2).neg()).unwrap());
        assert!(!e2.is_q_cyclic(&Matrix::identity(2)).unwrap());
    }

    fn arb_form(dim: usize, arity: usize) -> impl Strategy<Value = MultilinearForm> {
        proptest::collection::vec((0i64..4, -3i64..4), (dim as u32).pow(arity as u32) as usize)
            .prop_map(move |v| {
                MultilinearForm::from_entries(
                    dim,
                    arity,
                    v.into_iter().enumerate().filter(|(_, (z, _))| *z == 0).map(|(k, (_, x))| {
                        (decode(k as u64, dim, arity), Scalar::int(x))
                    }),
                )
                .unwrap()
            })
    }

    fn arb_invertible(dim: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec((-3i64..4, 1i64..3), dim * dim)
            .prop_map(move |v| {
                let dense: Vec<Vec<Scalar>> = v
                    .chunks(dim)
                    .map(|r| r.iter().map(|(n, d)| Scalar::Rat(Rational::new(*n, *d))).collect())
                    .collect();
                Matrix::from_dense(&dense)
            })
            .prop_filter("singular", |m| m.is_invertible())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn flatten_of_action(w in arb_form(2, 3), l in arb_invertible(2)) {
            let lhs = w.gl_act(&l).unwrap().flatten(1).unwrap();
            let rhs = l.transpose().mul(&w.flatten(1).unwrap()).unwrap().mul(&l.kron(&l)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn shift_m_times_is_action(w in arb_form(2, 3), q in arb_invertible(2)) {
            let mut s = w.clone();
            for _ in 0..3 {
                s = s.cyclic_shift(&q).unwrap();
            }
            prop_assert_eq!(s, w.gl_act(&q).unwrap());
        }

        #[test]
        fn action_composes(w in arb_form(3, 2), l in arb_invertible(3), m in arb_invertible(3)) {
            let lhs = w.gl_act(&l).unwrap().gl_act(&m).unwrap();
            prop_assert_eq!(lhs, w.gl_act(&l.mul(&m).unwrap()).unwrap());
        }
    }
}
