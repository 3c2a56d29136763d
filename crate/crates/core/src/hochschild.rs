//! Hochschild chains of a quadratic `A = A(w,2)` with values in the twisted bimodule `^wA`:
//! `A` as a right module, with `a` in `A_n` acting on the left by `(-1)^{(m-1)n} (sigma^w)^{-1}(a)`.

use std::collections::BTreeMap;

use crate::algebra::{algebra_from_form, GradedQuotient};
use crate::error::{Error, Limits, Result};
use crate::linalg::{Echelon, Matrix, PivotOrder, SparseVec};
use crate::par;
use crate::preregularity::solve_twist;
use crate::scalar::Scalar;
use crate::tensor::MultilinearForm;

/// One slot of a chain: (degree, basis index in `A_degree`).
pub type Slot = (usize, usize);

/// A homogeneous element of `^wA (x) A^{(x)n}`; slot 0 is the coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistedChain {
    pub internal_degree: usize,
    pub length: usize,
    pub terms: BTreeMap<Vec<Slot>, Scalar>,
}

impl TwistedChain {
    pub fn new(internal_degree: usize, length: usize) -> Self {
        TwistedChain { internal_degree, length, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, key: Vec<Slot>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_chain(&mut self, other: &TwistedChain) {
        for (k, c) in &other.terms {
            self.add(k.clone(), c);
        }
    }
}

/// `A` up to degree `m` with the data of the twisted left action.
#[derive(Clone, Debug)]
pub struct TwistedBimodule {
    pub algebra: GradedQuotient,
    pub m: usize,
    /// `(sigma^w)^{-1}` on `A_n`, rows are images.
    pub sigma_inv: Vec<Matrix>,
}

impl TwistedBimodule {
    pub fn new(w: &MultilinearForm, limits: &Limits) -> Result<Self> {
        let q = solve_twist(w)
            .matrix()
            .cloned()
            .ok_or_else(|| Error::precondition("w is not preregular"))?;
        if w.arity() < 2 {
            return Err(Error::precondition("need m >= 2"));
        }
        let m = w.arity();
        let algebra = GradedQuotient::build(&algebra_from_form(w, 2)?, m, limits)?;
        let qi = q.inverse()?;
        let sigma_inv = (0..=m).map(|n| algebra.induced_matrix(&qi, n)).collect::<Result<_>>()?;
        Ok(TwistedBimodule { algebra, m, sigma_inv })
    }

    fn product(&self, x: Slot, y: Slot) -> SparseVec {
        self.algebra
            .mul(&[(x.1, Scalar::one())], x.0, &[(y.1, Scalar::one())], y.0)
            .expect("degree in range")
    }

    /// The `k`-th face of a basis chain, `0 <= k <= n`, with its sign.
    fn face_into(&self, key: &[Slot], c: &Scalar, k: usize, out: &mut TwistedChain) {
        let n = key.len() - 1;
        let sign = if k % 2 == 0 { c.clone() } else { -c };
        if k < n {
            let prod = self.product(key[k], key[k + 1]);
            let deg = key[k].0 + key[k + 1].0;
            for (i, x) in prod {
                let mut nk = Vec::with_capacity(n);
                nk.extend_from_slice(&key[..k]);
                nk.push((deg, i));
                nk.extend_from_slice(&key[k + 2..]);
                out.add(nk, &(&sign * &x));
            }
        } else {
            let (an, a0) = (key[n], key[0]);
            let tw = if ((self.m - 1) * an.0) % 2 == 0 { sign } else { -&sign };
            let s = self.sigma_inv[an.0].row(an.1);
            let prod = self.algebra.mul(s, an.0, &[(a0.1, Scalar::one())], a0.0).expect("degree in range");
            let deg = an.0 + a0.0;
            for (i, x) in prod {
                let mut nk = Vec::with_capacity(n);
                nk.push((deg, i));
                nk.extend_from_slice(&key[1..n]);
                out.add(nk, &(&tw * &x));
            }
        }
    }

    /// `k`-th signed face map applied to a chain.
    pub fn face(&self, chain: &TwistedChain, k: usize) -> TwistedChain {
        let mut out = TwistedChain::new(chain.internal_degree, chain.length - 1);
        for (key, c) in &chain.terms {
            self.face_into(key, c, k, &mut out);
        }
        out
    }

    pub fn boundary(&self, chain: &TwistedChain) -> TwistedChain {
        let mut out = TwistedChain::new(chain.internal_degree, chain.length.saturating_sub(1));
        for k in 0..=chain.length {
            out.add_chain(&self.face(chain, k));
        }
        out
    }

    /// `1 (x) w` as an `m`-chain.
    pub fn one_otimes_w(&self, w: &MultilinearForm) -> TwistedChain {
        let mut c = TwistedChain::new(self.m, self.m);
        for (idx, x) in w.indexed_entries() {
            let mut key = vec![(0, 0)];
            key.extend(idx.iter().map(|&l| (1, l)));
            c.add(key, x);
        }
        c
    }
}

/// The boundary of `1 (x) w`, split into first plus last face and each middle face.
#[derive(Clone, Debug)]
pub struct BoundaryReport {
    pub chain: TwistedChain,
    pub first_plus_last: TwistedChain,
    pub middle: Vec<TwistedChain>,
}

impl BoundaryReport {
    pub fn is_zero(&self) -> bool {
        self.chain.is_zero()
    }

    /// Every middle face vanishes individually and the outer faces cancel.
    pub fn termwise_zero(&self) -> bool {
        self.first_plus_last.is_zero() && self.middle.iter().all(TwistedChain::is_zero)
    }
}

pub fn boundary_of_one_otimes_w(w: &MultilinearForm, limits: &Limits) -> Result<BoundaryReport> {
    let bm = TwistedBimodule::new(w, limits)?;
    let c = bm.one_otimes_w(w);
    let m = bm.m;
    let mut first_plus_last = bm.face(&c, 0);
    first_plus_last.add_chain(&bm.face(&c, m));
    let middle: Vec<TwistedChain> = (1..m).map(|k| bm.face(&c, k)).collect();
    Ok(BoundaryReport { chain: bm.boundary(&c), first_plus_last, middle })
}

/// All slot-degree patterns of length `len` summing to `t`, lexicographic.
fn compositions(t: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return if t == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=t {
        for mut rest in compositions(t - first, len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Basis of the unnormalized chain space `C_n` at internal degree `t`.
fn chain_basis(a: &GradedQuotient, t: usize, n: usize, limits: &Limits) -> Result<Vec<Vec<Slot>>> {
    let mut total: u128 = 0;
    let pats = compositions(t, n + 1);
    for p in &pats {
        total += p.iter().map(|&g| a.dim(g) as u128).product::<u128>();
    }
    limits.check(&format!("Hochschild chains C_{n} at degree {t}"), total)?;
    let mut out = Vec::with_capacity(total as usize);
    for p in pats {
        let mut cur: Vec<Vec<Slot>> = vec![Vec::new()];
        for &g in &p {
            let mut next = Vec::new();
            for c in &cur {
                for i in 0..a.dim(g) {
                    let mut c2 = c.clone();
                    c2.push((g, i));
                    next.push(c2);
                }
            }
            cur = next;
        }
        out.extend(cur);
    }
    Ok(out)
}

/// True iff `1 (x) w` is not in the image of `b` from the full `C_{m+1}` at internal degree `m`.
pub fn is_nontrivial_cycle(w: &MultilinearForm, limits: &Limits) -> Result<bool> {
    let rep = boundary_of_one_otimes_w(w, limits)?;
    if !rep.is_zero() {
        return Err(Error::precondition("1 (x) w is not a cycle"));
    }
    let bm = TwistedBimodule::new(w, limits)?;
    let m = bm.m;
    let target = chain_basis(&bm.algebra, m, m, limits)?;
    let index: BTreeMap<&[Slot], usize> = target.iter().enumerate().map(|(i, k)| (k.as_slice(), i)).collect();
    let source = chain_basis(&bm.algebra, m, m + 1, limits)?;
    let to_vec = |c: &TwistedChain| -> SparseVec {
        let mut v: SparseVec = c.terms.iter().map(|(k, x)| (index[k.as_slice()], x.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    };
    let images = par::map(&source, |key| {
        let mut c = TwistedChain::new(m, m + 1);
        c.add(key.clone(), &Scalar::one());
        to_vec(&bm.boundary(&c))
    });
    let mut e = Echelon::new(target.len(), PivotOrder::Leftmost);
    e.extend(&images);
    Ok(!e.contains(&to_vec(&bm.one_otimes_w(w))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn cycles_on_gallery() {
        for e in gallery::all_entries().unwrap() {
            if e.degree != 2 {
                continue;
            }
            let r = boundary_of_one_otimes_w(&e.form, &lim()).unwrap();
            assert!(r.is_zero(), "{}", e.name);
            assert!(r.termwise_zero(), "{}", e.name);
        }
    }

    #[test]
    fn non_boundary_small_cases() {
        let e = gallery::epsilon_form(2, 2).unwrap();
        assert!(is_nontrivial_cycle(&e.form, &lim()).unwrap());
        for e in gallery::gl2_orbit_reps().unwrap() {
            assert!(is_nontrivial_cycle(&e.form, &lim()).unwrap(), "{}", e.name);
        }
        let e = gallery::epsilon_form(3, 2).unwrap();
        assert!(is_nontrivial_cycle(&e.form, &lim()).unwrap());
    }

    #[test]
    fn a_wrong_twist_breaks_the_cycle() {
        // with the untwisted bimodule the outer faces of 1 (x) eps_q do not cancel
        let e = gallery::manin_eps_q(&Scalar::int(2)).unwrap();
        let mut bm = TwistedBimodule::new(&e.form, &lim()).unwrap();
        bm.sigma_inv = (0..=2).map(|n| Matrix::identity(bm.algebra.dim(n))).collect();
        let c = bm.one_otimes_w(&e.form);
        assert!(!bm.boundary(&c).is_zero());
    }

    #[test]
    fn rejects_non_preregular() {
        let w = MultilinearForm::from_matrix(&Matrix::from_ints(&[&[1, 0], &[0, 0]])).unwrap();
        assert!(boundary_of_one_otimes_w(&w, &lim()).is_err());
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }
}
