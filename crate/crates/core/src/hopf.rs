//! The Hopf algebra `H(w, wt)` generated by `u^a_b`, its structure maps, and the
//! Yang-Baxter operators of a nondegenerate bilinear form.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Limits, Result};
use crate::linalg::{Echelon, Matrix, PivotOrder, SparseVec, Subspace};
use crate::preregularity::{is_preregular, solve_twist};
use crate::scalar::{QuadField, Rational, Scalar};
use crate::tensor::{decode, power, MultilinearForm};

/// A generator `u^upper_lower`.
pub type Letter = (usize, usize);

/// A noncommutative polynomial in the `u^a_b`; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NCPolynomial {
    terms: BTreeMap<Vec<Letter>, Scalar>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), &c);
        p
    }

    pub fn monomial(word: Vec<Letter>, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(word, &c);
        p
    }

    pub fn add_term(&mut self, word: Vec<Letter>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&word) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if s.is_zero() {
            self.terms.remove(&word);
        } else {
            self.terms.insert(word, s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Letter], &Scalar)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Vec::new()).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &NCPolynomial) -> NCPolynomial {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, f: &Scalar) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &(c * f));
        }
        out
    }

    pub fn mul(&self, other: &NCPolynomial) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, &(x * y));
            }
        }
        out
    }

    /// Image under `u^a_b -> delta^a_b`.
    pub fn counit(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for (w, c) in &self.terms {
            if w.iter().all(|(a, b)| a == b) {
                acc = &acc + c;
            }
        }
        acc
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if w.is_empty() {
                write!(f, "*1")?;
            }
            for (a, b) in w {
                write!(f, "*u{a}_{b}")?;
            }
        }
        Ok(())
    }
}

/// Coordinates on `K 1 (+) span(words of length m)`: the unit is 0, a word is `1 + code`.
#[derive(Clone, Copy, Debug)]
struct MonomialSpace {
    d: usize,
    m: usize,
}

impl MonomialSpace {
    fn size(&self) -> usize {
        1 + power(self.d * self.d, self.m) as usize
    }

    fn index(&self, w: &[Letter]) -> usize {
        if w.is_empty() {
            return 0;
        }
        assert_eq!(w.len(), self.m, "word length must be 0 or m");
        1 + w.iter().fold(0usize, |acc, (a, b)| acc * self.d * self.d + a * self.d + b)
    }

    fn word(&self, index: usize) -> Vec<Letter> {
        if index == 0 {
            return Vec::new();
        }
        decode((index - 1) as u64, self.d * self.d, self.m)
            .into_iter()
            .map(|g| (g / self.d, g % self.d))
            .collect()
    }

    fn vector(&self, p: &NCPolynomial) -> SparseVec {
        let mut v: SparseVec = p.terms().map(|(w, c)| (self.index(w), c.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    fn polynomial(&self, v: &[(usize, Scalar)]) -> NCPolynomial {
        let mut p = NCPolynomial::zero();
        for (i, c) in v {
            p.add_term(self.word(*i), c);
        }
        p
    }
}

/// A right inverse `wt` with `Wt^{a g_1..g_{m-1}} W_{g_1..g_{m-1} b} = delta^a_b`.
///
/// Uses the first `s+1` linearly independent rows of the flattening `(g) x (b)` of `w`, so the
/// result is supported on those index tuples only. For `m = 2` this is `B^{-1}`.
pub fn solve_wtilde(w: &MultilinearForm) -> Result<MultilinearForm> {
    let d = w.dim();
    let m = w.arity();
    if m < 2 {
        return Err(Error::precondition("wt needs arity at least 2"));
    }
    let f = w.flatten_any(m - 1);
    let mut e = Echelon::new(d, PivotOrder::Leftmost);
    let mut chosen = Vec::with_capacity(d);
    for (i, row) in f.rows().iter().enumerate() {
        if !row.is_empty() && e.insert(row) {
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        }
    }
    if chosen.len() < d {
        return Err(Error::precondition("w is degenerate in its last slot; no wt exists"));
    }
    let fp = Matrix::from_rows_unchecked(d, chosen.iter().map(|&i| f.row(i).clone()).collect());
    let inv = fp.inverse()?;
    let mut entries = Vec::new();
    for (a, j, x) in inv.entries() {
        let mut idx = vec![a];
        idx.extend(decode(chosen[j] as u64, d, m - 1));
        entries.push((idx, x.clone()));
    }
    let wt = MultilinearForm::from_entries(d, m, entries)?;
    validate_wtilde(w, &wt)?;
    Ok(wt)
}

/// Checks the right-inverse identity exactly.
pub fn validate_wtilde(w: &MultilinearForm, wt: &MultilinearForm) -> Result<()> {
    if w.dim() != wt.dim() || w.arity() != wt.arity() {
        return Err(Error::DimensionMismatch("w and wt must have the same shape".into()));
    }
    let prod = wt.flatten_any(1).mul(&w.flatten_any(w.arity() - 1))?;
    if !prod.is_identity() {
        return Err(Error::Verification(format!(
            "wt is not a right inverse of w: contraction gives {prod}"
        )));
    }
    Ok(())
}

/// `Wt^{l g_2..g_m} W_{mu g_2..g_m} = (Q_w^{-1})^l_mu`.
pub fn contraction_identity_check(w: &MultilinearForm, wt: &MultilinearForm) -> Result<bool> {
    if !is_preregular(w) {
        return Err(Error::precondition("the contraction identity needs a preregular form"));
    }
    validate_wtilde(w, wt)?;
    let q = solve_twist(w).matrix().cloned().expect("preregular forms have a twist");
    let lhs = wt.flatten_any(1).mul(&w.flatten_any(1).transpose())?;
    Ok(lhs == q.inverse()?)
}

/// Relations, counit, coproduct and antipode of `H(w, wt)`.
#[derive(Clone, Debug)]
pub struct HopfPresentation {
    dim: usize,
    arity: usize,
    raw_families: usize,
    relations: Vec<NCPolynomial>,
    span: Subspace,
    antipode: Vec<NCPolynomial>,
}

impl HopfPresentation {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `2 (s+1)^m`: the number of index families before deduplication.
    pub fn raw_family_count(&self) -> usize {
        self.raw_families
    }

    /// Canonical (reduced echelon) basis of the span of all relations.
    pub fn relations(&self) -> &[NCPolynomial] {
        &self.relations
    }

    /// `S(u^mu_nu)`.
    pub fn antipode(&self, mu: usize, nu: usize) -> &NCPolynomial {
        &self.antipode[mu * self.dim + nu]
    }

    /// `Delta(u^mu_nu) = sum_l u^mu_l (x) u^l_nu`.
    pub fn coproduct(&self, mu: usize, nu: usize) -> Vec<(Letter, Letter)> {
        (0..self.dim).map(|l| ((mu, l), (l, nu))).collect()
    }

    pub fn counit(&self, mu: usize, nu: usize) -> Scalar {
        if mu == nu {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    }

    fn space(&self) -> MonomialSpace {
        MonomialSpace { d: self.dim, m: self.arity }
    }

    /// Whether `p` (unit plus words of length `m`) lies in the linear span of the relations.
    pub fn in_relation_span(&self, p: &NCPolynomial) -> bool {
        if p.terms().any(|(w, _)| !w.is_empty() && w.len() != self.arity) {
            return false;
        }
        self.span.residual(&self.space().vector(p)).is_empty()
    }
}

fn letters(upper: &[usize], lower: &[usize]) -> Vec<Letter> {
    upper.iter().copied().zip(lower.iter().copied()).collect()
}

pub fn hopf_presentation(w: &MultilinearForm, wt: &MultilinearForm, limits: &Limits) -> Result<HopfPresentation> {
    validate_wtilde(w, wt)?;
    let d = w.dim();
    let m = w.arity();
    let space = MonomialSpace { d, m };
    limits.check_power("Hopf monomials", d * d, m)?;
    let fam = power(d, m) as usize;
    let mut raw: Vec<NCPolynomial> = Vec::with_capacity(2 * fam);
    for b in 0..fam {
        // W_{a_1..a_m} u^{a_1}_{b_1}...u^{a_m}_{b_m} - W_{b} 1
        let bi = decode(b as u64, d, m);
        let mut p = NCPolynomial::constant(-w.get_key(b as u64));
        for (a, x) in w.indexed_entries() {
            p.add_term(letters(&a, &bi), x);
        }
        raw.push(p);
    }
    for a in 0..fam {
        // Wt^{b_1..b_m} u^{a_1}_{b_1}...u^{a_m}_{b_m} - Wt^{a} 1
        let ai = decode(a as u64, d, m);
        let mut p = NCPolynomial::constant(-wt.get_key(a as u64));
        for (b, x) in wt.indexed_entries() {
            p.add_term(letters(&ai, &b), x);
        }
        raw.push(p);
    }
    let vectors: Vec<SparseVec> = raw.iter().map(|p| space.vector(p)).collect();
    let span = Subspace::span(space.size(), &vectors);
    let relations = span.basis().rows().iter().map(|r| space.polynomial(r)).collect();
    // S(u^mu_nu) = Wt^{mu l_1..l_{m-1}} u^{r_1}_{l_1}...u^{r_{m-1}}_{l_{m-1}} W_{r_1..r_{m-1} nu}
    let ft = wt.flatten_any(1);
    let fw = w.flatten_any(m - 1);
    let mut antipode = Vec::with_capacity(d * d);
    for mu in 0..d {
        for nu in 0..d {
            let mut p = NCPolynomial::zero();
            for (l, x) in ft.row(mu) {
                let li = decode(*l as u64, d, m - 1);
                for (r, row) in fw.rows().iter().enumerate() {
                    let y = crate::linalg::get(row, nu);
                    if y.is_zero() {
                        continue;
                    }
                    let ri = decode(r as u64, d, m - 1);
                    p.add_term(letters(&ri, &li), &(x * &y));
                }
            }
            antipode.push(p);
        }
    }
    Ok(HopfPresentation { dim: d, arity: m, raw_families: 2 * fam, relations, span, antipode })
}

fn u(a: usize, b: usize) -> NCPolynomial {
    NCPolynomial::monomial(vec![(a, b)], Scalar::one())
}

fn delta(a: usize, b: usize) -> Scalar {
    if a == b {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// `S(u^mu_l) u^l_nu - delta` and `u^mu_l S(u^l_nu) - delta` lie in the span of the relations.
pub fn verify_antipode_identity(hp: &HopfPresentation, limits: &Limits) -> Result<bool> {
    limits.check_power("Hopf monomials", hp.dim * hp.dim, hp.arity)?;
    let d = hp.dim;
    let ok = crate::par::all_range(d * d, |k| {
        let (mu, nu) = (k / d, k % d);
        let mut left = NCPolynomial::constant(-delta(mu, nu));
        let mut right = NCPolynomial::constant(-delta(mu, nu));
        for l in 0..d {
            left = left.add(&hp.antipode(mu, l).mul(&u(l, nu)));
            right = right.add(&u(mu, l).mul(hp.antipode(l, nu)));
        }
        hp.in_relation_span(&left) && hp.in_relation_span(&right)
    });
    Ok(ok)
}

/// The counit kills every relation.
pub fn counit_check(hp: &HopfPresentation) -> bool {
    hp.relations.iter().all(|p| p.counit().is_zero())
}

/// `Delta(r)` lies in `rel (x) T + T (x) rel` for every relation `r`.
pub fn coproduct_check(hp: &HopfPresentation, limits: &Limits) -> Result<bool> {
    let d = hp.dim;
    let m = hp.arity;
    limits.check_power("Hopf monomials", d * d, m)?;
    let space = hp.space();
    let mut cache: BTreeMap<usize, SparseVec> = BTreeMap::new();
    let mut normal = |idx: usize| -> SparseVec {
        cache.entry(idx).or_insert_with(|| hp.span.residual(&[(idx, Scalar::one())])).clone()
    };
    let gammas = power(d, m) as usize;
    for rel in &hp.relations {
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        let mut push = |a: &SparseVec, b: &SparseVec, c: &Scalar| {
            for (i, x) in a {
                for (j, y) in b {
                    let e = acc.entry((*i, *j)).or_default();
                    *e = &*e + &(&(x * y) * c);
                }
            }
        };
        for (word, c) in rel.terms() {
            if word.is_empty() {
                let one = normal(0);
                push(&one, &one, c);
                continue;
            }
            for g in 0..gammas {
                let gi = decode(g as u64, d, m);
                let lw: Vec<Letter> = word.iter().zip(&gi).map(|((a, _), g)| (*a, *g)).collect();
                let rw: Vec<Letter> = word.iter().zip(&gi).map(|((_, b), g)| (*g, *b)).collect();
                let l = normal(space.index(&lw));
                let r = normal(space.index(&rw));
                push(&l, &r, c);
            }
        }
        if acc.values().any(|x| !x.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The relations of `A(w,N)` pushed through `x^mu -> u^mu_nu (x) x^nu` land in
/// `span(H-relations) (x) T(E) + T(H) (x) R`.
///
/// Checked as: for each prefix `l` of length `m-N` and each `phi` in
/// `R^perp`, `sum W_{a mu} u^a_l u^mu_nu phi^nu` lies in the span of the relations.
pub fn coaction_check(w: &MultilinearForm, n: usize, hp: &HopfPresentation, limits: &Limits) -> Result<bool> {
    let d = w.dim();
    let m = w.arity();
    if hp.dim != d || hp.arity != m || n < 2 || n > m {
        return Err(Error::DimensionMismatch("presentation does not match (w, N)".into()));
    }
    limits.check_power("Hopf monomials", d * d, m)?;
    let perp = crate::algebra::algebra_from_form(w, n)?.relations().perp();
    let prefixes = power(d, m - n) as usize;
    let phis = perp.basis().rows();
    let ok = crate::par::all_range(prefixes * phis.len().max(1), |k| {
        if phis.is_empty() {
            return true;
        }
        let (lp, phi) = (k / phis.len(), &phis[k % phis.len()]);
        let li = decode(lp as u64, d, m - n);
        let mut p = NCPolynomial::zero();
        for (key, x) in w.entries() {
            let idx = decode(key, d, m);
            for (nu, y) in phi {
                let mut lower = li.clone();
                lower.extend(decode(*nu as u64, d, n));
                p.add_term(letters(&idx, &lower), &(x * y));
            }
        }
        hp.in_relation_span(&p)
    });
    Ok(ok)
}

/// The two roots of `q^2 + c q + 1 = 0` with `c = B^{ab} B_{ab}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QRoots {
    pub c: Rational,
    pub roots: (Scalar, Scalar),
}

pub fn q_from_b(b: &Matrix) -> Result<QRoots> {
    if !b.is_square() {
        return Err(Error::DimensionMismatch("bilinear form needs a square matrix".into()));
    }
    let inv = b.inverse().map_err(|_| Error::precondition("b is degenerate"))?;
    let mut c = Scalar::zero();
    for (i, j, x) in inv.entries() {
        c = &c + &(x * &b.get(i, j));
    }
    let c = c
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::precondition("B^{ab}B_{ab} must be rational to build q"))?;
    let disc = &(&c * &c) - &Rational::from_int(4);
    let roots = match disc.sqrt() {
        Some(r) => {
            let half = Rational::new(1, 2);
            let q1 = &(&(-&c) + &r) * &half;
            let q2 = &(&(-&c) - &r) * &half;
            (Scalar::Rat(q1), Scalar::Rat(q2))
        }
        None => {
            let field = QuadField::new(Rational::ONE, c.clone())?;
            let t = field.gen();
            let other = &Scalar::Rat(-&c) - &t;
            (t, other)
        }
    };
    Ok(QRoots { c, roots })
}

/// Pass/fail for the braid relation and the Hecke identity of `R_+` and `R_-`, for both roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YangBaxterReport {
    pub q: QRoots,
    pub braid_plus: bool,
    pub braid_minus: bool,
    pub hecke_plus: bool,
    pub hecke_minus: bool,
}

impl YangBaxterReport {
    pub fn all_pass(&self) -> bool {
        self.braid_plus && self.braid_minus && self.hecke_plus && self.hecke_minus
    }
}

/// `P^{ab}_{mn} = B^{ab} B_{mn}` on `V (x) V`.
fn rank_one_operator(b: &Matrix) -> Result<Matrix> {
    let inv = b.inverse()?;
    let d = b.nrows();
    let row_vec: SparseVec = (0..d * d)
        .filter_map(|k| {
            let x = b.get(k / d, k % d);
            (!x.is_zero()).then_some((k, x))
        })
        .collect();
    let rows = (0..d * d)
        .map(|k| {
            let c = inv.get(k / d, k % d);
            crate::linalg::scale(&row_vec, &c)
        })
        .collect();
    Matrix::from_rows(d * d, rows)
}

fn braid(r: &Matrix, d: usize) -> Result<bool> {
    let id = Matrix::identity(d);
    let r1 = r.kron(&id);
    let r2 = id.kron(r);
    let lhs = r1.mul(&r2)?.mul(&r1)?;
    let rhs = r2.mul(&r1)?.mul(&r2)?;
    Ok(lhs == rhs)
}

fn hecke(r: &Matrix, q2: &Scalar) -> Result<bool> {
    let n = r.nrows();
    let a = r.sub(&Matrix::identity(n))?;
    let b = r.add(&Matrix::scalar_identity(n, q2))?;
    Ok(a.mul(&b)?.is_zero())
}

pub fn yang_baxter_check(b: &Matrix) -> Result<YangBaxterReport> {
    let q = q_from_b(b)?;
    let d = b.nrows();
    let p = rank_one_operator(b)?;
    let id = Matrix::identity(d * d);
    let mut result = [true; 4];
    for root in [&q.roots.0, &q.roots.1] {
        let qi = root.inv()?;
        let rp = id.add(&p.scale(root))?;
        let rm = id.add(&p.scale(&qi))?;
        result[0] &= braid(&rp, d)?;
        result[1] &= braid(&rm, d)?;
        result[2] &= hecke(&rp, &(root * root))?;
        result[3] &= hecke(&rm, &(&qi * &qi))?;
    }
    Ok(YangBaxterReport {
        q,
        braid_plus: result[0],
        braid_minus: result[1],
        hecke_plus: result[2],
        hecke_minus: result[3],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bilinear(rows: &[&[i64]]) -> MultilinearForm {
        MultilinearForm::from_matrix(&Matrix::from_ints(rows)).unwrap()
    }

    #[test]
    fn bilinear_wtilde_is_inverse() {
        let b = Matrix::from_ints(&[&[0, -1], &[2, 0]]);
        let w = MultilinearForm::from_matrix(&b).unwrap();
        let wt = solve_wtilde(&w).unwrap();
        assert_eq!(wt.flatten(1).unwrap(), b.inverse().unwrap());
        assert!(contraction_identity_check(&w, &wt).unwrap());
        assert!(solve_wtilde(&bilinear(&[&[1, 0], &[0, 0]])).is_err());
    }

    #[test]
    fn q_roots() {
        let r = q_from_b(&Matrix::from_ints(&[&[0, -1], &[2, 0]])).unwrap();
        assert_eq!(r.c, Rational::new(-5, 2));
        assert_eq!(r.roots, (Scalar::int(2), Scalar::ratio(1, 2)));
        let r = q_from_b(&Matrix::identity(2)).unwrap();
        assert_eq!(r.roots, (Scalar::int(-1), Scalar::int(-1)));
        let r = q_from_b(&Matrix::from_ints(&[&[0, -1], &[1, 0]])).unwrap();
        assert_eq!(r.roots.0, Scalar::one());
        // c = 3 needs the extension q^2 + 3q + 1 (discriminant 5)
        let r = q_from_b(&Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(r.c, Rational::from_int(3));
        let q = &r.roots.0;
        assert!(q.as_rational().is_none());
        assert!((&(&(q * q) + &(q * &Scalar::int(3))) + &Scalar::one()).is_zero());
        assert!(q_from_b(&Matrix::from_ints(&[&[1, 1], &[1, 1]])).is_err());
    }

    #[test]
    fn yang_baxter_instances() {
        for b in [
            Matrix::from_ints(&[&[0, -1], &[2, 0]]),
            Matrix::identity(2),
            Matrix::from_ints(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]),
        ] {
            assert!(yang_baxter_check(&b).unwrap().all_pass());
        }
    }

    #[test]
    fn h_of_eps_q() {
        let w = bilinear(&[&[0, -1], &[2, 0]]);
        let wt = solve_wtilde(&w).unwrap();
        let lim = Limits::default();
        let hp = hopf_presentation(&w, &wt, &lim).unwrap();
        assert_eq!(hp.raw_family_count(), 8);
        assert!(counit_check(&hp));
        assert!(verify_antipode_identity(&hp, &lim).unwrap());
        assert!(coproduct_check(&hp, &lim).unwrap());
        assert!(coaction_check(&w, 2, &hp, &lim).unwrap());
        // S(u^mu_nu) = B^{mu a} B_{b nu} u^b_a
        let b = Matrix::from_ints(&[&[0, -1], &[2, 0]]);
        let bi = b.inverse().unwrap();
        for mu in 0..2 {
            for nu in 0..2 {
                let mut expected = NCPolynomial::zero();
                for a in 0..2 {
                    for bb in 0..2 {
                        expected.add_term(vec![(bb, a)], &(&bi.get(mu, a) * &b.get(bb, nu)));
                    }
                }
                assert_eq!(hp.antipode(mu, nu), &expected);
            }
        }
    }

    #[test]
    fn wrong_wtilde_is_rejected() {
        let w = bilinear(&[&[0, -1], &[2, 0]]);
        let bad = bilinear(&[&[1, 0], &[0, 1]]);
        assert!(matches!(hopf_presentation(&w, &bad, &Limits::default()), Err(Error::Verification(_))));
    }

    #[test]
    fn polynomial_ops() {
        let p = u(0, 1).add(&NCPolynomial::constant(Scalar::int(2)));
        let sq = p.mul(&p);
        assert_eq!(sq.constant_term(), Scalar::int(4));
        assert_eq!(sq.counit(), Scalar::int(4));
        assert!(p.sub(&p).is_zero());
        assert_eq!(u(1, 1).counit(), Scalar::one());
    }
}
