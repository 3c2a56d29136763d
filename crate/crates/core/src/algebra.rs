//! N-homogeneous algebras `A(E,R) = T(E)/(R)`, their graded components, duals and the
//! subspaces `W_n` attached to a form.
//!
//! [`GradedQuotient`] works in quotient coordinates: `A_n` is computed as the quotient of
//! `A_{n-1} (x) E` by the image of `E^{n-N} (x) R`, eliminating with pivots at the largest columns
//! so that the surviving basis is the set of lexicographically least standard words.

use crate::error::{Error, Limits, Result};
use crate::linalg::{Accumulator, Echelon, Matrix, PivotOrder, SparseVec, Subspace};
use crate::par;
use crate::scalar::Scalar;
use crate::tensor::{power, MultilinearForm};

/// `A(E,R)` with `E` of dimension `generators` and `R` inside `E^{(x)N}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: usize,
    degree: usize,
    relations: Subspace,
}

impl Presentation {
    pub fn new(generators: usize, degree: usize, relations: Subspace) -> Result<Self> {
        if generators < 1 {
            return Err(Error::invalid("a presentation needs at least one generator"));
        }
        if degree < 2 {
            return Err(Error::invalid(format!("relation degree must be at least 2, got {degree}")));
        }
        let ambient = (generators as u128).checked_pow(degree as u32);
        if ambient != Some(relations.ambient() as u128) {
            return Err(Error::DimensionMismatch(format!(
                "relations live in a space of dimension {}, expected {generators}^{degree}",
                relations.ambient()
            )));
        }
        Ok(Presentation { generators, degree, relations })
    }

    /// Presentation whose relations are spanned by `vectors` (coordinates on `E^{(x)N}`).
    pub fn from_relations(generators: usize, degree: usize, vectors: &[SparseVec]) -> Result<Self> {
        let ambient = power(generators, degree) as usize;
        if let Some(bad) = vectors.iter().flat_map(|v| v.last()).find(|(i, _)| *i >= ambient) {
            return Err(Error::invalid(format!("relation coordinate {} out of range", bad.0)));
        }
        Self::new(generators, degree, Subspace::span(ambient, vectors))
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// `A^! = A(E^*, R^perp)`.
    pub fn dual(&self) -> Presentation {
        Presentation {
            generators: self.generators,
            degree: self.degree,
            relations: self.relations.perp(),
        }
    }
}

/// `A(w,N)`: relations are the contractions `W_{l_1..l_{m-N} mu_1..mu_N} x^{mu_1}...x^{mu_N}`.
pub fn algebra_from_form(w: &MultilinearForm, n: usize) -> Result<Presentation> {
    if n < 2 {
        return Err(Error::invalid(format!("N must be at least 2, got {n}")));
    }
    if w.arity() < n {
        return Err(Error::invalid(format!(
            "arity {} is smaller than N = {n}",
            w.arity()
        )));
    }
    let f = w.flatten_any(w.arity() - n);
    Presentation::new(w.dim(), n, Subspace::row_space(&f))
}

/// `W_n`: the `(m-n)`-fold contractions of `w` for `n >= N`, everything for `n < N`.
pub fn w_subspace(w: &MultilinearForm, n_rel: usize, n: usize) -> Result<Subspace> {
    let m = w.arity();
    if n > m {
        return Err(Error::invalid(format!("W_n needs n <= {m}, got {n}")));
    }
    if n < n_rel {
        return Ok(Subspace::full(power(w.dim(), n) as usize));
    }
    Ok(Subspace::row_space(&w.flatten_any(m - n)))
}

/// The components `A_0, ..., A_{n_max}` of a presentation, with multiplication.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    presentation: Presentation,
    dims: Vec<usize>,
    words: Vec<Vec<Vec<usize>>>,
    // rho[n][i*d + e]: class of (basis_i of A_{n-1}) * x^e in A_n
    rho: Vec<Vec<SparseVec>>,
}

impl GradedQuotient {
    pub fn build(p: &Presentation, n_max: usize, limits: &Limits) -> Result<Self> {
        let d = p.generators;
        let nrel = p.degree;
        let rel_rows = p.relations.basis().rows();
        let mut q = GradedQuotient {
            presentation: p.clone(),
            dims: vec![1],
            words: vec![vec![Vec::new()]],
            rho: vec![Vec::new()],
        };
        for n in 1..=n_max {
            let prev = q.dims[n - 1];
            let ncols = prev * d;
            limits.check(&format!("degree {n} component"), ncols as u128)?;
            let mut e = Echelon::new(ncols, PivotOrder::Rightmost);
            if n >= nrel && !rel_rows.is_empty() {
                let low = q.dims[n - nrel];
                let vectors: Vec<Vec<SparseVec>> = par::map_range(low, |b| {
                    let chains = q.chains(n - nrel, b, nrel - 1);
                    rel_rows
                        .iter()
                        .map(|r| {
                            let mut acc = Accumulator::new();
                            for (k, x) in r {
                                for (i, y) in &chains[k / d] {
                                    acc.add(i * d + k % d, &(x * y));
                                }
                            }
                            acc.finish()
                        })
                        .collect()
                });
                let flat: Vec<SparseVec> = vectors.into_iter().flatten().collect();
                e.extend(&flat);
            }
            let (rows, pivots) = e.into_rref();
            let mut index = vec![usize::MAX; ncols];
            let mut is_pivot = vec![false; ncols];
            for &c in &pivots {
                is_pivot[c] = true;
            }
            let mut words = Vec::new();
            for c in 0..ncols {
                if !is_pivot[c] {
                    index[c] = words.len();
                    let mut wd = q.words[n - 1][c / d].clone();
                    wd.push(c % d);
                    words.push(wd);
                }
            }
            let mut rho: Vec<SparseVec> = (0..ncols)
                .map(|c| if is_pivot[c] { Vec::new() } else { vec![(index[c], Scalar::one())] })
                .collect();
            for (row, c) in rows.into_iter().zip(pivots) {
                // pivot is the last entry with coefficient one
                let body = &row[..row.len() - 1];
                rho[c] = body.iter().map(|(j, x)| (index[*j], -x)).collect();
            }
            q.dims.push(words.len());
            q.words.push(words);
            q.rho.push(rho);
        }
        Ok(q)
    }

    /// Classes of `b * x^{mu_1} ... x^{mu_len}` for all words `mu`, lexicographic.
    fn chains(&self, deg: usize, b: usize, len: usize) -> Vec<SparseVec> {
        let mut cur = vec![vec![(b, Scalar::one())]];
        for step in 0..len {
            let mut next = Vec::with_capacity(cur.len() * self.generators());
            for v in &cur {
                for e in 0..self.generators() {
                    next.push(self.apply_rho(deg + step + 1, v, e));
                }
            }
            cur = next;
        }
        cur
    }

    fn apply_rho(&self, n: usize, v: &[(usize, Scalar)], e: usize) -> SparseVec {
        let d = self.generators();
        let mut acc = Accumulator::new();
        for (i, x) in v {
            acc.add_scaled(x, &self.rho[n][i * d + e]);
        }
        acc.finish()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn generators(&self) -> usize {
        self.presentation.generators
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// The standard word representing basis element `i` of `A_n`.
    pub fn basis_word(&self, n: usize, i: usize) -> &[usize] {
        &self.words[n][i]
    }

    pub fn basis_words(&self, n: usize) -> &[Vec<usize>] {
        &self.words[n]
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree() {
            return Err(Error::invalid(format!(
                "degree {n} beyond the computed range {}",
                self.max_degree()
            )));
        }
        Ok(())
    }

    /// `x * word` for `x` in `A_deg`.
    pub fn right_mul_word(&self, x: &[(usize, Scalar)], deg: usize, word: &[usize]) -> Result<SparseVec> {
        self.check_degree(deg + word.len())?;
        let mut cur = x.to_vec();
        for (k, &e) in word.iter().enumerate() {
            cur = self.apply_rho(deg + k + 1, &cur, e);
        }
        Ok(cur)
    }

    pub fn class_of_word(&self, word: &[usize]) -> Result<SparseVec> {
        self.right_mul_word(&[(0, Scalar::one())], 0, word)
    }

    /// Class of an element of `E^{(x)n}` given in lexicographic word coordinates.
    pub fn class_of_tensor(&self, n: usize, v: &[(usize, Scalar)]) -> Result<SparseVec> {
        self.check_degree(n)?;
        let d = self.generators();
        let mut acc = Accumulator::new();
        for (k, x) in v {
            let word = crate::tensor::decode(*k as u64, d, n);
            acc.add_scaled(x, &self.class_of_word(&word)?);
        }
        Ok(acc.finish())
    }

    /// Product of `x` in `A_p` and `y` in `A_q`.
    pub fn mul(&self, x: &[(usize, Scalar)], p: usize, y: &[(usize, Scalar)], q: usize) -> Result<SparseVec> {
        self.check_degree(p + q)?;
        let mut acc = Accumulator::new();
        for (j, c) in y {
            let t = self.right_mul_word(x, p, &self.words[q][*j])?;
            acc.add_scaled(c, &t);
        }
        Ok(acc.finish())
    }

    /// Matrix of `y -> y * a` from `A_q` to `A_{q+p}` (row `i` is the image of basis `i`).
    pub fn right_mul_matrix(&self, a: &[(usize, Scalar)], p: usize, q: usize) -> Result<Matrix> {
        self.check_degree(p + q)?;
        let rows = par::map_range(self.dims[q], |i| {
            self.mul(&[(i, Scalar::one())], q, a, p).expect("degree checked")
        });
        Matrix::from_rows(self.dims[p + q], rows)
    }

    /// Matrix on `A_n` of the map induced by `x^mu -> sum_nu g[mu][nu] x^nu` on generators.
    /// Only meaningful when `g^{(x)N}` preserves the relations.
    pub fn induced_matrix(&self, g: &Matrix, n: usize) -> Result<Matrix> {
        self.check_degree(n)?;
        let d = self.generators();
        if g.nrows() != d || g.ncols() != d {
            return Err(Error::DimensionMismatch(format!("expected a {d}x{d} matrix")));
        }
        let mats = vec![g.clone(); n];
        let rows = par::map_range(self.dims[n], |i| {
            let key = crate::tensor::encode(&self.words[n][i], d) as usize;
            let img = crate::tensor::apply_slots_vec(&[(key, Scalar::one())], d, &mats);
            self.class_of_tensor(n, &img).expect("degree checked")
        });
        Matrix::from_rows(self.dims[n], rows)
    }

    /// Matrix of `y -> a * y` from `A_q` to `A_{p+q}`.
    pub fn left_mul_matrix(&self, a: &[(usize, Scalar)], p: usize, q: usize) -> Result<Matrix> {
        self.check_degree(p + q)?;
        let rows = par::map_range(self.dims[q], |i| {
            self.right_mul_word(a, p, &self.words[q][i]).expect("degree checked")
        });
        Matrix::from_rows(self.dims[p + q], rows)
    }
}

/// `dim A_n` for `n = 0..=n_max`.
pub fn hilbert_truncation(p: &Presentation, n_max: usize, limits: &Limits) -> Result<Vec<usize>> {
    Ok(GradedQuotient::build(p, n_max, limits)?.dims)
}

pub fn graded_dimension(p: &Presentation, n: usize, limits: &Limits) -> Result<usize> {
    Ok(hilbert_truncation(p, n, limits)?[n])
}

/// Dimensions of the ideal components `(R)_n` computed in the ambient space `E^{(x)n}`,
/// via `(R)_n = E (x) (R)_{n-1} + R (x) E^{(x)(n-N)}`.
pub fn ideal_dimensions(p: &Presentation, n_max: usize, limits: &Limits) -> Result<Vec<usize>> {
    let d = p.generators;
    let nrel = p.degree;
    let mut out = Vec::with_capacity(n_max + 1);
    let mut prev: Vec<SparseVec> = Vec::new();
    for n in 0..=n_max {
        limits.check_power(&format!("ambient degree {n}"), d, n)?;
        if n < nrel {
            out.push(0);
            continue;
        }
        let size = power(d, n) as usize;
        let lower = power(d, n - 1) as usize;
        let tail = power(d, n - nrel) as usize;
        let mut vs: Vec<SparseVec> = Vec::new();
        for e in 0..d {
            for r in &prev {
                vs.push(r.iter().map(|(k, x)| (e * lower + k, x.clone())).collect());
            }
        }
        for r in p.relations.basis().rows() {
            for t in 0..tail {
                vs.push(r.iter().map(|(k, x)| (k * tail + t, x.clone())).collect());
            }
        }
        let mut ech = Echelon::new(size, PivotOrder::Leftmost);
        ech.extend(&vs);
        out.push(ech.rank());
        prev = ech.into_rref().0;
    }
    Ok(out)
}

/// Coefficients of `1/(1 - d t + t^2)`.
pub fn predicted_d2(d: usize, n_max: usize) -> Vec<i64> {
    series_inverse(&[1, -(d as i64), 1], n_max)
}

/// Coefficients of `1/(1 - d t + d t^N - t^{N+1})`.
pub fn predicted_d3(d: usize, n: usize, n_max: usize) -> Vec<i64> {
    let mut den = vec![0i64; n + 2];
    den[0] = 1;
    den[1] -= d as i64;
    den[n] += d as i64;
    den[n + 1] -= 1;
    series_inverse(&den, n_max)
}

fn series_inverse(den: &[i64], n_max: usize) -> Vec<i64> {
    let mut a = vec![0i64; n_max + 1];
    a[0] = 1;
    for n in 1..=n_max {
        let mut s = 0i64;
        for k in 1..den.len().min(n + 1) {
            s = s.checked_sub(den[k].checked_mul(a[n - k]).expect("series overflow")).expect("series overflow");
        }
        a[n] = s;
    }
    a
}

/// Left and right multiplication by the degree-1 element `a` are injective
/// from `A_n` to `A_{n+1}` for every `n <= n_max`.
pub fn left_right_regular_check(
    p: &Presentation,
    a: &[(usize, Scalar)],
    n_max: usize,
    limits: &Limits,
) -> Result<bool> {
    if p.degree != 2 || p.relations.dim() != 1 {
        return Err(Error::precondition("expected a quadratic algebra with a single relation"));
    }
    if a.is_empty() {
        return Err(Error::precondition("the element a must be nonzero"));
    }
    if a.last().map_or(false, |(i, _)| *i >= p.generators) {
        return Err(Error::invalid("degree-1 element has a coordinate out of range"));
    }
    let q = GradedQuotient::build(p, n_max + 1, limits)?;
    let a1 = q.class_of_tensor(1, a)?;
    for n in 0..=n_max {
        let r = q.right_mul_matrix(&a1, 1, n)?;
        let l = q.left_mul_matrix(&a1, 1, n)?;
        if r.rank() != q.dim(n) || l.rank() != q.dim(n) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The elements `Theta^l = Wt^{l l_1..l_N} theta_{l_1}...theta_{l_N}` of `A^!_N`.
#[derive(Clone, Debug)]
pub struct ThetaBasis {
    pub wtilde: MultilinearForm,
    /// Coordinates of each `Theta^l` in the standard basis of `A^!_N`.
    pub theta: Vec<SparseVec>,
    pub dual_dim: usize,
    pub verified: bool,
}

pub fn theta_basis(w: &MultilinearForm, n: usize, limits: &Limits) -> Result<ThetaBasis> {
    if n < 2 || w.arity() != n + 1 {
        return Err(Error::precondition("the Theta basis needs an (N+1)-linear form with N >= 2"));
    }
    if !crate::preregularity::is_preregular(w) {
        return Err(Error::precondition("the Theta basis needs a preregular form"));
    }
    let wt = crate::hopf::solve_wtilde(w)?;
    let dual = GradedQuotient::build(&algebra_from_form(w, n)?.dual(), n, limits)?;
    let d = w.dim();
    let ft = wt.flatten_any(1);
    let theta: Vec<SparseVec> = (0..d)
        .map(|l| dual.class_of_tensor(n, ft.row(l)))
        .collect::<Result<_>>()?;
    let independent = Matrix::from_rows(dual.dim(n), theta.clone())?.rank() == d;
    // theta_{mu_1}...theta_{mu_N} = W_{mu_1..mu_N l} Theta^l
    let fw = w.flatten_any(n);
    let relations_hold = (0..power(d, n) as usize).all(|u| {
        let lhs = dual.class_of_tensor(n, &[(u, Scalar::one())]).expect("degree in range");
        let mut acc = Accumulator::new();
        for (l, x) in fw.row(u) {
            acc.add_scaled(x, &theta[*l]);
        }
        acc.finish() == lhs
    });
    let verified = independent && dual.dim(n) == d && relations_hold;
    if !verified {
        return Err(Error::Verification("the Theta elements do not form a basis of A^!_N".into()));
    }
    Ok(ThetaBasis { wtilde: wt, theta, dual_dim: dual.dim(n), verified })
}
