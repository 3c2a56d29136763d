//! The Koszul `N`-complex `K(A)`, its contraction the Koszul complex `K(A,K)`, truncated
//! homology, Koszulity and Gorenstein checks.
//!
//! `(A^!_n)^*` is computed inside `E^{(x)n}` as `(A^!_{n-1})^* (x) E  cap  E^{(x)(n-N)} (x) R`,
//! which unrolls to the intersection of all `E^{(x)i} (x) R (x) E^{(x)j}`.
//!
//! Every reported homology group is labelled with its internal degree; a pass is evidence up to
//! the truncation, never a proof.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{algebra_from_form, w_subspace, GradedQuotient, Presentation};
use crate::error::{Error, Limits, Result};
use crate::frobenius::omega_form;
use crate::linalg::{Accumulator, Matrix, SparseVec, Subspace};
use crate::par;
use crate::preregularity::{is_preregular, is_three_regular};
use crate::scalar::Scalar;
use crate::tensor::{power, MultilinearForm};

/// `nu_N(2l) = N l`, `nu_N(2l+1) = N l + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NuTable {
    pub n: usize,
}

impl NuTable {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid(format!("N must be at least 2, got {n}")));
        }
        Ok(NuTable { n })
    }

    pub fn nu(&self, p: usize) -> usize {
        self.n * (p / 2) + p % 2
    }

    /// `p` with `nu(p) = k`, if any.
    pub fn inverse(&self, k: usize) -> Option<usize> {
        match k % self.n {
            0 => Some(2 * (k / self.n)),
            1 => Some(2 * (k / self.n) + 1),
            _ => None,
        }
    }
}

/// `X_n = (A^!_n)^*` for `n = 0..=n_max`, as subspaces of `E^{(x)n}`.
#[derive(Clone, Debug)]
pub struct DualComponents {
    pub generators: usize,
    pub spaces: Vec<Subspace>,
    // split[n][k][e]: coordinates in X_{n-1} of y with x_k = sum_e e (x) y_{k,e}
    split: Vec<Vec<Vec<SparseVec>>>,
}

impl DualComponents {
    pub fn build(p: &Presentation, n_max: usize, limits: &Limits) -> Result<Self> {
        let d = p.generators();
        let nrel = p.degree();
        let perp = p.relations().perp();
        // entries of the R^perp basis indexed by their position in E^{(x)N}
        let mut by_pos: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); power(d, nrel) as usize];
        for (j, row) in perp.basis().rows().iter().enumerate() {
            for (k, x) in row {
                by_pos[*k].push((j, x.clone()));
            }
        }
        let mut spaces = vec![Subspace::full(1)];
        for n in 1..=n_max {
            let prev = &spaces[n - 1];
            if prev.dim() == 0 {
                spaces.push(Subspace::zero(power(d, n).min(1 << 20) as usize));
                continue;
            }
            limits.check_power(&format!("(A^!_{n})^*"), d, n)?;
            let size = power(d, n) as usize;
            let candidates: Vec<SparseVec> = prev
                .basis()
                .rows()
                .iter()
                .flat_map(|b| (0..d).map(move |e| b.iter().map(|(k, x)| (k * d + e, x.clone())).collect()))
                .collect();
            if n < nrel {
                spaces.push(Subspace::span(size, &candidates));
                continue;
            }
            // last N slots must lie in R: pair with R^perp for every prefix
            let tail = power(d, nrel - 1) as usize;
            let mut constraints: BTreeMap<(usize, usize), Accumulator> = BTreeMap::new();
            for (i, b) in prev.basis().rows().iter().enumerate() {
                for (key, x) in b {
                    let (u, t) = (key / tail, key % tail);
                    for e in 0..d {
                        for (j, phi) in &by_pos[t * d + e] {
                            constraints.entry((u, *j)).or_default().add(i * d + e, &(x * phi));
                        }
                    }
                }
            }
            let rows: Vec<SparseVec> =
                constraints.into_values().map(Accumulator::finish).filter(|r| !r.is_empty()).collect();
            let kernel = Matrix::from_rows(prev.dim() * d, rows)?.nullspace();
            let vectors: Vec<SparseVec> = kernel
                .basis()
                .rows()
                .iter()
                .map(|c| {
                    let mut acc = Accumulator::new();
                    for (ie, x) in c {
                        acc.add_scaled(x, &candidates[*ie]);
                    }
                    acc.finish()
                })
                .collect();
            spaces.push(Subspace::span(size, &vectors));
        }
        let mut split = vec![Vec::new()];
        for n in 1..=n_max {
            let lower = power(d, n - 1) as usize;
            let sp = &spaces[n - 1];
            let rows = par::map(spaces[n].basis().rows(), |x| {
                let mut parts: Vec<SparseVec> = vec![Vec::new(); d];
                for (k, c) in x {
                    parts[k / lower].push((k % lower, c.clone()));
                }
                parts.iter().map(|y| sp.coordinates_sparse(y)).collect::<Vec<_>>()
            });
            split.push(rows);
        }
        Ok(DualComponents { generators: d, spaces, split })
    }

    pub fn dim(&self, n: usize) -> usize {
        self.spaces[n].dim()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.spaces.len() - 1
    }

    /// `d : A_j (x) X_n -> A_{j+1} (x) X_{n-1}`, `a (x) e_1..e_n -> a e_1 (x) e_2..e_n`.
    pub fn d_matrix(&self, a: &GradedQuotient, j: usize, n: usize) -> Result<Matrix> {
        let xd = self.dim(n);
        let xl = self.dim(n - 1);
        let rows = par::map_range(a.dim(j) * xd, |r| {
            let (i, k) = (r / xd, r % xd);
            let mut acc = Accumulator::new();
            for (e, y) in self.split[n][k].iter().enumerate() {
                if y.is_empty() {
                    continue;
                }
                let ae = a.right_mul_word(&[(i, Scalar::one())], j, &[e]).expect("degree in range");
                for (b, c) in &ae {
                    for (l, z) in y {
                        acc.add(b * xl + l, &(c * z));
                    }
                }
            }
            acc.finish()
        });
        Matrix::from_rows(a.dim(j + 1) * xl, rows)
    }

    /// `delta : Hom(X_{n-1}, A_j) -> Hom(X_n, A_{j+1})`, `f -> (x -> sum_e e f(y_{x,e}))`.
    /// Coordinates `l * dim A_j + a` for `x_l^* (x) a`.
    pub fn codifferential(&self, a: &GradedQuotient, j: usize, n: usize, left: &[Matrix]) -> Result<Matrix> {
        let xd = self.dim(n);
        let xl = self.dim(n - 1);
        let aj = a.dim(j);
        let aj1 = a.dim(j + 1);
        // transpose of split: for each (l, e) the pairs (k, coefficient)
        let mut by_l: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); xl];
        for k in 0..xd {
            for (e, y) in self.split[n][k].iter().enumerate() {
                for (l, z) in y {
                    by_l[*l].push((k, e, z.clone()));
                }
            }
        }
        let rows = par::map_range(xl * aj, |r| {
            let (l, ai) = (r / aj, r % aj);
            let mut acc = Accumulator::new();
            for (k, e, z) in &by_l[l] {
                for (b, c) in left[*e].row(ai) {
                    acc.add(k * aj1 + b, &(z * c));
                }
            }
            acc.finish()
        });
        Matrix::from_rows(xd * aj1, rows)
    }
}

/// One term `K_{p,t}` of a truncated complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub position: usize,
    pub degree: usize,
    pub dim: usize,
}

/// A complex of free `A`-modules cut at total internal degree `max_degree`.
/// Differentials are keyed by (source position, internal degree) and map position `p` to
/// `p - 1`; rows are images of basis vectors.
#[derive(Clone, Debug)]
pub struct ComplexTruncation {
    pub n: usize,
    pub max_degree: usize,
    pub terms: Vec<Term>,
    pub differentials: BTreeMap<(usize, usize), Matrix>,
    pub homology: BTreeMap<(usize, usize), usize>,
    pub complete: BTreeMap<(usize, usize), bool>,
}

impl ComplexTruncation {
    pub fn dim(&self, p: usize, t: usize) -> usize {
        self.terms
            .iter()
            .find(|x| x.position == p && x.degree == t)
            .map_or(0, |x| x.dim)
    }

    pub fn homology(&self, p: usize, t: usize) -> Option<usize> {
        self.homology.get(&(p, t)).copied()
    }

    /// `sum_p (-1)^p dim K_{p,t}`.
    pub fn euler_characteristic(&self, t: usize) -> i64 {
        self.terms
            .iter()
            .filter(|x| x.degree == t)
            .map(|x| if x.position % 2 == 0 { x.dim as i64 } else { -(x.dim as i64) })
            .sum()
    }

    /// Composite of `k` consecutive differentials starting at position `p`, degree `t`.
    pub fn composite(&self, p: usize, t: usize, k: usize) -> Option<Matrix> {
        let mut out: Option<Matrix> = None;
        for s in 0..k {
            let m = self.differentials.get(&(p.checked_sub(s)?, t))?;
            out = Some(match out {
                None => m.clone(),
                Some(acc) => acc.mul(m).ok()?,
            });
        }
        out
    }

    /// Every composite of `k` consecutive differentials vanishes.
    pub fn nilpotent(&self, k: usize) -> bool {
        self.differentials
            .keys()
            .all(|&(p, t)| self.composite(p, t, k).map_or(true, |m| m.is_zero()))
    }

    pub fn max_position(&self) -> usize {
        self.terms.iter().map(|x| x.position).max().unwrap_or(0)
    }
}

fn assemble(
    n: usize,
    max_degree: usize,
    terms: Vec<Term>,
    differentials: BTreeMap<(usize, usize), Matrix>,
    with_homology: bool,
) -> ComplexTruncation {
    let mut c = ComplexTruncation {
        n,
        max_degree,
        terms,
        differentials,
        homology: BTreeMap::new(),
        complete: BTreeMap::new(),
    };
    let ranks: BTreeMap<(usize, usize), usize> = c.differentials.iter().map(|(k, m)| (*k, m.rank())).collect();
    for x in &c.terms {
        // degrees are preserved, so every term at t <= max_degree has both neighbours in range
        c.complete.insert((x.position, x.degree), x.degree <= max_degree);
        if with_homology {
            let out = ranks.get(&(x.position, x.degree)).copied().unwrap_or(0);
            let inc = ranks.get(&(x.position + 1, x.degree)).copied().unwrap_or(0);
            c.homology.insert((x.position, x.degree), x.dim - out - inc);
        }
    }
    c
}

/// `K(A)`: terms `A_j (x) X_n` at position `n`, internal degree `t = j + n <= deg_max`.
/// Homology of an `N`-complex is not a single group, so `homology` is left empty.
pub fn koszul_n_complex(p: &Presentation, deg_max: usize, limits: &Limits) -> Result<ComplexTruncation> {
    let a = GradedQuotient::build(p, deg_max, limits)?;
    let x = DualComponents::build(p, deg_max, limits)?;
    let keys: Vec<(usize, usize)> = (0..=deg_max)
        .flat_map(|t| (1..=t).map(move |n| (n, t)))
        .filter(|&(n, _)| x.dim(n) > 0)
        .collect();
    let mats = par::map(&keys, |&(n, t)| x.d_matrix(&a, t - n, n));
    let mut diffs = BTreeMap::new();
    for (k, m) in keys.into_iter().zip(mats) {
        diffs.insert(k, m?);
    }
    let terms = (0..=deg_max)
        .flat_map(|t| (0..=t).map(move |n| (n, t)))
        .map(|(n, t)| Term { position: n, degree: t, dim: a.dim(t - n) * x.dim(n) })
        .filter(|t| t.dim > 0)
        .collect();
    let c = assemble(p.degree(), deg_max, terms, diffs, false);
    if !c.nilpotent(p.degree()) {
        return Err(Error::Verification("d^N is not zero on the Koszul N-complex".into()));
    }
    Ok(c)
}

/// `K(A,K)`: position `p` carries `A (x) X_{nu(p)}`, differential `d` from odd and `d^{N-1}`
/// from even positions.
pub fn koszul_complex(p: &Presentation, deg_max: usize, limits: &Limits) -> Result<ComplexTruncation> {
    let nt = NuTable::new(p.degree())?;
    let a = GradedQuotient::build(p, deg_max, limits)?;
    let x = DualComponents::build(p, deg_max, limits)?;
    koszul_complex_from(&nt, &a, &x, deg_max)
}

fn koszul_complex_from(
    nt: &NuTable,
    a: &GradedQuotient,
    x: &DualComponents,
    deg_max: usize,
) -> Result<ComplexTruncation> {
    let mut keys = Vec::new();
    for t in 0..=deg_max {
        let mut pos = 1;
        while nt.nu(pos) <= t {
            if x.dim(nt.nu(pos)) > 0 {
                keys.push((pos, t));
            }
            pos += 1;
        }
    }
    let mats = par::map(&keys, |&(pos, t)| -> Result<Matrix> {
        let top = nt.nu(pos);
        let steps = top - nt.nu(pos - 1);
        let mut out: Option<Matrix> = None;
        for s in 0..steps {
            let n = top - s;
            let m = x.d_matrix(a, t - n, n)?;
            out = Some(match out {
                None => m,
                Some(acc) => acc.mul(&m)?,
            });
        }
        Ok(out.expect("at least one step"))
    });
    let mut diffs = BTreeMap::new();
    for (k, m) in keys.into_iter().zip(mats) {
        diffs.insert(k, m?);
    }
    let mut terms = Vec::new();
    for t in 0..=deg_max {
        let mut pos = 0;
        while nt.nu(pos) <= t {
            let dim = a.dim(t - nt.nu(pos)) * x.dim(nt.nu(pos));
            if dim > 0 {
                terms.push(Term { position: pos, degree: t, dim });
            }
            pos += 1;
        }
    }
    let c = assemble(nt.n, deg_max, terms, diffs, true);
    if !c.nilpotent(2) {
        return Err(Error::Verification("d o d is not zero on the Koszul complex".into()));
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KoszulVerdict {
    /// Acyclic in positive degrees for every internal degree up to `degree`.
    PassUpTo { degree: usize },
    /// Nonzero homology `dim` at (`position`, internal `degree`).
    FailAt { position: usize, degree: usize, dim: usize },
}

impl KoszulVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, KoszulVerdict::PassUpTo { .. })
    }
}

impl fmt::Display for KoszulVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KoszulVerdict::PassUpTo { degree } => write!(
                f,
                "pass up to internal degree {degree} (truncated evidence, not a proof of Koszulity)"
            ),
            KoszulVerdict::FailAt { position, degree, dim } => write!(
                f,
                "fail: homology of dimension {dim} at position {position}, internal degree {degree}"
            ),
        }
    }
}

/// First nonzero homology outside `(0, 0)`, ordered by internal degree then position.
pub fn verdict_of(c: &ComplexTruncation) -> KoszulVerdict {
    for t in 0..=c.max_degree {
        for p in 0..=c.max_position() {
            if !c.complete.get(&(p, t)).copied().unwrap_or(false) {
                continue;
            }
            let h = c.homology(p, t).unwrap_or(0);
            let expected = usize::from(p == 0 && t == 0);
            if h != expected {
                return KoszulVerdict::FailAt { position: p, degree: t, dim: h };
            }
        }
    }
    KoszulVerdict::PassUpTo { degree: c.max_degree }
}

pub fn koszulity_check(p: &Presentation, deg_max: usize, limits: &Limits) -> Result<KoszulVerdict> {
    Ok(verdict_of(&koszul_complex(p, deg_max, limits)?))
}

/// Cohomology of `L = Hom_A(K(A,K), A)` at (position, `g`), where `g = j - nu(p)` is the
/// internal degree of `Hom(X_{nu(p)}, A_j)`.
#[derive(Clone, Debug)]
pub struct GorensteinReport {
    pub max_degree: usize,
    /// Largest position with `X_{nu(p)} != 0`, if the dual vanishes inside the truncation.
    pub global_dimension: Option<usize>,
    pub cohomology: BTreeMap<(usize, i64), usize>,
    pub pattern_holds: bool,
    /// Entries that contradict the pattern.
    pub violations: Vec<(usize, i64, usize)>,
}

impl fmt::Display for GorensteinReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.global_dimension, self.pattern_holds) {
            (Some(d), true) => write!(
                f,
                "Gorenstein pattern with D = {d} up to degree {} (truncated evidence)",
                self.max_degree
            ),
            (Some(d), false) => write!(f, "Gorenstein pattern violated (D = {d}): {:?}", self.violations),
            (None, _) => write!(f, "inconclusive: (A^!)^* does not vanish up to degree {}", self.max_degree),
        }
    }
}

pub fn gorenstein_cochain_check(p: &Presentation, deg_max: usize, limits: &Limits) -> Result<GorensteinReport> {
    let nt = NuTable::new(p.degree())?;
    let a = GradedQuotient::build(p, deg_max, limits)?;
    let x = DualComponents::build(p, deg_max, limits)?;
    let kc = koszul_complex_from(&nt, &a, &x, deg_max)?;
    if !verdict_of(&kc).passed() {
        return Err(Error::precondition("the Koszul complex is not acyclic at this truncation"));
    }
    let mut top = None;
    let mut pos = 0;
    while nt.nu(pos) <= deg_max {
        if x.dim(nt.nu(pos)) == 0 {
            top = pos.checked_sub(1);
            break;
        }
        pos += 1;
    }
    let Some(dd) = top else {
        return Ok(GorensteinReport {
            max_degree: deg_max,
            global_dimension: None,
            cohomology: BTreeMap::new(),
            pattern_holds: false,
            violations: Vec::new(),
        });
    };
    let d = p.generators();
    // left multiplication by each generator, A_j -> A_{j+1}
    let left: Vec<Vec<Matrix>> = (0..deg_max)
        .map(|j| (0..d).map(|e| a.left_mul_matrix(&[(e, Scalar::one())], 1, j)).collect())
        .collect::<Result<_>>()?;
    // delta^p : L^{p-1} -> L^p at A-degree j of the source
    let mut keys = Vec::new();
    for q in 1..=dd {
        for j in 0..deg_max {
            let jt = j + nt.nu(q) - nt.nu(q - 1);
            if jt <= deg_max {
                keys.push((q, j));
            }
        }
    }
    let mats = par::map(&keys, |&(q, j)| -> Result<Matrix> {
        // composite of single steps from X_{nu(q-1)} up to X_{nu(q)}
        let mut out: Option<Matrix> = None;
        for (s, n) in (nt.nu(q - 1) + 1..=nt.nu(q)).enumerate() {
            let m = x.codifferential(&a, j + s, n, &left[j + s])?;
            out = Some(match out {
                None => m,
                Some(acc) => acc.mul(&m)?,
            });
        }
        Ok(out.expect("at least one step"))
    });
    let mut ranks = BTreeMap::new();
    for (k, m) in keys.iter().zip(mats) {
        ranks.insert(*k, m?.rank());
    }
    let mut cohomology = BTreeMap::new();
    let mut violations = Vec::new();
    for q in 0..=dd {
        let xn = x.dim(nt.nu(q));
        for j in 0..=deg_max {
            let g = j as i64 - nt.nu(q) as i64;
            // the outgoing map lands in A-degree j + step, which must be computed
            if q < dd && j + nt.nu(q + 1) - nt.nu(q) > deg_max {
                continue;
            }
            let dim = xn * a.dim(j);
            let inc = if q > 0 { j.checked_sub(nt.nu(q) - nt.nu(q - 1)).and_then(|js| ranks.get(&(q, js))).copied().unwrap_or(0) } else { 0 };
            let out = if q < dd { ranks.get(&(q + 1, j)).copied().unwrap_or(0) } else { 0 };
            let h = dim - inc - out;
            cohomology.insert((q, g), h);
            let expected = usize::from(q == dd && g == -(nt.nu(dd) as i64));
            if h != expected {
                violations.push((q, g, h));
            }
        }
    }
    Ok(GorensteinReport {
        max_degree: deg_max,
        global_dimension: Some(dd),
        pattern_holds: violations.is_empty(),
        cohomology,
        violations,
    })
}

/// One checklist item of [`gorenstein_diagnostics`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagnosticItem {
    pub label: &'static str,
    pub applicable: bool,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct GorensteinDiagnostics {
    pub m: usize,
    /// Inferred global dimension `D` with `m = nu_N(D)`, if `m` has that form.
    pub d: Option<usize>,
    pub dual_dims: Vec<usize>,
    pub items: Vec<DiagnosticItem>,
}

impl GorensteinDiagnostics {
    pub fn all_applicable_pass(&self) -> bool {
        self.items.iter().filter(|i| i.applicable).all(|i| i.passed)
    }

    pub fn item(&self, label: &str) -> Option<&DiagnosticItem> {
        self.items.iter().find(|i| i.label == label)
    }
}

/// Checklist for `A(w,N)`: (a) top and next-to-top dual dimensions and `m = nu_N(D)`,
/// (b) palindromic `dim W_{nu(k)}`, (c) for `m = N+1` the form spans `(A^!_{N+1})^*` and
/// `A^!_{N+2} = 0`, (d) for `N = 2` the pairing on `A^!` is nondegenerate.
pub fn gorenstein_diagnostics(w: &MultilinearForm, n: usize, limits: &Limits) -> Result<GorensteinDiagnostics> {
    let nt = NuTable::new(n)?;
    if w.arity() < n {
        return Err(Error::invalid(format!("arity {} is smaller than N = {n}", w.arity())));
    }
    if !is_preregular(w) {
        return Err(Error::precondition("w is not preregular"));
    }
    let m = w.arity();
    let s1 = w.dim();
    let p = algebra_from_form(w, n)?;
    let dual = GradedQuotient::build(&p.dual(), m + 1, limits)?;
    let dual_dims = dual.dims().to_vec();
    let d = nt.inverse(m);
    let mut items = Vec::new();

    let a_ok = dual_dims[m] == 1 && dual_dims[m - 1] == s1 && d.is_some();
    items.push(DiagnosticItem {
        label: "a",
        applicable: true,
        passed: a_ok,
        detail: format!(
            "dim A^!_m = {}, dim A^!_(m-1) = {} (s+1 = {s1}), m = {m} {} of the form nu_N(D)",
            dual_dims[m],
            dual_dims[m - 1],
            if d.is_some() { "is" } else { "is not" }
        ),
    });

    match d {
        Some(dd) => {
            let dims: Vec<usize> = (0..=dd)
                .map(|k| w_subspace(w, n, nt.nu(k)).map(|s| s.dim()))
                .collect::<Result<_>>()?;
            let pal = (0..=dd).all(|k| dims[k] == dims[dd - k]);
            items.push(DiagnosticItem {
                label: "b",
                applicable: true,
                passed: pal,
                detail: format!("dim W_nu(k) for k = 0..{dd}: {dims:?}"),
            });
        }
        None => items.push(DiagnosticItem {
            label: "b",
            applicable: false,
            passed: false,
            detail: format!("no D with nu_N(D) = {m}"),
        }),
    }

    if m == n + 1 {
        let x = DualComponents::build(&p, n + 2, limits)?;
        let kw = Subspace::span(power(s1, m) as usize, &[w.to_vector()]);
        let spans = x.spaces[n + 1] == kw;
        let three = is_three_regular(w)?;
        items.push(DiagnosticItem {
            label: "c",
            applicable: true,
            passed: spans && dual_dims[n + 2] == 0 && three,
            detail: format!(
                "(A^!_(N+1))^* = Kw: {spans}, dim A^!_(N+2) = {}, 3-regular: {three}",
                dual_dims[n + 2]
            ),
        });
    } else {
        items.push(DiagnosticItem { label: "c", applicable: false, passed: false, detail: "m != N+1".into() });
    }

    if n == 2 {
        let om = omega_form(w, n, limits)?;
        let ranks: Vec<(usize, usize, usize)> = (0..=m)
            .map(|q| {
                let pm = om.pairing_matrix(q)?;
                Ok((pm.nrows(), pm.ncols(), pm.rank()))
            })
            .collect::<Result<_>>()?;
        let ok = ranks.iter().all(|&(r, c, k)| r == c && k == r);
        items.push(DiagnosticItem {
            label: "d",
            applicable: true,
            passed: ok,
            detail: format!("pairing (rows, cols, rank) per degree: {ranks:?}"),
        });
    } else {
        items.push(DiagnosticItem { label: "d", applicable: false, passed: false, detail: "N != 2".into() });
    }
    Ok(GorensteinDiagnostics { m, d, dual_dims, items })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hilbert_truncation;
    use crate::gallery;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn nu_table() {
        let nt = NuTable::new(3).unwrap();
        assert_eq!((0..6).map(|p| nt.nu(p)).collect::<Vec<_>>(), vec![0, 1, 3, 4, 6, 7]);
        assert_eq!(nt.inverse(4), Some(3));
        assert_eq!(nt.inverse(5), None);
        assert!(NuTable::new(1).is_err());
    }

    #[test]
    fn dual_components_match_quotient_dims() {
        for e in gallery::all_entries().unwrap() {
            let p = algebra_from_form(&e.form, e.degree).unwrap();
            let x = DualComponents::build(&p, 6, &lim()).unwrap();
            let q = hilbert_truncation(&p.dual(), 6, &lim()).unwrap();
            assert_eq!(x.dims(), q, "{}", e.name);
        }
    }

    #[test]
    fn bilinear_terms_stop_at_two() {
        let e = gallery::manin_eps_q(&Scalar::int(2)).unwrap();
        let p = algebra_from_form(&e.form, 2).unwrap();
        let c = koszul_n_complex(&p, 6, &lim()).unwrap();
        assert_eq!(c.max_position(), 2);
        let k = koszul_complex(&p, 8, &lim()).unwrap();
        assert_eq!(k.homology(0, 0), Some(1));
        assert!(verdict_of(&k).passed());
        for t in 1..=8 {
            assert_eq!(k.euler_characteristic(t), 0);
        }
    }

    #[test]
    fn three_regular_n_complex_shape() {
        let ym = gallery::yang_mills(&Matrix::identity(3)).unwrap();
        let p = algebra_from_form(&ym.form, 3).unwrap();
        let c = koszul_n_complex(&p, 6, &lim()).unwrap();
        // A (x) w, A (x) R, A (x) E^{(x)2}, A (x) E, A
        assert_eq!(c.max_position(), 4);
        assert_eq!(c.dim(4, 4), 1);
        assert_eq!(c.dim(3, 3), 3);
        assert_eq!(c.dim(2, 2), 9);
        assert!(c.nilpotent(3));
        assert!(!c.nilpotent(2));
    }

    #[test]
    fn counterexample_is_not_koszul() {
        let e = gallery::as_counterexample().unwrap();
        let p = algebra_from_form(&e.form, 2).unwrap();
        assert!(!koszulity_check(&p, 7, &lim()).unwrap().passed());
    }

    #[test]
    fn gorenstein_on_bilinear() {
        for e in gallery::gl2_orbit_reps().unwrap() {
            let p = algebra_from_form(&e.form, 2).unwrap();
            let r = gorenstein_cochain_check(&p, 6, &lim()).unwrap();
            assert_eq!(r.global_dimension, Some(2));
            assert!(r.pattern_holds, "{}: {r}", e.name);
            assert_eq!(r.cohomology.get(&(2, -2)), Some(&1));
        }
    }

    #[test]
    fn diagnostics_on_yang_mills_and_epsilon() {
        let ym = gallery::yang_mills(&Matrix::identity(3)).unwrap();
        let g = gorenstein_diagnostics(&ym.form, 3, &lim()).unwrap();
        assert_eq!(g.d, Some(3));
        assert!(g.all_applicable_pass(), "{:?}", g.items);
        let e4 = gallery::epsilon_form(4, 3).unwrap();
        let g = gorenstein_diagnostics(&e4.form, 3, &lim()).unwrap();
        assert!(g.all_applicable_pass(), "{:?}", g.items);
        assert_eq!(g.d, Some(3));
        let e5 = gallery::epsilon_form(5, 3).unwrap();
        let g = gorenstein_diagnostics(&e5.form, 3, &lim()).unwrap();
        assert!(!g.item("a").unwrap().passed);
        let b = gallery::manin_eps_q(&Scalar::int(5)).unwrap();
        let g = gorenstein_diagnostics(&b.form, 2, &lim()).unwrap();
        assert!(g.all_applicable_pass(), "{:?}", g.items);
        assert_eq!(g.d, Some(2));
    }
}
