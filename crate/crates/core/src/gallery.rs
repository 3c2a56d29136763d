//! Concrete forms: Yang-Mills and super Yang-Mills, the volume forms `eps`, the 4-linear form
//! `w_u` of the noncommutative 4-plane at Pythagorean parameters, the Manin-plane forms, the
//! `GL(2)` orbit representatives and the cubic non-Koszul example.
//!
//! Expected values stored in an entry are never trusted by the analysis code; tests recompute them.

use crate::algebra::predicted_d3;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{QuadField, Rational, Scalar};
use crate::tensor::MultilinearForm;

#[derive(Clone, Debug)]
pub struct GalleryEntry {
    pub name: String,
    pub form: MultilinearForm,
    /// Intended relation degree `N`.
    pub degree: usize,
    pub expected_q: Option<Matrix>,
    pub expected_three_regular: Option<bool>,
    /// Leading graded dimensions of `A(w,N)` where known.
    pub expected_dims: Option<Vec<usize>>,
    pub note: String,
}

impl GalleryEntry {
    fn new(name: impl Into<String>, form: MultilinearForm, degree: usize, note: impl Into<String>) -> Self {
        GalleryEntry {
            name: name.into(),
            form,
            degree,
            expected_q: None,
            expected_three_regular: None,
            expected_dims: None,
            note: note.into(),
        }
    }
}

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i64)>) {
        let n = used.len();
        if prefix.len() == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                rec(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The completely antisymmetric form with `eps(e_0, ..., e_s) = 1`.
pub fn levi_civita(d: usize) -> Result<MultilinearForm> {
    MultilinearForm::from_entries(
        d,
        d,
        signed_permutations(d).into_iter().map(|(p, s)| (p, Scalar::int(s))),
    )
}

fn check_metric(g: &Matrix) -> Result<()> {
    if !g.is_square() || g.nrows() < 2 {
        return Err(Error::invalid("the metric must be a square matrix of size at least 2"));
    }
    if g.transpose() != *g {
        return Err(Error::invalid("the metric must be symmetric"));
    }
    if !g.is_invertible() {
        return Err(Error::invalid("the metric must be nondegenerate"));
    }
    Ok(())
}

/// `W_{r l m n} = g_{rl} g_{mn} + g_{rn} g_{lm} - 2 g_{rm} g_{ln}`, `N = 3`, `Q = 1`.
pub fn yang_mills(g: &Matrix) -> Result<GalleryEntry> {
    check_metric(g)?;
    let d = g.nrows();
    let two = Scalar::int(2);
    let w = MultilinearForm::from_fn(d, 4, |i| {
        let (r, l, m, n) = (i[0], i[1], i[2], i[3]);
        let a = &g.get(r, l) * &g.get(m, n);
        let b = &g.get(r, n) * &g.get(l, m);
        let c = &(&g.get(r, m) * &g.get(l, n)) * &two;
        &(&a + &b) - &c
    })?;
    let mut e = GalleryEntry::new(format!("yang-mills-{d}"), w, 3, "cubic Yang-Mills algebra");
    e.expected_q = Some(Matrix::identity(d));
    e.expected_three_regular = Some(true);
    e.expected_dims = Some(predicted_d3(d, 3, 5).into_iter().map(|x| x as usize).collect());
    Ok(e)
}

/// `W_{r l m n} = g_{rl} g_{mn} - g_{rn} g_{lm}`, `N = 3`, `Q = -1`.
pub fn super_yang_mills(g: &Matrix) -> Result<GalleryEntry> {
    check_metric(g)?;
    let d = g.nrows();
    let w = MultilinearForm::from_fn(d, 4, |i| {
        let (r, l, m, n) = (i[0], i[1], i[2], i[3]);
        &(&g.get(r, l) * &g.get(m, n)) - &(&g.get(r, n) * &g.get(l, m))
    })?;
    let mut e = GalleryEntry::new(format!("super-yang-mills-{d}"), w, 3, "cubic super Yang-Mills algebra");
    e.expected_q = Some(Matrix::identity(d).neg());
    e.expected_three_regular = Some(true);
    e.expected_dims = Some(predicted_d3(d, 3, 5).into_iter().map(|x| x as usize).collect());
    Ok(e)
}

/// `eps` on `K^{s+1}` viewed as defining `A(eps, N)`; `Q = (-1)^s`.
pub fn epsilon_form(d: usize, n: usize) -> Result<GalleryEntry> {
    if d < 2 || n < 2 || n > d {
        return Err(Error::invalid(format!("need s+1 >= N >= 2, got s+1 = {d}, N = {n}")));
    }
    let w = levi_civita(d)?;
    let sign = if (d - 1) % 2 == 0 { 1 } else { -1 };
    let mut e = GalleryEntry::new(format!("epsilon-{d}-N{n}"), w, n, "volume form");
    e.expected_q = Some(Matrix::scalar_identity(d, &Scalar::int(sign)));
    if d >= 3 && n == d - 1 {
        e.expected_three_regular = Some(true);
    }
    Ok(e)
}

/// `((-1)^s / s!) eps^{l_0 ... l_s}`, the right inverse of `eps` that yields functions on `SL`.
pub fn natural_epsilon_wtilde(d: usize) -> Result<MultilinearForm> {
    let fact: i64 = (1..d as i64).product();
    let sign = if (d - 1) % 2 == 0 { 1 } else { -1 };
    Ok(levi_civita(d)?.scale(&Scalar::ratio(sign, fact)))
}

/// `w_u` with `u_k = c_k + i s_k` (`k = 1, 2, 3`, `u_0 = 1`) over `Q(i)`:
/// `W_{r l m n} = -Re(z) eps_{r l m n} + i Im(z) delta_{rm} delta_{ln}`, `z = u_r conj(u_l) u_m conj(u_n)`.
pub fn a_u_form(pairs: &[(Rational, Rational); 3]) -> Result<GalleryEntry> {
    for (c, s) in pairs {
        if &(c * c) + &(s * s) != Rational::ONE {
            return Err(Error::invalid(format!("({c}, {s}) is not on the unit circle")));
        }
    }
    let field = QuadField::gaussian();
    let i = field.gen();
    let mut u = vec![(Rational::ONE, Rational::ZERO)];
    u.extend(pairs.iter().cloned());
    let cmul = |a: &(Rational, Rational), b: &(Rational, Rational)| {
        (&(&a.0 * &b.0) - &(&a.1 * &b.1), &(&a.0 * &b.1) + &(&a.1 * &b.0))
    };
    let conj = |a: &(Rational, Rational)| (a.0.clone(), -&a.1);
    let eps = levi_civita(4)?;
    let w = MultilinearForm::from_fn(4, 4, |x| {
        let z = cmul(&cmul(&u[x[0]], &conj(&u[x[1]])), &cmul(&u[x[2]], &conj(&u[x[3]])));
        let mut v = &eps.get(x) * &Scalar::Rat(-&z.0);
        if x[0] == x[2] && x[1] == x[3] {
            v = &v + &(&i * &Scalar::Rat(z.1.clone()));
        }
        v
    })?;
    let name = format!(
        "a-u[{}]",
        pairs.iter().map(|(c, s)| format!("({c},{s})")).collect::<Vec<_>>().join(",")
    );
    let mut e = GalleryEntry::new(name, w, 2, "noncommutative 4-plane at a Pythagorean point");
    e.expected_q = Some(Matrix::identity(4).neg());
    Ok(e)
}

/// The default Pythagorean point `(3/5, 4/5), (1, 0), (1, 0)`.
pub fn a_u_default() -> Result<GalleryEntry> {
    a_u_form(&[
        (Rational::new(3, 5), Rational::new(4, 5)),
        (Rational::ONE, Rational::ZERO),
        (Rational::ONE, Rational::ZERO),
    ])
}

/// A bilinear form with matrix `b` and `N = 2`, `Q_b = (B^{-1})^t B`.
pub fn bilinear(name: impl Into<String>, b: &Matrix) -> Result<GalleryEntry> {
    let w = MultilinearForm::from_matrix(b)?;
    let mut e = GalleryEntry::new(name, w, 2, "bilinear form");
    if let Ok(inv) = b.inverse() {
        e.expected_q = Some(inv.transpose().mul(b)?);
        e.expected_dims = Some(
            crate::algebra::predicted_d2(b.nrows(), 5).into_iter().map(|x| x as usize).collect(),
        );
    }
    Ok(e)
}

/// `eps_q` with `B = [[0, -1], [q, 0]]`, relation `x^1 x^2 - q x^2 x^1`.
pub fn manin_eps_q(q: &Scalar) -> Result<GalleryEntry> {
    if q.is_zero() {
        return Err(Error::invalid("q must be nonzero"));
    }
    let b = Matrix::from_dense(&[
        vec![Scalar::zero(), Scalar::int(-1)],
        vec![q.clone(), Scalar::zero()],
    ]);
    bilinear(format!("eps-q[{q}]"), &b)
}

/// Orbit representatives for `s+1 = 2` by rank of the symmetric part; rank 2 uses `q = 2`.
pub fn gl2_orbit_reps() -> Result<Vec<GalleryEntry>> {
    Ok(vec![
        bilinear("gl2-rk0", &Matrix::from_ints(&[&[0, -1], &[1, 0]]))?,
        bilinear("gl2-rk1", &Matrix::from_ints(&[&[0, -1], &[1, 1]]))?,
        manin_eps_q(&Scalar::int(2))?,
    ])
}

/// `x^3 + y^3 + xyz + yzx + zxy` on `K^3` with `N = 2`: 3-regular but not Koszul.
pub fn as_counterexample() -> Result<GalleryEntry> {
    let one = Scalar::one();
    let w = MultilinearForm::from_entries(
        3,
        3,
        [vec![0, 0, 0], vec![1, 1, 1], vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]
            .into_iter()
            .map(|i| (i, one.clone())),
    )?;
    let mut e = GalleryEntry::new("as-counterexample", w, 2, "relations x^2+yz, y^2+zx, xy");
    e.expected_q = Some(Matrix::identity(3));
    e.expected_three_regular = Some(true);
    Ok(e)
}

/// Every named entry, with default parameters.
pub fn all_entries() -> Result<Vec<GalleryEntry>> {
    let mut out = vec![
        yang_mills(&Matrix::identity(3))?,
        super_yang_mills(&Matrix::identity(3))?,
        yang_mills(&Matrix::diagonal(&[Scalar::int(1), Scalar::int(-1)]))?,
        epsilon_form(2, 2)?,
        epsilon_form(3, 2)?,
        epsilon_form(4, 3)?,
        epsilon_form(5, 3)?,
        a_u_default()?,
        as_counterexample()?,
    ];
    out.extend(gl2_orbit_reps()?);
    Ok(out)
}

/// Looks an entry up by name.
pub fn by_name(name: &str) -> Result<GalleryEntry> {
    all_entries()?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::invalid(format!("unknown gallery entry {name:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{algebra_from_form, hilbert_truncation};
    use crate::error::Limits;
    use crate::linalg::Subspace;
    use crate::preregularity::{analyze, solve_twist};

    #[test]
    fn expected_twists_are_recomputed() {
        for e in all_entries().unwrap() {
            let q = solve_twist(&e.form);
            assert_eq!(q.matrix(), e.expected_q.as_ref(), "{}", e.name);
            if let Some(t) = e.expected_three_regular {
                assert_eq!(analyze(&e.form, Some(e.degree)).three_regular, Some(t), "{}", e.name);
            }
        }
    }

    #[test]
    fn a_u_components() {
        let e = a_u_default().unwrap();
        let i = QuadField::gaussian().gen();
        // z = u_1^2 for (r,l,m,n) = (1,0,1,0): (3/5 + 4/5 i)^2 = -7/25 + 24/25 i
        assert_eq!(e.form.get(&[1, 0, 1, 0]), &i * &Scalar::ratio(24, 25));
        // eps_{0123} = 1, z = u_0 conj(u_1) u_2 conj(u_3) = 3/5 - 4/5 i
        assert_eq!(e.form.get(&[0, 1, 2, 3]), Scalar::ratio(-3, 5));
        assert!(a_u_form(&[(Rational::ONE, Rational::ONE), (Rational::ONE, Rational::ZERO), (Rational::ONE, Rational::ZERO)]).is_err());
    }

    #[test]
    fn yang_mills_bracket_form() {
        // g_{lm}[x^l,[x^m,x^n]] with g = 1 on K^3
        let d = 3;
        let mut rels = Vec::new();
        for n in 0..d {
            let mut v = std::collections::BTreeMap::new();
            let mut add = |w: [usize; 3], c: i64| {
                let k = w[0] * 9 + w[1] * 3 + w[2];
                *v.entry(k).or_insert(0i64) += c;
            };
            for l in 0..d {
                // [x^l, x^l x^n - x^n x^l] = x^l x^l x^n - x^l x^n x^l - x^l x^n x^l + x^n x^l x^l
                add([l, l, n], 1);
                add([l, n, l], -2);
                add([n, l, l], 1);
            }
            rels.push(v.into_iter().filter(|(_, c)| *c != 0).map(|(k, c)| (k, Scalar::int(c))).collect());
        }
        let bracket = Subspace::span(27, &rels);
        let ym = yang_mills(&Matrix::identity(3)).unwrap();
        let p = algebra_from_form(&ym.form, 3).unwrap();
        assert_eq!(p.relations(), &bracket);
    }

    #[test]
    fn counterexample_relations() {
        let e = as_counterexample().unwrap();
        let p = algebra_from_form(&e.form, 2).unwrap();
        // x^2 + yz, y^2 + zx, xy with x, y, z = 0, 1, 2
        let rels = vec![
            vec![(0, Scalar::one()), (5, Scalar::one())],
            vec![(4, Scalar::one()), (6, Scalar::one())],
            vec![(1, Scalar::one())],
        ];
        assert_eq!(p.relations(), &Subspace::span(9, &rels));
    }

    #[test]
    fn orbit_rep_relations() {
        let reps = gl2_orbit_reps().unwrap();
        let lim = Limits::default();
        // rk 0: polynomial algebra in two variables
        assert_eq!(hilbert_truncation(&algebra_from_form(&reps[0].form, 2).unwrap(), 4, &lim).unwrap(), vec![1, 2, 3, 4, 5]);
        // rk 2: x^1 x^2 - q x^2 x^1 (indices 0, 1)
        let p = algebra_from_form(&reps[2].form, 2).unwrap();
        let rel = Subspace::span(4, &[vec![(1, Scalar::one()), (2, Scalar::int(-2))]]);
        assert_eq!(p.relations(), &rel);
        assert!(manin_eps_q(&Scalar::zero()).is_err());
    }

    #[test]
    fn metric_checks() {
        assert!(yang_mills(&Matrix::from_ints(&[&[1, 1], &[1, 1]])).is_err());
        assert!(yang_mills(&Matrix::from_ints(&[&[1, 2], &[0, 1]])).is_err());
    }

    #[test]
    fn natural_wtilde_for_epsilon() {
        for d in 2..=4 {
            let w = levi_civita(d).unwrap();
            crate::hopf::validate_wtilde(&w, &natural_epsilon_wtilde(d).unwrap()).unwrap();
        }
    }
}
