//! Twisted cyclicity, 1-site nondegeneracy, preregularity, 3-regularity and condition (iii)'.

use crate::error::{Error, Result};
use crate::linalg::{LeftSolver, Matrix, SparseVec};
use crate::scalar::Scalar;
use crate::tensor::{power, MultilinearForm};

/// Outcome of solving `W_{l_1..l_m} = Q^t_{l_m} W_{t l_1..l_{m-1}}` for `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Twist {
    /// Exactly one solution, and it is invertible.
    Unique(Matrix),
    /// Exactly one solution, but it is singular.
    NotInvertible(Matrix),
    NoSolution,
    /// An affine solution space of the given dimension (slot 0 is degenerate).
    Ambiguous { nullity: usize },
}

impl Twist {
    pub fn matrix(&self) -> Option<&Matrix> {
        match self {
            Twist::Unique(q) => Some(q),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            Twist::Unique(_) => "unique",
            Twist::NotInvertible(_) => "not_invertible",
            Twist::NoSolution => "no_solution",
            Twist::Ambiguous { .. } => "ambiguous",
        }
    }
}

pub fn solve_twist(w: &MultilinearForm) -> Twist {
    let d = w.dim();
    let m = w.arity();
    if m == 1 {
        // w(X) = w(QX) has no meaningful cyclic structure; treat slot 0 as the only slot
        return if w.is_zero() { Twist::Ambiguous { nullity: d * d } } else { Twist::NoSolution };
    }
    let f = w.flatten_any(1);
    let solver = LeftSolver::new(&f);
    // column l_m of Q solves q F = (W_{u l_m})_u
    let targets = w.flatten_any(m - 1).transpose();
    let mut cols: Vec<SparseVec> = Vec::with_capacity(d);
    for c in 0..d {
        match solver.solve(targets.row(c)) {
            Some(x) => cols.push(x),
            None => return Twist::NoSolution,
        }
    }
    let nullity = solver.nullity();
    if nullity > 0 {
        return Twist::Ambiguous { nullity: nullity * d };
    }
    let q = Matrix::from_rows_unchecked(d, cols).transpose();
    if q.is_invertible() {
        Twist::Unique(q)
    } else {
        Twist::NotInvertible(q)
    }
}

/// Rank of the flattening isolating slot `k`, for every slot.
pub fn slot_ranks(w: &MultilinearForm) -> Vec<usize> {
    (0..w.arity()).map(|k| w.slot_to_front(k).flatten_any(1).rank()).collect()
}

pub fn one_site_nondegenerate(w: &MultilinearForm) -> Vec<bool> {
    slot_ranks(w).into_iter().map(|r| r == w.dim()).collect()
}

pub fn is_preregular(w: &MultilinearForm) -> bool {
    if w.arity() < 2 || w.flatten_any(1).rank() != w.dim() {
        return false;
    }
    let ok = matches!(solve_twist(w), Twist::Unique(_));
    debug_assert!(!ok || one_site_nondegenerate(w).iter().all(|&b| b));
    ok
}

/// Dimension of the solution space of `w(L_0 X_0, X_1, ...) = w(X_0, L_1 X_1, ...)`.
///
/// It always contains `(1, 1)`, so 3-regularity means the dimension is exactly one.
pub fn three_regular_nullity(w: &MultilinearForm) -> Result<usize> {
    let d = w.dim();
    let m = w.arity();
    if m < 3 {
        return Err(Error::precondition("3-regularity needs an (N+1)-linear form with N >= 2"));
    }
    let tail = power(d, m - 1);
    let tail2 = power(d, m - 2);
    let f = w.flatten_any(1);
    let mut rows: Vec<SparseVec> = Vec::with_capacity(2 * d * d);
    // unknown L_0[t][a]: equation (a, b, rest) gets W_{t b rest}
    for t in 0..d {
        for a in 0..d {
            let off = a * tail as usize;
            rows.push(f.row(t).iter().map(|(j, x)| (off + j, x.clone())).collect());
        }
    }
    // unknown L_1[t][b]: equation (a, b, rest) gets -W_{a t rest}
    let mut by_second: Vec<Vec<(u64, u64, Scalar)>> = vec![Vec::new(); d];
    for (k, x) in w.entries() {
        let a = k / tail;
        let t = (k / tail2) % d as u64;
        let rest = k % tail2;
        by_second[t as usize].push((a, rest, -x));
    }
    for entries in &by_second {
        for b in 0..d as u64 {
            let mut v: SparseVec = entries
                .iter()
                .map(|(a, rest, x)| ((a * tail + b * tail2 + rest) as usize, x.clone()))
                .collect();
            v.sort_by_key(|e| e.0);
            rows.push(v);
        }
    }
    let mat = Matrix::from_rows_unchecked(power(d, m) as usize, rows);
    Ok(2 * d * d - mat.rank())
}

/// Preregular, arity `N+1` with `N >= 2`, and condition (iii).
pub fn is_three_regular(w: &MultilinearForm) -> Result<bool> {
    if !is_preregular(w) {
        return Err(Error::precondition("3-regularity is defined for preregular forms"));
    }
    Ok(three_regular_nullity(w)? == 1)
}

/// Condition (iii)': the flattening `V (x) V -> (rest)` is injective.
pub fn satisfies_iii_prime(w: &MultilinearForm) -> Result<bool> {
    if w.arity() < 3 {
        return Err(Error::precondition("condition (iii)' needs arity at least 3"));
    }
    Ok(w.flatten_any(2).rank() == w.dim() * w.dim())
}

/// `(1/m) sum_k` of the cyclic shifts of a `Q`-invariant form.
pub fn cyclic_projector(w: &MultilinearForm, q: &Matrix) -> Result<MultilinearForm> {
    if w.gl_act(q)? != *w {
        return Err(Error::precondition("the form is not Q-invariant"));
    }
    let m = w.arity();
    let mut acc = w.clone();
    let mut cur = w.clone();
    for _ in 1..m {
        cur = cur.cyclic_shift(q)?;
        acc = acc.add(&cur)?;
    }
    Ok(acc.scale(&Scalar::ratio(1, m as i64)))
}

/// Everything the regularity hierarchy says about one form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub one_site_nondegenerate: Vec<bool>,
    pub twist: Twist,
    pub preregular: bool,
    /// `None` unless the arity is `N+1` for the given `N >= 2` and the form is preregular.
    pub three_regular: Option<bool>,
    pub three_regular_nullity: Option<usize>,
    pub iii_prime: Option<bool>,
}

impl RegularityReport {
    pub fn q_matrix(&self) -> Option<&Matrix> {
        self.twist.matrix()
    }
}

pub fn analyze(w: &MultilinearForm, n: Option<usize>) -> RegularityReport {
    let nondeg = one_site_nondegenerate(w);
    let twist = solve_twist(w);
    let preregular = nondeg.first() == Some(&true) && matches!(twist, Twist::Unique(_));
    let m = w.arity();
    let cubic_context = n.map_or(m >= 3, |n| n >= 2 && m == n + 1);
    let nullity = if preregular && cubic_context { three_regular_nullity(w).ok() } else { None };
    RegularityReport {
        one_site_nondegenerate: nondeg,
        twist,
        preregular,
        three_regular: nullity.map(|k| k == 1),
        three_regular_nullity: nullity,
        iii_prime: satisfies_iii_prime(w).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn eps(d: usize) -> MultilinearForm {
        MultilinearForm::from_fn(d, d, |idx| {
            let mut v = idx.to_vec();
            let mut sign = 1;
            for i in 0..d {
                for j in 0..d - 1 - i {
                    if v[j] == v[j + 1] {
                        return Scalar::zero();
                    }
                    if v[j] > v[j + 1] {
                        v.swap(j, j + 1);
                        sign = -sign;
                    }
                }
            }
            Scalar::int(sign)
        })
        .unwrap()
    }

    fn bilinear(rows: &[&[i64]]) -> MultilinearForm {
        MultilinearForm::from_matrix(&Matrix::from_ints(rows)).unwrap()
    }

    #[test]
    fn eps_q_twist() {
        let w = bilinear(&[&[0, -1], &[2, 0]]);
        let q = solve_twist(&w);
        let expected = Matrix::diagonal(&[Scalar::int(-2), Scalar::ratio(-1, 2)]);
        assert_eq!(q, Twist::Unique(expected.clone()));
        // Q_b = (B^-1)^t B
        let b = Matrix::from_ints(&[&[0, -1], &[2, 0]]);
        assert_eq!(b.inverse().unwrap().transpose().mul(&b).unwrap(), expected);
    }

    #[test]
    fn degenerate_forms() {
        let w = bilinear(&[&[1, 0], &[0, 0]]);
        assert_eq!(one_site_nondegenerate(&w), vec![false, false]);
        assert!(!is_preregular(&w));
        let z = MultilinearForm::zero(3, 3).unwrap();
        assert_eq!(one_site_nondegenerate(&z), vec![false; 3]);
        assert_eq!(solve_twist(&z), Twist::Ambiguous { nullity: 9 });
    }

    #[test]
    fn epsilon_hierarchy() {
        let e3 = eps(3);
        assert_eq!(one_site_nondegenerate(&e3), vec![true; 3]);
        assert_eq!(solve_twist(&e3), Twist::Unique(Matrix::identity(3)));
        assert!(is_three_regular(&e3).unwrap());
        assert!(!satisfies_iii_prime(&e3).unwrap());
        let e4 = eps(4);
        assert_eq!(solve_twist(&e4), Twist::Unique(Matrix::identity(4).neg()));
        assert!(is_three_regular(&e4).unwrap());
    }

    #[test]
    fn bilinear_regularity_is_invertibility() {
        assert!(is_preregular(&bilinear(&[&[1, 2], &[3, 4]])));
        assert!(!is_preregular(&bilinear(&[&[1, 2], &[2, 4]])));
        assert!(is_three_regular(&bilinear(&[&[1, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn no_nonzero_minus_one_invariant_odd_forms() {
        let w = eps(3);
        assert!(cyclic_projector(&w, &Matrix::identity(3).neg()).is_err());
        let z = MultilinearForm::zero(3, 3).unwrap();
        assert_eq!(cyclic_projector(&z, &Matrix::identity(3).neg()).unwrap(), z);
    }

    fn arb_form(dim: usize, arity: usize) -> impl Strategy<Value = MultilinearForm> {
        let n = dim.pow(arity as u32);
        proptest::collection::vec((0i64..3, -3i64..4), n).prop_map(move |v| {
            MultilinearForm::from_fn(dim, arity, |idx| {
                let k = crate::tensor::encode(idx, dim) as usize;
                if v[k].0 == 0 { Scalar::zero() } else { Scalar::int(v[k].1) }
            })
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
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn twist_transforms_by_conjugation(b in arb_invertible(3), l in arb_invertible(3)) {
            let w = MultilinearForm::from_matrix(&b).unwrap();
            let q = solve_twist(&w).matrix().cloned().unwrap();
            let q2 = solve_twist(&w.gl_act(&l).unwrap()).matrix().cloned().unwrap();
            let expected = l.inverse().unwrap().mul(&q).unwrap().mul(&l).unwrap();
            prop_assert_eq!(q2, expected);
        }

        #[test]
        fn projector_is_idempotent_and_cyclic(w in arb_form(2, 4)) {
            let q = Matrix::identity(2).neg();
            let p = cyclic_projector(&w, &q).unwrap();
            prop_assert!(p.is_q_cyclic(&q).unwrap());
            prop_assert_eq!(cyclic_projector(&p, &q).unwrap(), p);
        }

        #[test]
        fn iii_prime_implies_iii(w in arb_form(2, 4)) {
            let w = cyclic_projector(&w, &Matrix::identity(2)).unwrap();
            if is_preregular(&w) && satisfies_iii_prime(&w).unwrap() {
                prop_assert!(is_three_regular(&w).unwrap());
            }
        }
    }
}
