//! Twisting (semi-cross products) of `A(w,N)` by linear maps preserving `w`.
//!
//! Matrices on generators use the row convention of the rest of the crate: row `mu` is the
//! image of `x^mu`. In that convention the automorphism induced by `L` in `GL_w` is `L` itself.

use crate::algebra::Presentation;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::preregularity::solve_twist;
use crate::tensor::{apply_slots_vec, MultilinearForm};

/// `w o L = w`.
pub fn is_in_glw(w: &MultilinearForm, l: &Matrix) -> Result<bool> {
    Ok(w.gl_act(l)? == *w)
}

/// `L^{-1}, L^{-2}, ..., L^{-k}`.
fn inverse_powers(l: &Matrix, k: usize) -> Result<Vec<Matrix>> {
    let inv = l.inverse()?;
    let mut out = Vec::with_capacity(k);
    let mut cur = Matrix::identity(l.nrows());
    for _ in 0..k {
        cur = cur.mul(&inv)?;
        out.push(cur.clone());
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TwistData {
    pub l: Matrix,
    /// `L^{-1}, ..., L^{-(m-1)}`.
    pub inverse_powers: Vec<Matrix>,
    pub twisted: MultilinearForm,
    /// `Q` of the twisted form, when it is preregular.
    pub q: Option<Matrix>,
}

/// `W^{(L)} = W (1 (x) L^{-1} (x) ... (x) L^{-(m-1)})`.
pub fn twist_data(w: &MultilinearForm, l: &Matrix) -> Result<TwistData> {
    if !is_in_glw(w, l)? {
        return Err(Error::precondition("L does not preserve w"));
    }
    let m = w.arity();
    let inverse_powers = inverse_powers(l, m - 1)?;
    let twisted = inverse_powers
        .iter()
        .enumerate()
        .fold(w.clone(), |acc, (k, p)| acc.apply_slot(k + 1, p));
    let q = solve_twist(&twisted).matrix().cloned();
    Ok(TwistData { l: l.clone(), inverse_powers, twisted, q })
}

pub fn twist_form(w: &MultilinearForm, l: &Matrix) -> Result<MultilinearForm> {
    Ok(twist_data(w, l)?.twisted)
}

/// `L^{-1} Q L^{-(m-1)}`.
pub fn expected_twisted_q(q: &Matrix, l: &Matrix, m: usize) -> Result<Matrix> {
    l.inverse()?.mul(q)?.mul(&l.pow(-(m as i32 - 1))?)
}

/// `R(alpha) = R (1 (x) alpha^{-1} (x) ... (x) alpha^{-(N-1)})`.
pub fn twist_relations(p: &Presentation, alpha: &Matrix) -> Result<Presentation> {
    let d = p.generators();
    if alpha.nrows() != d || alpha.ncols() != d {
        return Err(Error::DimensionMismatch(format!("expected a {d}x{d} matrix")));
    }
    let n = p.degree();
    let mut mats = vec![Matrix::identity(d)];
    mats.extend(inverse_powers(alpha, n - 1)?);
    let rows: Vec<_> = p.relations().basis().rows().iter().map(|r| apply_slots_vec(r, d, &mats)).collect();
    Presentation::new(d, n, Subspace::span(p.relations().ambient(), &rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{algebra_from_form, hilbert_truncation};
    use crate::error::Limits;
    use crate::gallery;
    use crate::scalar::Scalar;

    fn perm012() -> Matrix {
        Matrix::from_ints(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])
    }

    #[test]
    fn membership() {
        let eps = gallery::levi_civita(2).unwrap();
        assert!(is_in_glw(&eps, &Matrix::identity(2)).unwrap());
        let l = Matrix::diagonal(&[Scalar::int(2), Scalar::ratio(1, 2)]);
        assert!(is_in_glw(&eps, &l).unwrap());
        assert!(!is_in_glw(&eps, &Matrix::diagonal(&[Scalar::int(2), Scalar::int(1)])).unwrap());
        assert!(is_in_glw(&eps, &Matrix::from_ints(&[&[1, 1], &[1, 1]])).is_err());
        let ym = gallery::yang_mills(&Matrix::identity(3)).unwrap();
        assert!(is_in_glw(&ym.form, &perm012()).unwrap());
    }

    #[test]
    fn epsilon_diagonal_twist() {
        let eps = gallery::levi_civita(2).unwrap();
        assert_eq!(twist_form(&eps, &Matrix::identity(2)).unwrap(), eps);
        let l = Matrix::diagonal(&[Scalar::int(2), Scalar::ratio(1, 2)]);
        let t = twist_data(&eps, &l).unwrap();
        assert_eq!(t.q, Some(Matrix::diagonal(&[Scalar::ratio(-1, 4), Scalar::int(-4)])));
    }

    #[test]
    fn yang_mills_permutation_twist() {
        let ym = gallery::yang_mills(&Matrix::identity(3)).unwrap();
        let l = perm012();
        let t = twist_data(&ym.form, &l).unwrap();
        assert_eq!(t.q, Some(l.inverse().unwrap()));
        assert_eq!(t.q.unwrap(), expected_twisted_q(&Matrix::identity(3), &l, 4).unwrap());
    }

    #[test]
    fn relation_level_agrees_with_form_level() {
        let ym = gallery::yang_mills(&Matrix::identity(3)).unwrap();
        let l = perm012();
        let p = algebra_from_form(&ym.form, 3).unwrap();
        let tp = twist_relations(&p, &l).unwrap();
        assert_eq!(tp, algebra_from_form(&twist_form(&ym.form, &l).unwrap(), 3).unwrap());
        assert_ne!(tp, p);
        assert_eq!(twist_relations(&tp, &l.inverse().unwrap()).unwrap(), p);
        assert_eq!(twist_relations(&p, &Matrix::identity(3)).unwrap(), p);
        let lim = Limits::default();
        assert_eq!(hilbert_truncation(&tp, 5, &lim).unwrap(), hilbert_truncation(&p, 5, &lim).unwrap());
    }

    #[test]
    fn composition_of_commuting_twists() {
        let eps = gallery::levi_civita(3).unwrap();
        let p = algebra_from_form(&eps, 2).unwrap();
        let a = Matrix::diagonal(&[Scalar::int(2), Scalar::int(3), Scalar::ratio(1, 6)]);
        let b = Matrix::diagonal(&[Scalar::int(5), Scalar::ratio(1, 5), Scalar::int(1)]);
        let ab = a.mul(&b).unwrap();
        let lhs = twist_relations(&twist_relations(&p, &a).unwrap(), &b).unwrap();
        assert_eq!(lhs, twist_relations(&p, &ab).unwrap());
    }
}
