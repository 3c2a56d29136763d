use super::{Echelon, Matrix, PivotOrder, SparseVec};
use crate::scalar::Scalar;

/// Solver for `x M = t` and the left kernel `{x : x M = 0}`.
///
/// Eliminates the rows `[M_i | e_i]`; the tag part records which combination of rows of `M`
/// each echelon row is.
#[derive(Clone, Debug)]
pub struct LeftSolver {
    ncols: usize,
    nrows: usize,
    echelon: Echelon,
}

impl LeftSolver {
    pub fn new(m: &Matrix) -> Self {
        let ncols = m.ncols();
        let tagged: Vec<SparseVec> = m
            .rows()
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                v.push((ncols + i, Scalar::one()));
                v
            })
            .collect();
        let mut echelon = Echelon::new(ncols + m.nrows(), PivotOrder::Leftmost);
        echelon.extend(&tagged);
        LeftSolver { ncols, nrows: m.nrows(), echelon }
    }

    /// Rank of `M`.
    pub fn rank(&self) -> usize {
        self.echelon.pivots().iter().filter(|&&p| p < self.ncols).count()
    }

    /// Dimension of the left kernel.
    pub fn nullity(&self) -> usize {
        self.nrows - self.rank()
    }

    /// One solution of `x M = t`, or `None` if `t` is not in the row space.
    pub fn solve(&self, t: &[(usize, Scalar)]) -> Option<SparseVec> {
        let r = self.echelon.reduce(t);
        if r.first().map_or(false, |(j, _)| *j < self.ncols) {
            return None;
        }
        Some(r.into_iter().map(|(j, x)| (j - self.ncols, -x)).collect())
    }

    /// A basis of the left kernel (canonical up to the elimination order).
    pub fn kernel(self) -> Vec<SparseVec> {
        let ncols = self.ncols;
        let (rows, piv) = self.echelon.into_rref();
        rows.into_iter()
            .zip(piv)
            .filter(|(_, p)| *p >= ncols)
            .map(|(r, _)| r.into_iter().map(|(j, x)| (j - ncols, x)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::tests::arb_matrix;
    use proptest::prelude::*;

    #[test]
    fn solves_and_detects_inconsistency() {
        let m = Matrix::from_ints(&[&[1, 2, 0], &[2, 4, 0], &[0, 0, 1]]);
        let s = LeftSolver::new(&m);
        assert_eq!((s.rank(), s.nullity()), (2, 1));
        let t: SparseVec = vec![(0, Scalar::int(3)), (1, Scalar::int(6)), (2, Scalar::int(-1))];
        let x = s.solve(&t).unwrap();
        assert_eq!(m.vec_mul(&x), t);
        assert!(s.solve(&[(0, Scalar::int(1))]).is_none());
        let k = s.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.vec_mul(&k[0]).is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn kernel_and_solution(m in arb_matrix(6, 4), x in arb_matrix(1, 6)) {
            let t = m.vec_mul(x.row(0));
            let s = LeftSolver::new(&m);
            let y = s.solve(&t).unwrap();
            prop_assert_eq!(m.vec_mul(&y), t);
            let n = s.nullity();
            let k = s.kernel();
            prop_assert_eq!(k.len(), n);
            for v in &k {
                prop_assert!(m.vec_mul(v).is_empty());
            }
        }
    }
}
