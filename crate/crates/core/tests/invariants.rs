use proptest::prelude::*;

use homform::algebra::{algebra_from_form, hilbert_truncation};
use homform::koszul::{koszul_complex, NuTable};
use homform::preregularity::solve_twist;
use homform::tensor::MultilinearForm;
use homform::twist::{is_in_glw, twist_data, twist_relations};
use homform::{gallery, Limits, Matrix, Rational, Scalar};

fn lim() -> Limits {
    Limits::default()
}

fn arb_invertible(d: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec((-3i64..4, 1i64..3), d * d)
        .prop_map(move |v| {
            let rows: Vec<Vec<Scalar>> = v
                .chunks(d)
                .map(|r| r.iter().map(|&(n, q)| Scalar::Rat(Rational::new(n, q))).collect())
                .collect();
            Matrix::from_dense(&rows)
        })
        .prop_filter("singular", Matrix::is_invertible)
}

fn homology_table(w: &MultilinearForm, n: usize, deg: usize) -> Vec<((usize, usize), usize)> {
    let p = algebra_from_form(w, n).unwrap();
    let k = koszul_complex(&p, deg, &lim()).unwrap();
    k.homology.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn koszul_homology_is_gl_invariant(b in arb_invertible(2), l in arb_invertible(2)) {
        let w = MultilinearForm::from_matrix(&b).unwrap();
        let v = w.gl_act(&l).unwrap();
        prop_assert_eq!(homology_table(&w, 2, 5), homology_table(&v, 2, 5));
    }

    #[test]
    fn cubic_homology_is_gl_invariant(l in arb_invertible(3)) {
        let ym = gallery::yang_mills(&Matrix::identity(3)).unwrap();
        let v = ym.form.gl_act(&l).unwrap();
        prop_assert_eq!(homology_table(&ym.form, 3, 5), homology_table(&v, 3, 5));
    }

    #[test]
    fn twisting_by_diagonal_keeps_dimensions(a in 1i64..6, b in 1i64..6, c in 1i64..6) {
        let e = gallery::epsilon_form(3, 2).unwrap();
        let l = Matrix::diagonal(&[
            Scalar::int(a),
            Scalar::ratio(b, a),
            Scalar::ratio(c, b),
        ]);
        let l = l.mul(&Matrix::diagonal(&[Scalar::int(1), Scalar::int(1), Scalar::ratio(1, c)])).unwrap();
        prop_assert!(is_in_glw(&e.form, &l).unwrap());
        let t = twist_data(&e.form, &l).unwrap();
        let p = algebra_from_form(&e.form, 2).unwrap();
        let tp = algebra_from_form(&t.twisted, 2).unwrap();
        prop_assert_eq!(&twist_relations(&p, &l).unwrap(), &tp);
        prop_assert_eq!(hilbert_truncation(&tp, 5, &lim()).unwrap(), hilbert_truncation(&p, 5, &lim()).unwrap());
        prop_assert!(solve_twist(&t.twisted).matrix().is_some());
    }

    #[test]
    fn nu_is_inverted(n in 2usize..6, p in 0usize..20) {
        let t = NuTable::new(n).unwrap();
        prop_assert_eq!(t.inverse(t.nu(p)), Some(p));
    }
}
