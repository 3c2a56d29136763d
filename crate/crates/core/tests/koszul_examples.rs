use std::time::Instant;

use homform::algebra::{algebra_from_form, hilbert_truncation};
use homform::gallery;
use homform::koszul::{gorenstein_cochain_check, koszul_complex, koszulity_check, verdict_of, KoszulVerdict};
use homform::{Limits, Matrix};

fn lim() -> Limits {
    Limits::default()
}

#[test]
fn yang_mills_koszul_through_seven() {
    let t = Instant::now();
    let ym = gallery::yang_mills(&Matrix::identity(3)).unwrap();
    let p = algebra_from_form(&ym.form, 3).unwrap();
    let k = koszul_complex(&p, 7, &lim()).unwrap();
    assert_eq!(verdict_of(&k), KoszulVerdict::PassUpTo { degree: 7 });
    for d in 1..=7 {
        assert_eq!(k.euler_characteristic(d), 0);
    }
    let g = gorenstein_cochain_check(&p, 7, &lim()).unwrap();
    assert_eq!(g.global_dimension, Some(3));
    assert!(g.pattern_holds, "{g}");
    eprintln!("yang-mills: {:?}", t.elapsed());
}

#[test]
fn super_yang_mills_gorenstein() {
    let e = gallery::super_yang_mills(&Matrix::identity(3)).unwrap();
    let p = algebra_from_form(&e.form, 3).unwrap();
    let g = gorenstein_cochain_check(&p, 7, &lim()).unwrap();
    assert_eq!(g.global_dimension, Some(3));
    assert!(g.pattern_holds, "{g}");
}

#[test]
fn epsilon_examples() {
    let t = Instant::now();
    let e4 = gallery::epsilon_form(4, 3).unwrap();
    let p = algebra_from_form(&e4.form, 3).unwrap();
    assert!(koszulity_check(&p, 7, &lim()).unwrap().passed());
    let e5 = gallery::epsilon_form(5, 3).unwrap();
    let p5 = algebra_from_form(&e5.form, 3).unwrap();
    assert_eq!(hilbert_truncation(&p5, 6, &lim()).unwrap(), vec![1, 5, 25, 115, 530, 2425, 11100]);
    assert!(koszulity_check(&p5, 6, &lim()).unwrap().passed());
    let g = gorenstein_cochain_check(&p5, 6, &lim()).unwrap();
    assert!(!g.pattern_holds, "{g}");
    eprintln!("epsilon: {:?}", t.elapsed());
}

#[test]
fn counterexample_failure() {
    let e = gallery::as_counterexample().unwrap();
    let p = algebra_from_form(&e.form, 2).unwrap();
    let dims = hilbert_truncation(&p, 7, &lim()).unwrap();
    assert_eq!(dims, vec![1, 3, 6, 10, 17, 30, 52, 89]);
    // a Koszul algebra with this dual would have dim A_4 = 15
    let k = koszul_complex(&p, 4, &lim()).unwrap();
    assert_eq!(k.euler_characteristic(4), 2);
    let v = koszulity_check(&p, 7, &lim()).unwrap();
    assert_eq!(v, KoszulVerdict::FailAt { position: 2, degree: 4, dim: 2 });
}
