//! SU(2) coefficients against the closed-form Racah expression.

mod common;

use common::racah;
use gtcg::verify::check_orthonormality;
use gtcg::{compute_all, IWeight};

#[test]
fn oracle_sanity() {
    let r = 0.5f64.sqrt();
    assert!((racah(1, 1, 1, -1, 0, 0) - r).abs() < 1e-15);
    assert!((racah(1, -1, 1, 1, 0, 0) + r).abs() < 1e-15);
    assert!((racah(2, 0, 2, 0, 0, 0) + (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
    assert!((racah(2, 2, 1, -1, 3, 1) - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
}

// Pattern index Q of irrep (2j, 0) holds m_{1,1} = Q - 1, so 2m = 2(Q-1) - 2j.
fn two_m(q: usize, two_j: i64) -> i64 {
    2 * (q as i64 - 1) - two_j
}

#[test]
fn all_spins_up_to_two() {
    for a in 0..=4i64 {
        for b in 0..=4i64 {
            let (s, s2) = (
                IWeight::new(vec![a, 0]).unwrap(),
                IWeight::new(vec![b, 0]).unwrap(),
            );
            let (d, tensors) = compute_all::<f64>(&s, &s2).unwrap();
            let expected: Vec<i64> = ((a - b).abs()..=a + b).step_by(2).collect();
            let found: Vec<i64> = d.terms().iter().map(|(w, _)| w.get(1)).collect();
            assert_eq!(found, expected);

            for t in &tensors {
                let jj = t.target().get(1);
                // the relative signs within one target are fixed; only an overall sign is free
                let mut sign = 0.0;
                for qpp in 1..=t.dim_target() {
                    for q in 1..=t.dim_left() {
                        for qp in 1..=t.dim_right() {
                            let c = t.get(1, qpp, q, qp);
                            let o = racah(a, two_m(q, a), b, two_m(qp, b), jj, two_m(qpp, jj));
                            assert!(
                                (c.abs() - o.abs()).abs() < 1e-10,
                                "j={a}/2 j'={b}/2 J={jj}/2 ({qpp},{q},{qp}): {c} vs {o}"
                            );
                            if o.abs() > 1e-10 {
                                let s = c / o;
                                if sign == 0.0 {
                                    sign = s.signum();
                                }
                                assert!((s - sign).abs() < 1e-10);
                            }
                        }
                    }
                }
            }
            let report = check_orthonormality(&tensors, 1e-12).unwrap();
            assert!(report.passed, "{report}");
        }
    }
}

#[test]
fn selection_rule_is_m_additivity() {
    let (s, s2) = (
        IWeight::new(vec![4, 0]).unwrap(),
        IWeight::new(vec![3, 0]).unwrap(),
    );
    let (_, tensors) = compute_all::<f64>(&s, &s2).unwrap();
    for t in &tensors {
        let jj = t.target().get(1);
        for (_, qpp, q, qp, _) in t.entries() {
            assert_eq!(two_m(q, 4) + two_m(qp, 3), two_m(qpp, jj));
        }
    }
}
