use gtcg::verify::{check_block_diagonalization, check_orthonormality};
use gtcg::{compute_all, IWeight};

#[test]
fn adjoint_squared_in_f32() {
    let a = IWeight::new(vec![2, 1, 0]).unwrap();
    let (_, single) = compute_all::<f32>(&a, &a).unwrap();
    let (_, double) = compute_all::<f64>(&a, &a).unwrap();
    assert!(check_orthonormality(&single, 1e-5).unwrap().passed);
    assert!(check_block_diagonalization(&single, 1e-5).unwrap().passed);
    for (s, d) in single.iter().zip(&double) {
        assert_eq!(s.alpha_count(), d.alpha_count());
        for (alpha, qpp, q, qp, v) in d.entries() {
            assert!((s.get(alpha, qpp, q, qp) as f64 - v).abs() < 1e-5);
        }
    }
}
