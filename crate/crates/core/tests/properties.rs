mod common;

use gtcg::verify::{check_block_diagonalization, check_orthonormality, check_selection_rule};
use gtcg::{compute_all, enumerate, Decomposition, GtPattern, IWeight};
use proptest::prelude::*;

fn irrep(n: usize, max: i64) -> impl Strategy<Value = IWeight> {
    proptest::collection::vec(0..=max, n).prop_map(|mut e| {
        e.sort_unstable_by(|a, b| b.cmp(a));
        let last = *e.last().unwrap();
        IWeight::new(e.into_iter().map(|x| x - last).collect()).unwrap()
    })
}

fn raw_irrep(n: usize) -> impl Strategy<Value = IWeight> {
    proptest::collection::vec(-4i64..=6, n).prop_map(|mut e| {
        e.sort_unstable_by(|a, b| b.cmp(a));
        IWeight::new(e).unwrap()
    })
}

proptest! {
    #[test]
    fn weight_index_round_trip(n in 2usize..=6, p in 0u64..20_000) {
        let s = IWeight::from_index(n, p).unwrap();
        prop_assert!(s.is_normalized());
        prop_assert_eq!(s.index().unwrap(), p);
    }

    #[test]
    fn weight_index_of_any_representative(s in raw_irrep(4)) {
        let p = s.index().unwrap();
        prop_assert_eq!(IWeight::from_index(4, p).unwrap(), s.normalize());
    }

    #[test]
    fn weight_order_matches_index_order(a in irrep(4, 5), b in irrep(4, 5)) {
        prop_assert_eq!(a.compare(&b).unwrap(), a.index().unwrap().cmp(&b.index().unwrap()));
    }

    #[test]
    fn pattern_index_round_trip(s in irrep(4, 4), frac in 0.0f64..1.0) {
        let dim = s.dimension();
        let q = 1 + ((dim as f64 * frac) as u64).min(dim - 1);
        let m = GtPattern::from_index(&s, q).unwrap();
        prop_assert!(m.is_valid());
        prop_assert_eq!(m.top(), s.clone());
        prop_assert_eq!(m.index().unwrap(), q);
    }

    #[test]
    fn enumeration_matches_brute_force(s in irrep(4, 3)) {
        let mut brute = common::brute_patterns(&s);
        brute.sort();
        prop_assert_eq!(brute.len() as u64, s.dimension());
        prop_assert_eq!(enumerate(&s), brute);
    }

    #[test]
    fn successor_and_predecessor_are_inverse(s in irrep(3, 5), frac in 0.0f64..1.0) {
        let dim = s.dimension();
        let q = 1 + ((dim as f64 * frac) as u64).min(dim - 1);
        let m = GtPattern::from_index(&s, q).unwrap();
        if let Some(next) = m.successor() {
            prop_assert!(next > m);
            prop_assert_eq!(next.index().unwrap(), q + 1);
            prop_assert_eq!(next.predecessor().unwrap(), m.clone());
        }
        if let Some(prev) = m.predecessor() {
            prop_assert_eq!(prev.index().unwrap(), q - 1);
        }
    }

    #[test]
    fn tableau_round_trip(s in irrep(4, 4), frac in 0.0f64..1.0) {
        let dim = s.dimension();
        let q = 1 + ((dim as f64 * frac) as u64).min(dim - 1);
        let m = GtPattern::from_index(&s, q).unwrap();
        let t = m.to_tableau().unwrap();
        prop_assert_eq!(t.content(4), m.pweight().0);
        prop_assert_eq!(GtPattern::from_tableau(&t, 4).unwrap(), m);
    }

    #[test]
    fn dimensions_add_up(a in irrep(4, 3), b in irrep(4, 3)) {
        let d = Decomposition::new(&a, &b).unwrap();
        prop_assert_eq!(d.total_dimension(), a.dimension() * b.dimension());
        let swapped = Decomposition::new(&b, &a).unwrap();
        prop_assert_eq!(d.terms(), swapped.terms());
    }

    #[test]
    fn pattern_weights_add_across_a_product(a in raw_irrep(3), b in raw_irrep(3)) {
        let d = Decomposition::new(&a, &b).unwrap();
        for (w, _) in d.terms() {
            prop_assert_eq!(d.aligned(w).total(), a.total() + b.total());
            prop_assert_eq!(d.aligned(w).normalize(), w.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn coefficients_are_unitary_and_equivariant(a in irrep(3, 2), b in irrep(3, 2)) {
        let (_, tensors) = compute_all::<f64>(&a, &b).unwrap();
        let r = check_orthonormality(&tensors, 1e-10).unwrap();
        prop_assert!(r.passed, "{}", r);
        let r = check_block_diagonalization(&tensors, 1e-10).unwrap();
        prop_assert!(r.passed, "{}", r);
        for t in &tensors {
            prop_assert!(check_selection_rule(t).passed);
        }
    }

    #[test]
    fn perturbation_is_detected(a in irrep(3, 2), b in irrep(3, 1), pick in 0usize..1000) {
        let (_, mut tensors) = compute_all::<f64>(&a, &b).unwrap();
        let total: usize = tensors.iter().map(|t| t.nonzero_count()).sum();
        let mut k = pick % total;
        let i = tensors.iter().position(|t| {
            if k < t.nonzero_count() { true } else { k -= t.nonzero_count(); false }
        }).unwrap();
        let (alpha, qpp, q, qp, v) = tensors[i].entries().nth(k).unwrap();
        tensors[i].set(alpha, qpp, q, qp, v + 1e-3);
        prop_assert!(!check_orthonormality(&tensors, 1e-8).unwrap().passed);
        prop_assert!(!check_block_diagonalization(&tensors, 1e-8).unwrap().passed);
    }
}
