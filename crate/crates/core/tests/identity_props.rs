use hamcount::identities::{
    det_sum_expand, hc_count_identity, hc_count_identity_with, hc_full_range_sum,
    hp_count_identity, hp_diagonal_pair_sum, tree_count_rooted, tree_count_tdmtt,
};
use hamcount::oracles::{hc_bruteforce, hp_bruteforce, tree_bruteforce};
use hamcount::{BigInt, EvalOptions, IndexSet, SquareMatrix};
use proptest::prelude::*;

fn matrix(lo: usize, hi: usize) -> impl Strategy<Value = SquareMatrix> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(-9i64..=9, n * n).prop_map(move |v| {
            SquareMatrix::new(n, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

fn shuffled(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn hc_matches_bruteforce(a in matrix(1, 7)) {
        prop_assert_eq!(hc_count_identity(&a).unwrap().count, hc_bruteforce(&a).unwrap());
    }

    #[test]
    fn hp_matches_bruteforce(a in matrix(2, 6)) {
        prop_assert_eq!(hp_count_identity(&a).unwrap().count, hp_bruteforce(&a).unwrap());
    }

    #[test]
    fn trees_match_bruteforce(a in matrix(1, 5)) {
        prop_assert_eq!(tree_count_tdmtt(&a).unwrap().count, tree_bruteforce(&a).unwrap());
    }

    #[test]
    fn rooted_counts_sum_to_total(a in matrix(1, 6)) {
        let total: BigInt = (1..=a.dim()).map(|r| tree_count_rooted(&a, r).unwrap()).sum();
        prop_assert_eq!(total, tree_count_tdmtt(&a).unwrap().count);
    }

    #[test]
    fn full_range_sum_vanishes(a in matrix(1, 8)) {
        prop_assert_eq!(hc_full_range_sum(&a).unwrap(), BigInt::from(0));
    }

    #[test]
    fn hp_diagonal_pairs_vanish(a in matrix(2, 7)) {
        prop_assert_eq!(hp_diagonal_pair_sum(&a).unwrap(), BigInt::from(0));
    }

    #[test]
    fn hc_ignores_diagonal(
        a in matrix(2, 8),
        x in proptest::collection::vec(-50i64..=50, 8),
    ) {
        let x: Vec<BigInt> = x[..a.dim()].iter().map(|&v| BigInt::from(v)).collect();
        let moved = a.add_diagonal(&x).unwrap();
        prop_assert_eq!(hc_count_identity(&moved).unwrap().count, hc_count_identity(&a).unwrap().count);
    }

    #[test]
    fn hc_relabel_and_transpose_invariant(
        (a, perm) in matrix(1, 8).prop_flat_map(|a| { let n = a.dim(); (Just(a), shuffled(n)) }),
    ) {
        let base = hc_count_identity(&a).unwrap().count;
        prop_assert_eq!(hc_count_identity(&a.relabel(&perm).unwrap()).unwrap().count, base.clone());
        prop_assert_eq!(hc_count_identity(&a.transpose()).unwrap().count, base);
    }

    #[test]
    fn det_sum_lemma(
        a in matrix(1, 7),
        x in proptest::collection::vec(-9i64..=9, 7),
    ) {
        let x: Vec<BigInt> = x[..a.dim()].iter().map(|&v| BigInt::from(v)).collect();
        let lhs = a.add_diagonal(&x).unwrap().det();
        prop_assert_eq!(det_sum_expand(&a, &x, &IndexSet::full(a.dim())).unwrap(), lhs);
    }

    #[test]
    fn thread_count_does_not_change_result(a in matrix(6, 11), threads in 2usize..=4) {
        let seq = hc_count_identity(&a).unwrap().count;
        let par = hc_count_identity_with(&a, &EvalOptions::with_threads(threads)).unwrap().count;
        prop_assert_eq!(par, seq);
    }
}

#[test]
fn hp_rejects_single_vertex() {
    assert!(hp_count_identity(&SquareMatrix::all_ones(1)).is_err());
}

#[test]
fn zero_threads_is_an_error() {
    let a = SquareMatrix::all_ones(3);
    assert!(hc_count_identity_with(&a, &EvalOptions::with_threads(0)).is_err());
}
