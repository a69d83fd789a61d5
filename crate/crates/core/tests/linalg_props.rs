use hamcount::oracles::{det_leibniz, per_leibniz};
use hamcount::{BigInt, IndexSet, SquareMatrix};
use proptest::prelude::*;

fn matrix(max_n: usize, range: i64) -> impl Strategy<Value = SquareMatrix> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(-range..=range, n * n).prop_map(move |v| {
            SquareMatrix::new(n, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn det_and_per_match_leibniz(a in matrix(7, 9)) {
        prop_assert_eq!(a.det(), det_leibniz(&a).unwrap());
        prop_assert_eq!(a.per(), per_leibniz(&a).unwrap());
    }

    #[test]
    fn huge_entries_take_the_bigint_path(a in matrix(5, i64::MAX)) {
        prop_assert_eq!(a.det(), det_leibniz(&a).unwrap());
        prop_assert_eq!(a.per(), per_leibniz(&a).unwrap());
    }

    #[test]
    fn transpose_preserves_det_and_per(a in matrix(7, 9)) {
        let t = a.transpose();
        prop_assert_eq!(t.det(), a.det());
        prop_assert_eq!(t.per(), a.per());
    }

    #[test]
    fn negated_principal_minor_sign(a in matrix(7, 9), bits in any::<u64>()) {
        let n = a.dim();
        let s = IndexSet::from_bits(bits & ((1u64 << n) - 1), n).unwrap();
        let sub = a.principal_submatrix(&s).unwrap();
        let neg = SquareMatrix::from_fn(sub.dim(), |i, j| -sub.entry(i, j));
        let expected = if s.len().is_multiple_of(2) { sub.det() } else { -sub.det() };
        prop_assert_eq!(neg.det(), expected);
    }

    #[test]
    fn diagonal_det_equals_per(d in proptest::collection::vec(-20i64..=20, 1..=10)) {
        let n = d.len();
        let a = SquareMatrix::from_fn(n, |i, j| if i == j { d[i - 1] } else { 0 });
        let product: BigInt = d.iter().map(|&v| BigInt::from(v)).product();
        prop_assert_eq!(a.det(), product.clone());
        prop_assert_eq!(a.per(), product);
    }

    #[test]
    fn complement_partitions_universe(bits in any::<u64>(), n in 1usize..=64) {
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let s = IndexSet::from_bits(bits & mask, n).unwrap();
        let c = s.complement();
        prop_assert_eq!(s.len() + c.len(), n);
        prop_assert!(s.iter().all(|i| !c.contains(i)));
        prop_assert_eq!(c.complement(), s);
    }
}

#[test]
fn empty_minor_is_one() {
    let a = SquareMatrix::all_ones(3);
    let e = a.principal_submatrix(&IndexSet::empty(3)).unwrap();
    assert_eq!(e.det(), BigInt::from(1));
    assert_eq!(e.per(), BigInt::from(1));
}

#[test]
fn submatrix_rejects_unequal_sizes() {
    let a = SquareMatrix::all_ones(3);
    let r = IndexSet::from_indices(&[1, 2], 3).unwrap();
    let c = IndexSet::from_indices(&[3], 3).unwrap();
    assert!(a.submatrix(&r, &c).is_err());
    assert!(IndexSet::from_indices(&[4], 3).is_err());
}
