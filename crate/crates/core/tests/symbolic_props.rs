use hamcount::symbolic::{Monomial, MultiPoly, PolyMatrix, Symbolic};
use hamcount::{BigInt, IndexSet, SquareMatrix};
use proptest::prelude::*;

const N: usize = 3;

fn monomial() -> impl Strategy<Value = Monomial> {
    (
        proptest::collection::vec(((1..=N), (1..=N), 1u32..=2), 0..=3),
        proptest::collection::vec(((1..=N), 1u32..=3), 0..=3),
    )
        .prop_map(|(edges, vertices)| {
            let mut m = Monomial::one();
            for (i, j, e) in edges {
                m = m.mul(&Monomial::edge_pow(i, j, e));
            }
            for (i, e) in vertices {
                m = m.mul(&Monomial::vertex_pow(i, e));
            }
            m
        })
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((-5i64..=5, monomial()), 0..=5)
        .prop_map(|terms| terms.into_iter().map(|(c, m)| MultiPoly::term(c, m)).sum())
}

fn point() -> impl Strategy<Value = (SquareMatrix, Vec<BigInt>)> {
    (
        proptest::collection::vec(-4i64..=4, N * N),
        proptest::collection::vec(-4i64..=4, N),
    )
        .prop_map(|(a, x)| {
            (
                SquareMatrix::new(N, a.into_iter().map(BigInt::from).collect()).unwrap(),
                x.into_iter().map(BigInt::from).collect(),
            )
        })
}

fn subsets_of(s: &[usize]) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> + '_ {
    (0..1u32 << s.len()).map(move |mask| {
        let (inside, outside): (Vec<_>, Vec<_>) =
            s.iter().enumerate().partition(|(k, _)| mask >> k & 1 == 1);
        (
            inside.into_iter().map(|(_, &v)| v).collect(),
            outside.into_iter().map(|(_, &v)| v).collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in poly(), q in poly(), (a, x) in point()) {
        let (pv, qv) = (p.evaluate(&a, &x).unwrap(), q.evaluate(&a, &x).unwrap());
        prop_assert_eq!((&p + &q).evaluate(&a, &x).unwrap(), &pv + &qv);
        prop_assert_eq!((&p * &q).evaluate(&a, &x).unwrap(), &pv * &qv);
        prop_assert_eq!((-p.clone()).evaluate(&a, &x).unwrap(), -pv);
    }

    #[test]
    fn product_rule_over_distinct_vertices(p in poly(), q in poly()) {
        let s: Vec<usize> = (1..=N).collect();
        let lhs = (&p * &q).partial_derivative(&s);
        let rhs: MultiPoly = subsets_of(&s)
            .map(|(inside, outside)| p.partial_derivative(&inside) * q.partial_derivative(&outside))
            .sum();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivatives_commute(p in poly()) {
        prop_assert_eq!(p.derive(1).derive(2), p.derive(2).derive(1));
    }

    #[test]
    fn marking_tracks_in_degrees(m in monomial()) {
        let marked = m.mark_in_degrees();
        for j in 1..=N {
            let indeg: u32 = (1..=N).map(|i| m.edge_exponent(i, j)).sum();
            prop_assert_eq!(marked.vertex_exponent(j), m.vertex_exponent(j) + indeg);
        }
        prop_assert_eq!(marked.edge_exponents(), m.edge_exponents());
    }

    #[test]
    fn canonical_text_round_trips(p in poly()) {
        let text = p.to_string();
        let back: MultiPoly = text.parse().unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn generic_det_evaluates_to_numeric_det((a, _) in point()) {
        let sym = Symbolic::default();
        let g = PolyMatrix::generic(N);
        prop_assert_eq!(sym.det(&g).unwrap().evaluate(&a, &[]).unwrap(), a.det());
        prop_assert_eq!(sym.per(&g).unwrap().evaluate(&a, &[]).unwrap(), a.per());
    }
}

#[test]
fn identity_terms_sum_to_the_listing() {
    let sym = Symbolic::default();
    for n in 1..=4 {
        let total: MultiPoly = IndexSet::full(n - 1)
            .subsets()
            .map(|s| {
                let s = IndexSet::from_bits(s.bits(), n).unwrap();
                sym.hc_identity_term(n, &s).unwrap()
            })
            .sum();
        assert_eq!(total, sym.hc_listing(n).unwrap(), "n = {n}");
    }
}

#[test]
fn listings_have_the_expected_sizes() {
    let sym = Symbolic::default();
    let sizes: Vec<usize> = (1..=5).map(|n| sym.hc_listing(n).unwrap().len()).collect();
    assert_eq!(sizes, [1, 1, 2, 6, 24]);
    let trees: Vec<usize> = (1..=4).map(|n| sym.tdmtt(n).unwrap().len()).collect();
    // n^(n-1) rooted trees on n labelled vertices
    assert_eq!(trees, [1, 2, 9, 64]);
}

#[test]
fn caps_are_enforced() {
    assert!(Symbolic::default().hc_identity_expand(6).is_err());
    assert!(Symbolic::default().det(&PolyMatrix::generic(7)).is_err());
}
