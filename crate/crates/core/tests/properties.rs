use brauer_core::abelian::{cokernel, smith_normal_form, AbGroupMap, FinAbGroup, Int, IntegerMatrix};
use brauer_core::cohomology::{cohomology, Coefficients};
use brauer_core::groups::FiniteGroup;
use brauer_core::Limits;
use proptest::prelude::*;

fn matrix(max_dim: usize, max_entry: i64) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-max_entry..=max_entry, c), r)
            .prop_map(|rows| IntegerMatrix::from_rows(&rows))
    })
}

fn diagonal(s: &IntegerMatrix) -> Vec<Int> {
    (0..s.rows().min(s.cols())).map(|i| s.get(i, i)).collect()
}

fn is_unimodular(u: &IntegerMatrix) -> bool {
    let (s, _, _) = smith_normal_form(u, &Limits::default()).unwrap();
    u.rows() == u.cols() && diagonal(&s).iter().all(Int::is_one)
}

/// A random unimodular matrix as a product of elementary operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntegerMatrix> {
    proptest::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for (a, b, k, swap) in ops {
            if swap {
                rows.swap(a, b);
            } else if a != b {
                let src = rows[b].clone();
                for (x, y) in rows[a].iter_mut().zip(src) {
                    *x += k * y;
                }
            }
        }
        IntegerMatrix::from_rows(&rows)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(m in matrix(6, 9)) {
        let (s, u, v) = smith_normal_form(&m, &Limits::default()).unwrap();
        prop_assert_eq!(u.mul(&m).mul(&v), s.clone());
        prop_assert!(is_unimodular(&u));
        prop_assert!(is_unimodular(&v));
        for (i, j, _) in s.triplets() {
            prop_assert_eq!(i, j);
        }
        let d = diagonal(&s);
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative() && !w[1].is_negative());
            prop_assert!(w[0].divides(&w[1]) || w[1].is_zero());
            prop_assert!(!(w[0].is_zero() && !w[1].is_zero()));
        }
        let (s2, _, _) = smith_normal_form(&s, &Limits::default()).unwrap();
        prop_assert_eq!(s2, s);
    }

    #[test]
    fn cokernel_is_invariant_under_unimodular_change((m, a, b) in matrix(5, 6).prop_flat_map(|m| {
        let (r, c) = (m.rows(), m.cols());
        (Just(m), unimodular(r), unimodular(c))
    })) {
        let lim = Limits::default();
        prop_assert_eq!(cokernel(&a.mul(&m).mul(&b), &lim).unwrap(), cokernel(&m, &lim).unwrap());
    }

    #[test]
    fn split_injections_are_injective(
        src in proptest::collection::vec(2u64..=8, 1..=2),
        dst in proptest::collection::vec(2u64..=8, 1..=3),
        entries in proptest::collection::vec(0i64..8, 6),
    ) {
        let s = FinAbGroup::from_u64_orders(&src);
        let t = FinAbGroup::from_u64_orders(&dst);
        let rows: Vec<Vec<i64>> = (0..t.ngens()).map(|i| (0..s.ngens()).map(|j| entries[i * 2 + j]).collect()).collect();
        if let Ok(f) = AbGroupMap::new(s, t, IntegerMatrix::from_rows(&rows)) {
            let lim = Limits::default();
            if f.is_split_injection(&lim).unwrap() {
                prop_assert!(f.is_injective(&lim).unwrap());
            }
        }
    }

    #[test]
    fn canonical_text_round_trips(orders in proptest::collection::vec(0u64..=12, 0..5)) {
        let orders: Vec<Int> = orders.into_iter().map(Int::from).collect();
        let g = FinAbGroup::from_orders(&orders);
        prop_assert_eq!(g.to_string().parse::<FinAbGroup>().unwrap(), g);
    }

    #[test]
    fn cyclic_cohomology_is_periodic(n in 1usize..=7, k in 1usize..=4) {
        let g = FiniteGroup::cyclic(n);
        let lim = Limits::default();
        let units = cohomology(&g, k, Coefficients::Units, &lim).unwrap();
        let want = if k % 2 == 1 { FinAbGroup::cyclic(n as u64) } else { FinAbGroup::trivial() };
        prop_assert_eq!(units.value(), &want);
    }
}
