mod common;

use flowpart::clutter::{blocker, is_balanced_matrix};
use flowpart::exactlp::is_ideal;
use flowpart::Limits;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn blocker_is_an_involution(c in common::arb_clutter(12, 10)) {
        let b = blocker(&c, 24).unwrap();
        prop_assert_eq!(blocker(&b, 24).unwrap(), c);
    }

    #[test]
    fn blocker_swaps_deletion_and_contraction(c in common::arb_clutter(10, 8), pick in any::<usize>()) {
        let e = c.ground()[pick % c.ground().len()];
        let b = blocker(&c, 24).unwrap();
        prop_assert_eq!(blocker(&c.contract(e).unwrap().0, 24).unwrap(), b.delete(e).unwrap());
        prop_assert_eq!(blocker(&c.delete(e).unwrap(), 24).unwrap(), b.contract(e).unwrap().0);
    }

    #[test]
    fn minors_of_distinct_elements_commute(c in common::arb_clutter(10, 8), pick in any::<(usize, usize)>()) {
        prop_assume!(c.ground().len() > 1);
        let e = c.ground()[pick.0 % c.ground().len()];
        let rest: Vec<u32> = c.ground().iter().copied().filter(|&x| x != e).collect();
        let f = rest[pick.1 % rest.len()];
        let a = c.contract(e).unwrap().0.delete(f).unwrap();
        let b = c.delete(f).unwrap().contract(e).unwrap().0;
        prop_assert_eq!(a, b);
        let a = c.contract(e).unwrap().0.contract(f).unwrap().0;
        let b = c.contract(f).unwrap().0.contract(e).unwrap().0;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn incidence_rows_are_irredundant(c in common::arb_clutter(10, 10)) {
        let a = c.incidence_matrix();
        for (i, r) in a.rows().iter().enumerate() {
            for (j, s) in a.rows().iter().enumerate() {
                let dominated = r.iter().zip(s).all(|(x, y)| !*y || *x);
                prop_assert!(i == j || !dominated);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn balanced_matrices_are_ideal(c in common::arb_clutter(8, 8)) {
        if is_balanced_matrix(&c.incidence_matrix(), 20).unwrap().is_none() {
            prop_assert!(is_ideal(&c, &Limits::default()).unwrap().ideal);
        }
    }
}

#[test]
fn balanced_edge_clutters_are_ideal() {
    let mut rng = common::rng(1);
    for _ in 0..300 {
        let c = common::random_edge_clutter(&mut rng);
        let balanced = is_balanced_matrix(&c.incidence_matrix(), 20).unwrap().is_none();
        // edge clutters are ideal exactly when the graph is bipartite
        assert_eq!(balanced, is_ideal(&c, &Limits::default()).unwrap().ideal, "{:?}", c.members());
    }
}
