use chainbell::chain::{closed_form_lhs, evaluate_chain, ChainScenario};
use chainbell::lhv::{strategy_chain_value, DeterministicStrategy};
use chainbell::quantum::{SettingLadder, Variant};
use chainbell::qubit_sector::{sector_chain_margin, sector_chain_margin_by_links, SectorScenario};
use chainbell::separation::{mismatch_from_separations, mismatch_probability};
use proptest::prelude::*;

fn strategy_for(d: usize, n: usize) -> impl Strategy<Value = DeterministicStrategy> {
    (
        prop::collection::vec(0..d, n),
        prop::collection::vec(0..d, n),
    )
        .prop_map(|(alice, bob)| DeterministicStrategy::new(alice, bob))
}

proptest! {
    #[test]
    fn deterministic_strategies_never_violate(
        (d, n, s) in (2usize..6, 1usize..8).prop_flat_map(|(d, n)| (Just(d), Just(n), strategy_for(d, n)))
    ) {
        let scenario = ChainScenario::standard(d, n).unwrap();
        let (lhs, rhs) = strategy_chain_value(&s, &scenario).unwrap();
        prop_assert!(rhs <= lhs);
    }

    #[test]
    fn matrix_path_matches_closed_form(d in 2usize..10, n in 1usize..30) {
        let report = evaluate_chain(&ChainScenario::standard(d, n).unwrap()).unwrap();
        let cf = closed_form_lhs(d, 2 * n, Variant::Standard).unwrap();
        prop_assert!((report.lhs - cf).abs() < 1e-10);
        prop_assert_eq!(report.closed_form, Some(cf));
    }

    #[test]
    fn every_link_table_satisfies_the_identity(d in 2usize..9, n in 1usize..6, extended in any::<bool>()) {
        let variant = if extended { Variant::Extended } else { Variant::Standard };
        let ladder = SettingLadder::new(d, n, variant).unwrap();
        let mut pairs = ladder.links();
        pairs.push(ladder.closing());
        for (i, j) in pairs {
            let t = ladder.pair_table(i, j).unwrap();
            prop_assert!((t.total() - 1.0).abs() < 1e-12);
            prop_assert!((mismatch_probability(&t) - mismatch_from_separations(&t)).abs() < 1e-12);
        }
    }

    #[test]
    fn sector_paths_agree(n in 2usize..200, gamma in 1.0f64..64.0) {
        let s = SectorScenario::qubit(n, gamma).unwrap();
        prop_assert!((sector_chain_margin(&s) - sector_chain_margin_by_links(&s)).abs() < 1e-9);
        prop_assert!(sector_chain_margin(&s) > 0.0);
    }
}
