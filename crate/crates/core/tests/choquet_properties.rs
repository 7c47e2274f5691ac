mod common;

use choquet_sorting::{choquet_value, choquet_value_oracle, InteractionVector};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (InteractionVector<f64>, Vec<f64>)> {
    (2usize..=5, any::<u64>()).prop_flat_map(|(n, seed)| {
        let capacity = common::random_capacity(n, &mut common::rng(seed));
        (Just(capacity), prop::collection::vec(0.0f64..10.0, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn agrees_with_mobius_route((capacity, g) in instance()) {
        let fast = choquet_value(&g, &capacity).unwrap();
        let slow = choquet_value_oracle(&g, &capacity).unwrap();
        prop_assert!((fast - slow).abs() < 1e-9, "{fast} vs {slow}");
    }

    #[test]
    fn bounded_by_min_and_max((capacity, g) in instance()) {
        let v = choquet_value(&g, &capacity).unwrap();
        let lo = g.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = g.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(v >= lo - 1e-9 && v <= hi + 1e-9);
    }

    #[test]
    fn idempotent((capacity, g) in instance(), c in 0.0f64..10.0) {
        let constant = vec![c; g.len()];
        prop_assert!((choquet_value(&constant, &capacity).unwrap() - c).abs() < 1e-9);
    }

    #[test]
    fn monotone_in_each_criterion(
        (capacity, g) in instance(),
        j in 0usize..5,
        bump in 0.0f64..5.0,
    ) {
        let j = j % g.len();
        let mut better = g.clone();
        better[j] += bump;
        prop_assert!(
            choquet_value(&better, &capacity).unwrap() >= choquet_value(&g, &capacity).unwrap() - 1e-9
        );
    }
}
