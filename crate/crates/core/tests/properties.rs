use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lmv_core::format::{parse_labeling, parse_universe, write_labeling, write_universe};
use lmv_core::generate::random_universe;
use lmv_core::labeling::{reflexive_violations, IndexedLabels};
use lmv_core::regularity::{
    check_family_conditions, check_regressive_regularity, ScenarioConfig, SelectionFamily,
    TerminalFamily,
};
use lmv_core::selection::{
    brute_force_selection_label, builtin_rule_library, label_all_selection, SelectionRuleSet,
};
use lmv_core::terminal::{brute_force_terminal_label, label_all_terminal};
use lmv_core::{enumerate_order_types, Cube, MaximalTheta, Universe, Variant, Vertex};

fn universe(seed: u64, k: usize, size: usize, density: f64) -> Universe {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_universe(&mut rng, k, size, 5, density)
}

fn universe_strategy(max_size: usize) -> impl Strategy<Value = Universe> {
    (any::<u64>(), 2usize..=3, 1..=max_size, 0.0f64..=1.0)
        .prop_map(|(seed, k, size, density)| universe(seed, k, size, density))
}

fn longest_path(u: &Universe) -> usize {
    let mut depth = vec![0usize; u.len()];
    for &i in u.ascending_max_order() {
        depth[i] = u
            .out_neighbors(i)
            .iter()
            .map(|&j| depth[j] + 1)
            .max()
            .unwrap_or(0);
    }
    depth.into_iter().max().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn terminal_dp_matches_path_oracle(u in universe_strategy(12)) {
        let t = label_all_terminal(&u, Variant::Plain);
        for (i, v) in u.vertices().iter().enumerate() {
            prop_assert_eq!(t.label(i), brute_force_terminal_label(&u, v).unwrap());
        }
    }

    #[test]
    fn terminal_labels_are_regressive_and_reflexive(u in universe_strategy(12)) {
        let t = label_all_terminal(&u, Variant::Plain);
        for (i, v) in u.vertices().iter().enumerate() {
            prop_assert!(t.label(i) <= v.min_coord());
        }
        prop_assert!(reflexive_violations(&u, t.labels()).is_empty());
    }

    #[test]
    fn relaxed_terminal_bounds(u in universe_strategy(12)) {
        let plain = label_all_terminal(&u, Variant::Plain);
        let relaxed = label_all_terminal(&u, Variant::Relaxed);
        for (i, v) in u.vertices().iter().enumerate() {
            prop_assert!(relaxed.label(i) <= v.max_coord());
            prop_assert_eq!(relaxed.label(i) == v.max_coord(), u.is_sink(i));
            if !u.is_sink(i) {
                prop_assert_eq!(relaxed.label(i), plain.label(i));
            }
        }
    }

    #[test]
    fn selection_dp_matches_oracle(u in universe_strategy(7), which in 0usize..5, cap in 1usize..=3) {
        let (_, rules) = &builtin_rule_library(cap)[which];
        for variant in [Variant::Plain, Variant::Relaxed] {
            let s = label_all_selection(&u, rules, variant).unwrap();
            for (i, v) in u.vertices().iter().enumerate() {
                let oracle = brute_force_selection_label(&u, v, rules, variant).unwrap();
                prop_assert_eq!(s.label(i), oracle.label);
                prop_assert_eq!(s.defined_mask()[i], oracle.defined);
            }
        }
    }

    #[test]
    fn relaxed_selection_bounds(u in universe_strategy(12), which in 0usize..5) {
        let (_, rules) = &builtin_rule_library(3)[which];
        let relaxed = label_all_selection(&u, rules, Variant::Relaxed).unwrap();
        for (i, v) in u.vertices().iter().enumerate() {
            prop_assert!(relaxed.label(i) <= v.max_coord());
            prop_assert_eq!(relaxed.label(i) == v.max_coord(), !relaxed.defined_mask()[i]);
        }
        prop_assert!(reflexive_violations(&u, relaxed.labels()).is_empty());
    }

    #[test]
    fn walks_descend_and_are_short(u in universe_strategy(12)) {
        for (s, t) in u.edge_indices() {
            prop_assert!(u.vertex(s).max_coord() > u.vertex(t).max_coord());
        }
        prop_assert!(longest_path(&u) < u.max_levels().len().max(1));
    }

    #[test]
    fn light_cones_grow_with_the_domain(seed in any::<u64>(), keep in proptest::collection::vec(any::<bool>(), 12)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let big = random_universe(&mut rng, 2, 12, 5, 0.0);
        let b = Universe::induced(2, big.vertices().iter().cloned(), &MaximalTheta).unwrap();
        let a_vertices: Vec<Vertex> = b
            .vertices()
            .iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(v, _)| v.clone())
            .collect();
        let a = Universe::induced(2, a_vertices, &MaximalTheta).unwrap();
        for x in a.vertices() {
            let cone_a: BTreeSet<Vertex> = a.light_cone(x).into_iter().collect();
            let cone_b: BTreeSet<Vertex> = b.light_cone(x).into_iter().collect();
            prop_assert!(cone_a.is_subset(&cone_b));
        }
    }

    #[test]
    fn order_types_partition_cubes(axis in proptest::collection::btree_set(0u32..20, 1..6), k in 1usize..=3) {
        let cube = Cube::new(axis.iter().copied(), k).unwrap();
        let types = enumerate_order_types(k);
        let mut seen = BTreeSet::new();
        for p in cube.points() {
            let ty = p.order_type();
            prop_assert_eq!(types.iter().filter(|t| **t == ty).count(), 1);
            seen.insert(ty);
        }
        if axis.len() >= k {
            prop_assert_eq!(seen.len(), types.len());
        }
    }

    #[test]
    fn regular_verdicts_respect_type_bound(u in universe_strategy(12), lo in 0u32..3) {
        let t = label_all_terminal(&u, Variant::Plain);
        let cube = Cube::new(lo..lo + 3, u.dimension()).unwrap();
        if cube.points().iter().all(|p| u.contains(p)) {
            let labels = IndexedLabels { universe: &u, labels: t.labels() };
            let verdict = check_regressive_regularity(&labels, &cube).unwrap();
            prop_assert!(verdict.respects_type_bound());
        }
    }

    #[test]
    fn text_formats_round_trip(u in universe_strategy(12)) {
        let text = write_universe(&u);
        let back = parse_universe(&text).unwrap();
        prop_assert_eq!(&back, &u);
        prop_assert_eq!(write_universe(&back), text);
        let t = label_all_terminal(&u, Variant::Plain);
        let labeled = write_labeling(&u, t.labels());
        let parsed = parse_labeling(&labeled).unwrap();
        prop_assert_eq!(parsed.labels.as_slice(), t.labels());
        prop_assert_eq!(write_labeling(&parsed.universe, &parsed.labels), labeled);
    }

    #[test]
    fn maximal_edge_count_is_pair_count(u in universe_strategy(12)) {
        let m = u.with_maximal_theta();
        let pairs = u
            .vertices()
            .iter()
            .flat_map(|x| u.vertices().iter().map(move |y| (x, y)))
            .filter(|(x, y)| x.max_coord() > y.max_coord())
            .count();
        prop_assert_eq!(m.edge_count(), pairs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn relaxed_families_are_jump_free(seed in any::<u64>()) {
        let config = ScenarioConfig::default();
        let report = check_family_conditions(&TerminalFamily(Variant::Relaxed), &config, 40, seed);
        prop_assert!(report.jump_free() && report.reflexive());
        let rules = SelectionRuleSet::preset("min-report", 3).unwrap();
        let family = SelectionFamily { rules, variant: Variant::Relaxed };
        let report = check_family_conditions(&family, &config, 40, seed);
        prop_assert!(report.jump_free() && report.reflexive());
    }
}

#[test]
fn maximal_box_has_23_edges() {
    let u = Universe::maximal(2, lmv_core::fixtures::lattice_box(2, 2)).unwrap();
    assert_eq!(u.len(), 9);
    assert_eq!(u.edge_count(), 23);
}
