mod common;

use std::collections::BTreeSet;

use common::{naive_grid_solutions, naive_is_magic, small_structures};
use fuzzy_magic::construct::{label_cycle, label_path, label_star, magic_coefficient, MagicLabeling};
use fuzzy_magic::{
    enumerate_magic, is_fuzzy_magic_and_labeling, minimal_magic_coefficient, Element, GraphStructure,
    Label, SearchSpec, VertexId,
};
use proptest::prelude::*;

fn vector_of(labeling: &MagicLabeling) -> Vec<u64> {
    let vertices = labeling
        .coefficients
        .iter()
        .filter(|(e, _)| matches!(e, Element::Vertex(_)))
        .map(|(_, c)| *c);
    let edges = labeling
        .coefficients
        .iter()
        .filter(|(e, _)| matches!(e, Element::Edge(_)))
        .map(|(_, c)| *c);
    vertices.chain(edges).collect()
}

fn pruned_set(s: &GraphStructure, k: u64, unit: &Label) -> BTreeSet<Vec<u64>> {
    let spec = SearchSpec::new(k, unit.clone()).with_limit(None);
    let result = enumerate_magic(s, &spec).unwrap();
    assert!(result.exhausted);
    let vectors: Vec<Vec<u64>> = result.solutions.iter().map(|a| a.vector()).collect();
    let mut sorted = vectors.clone();
    sorted.sort();
    assert_eq!(vectors, sorted, "solutions must come back in lexicographic order");
    vectors.into_iter().collect()
}

#[test]
fn constructions_are_among_search_solutions() {
    for n in 1..=6u64 {
        let mut cases = vec![(label_path(n, None).unwrap(), GraphStructure::path(n))];
        if n >= 2 {
            cases.push((label_star(n, None).unwrap(), GraphStructure::star(n)));
        }
        if n >= 3 && n % 2 == 1 {
            cases.push((label_cycle(n, None).unwrap(), GraphStructure::cycle(n)));
        }
        for (labeling, structure) in cases {
            let t = magic_coefficient(labeling.spec);
            let spec = SearchSpec::new(2 * n + 1, labeling.unit.clone())
                .with_target(t)
                .with_limit(None);
            let result = enumerate_magic(&structure, &spec).unwrap();
            let wanted = vector_of(&labeling);
            assert!(
                result.solutions.iter().any(|s| s.vector() == wanted),
                "{} not found",
                labeling.spec
            );
        }
    }
}

#[test]
fn pruned_search_matches_generate_and_test() {
    let structures = small_structures(7);
    assert!(structures.len() > 100);
    for s in &structures {
        let items = (s.order() + s.size()) as u64;
        for k in [items, items + 1] {
            let unit = fuzzy_magic::minimal_unit(3 * k);
            let expected = naive_grid_solutions(s, k, 10u64.pow(unit_digits(&unit)));
            assert_eq!(pruned_set(s, k, &unit), expected, "{s:?} K={k}");
        }
    }
}

#[test]
fn tight_unit_caps_the_target() {
    // d = 1/10 allows T <= 10 only, while K = 6 would reach 15
    let unit = Label::decimal_unit(1);
    for s in [GraphStructure::path(2), GraphStructure::star(2)] {
        let expected = naive_grid_solutions(&s, 6, 10);
        assert_eq!(pruned_set(&s, 6, &unit), expected);
    }
}

fn unit_digits(unit: &Label) -> u32 {
    unit.value().denom().to_string().len() as u32 - 1
}

#[test]
fn every_solution_is_fuzzy_magic() {
    let unit = Label::decimal_unit(2);
    for s in [GraphStructure::cycle(4), GraphStructure::path(3), GraphStructure::star(3)] {
        let spec = SearchSpec::new(9, unit.clone()).with_limit(None);
        for sol in enumerate_magic(&s, &spec).unwrap().solutions {
            let g = sol.to_graph(&unit).unwrap();
            assert!(is_fuzzy_magic_and_labeling(&g), "{sol}");
            assert!(naive_is_magic(&g), "{sol}");
        }
    }
}

#[test]
fn star_construction_is_not_sum_minimal() {
    let (t, witness) = minimal_magic_coefficient(&GraphStructure::star(2), 5, &Label::decimal_unit(1))
        .unwrap()
        .unwrap();
    assert_eq!(t, 8);
    assert!(t < 9);
    assert_eq!(witness.vertices[&VertexId(0)], 1);
}

#[test]
fn even_cycle_four_on_small_grid() {
    // Recorded, not predicted: the brute force oracle decides.
    let s = GraphStructure::cycle(4);
    let naive = naive_grid_solutions(&s, 8, 100);
    let min_naive = naive
        .iter()
        .map(|v| v[0] + v[4] + v[1])
        .min();
    let found = minimal_magic_coefficient(&s, 8, &Label::decimal_unit(2)).unwrap();
    assert_eq!(found.as_ref().map(|(t, _)| *t), min_naive);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_structures_agree_with_brute_force(
        order in 2usize..=5,
        mask in 1u32..1024,
        extra in 0u64..=1,
        parallel in any::<bool>(),
    ) {
        let pairs: Vec<(u64, u64)> = (1..=order as u64)
            .flat_map(|a| ((a + 1)..=order as u64).map(move |b| (a, b)))
            .collect();
        let chosen: Vec<(u64, u64)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, p)| *p)
            .take(7 - order)
            .collect();
        prop_assume!(!chosen.is_empty());
        let s = GraphStructure::new(
            (1..=order as u64).map(VertexId),
            chosen.iter().map(|&(a, b)| (VertexId(a), VertexId(b))),
        ).unwrap();
        let k = (s.order() + s.size()) as u64 + extra;
        let unit = fuzzy_magic::minimal_unit(3 * k);
        let mut spec = SearchSpec::new(k, unit.clone()).with_limit(None);
        spec.parallel = parallel;
        let got: BTreeSet<Vec<u64>> = enumerate_magic(&s, &spec)
            .unwrap()
            .solutions
            .iter()
            .map(|a| a.vector())
            .collect();
        prop_assert_eq!(got, naive_grid_solutions(&s, k, 10u64.pow(unit_digits(&unit))));
    }
}
