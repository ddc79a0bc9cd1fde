//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the verifier or the search under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

use fuzzy_magic::{Edge, FuzzyGraph, GraphStructure, Rational, VertexId};
use num_traits::One;

/// The fuzzy magic definition, clause by clause, with nested loops.
pub fn naive_is_magic(g: &FuzzyGraph) -> bool {
    let vertices: Vec<(VertexId, Rational)> =
        g.vertices().map(|(id, l)| (id, l.value().clone())).collect();
    let edges: Vec<(Edge, Rational)> = g.edges().map(|(e, l)| (e, l.value().clone())).collect();
    if edges.is_empty() {
        return false;
    }
    for i in 0..vertices.len() {
        for j in 0..vertices.len() {
            if i != j && vertices[i].1 == vertices[j].1 {
                return false;
            }
        }
    }
    for i in 0..edges.len() {
        for j in 0..edges.len() {
            if i != j && edges[i].1 == edges[j].1 {
                return false;
            }
        }
    }
    let alpha = |id: VertexId| -> Rational {
        vertices.iter().find(|(v, _)| *v == id).unwrap().1.clone()
    };
    let mut constant: Option<Rational> = None;
    for (e, beta) in &edges {
        let a = alpha(e.u());
        let b = alpha(e.v());
        if !(beta.clone() < a.clone() + b.clone()) {
            return false;
        }
        let sum = a + beta.clone() + b;
        match &constant {
            None => constant = Some(sum),
            Some(m) if *m != sum => return false,
            _ => {}
        }
    }
    constant.unwrap() <= Rational::one()
}

/// Every injective assignment of `1..=k` to vertices then edges satisfying
/// the grid conditions with `T * d <= 1`, found by trying all placements.
pub fn naive_grid_solutions(s: &GraphStructure, k: u64, max_t: u64) -> BTreeSet<Vec<u64>> {
    let vertices: Vec<VertexId> = s.vertices().collect();
    let edges: Vec<Edge> = s.edges().collect();
    let items = vertices.len() + edges.len();
    let mut out = BTreeSet::new();
    let mut current = Vec::with_capacity(items);
    let mut used = vec![false; k as usize + 1];
    placements(items, k, &mut current, &mut used, &mut |vector: &[u64]| {
        let value = |id: VertexId| vector[vertices.iter().position(|v| *v == id).unwrap()];
        let mut common = None;
        for (i, e) in edges.iter().enumerate() {
            let c_edge = vector[vertices.len() + i];
            let (cu, cv) = (value(e.u()), value(e.v()));
            if c_edge >= cu + cv {
                return;
            }
            let sum = cu + c_edge + cv;
            if *common.get_or_insert(sum) != sum {
                return;
            }
        }
        if common.map_or(false, |t| t <= max_t) && vector[..vertices.len()].iter().all(|&c| c <= max_t) {
            out.insert(vector.to_vec());
        }
    });
    out
}

fn placements(
    items: usize,
    k: u64,
    current: &mut Vec<u64>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[u64]),
) {
    if current.len() == items {
        visit(current);
        return;
    }
    for c in 1..=k {
        if !used[c as usize] {
            used[c as usize] = true;
            current.push(c);
            placements(items, k, current, used, visit);
            current.pop();
            used[c as usize] = false;
        }
    }
}

/// Every labelled graph on vertices `1..=order` whose edge count keeps
/// `order + size <= max_items`, with at least one edge.
pub fn small_structures(max_items: usize) -> Vec<GraphStructure> {
    let mut out = Vec::new();
    for order in 2..max_items {
        let pairs: Vec<(u64, u64)> = (1..=order as u64)
            .flat_map(|a| ((a + 1)..=order as u64).map(move |b| (a, b)))
            .collect();
        let max_size = max_items - order;
        if pairs.len() > 16 {
            // only sparse subsets are reachable; enumerate them by size
            subsets_up_to(&pairs, max_size, &mut |chosen| {
                out.push(structure(order, chosen));
            });
            continue;
        }
        for mask in 1u32..(1 << pairs.len()) {
            if mask.count_ones() as usize > max_size {
                continue;
            }
            let chosen: Vec<(u64, u64)> = (0..pairs.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| pairs[i])
                .collect();
            out.push(structure(order, &chosen));
        }
    }
    out
}

fn subsets_up_to(pairs: &[(u64, u64)], max: usize, visit: &mut dyn FnMut(&[(u64, u64)])) {
    fn go(
        pairs: &[(u64, u64)],
        start: usize,
        max: usize,
        chosen: &mut Vec<(u64, u64)>,
        visit: &mut dyn FnMut(&[(u64, u64)]),
    ) {
        if !chosen.is_empty() {
            visit(chosen);
        }
        if chosen.len() == max {
            return;
        }
        for i in start..pairs.len() {
            chosen.push(pairs[i]);
            go(pairs, i + 1, max, chosen, visit);
            chosen.pop();
        }
    }
    go(pairs, 0, max, &mut Vec::new(), visit);
}

fn structure(order: usize, edges: &[(u64, u64)]) -> GraphStructure {
    GraphStructure::new(
        (1..=order as u64).map(VertexId),
        edges.iter().map(|&(a, b)| (VertexId(a), VertexId(b))),
    )
    .unwrap()
}
