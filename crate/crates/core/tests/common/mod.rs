//! Strategies and properties shared by the property suite and the acceptance target.
#![allow(dead_code)]

use itertools::Itertools;
use p5color::io::{encode, parse, Format};
use p5color::recognize::is_blow_up_of;
use p5color::{Graph, GraphClass};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const CASES: u32 = 500;

/// Uniform labelled graph on `lo..=hi` vertices with edge density drawn per graph.
pub fn graph_in(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, 0u32..=100, any::<u64>())
        .prop_map(|(n, density, seed)| random_graph(n, density, seed))
}

pub fn graph() -> impl Strategy<Value = Graph> {
    graph_in(0, 14)
}

/// Deterministic G(n, density%) from a seed, so failures print a compact reproducer.
pub fn random_graph(n: usize, density: u32, seed: u64) -> Graph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|_| rng.gen_range(0..100) < density)
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complement_involution(g: &Graph) -> Result<(), TestCaseError> {
    let c = g.complement();
    prop_assert_eq!(&c.complement(), g);
    prop_assert_eq!(
        c.edge_count() + g.edge_count(),
        g.n() * g.n().saturating_sub(1) / 2
    );
    for (u, v) in (0..g.n()).tuple_combinations() {
        prop_assert_ne!(g.adj(u, v), c.adj(u, v));
    }
    Ok(())
}

pub fn de_morgan(g: &Graph, h: &Graph) -> Result<(), TestCaseError> {
    let union = g.disjoint_union(h).unwrap();
    let join = g.join(h).unwrap();
    prop_assert_eq!(
        union.complement(),
        g.complement().join(&h.complement()).unwrap()
    );
    prop_assert_eq!(
        join.complement(),
        g.complement().disjoint_union(&h.complement()).unwrap()
    );
    prop_assert_eq!(
        join.edge_count(),
        g.edge_count() + h.edge_count() + g.n() * h.n()
    );
    Ok(())
}

/// Unit bags give back the pattern; every bag is independent and two bags are complete or
/// anticomplete according to the pattern edge.
pub fn blow_up_laws(pattern: &Graph, sizes: &[usize]) -> Result<(), TestCaseError> {
    let (unit, _) = Graph::blow_up(pattern, &vec![1; pattern.n()]).unwrap();
    prop_assert_eq!(&unit, pattern);
    let (g, bag_of) = Graph::blow_up(pattern, sizes).unwrap();
    prop_assert_eq!(g.n(), sizes.iter().sum::<usize>());
    for (u, v) in (0..g.n()).tuple_combinations() {
        let expected = bag_of[u] != bag_of[v] && pattern.adj(bag_of[u], bag_of[v]);
        prop_assert_eq!(g.adj(u, v), expected, "pair ({}, {})", u, v);
    }
    if sizes.iter().all(|&s| s > 0) {
        prop_assert!(is_blow_up_of(&g, pattern, false).unwrap());
    }
    prop_assert!(is_blow_up_of(&g, pattern, true).unwrap());
    Ok(())
}

pub fn blow_up_case() -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph_in(1, 7).prop_flat_map(|p| {
        let n = p.n();
        (Just(p), prop::collection::vec(0usize..=3, n))
    })
}

pub fn round_trips(g: &Graph) -> Result<(), TestCaseError> {
    for format in [Format::Graph6, Format::Json, Format::Dimacs] {
        let text = encode(g, format);
        let back =
            parse(&text, format).map_err(|e| TestCaseError::fail(format!("{format:?}: {e}")))?;
        prop_assert_eq!(&back, g, "{:?}", format);
        prop_assert_eq!(encode(&back, format), text);
    }
    Ok(())
}

/// Class membership survives deleting any vertex.
pub fn hereditary(g: &Graph) -> Result<(), TestCaseError> {
    for class in [
        GraphClass::P5K1uK3Free,
        GraphClass::P5K1JoinK1uK3Free,
        GraphClass::P5K3Free,
        GraphClass::P5C5K1JoinK1uK3Free,
    ] {
        if !class.contains(g) {
            continue;
        }
        for v in 0..g.n() {
            let rest: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
            prop_assert!(
                class.contains(&g.induced_by_list(&rest)),
                "{:?} minus {}",
                class,
                v
            );
        }
    }
    Ok(())
}
