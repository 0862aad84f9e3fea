mod common;

use common::{arb_graph, brute_key, brute_vanishes, brute_vertex_auts, inversions, shuffle};
use kgc::complex::wheel_x;
use kgc::graphs::{
    automorphism_order, canonical_form, canonicalize, direction_orbits, permutation_sign, GraphError, LabelledGraph,
};
use proptest::prelude::*;

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// |Aut| from brute-force vertex automorphisms, parallel classes and loop flips.
fn brute_aut_order(g: &LabelledGraph) -> u64 {
    let mut counts = std::collections::BTreeMap::new();
    for &(u, v) in g.edges() {
        let k = if g.is_directed() || u <= v { (u, v) } else { (v, u) };
        *counts.entry(k).or_insert(0u64) += 1;
    }
    let mut order = brute_vertex_auts(g).len() as u64;
    for m in counts.values() {
        order *= factorial(*m);
    }
    if !g.is_directed() {
        order <<= g.edges().iter().filter(|(u, v)| u == v).count();
    }
    order
}

#[test]
fn known_automorphism_orders() {
    assert_eq!(automorphism_order(&LabelledGraph::complete(4)).unwrap(), 24);
    assert_eq!(automorphism_order(&LabelledGraph::wheel(5)).unwrap(), 10);
    assert_eq!(automorphism_order(&LabelledGraph::theta()).unwrap(), 12);
    assert_eq!(automorphism_order(&LabelledGraph::complete_bipartite(3, 3)).unwrap(), 72);
}

#[test]
fn known_signs() {
    assert_ne!(canonicalize(&LabelledGraph::complete(4)).unwrap().sign, 0);
    assert_ne!(canonicalize(&LabelledGraph::wheel(5)).unwrap().sign, 0);
    // even wheels have an odd reflection
    assert_eq!(canonicalize(&LabelledGraph::wheel(4)).unwrap().sign, 0);
    assert_eq!(canonicalize(&LabelledGraph::theta()).unwrap().sign, 0);
    assert_eq!(canonicalize(&LabelledGraph::complete_bipartite(3, 3)).unwrap().sign, 0);
    let x = canonicalize(&wheel_x()).unwrap();
    assert_eq!(x.canonical, canonicalize(&LabelledGraph::wheel(5)).unwrap().canonical);
}

#[test]
fn validation_errors() {
    let path = LabelledGraph::new(3, vec![(0, 1), (1, 2)], false);
    assert!(matches!(path, Err(GraphError::LowValence { .. })));
    let two = LabelledGraph::new(2, vec![(0, 0), (0, 0), (1, 1), (1, 1)], false);
    assert!(matches!(two, Err(GraphError::Disconnected)));
    assert!(LabelledGraph::new(2, vec![(0, 2)], false).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_form_is_invariant(
        (g, vp, ep) in arb_graph().prop_flat_map(|g| { let (v, e) = (g.vertex_count(), g.edge_count()); (Just(g), shuffle(v), shuffle(e)) }),
        alpha in any::<u64>(),
        directed in any::<bool>(),
    ) {
        let g = if directed { g.with_directions(alpha) } else { g };
        let h = g.relabel_vertices(&vp).permute_edges(&ep);
        let a = canonical_form(&g);
        let b = canonical_form(&h);
        prop_assert_eq!(&a.graph, &b.graph);
        prop_assert_eq!(a.sign, b.sign * permutation_sign(&ep));
        prop_assert_eq!(brute_key(&a.graph), brute_key(&g));
    }

    #[test]
    fn undirected_edge_reversal_is_invisible(g in arb_graph(), alpha in any::<u64>()) {
        let flipped = g.with_directions(alpha).forget_directions();
        prop_assert_eq!(canonicalize(&g).unwrap(), canonicalize(&flipped).unwrap());
    }

    #[test]
    fn vanishing_matches_brute_force(g in arb_graph(), alpha in any::<u64>(), directed in any::<bool>()) {
        let g = if directed { g.with_directions(alpha) } else { g };
        prop_assert_eq!(canonical_form(&g).sign == 0, brute_vanishes(&g));
    }

    #[test]
    fn aut_order_matches_brute_force(g in arb_graph(), alpha in any::<u64>(), directed in any::<bool>()) {
        let g = if directed { g.with_directions(alpha) } else { g };
        prop_assert_eq!(automorphism_order(&g).unwrap(), brute_aut_order(&g));
    }

    #[test]
    fn orbits_partition_directions(g in arb_graph()) {
        let aut = automorphism_order(&g).unwrap();
        let orbits = direction_orbits(&g).unwrap();
        prop_assert_eq!(orbits.iter().map(|o| o.size).sum::<u64>(), 1u64 << g.edge_count());
        for o in &orbits {
            prop_assert_eq!(aut % o.size, 0);
            let stab = automorphism_order(&g.with_directions(o.representative)).unwrap();
            prop_assert_eq!(o.size * stab, aut);
        }
    }

    #[test]
    fn permutation_sign_is_inversion_parity(p in (0usize..9).prop_flat_map(shuffle)) {
        let expect = if inversions(&p) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(permutation_sign(&p), expect);
    }
}

#[test]
fn parallel_edges_vanish() {
    for (v, e) in common::LEVELS {
        for g in kgc::complex::all_graphs(*v, *e) {
            let mut keys: Vec<(usize, usize)> = g.edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            keys.sort_unstable();
            if keys.windows(2).any(|w| w[0] == w[1]) {
                assert_eq!(canonical_form(&g).sign, 0, "{g:?}");
            }
        }
    }
}
