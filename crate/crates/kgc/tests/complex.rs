mod common;

use std::collections::BTreeSet;

use common::{arb_graph, brute_key, multigraph_oracle};
use kgc::complex::{
    all_graphs, basis, derive_gamma, differential, differential_of_graph, eta, forget, half_edges_at, q, split_graph,
    ChainVector,
};
use kgc::graphs::{canonicalize, GradedDegrees, LabelledGraph};
use kgc::signs::{split_data, split_sign, vertex_route_term_sign, vertex_word};
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn all_graphs_matches_multigraph_enumeration() {
    for (v, e) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (2, 5), (3, 5), (3, 6), (3, 7), (4, 6), (4, 7), (4, 8)] {
        let ours: BTreeSet<Vec<(usize, usize)>> = all_graphs(v, e).iter().map(brute_key).collect();
        assert_eq!(ours.len(), all_graphs(v, e).len(), "duplicate classes at ({v},{e})");
        assert_eq!(ours, multigraph_oracle(v, e), "classes differ at ({v},{e})");
    }
}

#[test]
fn too_few_edges_is_empty() {
    assert!(all_graphs(4, 5).is_empty());
    assert!(all_graphs(3, 2).is_empty());
    assert!(basis(1, 2, false).is_empty());
}

fn undirected_gradings() -> Vec<(i64, i64)> {
    (1..=4).flat_map(|n| (0..2 * n).map(move |m| (n, m))).collect()
}

#[test]
fn differential_squares_to_zero() {
    for (n, m) in undirected_gradings() {
        for c in basis(n, m, false) {
            let d = differential_of_graph(&c.canonical);
            assert_eq!(d.grading(), GradedDegrees { n, m: m - 1 });
            assert!(differential(&d).is_empty(), "d^2 != 0 on {:?}", c.canonical);
        }
    }
}

#[test]
fn directed_differential_squares_to_zero() {
    for (n, m) in [(2, 0), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (3, 4)] {
        for c in basis(n, m, true) {
            assert!(differential(&differential_of_graph(&c.canonical)).is_empty());
        }
    }
}

#[test]
fn eta_is_a_section_and_a_chain_map() {
    for (n, m) in undirected_gradings() {
        for c in basis(n, m, false) {
            let x = ChainVector::from_class(&c, q(1, 1));
            let e = eta(&x).unwrap();
            assert_eq!(forget(&e), x);
            assert_eq!(differential(&e), eta(&differential(&x)).unwrap());
        }
    }
}

#[test]
fn directed_differential_lifts_undirected() {
    for (n, m) in [(2, 1), (3, 3)] {
        for c in basis(n, m, true) {
            let x = ChainVector::from_class(&c, q(1, 1));
            assert_eq!(forget(&differential(&x)), differential(&forget(&x)));
        }
    }
}

#[test]
fn vertex_route_agrees_with_edge_first_orientation() {
    for (n, m) in [(2, 1), (2, 2), (3, 2), (3, 3)] {
        for c in basis(n, m, true) {
            let g = &c.canonical;
            for v in 0..g.vertex_count() {
                for (mask, reverse) in split_data(g, v) {
                    for k_odd in [false, true] {
                        assert_eq!(vertex_route_term_sign(g, v, mask, reverse, k_odd).unwrap(), 1);
                    }
                }
            }
        }
    }
}

#[test]
fn split_sign_swapping_blocks() {
    for c in basis(2, 1, true).iter().chain(basis(3, 3, true).iter()) {
        let g = &c.canonical;
        for v in 0..g.vertex_count() {
            let d = half_edges_at(g, v).len();
            let full = (1u64 << d) - 1;
            for (mask, from) in split_data(g, v) {
                let b1 = !mask & full;
                for k_odd in [false, true] {
                    let deg = |h: &kgc::signs::HalfEdge| h.degree(k_odd);
                    let split = split_graph(g, v, mask, !from);
                    let w1: i64 = vertex_word(&split, v).iter().map(deg).sum();
                    let w2: i64 = vertex_word(&split, g.vertex_count()).iter().map(deg).sum();
                    let swap = if w1 * w2 % 2 == 0 { 1 } else { -1 };
                    let a = split_sign(g, v, b1, from, k_odd).unwrap();
                    let b = split_sign(g, v, mask, !from, k_odd).unwrap();
                    assert_eq!(a * swap, b);
                }
            }
        }
    }
}

#[test]
fn gamma_is_a_cycle_with_the_expected_coefficients() {
    let g = derive_gamma().unwrap();
    assert!(differential(&g.chain).is_empty());
    assert_eq!(g.chain.len(), 2);
    let x = canonicalize(&g.x).unwrap();
    let y = canonicalize(&g.y).unwrap();
    assert_eq!(g.chain.coefficient(&x.canonical) * q(x.sign.into(), 1), q(1, 5));
    assert_eq!(g.chain.coefficient(&y.canonical) * q(y.sign.into(), 1), q(-1, 2));
    assert_eq!(x.canonical, canonicalize(&LabelledGraph::wheel(5)).unwrap().canonical);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn differential_terms_are_valid_and_graded(g in arb_graph()) {
        prop_assume!(canonicalize(&g).unwrap().sign != 0);
        let d = differential(&ChainVector::from_graph(&g, q(1, 1)).unwrap());
        let gr = g.grading();
        prop_assert_eq!(d.grading(), GradedDegrees { n: gr.n, m: gr.m - 1 });
        for (h, x) in d.terms() {
            prop_assert!(h.validate().is_ok());
            prop_assert!(!x.is_zero());
            prop_assert_eq!(h.vertex_count(), g.vertex_count() + 1);
            prop_assert_eq!(canonicalize(h).unwrap().sign, 1);
        }
    }

    #[test]
    fn chain_of_relabelled_graph(g in arb_graph(), alpha in any::<u64>()) {
        let c = canonicalize(&g).unwrap();
        let x = ChainVector::from_graph(&g, q(3, 1)).unwrap();
        let y = ChainVector::from_graph(&g.with_directions(alpha).forget_directions(), q(3, 1)).unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(x.coefficient(&c.canonical), q(3 * i64::from(c.sign), 1));
    }
}
