#![allow(dead_code)]

use std::collections::BTreeSet;

use kgc::complex::all_graphs;
use kgc::graphs::LabelledGraph;
use proptest::prelude::*;

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for j in i..cur.len() {
            cur.swap(i, j);
            rec(i + 1, cur, out);
            cur.swap(i, j);
        }
    }
    let mut out = Vec::new();
    rec(0, &mut (0..k).collect(), &mut out);
    out
}

fn norm(g: &LabelledGraph, u: usize, v: usize) -> (usize, usize) {
    if g.is_directed() || u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

fn sorted_edges(g: &LabelledGraph, map: &[usize]) -> Vec<(usize, usize)> {
    let mut e: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| norm(g, map[u], map[v])).collect();
    e.sort_unstable();
    e
}

/// Isomorphism invariant by trying every vertex permutation.
pub fn brute_key(g: &LabelledGraph) -> Vec<(usize, usize)> {
    permutations(g.vertex_count()).iter().map(|p| sorted_edges(g, p)).min().expect("nonempty")
}

/// Vertex permutations preserving the edge multiset.
pub fn brute_vertex_auts(g: &LabelledGraph) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..g.vertex_count()).collect();
    let base = sorted_edges(g, &id);
    permutations(g.vertex_count()).into_iter().filter(|p| sorted_edges(g, p) == base).collect()
}

/// The class is zero iff some automorphism permutes the edges oddly. A pair
/// of parallel edges gives a transposition; otherwise each vertex
/// automorphism induces a unique edge permutation.
pub fn brute_vanishes(g: &LabelledGraph) -> bool {
    let id: Vec<usize> = (0..g.vertex_count()).collect();
    let base = sorted_edges(g, &id);
    if base.windows(2).any(|w| w[0] == w[1]) {
        return true;
    }
    let keys: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| norm(g, u, v)).collect();
    brute_vertex_auts(g).iter().any(|p| {
        let img: Vec<usize> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let k = norm(g, p[u], p[v]);
                keys.iter().position(|&x| x == k).expect("automorphism")
            })
            .collect();
        inversions(&img) % 2 == 1
    })
}

pub fn inversions(p: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                n += 1;
            }
        }
    }
    n
}

fn connected(k: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(u, v) in edges {
            for (a, b) in [(u, v), (v, u)] {
                if a == x && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Isomorphism classes of connected multigraphs (loops allowed) with every
/// valence >= 3, found by enumerating edge multisets directly.
pub fn multigraph_oracle(vertices: usize, edges: usize) -> BTreeSet<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for u in 0..vertices {
        for v in u..vertices {
            pairs.push((u, v));
        }
    }
    let mut out = BTreeSet::new();
    fn rec(
        pairs: &[(usize, usize)],
        start: usize,
        left: usize,
        cur: &mut Vec<(usize, usize)>,
        k: usize,
        out: &mut BTreeSet<Vec<(usize, usize)>>,
    ) {
        if left == 0 {
            let mut val = vec![0; k];
            for &(u, v) in cur.iter() {
                val[u] += 1;
                val[v] += 1;
            }
            if val.iter().all(|&d| d >= 3) && connected(k, cur) {
                let g = LabelledGraph::raw(k, cur.clone(), false).unwrap();
                out.insert(brute_key(&g));
            }
            return;
        }
        for i in start..pairs.len() {
            cur.push(pairs[i]);
            rec(pairs, i, left - 1, cur, k, out);
            cur.pop();
        }
    }
    rec(&pairs, 0, edges, &mut Vec::new(), vertices, &mut out);
    out
}

/// (V, E) levels small enough for brute-force oracles.
pub const LEVELS: &[(usize, usize)] = &[(1, 2), (2, 3), (2, 4), (3, 5), (4, 6), (3, 6), (4, 7), (5, 8), (6, 9)];

/// An undirected member of the complex, relabelled at random.
pub fn arb_graph() -> impl Strategy<Value = LabelledGraph> {
    (0..LEVELS.len(), any::<prop::sample::Index>()).prop_flat_map(|(lvl, idx)| {
        let (v, e) = LEVELS[lvl];
        let gs = all_graphs(v, e);
        let g = gs[idx.index(gs.len())].clone();
        (Just(g), shuffle(v), shuffle(e)).prop_map(|(g, vp, ep)| g.relabel_vertices(&vp).permute_edges(&ep))
    })
}

pub fn shuffle(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}
