//! Labelled multigraphs, canonical forms, automorphisms and orientation classes.
//!
//! Edge labels are positional: edge `i` of `edges` carries label `i + 1`.
//! Vertices are 0-based internally; the text format is 1-based.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("edge {edge} uses vertex {vertex}, but the graph has {count} vertices")]
    VertexOutOfRange { edge: usize, vertex: usize, count: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {vertex} has valence {valence} < 3")]
    LowValence { vertex: usize, valence: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    directed: bool,
}

impl LabelledGraph {
    /// Builds a graph after checking connectivity and valence >= 3.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>, directed: bool) -> Result<Self, GraphError> {
        let g = Self::raw(vertex_count, edges, directed)?;
        g.validate()?;
        Ok(g)
    }

    /// Builds a graph checking only index ranges. Used for fragments that are
    /// not members of the complex (e.g. half-edge bookkeeping on small pieces).
    pub fn raw(vertex_count: usize, edges: Vec<(usize, usize)>, directed: bool) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { edge: i + 1, vertex: w, count: vertex_count });
                }
            }
        }
        Ok(Self { vertex_count, edges, directed })
    }

    pub(crate) fn from_parts(vertex_count: usize, edges: Vec<(usize, usize)>, directed: bool) -> Self {
        Self { vertex_count, edges, directed }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let val = self.valences();
        for (v, &d) in val.iter().enumerate() {
            if d < 3 {
                return Err(GraphError::LowValence { vertex: v, valence: d });
            }
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Loops count twice.
    pub fn valences(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = n;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps == 1
    }

    pub fn grading(&self) -> GradedDegrees {
        GradedDegrees::of_counts(self.vertex_count, self.edges.len())
    }

    /// Same graph with edge list permuted: new edge `j` is old edge `perm[j]`.
    pub fn permute_edges(&self, perm: &[usize]) -> Self {
        let edges = perm.iter().map(|&i| self.edges[i]).collect();
        Self { vertex_count: self.vertex_count, edges, directed: self.directed }
    }

    /// Same graph with vertices renamed: vertex `v` becomes `map[v]`.
    pub fn relabel_vertices(&self, map: &[usize]) -> Self {
        let edges = self.edges.iter().map(|&(u, v)| (map[u], map[v])).collect();
        Self { vertex_count: self.vertex_count, edges, directed: self.directed }
    }

    /// Directed copy; bit `i` of `alpha` reverses edge `i`.
    pub fn with_directions(&self, alpha: u64) -> Self {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| if alpha >> i & 1 == 1 { (v, u) } else { (u, v) })
            .collect();
        Self { vertex_count: self.vertex_count, edges, directed: true }
    }

    pub fn forget_directions(&self) -> Self {
        Self { vertex_count: self.vertex_count, edges: self.edges.clone(), directed: false }
    }

    /// Wheel with `spokes` spokes: hub is vertex 0, rim vertices 1..=spokes.
    /// Spokes are labelled first, then rim edges.
    pub fn wheel(spokes: usize) -> Self {
        let mut edges: Vec<(usize, usize)> = (1..=spokes).map(|i| (0, i)).collect();
        edges.extend((1..=spokes).map(|i| (i, i % spokes + 1)));
        Self { vertex_count: spokes + 1, edges, directed: false }
    }

    pub fn complete(k: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                edges.push((u, v));
            }
        }
        Self { vertex_count: k, edges, directed: false }
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Self { vertex_count: a + b, edges, directed: false }
    }

    pub fn theta() -> Self {
        Self { vertex_count: 2, edges: vec![(0, 1); 3], directed: false }
    }

    /// The sorted edge key used for canonical comparison.
    fn edge_key(&self, u: usize, v: usize) -> (usize, usize) {
        if self.directed || u <= v {
            (u, v)
        } else {
            (v, u)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedDegrees {
    pub n: i64,
    pub m: i64,
}

impl GradedDegrees {
    pub fn of_counts(vertices: usize, edges: usize) -> Self {
        let (v, e) = (vertices as i64, edges as i64);
        Self { n: e - v, m: 2 * e - 3 * v }
    }

    pub fn vertices(&self) -> i64 {
        2 * self.n - self.m
    }

    pub fn edges(&self) -> i64 {
        3 * self.n - self.m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedClass {
    pub canonical: LabelledGraph,
    pub sign: i8,
}

/// Full output of the canonical labelling search.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub graph: LabelledGraph,
    /// `labeling[v]` is the canonical index of input vertex `v`.
    pub labeling: Vec<usize>,
    /// `edge_position[i]` is the canonical position of input edge `i`.
    pub edge_position: Vec<usize>,
    /// Parity of `edge_position` (+1/-1), 0 if the class vanishes.
    pub sign: i8,
    /// Vertex automorphisms of the canonical graph.
    pub vertex_automorphisms: Vec<Vec<usize>>,
}

impl Canonical {
    pub fn class(&self) -> OrientedClass {
        OrientedClass { canonical: self.graph.clone(), sign: self.sign }
    }
}

pub fn canonicalize(g: &LabelledGraph) -> Result<OrientedClass, GraphError> {
    g.validate()?;
    Ok(canonical_form(g).class())
}

/// |Aut g| counting vertex permutations, permutations of parallel edges and,
/// for undirected graphs, the flip of each loop.
pub fn automorphism_order(g: &LabelledGraph) -> Result<u64, GraphError> {
    g.validate()?;
    Ok(aut_order_unchecked(g))
}

pub(crate) fn aut_order_unchecked(g: &LabelledGraph) -> u64 {
    let c = canonical_form(g);
    let mut order = c.vertex_automorphisms.len() as u64;
    for mult in edge_multiplicities(&c.graph).values() {
        order *= factorial(*mult as u64);
    }
    if !g.directed {
        let loops = g.edges.iter().filter(|(u, v)| u == v).count() as u32;
        order *= 1 << loops;
    }
    order
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn edge_multiplicities(g: &LabelledGraph) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for &(u, v) in &g.edges {
        *m.entry(g.edge_key(u, v)).or_insert(0) += 1;
    }
    m
}

/// Parity of a permutation given as an image vector.
pub fn permutation_sign(p: &[usize]) -> i8 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1i8;
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Canonical labelling by individualization-refinement.
///
/// Vertex colours come from iterated refinement by neighbour colours (in and
/// out separately for digraphs); the canonical graph is the lexicographically
/// least sorted edge list over all discrete colourings reached by the search.
/// Since the search tree is isomorphism invariant this is a canonical form.
pub fn canonical_form(g: &LabelledGraph) -> Canonical {
    let n = g.vertex_count;
    let adj = Adjacency::new(g);
    let mut colours = vec![0usize; n];
    adj.refine(&mut colours);

    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut leaves: Vec<Vec<usize>> = Vec::new();
    search(g, &adj, colours, &mut best, &mut leaves);
    let best = best.expect("search visits at least one leaf");

    let lab0 = leaves[0].clone();
    let (edge_position, duplicate) = edge_positions(g, &lab0);
    let canon = LabelledGraph { vertex_count: n, edges: best, directed: g.directed };

    let mut inv0 = vec![0; n];
    for (v, &c) in lab0.iter().enumerate() {
        inv0[c] = v;
    }
    let automorphisms: Vec<Vec<usize>> =
        leaves.iter().map(|lab| (0..n).map(|c| lab[inv0[c]]).collect()).collect();

    let mut sign = permutation_sign(&edge_position);
    if duplicate {
        sign = 0;
    } else {
        for phi in &automorphisms {
            if automorphism_edge_sign(&canon, phi) < 0 {
                sign = 0;
                break;
            }
        }
    }
    Canonical { graph: canon, labeling: lab0, edge_position, sign, vertex_automorphisms: automorphisms }
}

/// Sign of the edge permutation induced by a vertex automorphism of a graph
/// without parallel edges.
fn automorphism_edge_sign(g: &LabelledGraph, phi: &[usize]) -> i8 {
    let (pos, _) = edge_positions(g, phi);
    // `edge_positions` sorts the images; for the canonical graph the sorted
    // image list is the edge list itself, so `pos` is the induced permutation.
    permutation_sign(&pos)
}

fn edge_positions(g: &LabelledGraph, lab: &[usize]) -> (Vec<usize>, bool) {
    let mut img: Vec<((usize, usize), usize)> = g
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| (g.edge_key(lab[u], lab[v]), i))
        .collect();
    img.sort();
    let duplicate = img.windows(2).any(|w| w[0].0 == w[1].0);
    let mut pos = vec![0; img.len()];
    for (j, &(_, i)) in img.iter().enumerate() {
        pos[i] = j;
    }
    (pos, duplicate)
}

fn relabelled_edges(g: &LabelledGraph, lab: &[usize]) -> Vec<(usize, usize)> {
    let mut e: Vec<(usize, usize)> = g.edges.iter().map(|&(u, v)| g.edge_key(lab[u], lab[v])).collect();
    e.sort();
    e
}

fn search(
    g: &LabelledGraph,
    adj: &Adjacency,
    colours: Vec<usize>,
    best: &mut Option<Vec<(usize, usize)>>,
    leaves: &mut Vec<Vec<usize>>,
) {
    let n = colours.len();
    let mut count = vec![0usize; n];
    for &c in &colours {
        count[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| count[c] > 1) else {
        let e = relabelled_edges(g, &colours);
        match best.as_ref().map(|b| e.cmp(b)) {
            None | Some(std::cmp::Ordering::Less) => {
                *best = Some(e);
                leaves.clear();
                leaves.push(colours);
            }
            Some(std::cmp::Ordering::Equal) => leaves.push(colours),
            Some(std::cmp::Ordering::Greater) => {}
        }
        return;
    };
    for w in 0..n {
        if colours[w] != target {
            continue;
        }
        let mut c2: Vec<usize> = colours
            .iter()
            .enumerate()
            .map(|(v, &c)| if c > target || (c == target && v != w) { c + 1 } else { c })
            .collect();
        adj.refine(&mut c2);
        search(g, adj, c2, best, leaves);
    }
}

struct Adjacency {
    /// (neighbour, kind) with kind 0 = undirected/out, 1 = in, 2 = loop.
    nbrs: Vec<Vec<(usize, u8)>>,
}

impl Adjacency {
    fn new(g: &LabelledGraph) -> Self {
        let mut nbrs = vec![Vec::new(); g.vertex_count];
        for &(u, v) in &g.edges {
            if u == v {
                nbrs[u].push((u, 2));
            } else if g.directed {
                nbrs[u].push((v, 0));
                nbrs[v].push((u, 1));
            } else {
                nbrs[u].push((v, 0));
                nbrs[v].push((u, 0));
            }
        }
        Self { nbrs }
    }

    /// Equitable refinement; new colours are ranks of (old colour,
    /// neighbour signature), so the old order is preserved.
    fn refine(&self, colours: &mut [usize]) {
        let n = colours.len();
        let mut classes = distinct(colours);
        loop {
            let sigs: Vec<(usize, Vec<(usize, u8)>)> = (0..n)
                .map(|v| {
                    let mut s: Vec<(usize, u8)> = self.nbrs[v].iter().map(|&(w, k)| (colours[w], k)).collect();
                    s.sort_unstable();
                    (colours[v], s)
                })
                .collect();
            let mut sorted: Vec<&(usize, Vec<(usize, u8)>)> = sigs.iter().collect();
            sorted.sort();
            sorted.dedup();
            for v in 0..n {
                colours[v] = sorted.binary_search(&&sigs[v]).unwrap();
            }
            let now = sorted.len();
            if now == classes {
                break;
            }
            classes = now;
        }
    }
}

fn distinct(c: &[usize]) -> usize {
    let mut s = c.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

/// Automorphisms as actions on edges: `perm[i]` is the image of edge `i`
/// and `flip[i]` tells whether its stored direction is reversed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeAction {
    pub perm: Vec<usize>,
    pub flip: Vec<bool>,
}

/// All automorphisms of an undirected graph acting on its own edge list,
/// including permutations of parallel edges and loop flips.
pub fn edge_automorphisms(g: &LabelledGraph) -> Vec<EdgeAction> {
    let c = canonical_form(g);
    let n = g.vertex_count;
    let mut inv = vec![0; n];
    for (v, &l) in c.labeling.iter().enumerate() {
        inv[l] = v;
    }
    // by_key: edge key -> list of edge indices of g
    let mut by_key: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        by_key.entry(g.edge_key(u, v)).or_default().push(i);
    }
    let mut out = Vec::new();
    for psi in &c.vertex_automorphisms {
        // conjugate to an automorphism of g
        let phi: Vec<usize> = (0..n).map(|v| inv[psi[c.labeling[v]]]).collect();
        // for every parallel class choose a bijection onto its image class
        let classes: Vec<(&Vec<usize>, &Vec<usize>)> = by_key
            .iter()
            .map(|(&(u, v), src)| (src, &by_key[&g.edge_key(phi[u], phi[v])]))
            .collect();
        let mut acc = vec![(vec![usize::MAX; g.edges.len()], vec![false; g.edges.len()])];
        for (src, dst) in classes {
            let mut next = Vec::new();
            for perm in permutations(dst.len()) {
                for (p, f) in &acc {
                    let mut p = p.clone();
                    let mut f = f.clone();
                    for (k, &i) in src.iter().enumerate() {
                        let j = dst[perm[k]];
                        p[i] = j;
                        let (u, _) = g.edges[i];
                        let (u2, _) = g.edges[j];
                        f[i] = phi[u] != u2;
                    }
                    next.push((p, f));
                }
            }
            acc = next;
        }
        for (p, f) in acc {
            let loops: Vec<usize> = (0..g.edges.len()).filter(|&i| g.edges[i].0 == g.edges[i].1).collect();
            for mask in 0..(1u64 << loops.len()) {
                let mut f = f.clone();
                for (b, &i) in loops.iter().enumerate() {
                    f[i] = mask >> b & 1 == 1;
                }
                out.push(EdgeAction { perm: p.clone(), flip: f });
            }
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
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
    rec(0, &mut cur, &mut out);
    out
}

impl EdgeAction {
    pub fn apply(&self, alpha: u64) -> u64 {
        let mut out = 0u64;
        for i in 0..self.perm.len() {
            let bit = (alpha >> i & 1 == 1) ^ self.flip[i];
            if bit {
                out |= 1 << self.perm[i];
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionOrbit {
    /// Least bitmask in the orbit; bit `i` reverses edge `i`.
    pub representative: u64,
    pub size: u64,
}

/// Orbits of Aut(g) on the 2^|E| direction assignments, ordered by representative.
pub fn direction_orbits(g: &LabelledGraph) -> Result<Vec<DirectionOrbit>, GraphError> {
    g.validate()?;
    let g = g.forget_directions();
    Ok(direction_orbits_unchecked(&g))
}

pub(crate) fn direction_orbits_unchecked(g: &LabelledGraph) -> Vec<DirectionOrbit> {
    let e = g.edges.len();
    assert!(e < 40, "too many edges for direction enumeration");
    let group = edge_automorphisms(g);
    let total = 1u64 << e;
    let mut seen = vec![false; total as usize];
    let mut out = Vec::new();
    for alpha in 0..total {
        if seen[alpha as usize] {
            continue;
        }
        let mut size = 0;
        for a in &group {
            let b = a.apply(alpha);
            if !seen[b as usize] {
                seen[b as usize] = true;
                size += 1;
            }
        }
        out.push(DirectionOrbit { representative: alpha, size });
    }
    out
}

impl fmt::Display for LabelledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::formats::write_graph("g", self).trim_end())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_vanishes() {
        assert_eq!(canonicalize(&LabelledGraph::theta()).unwrap().sign, 0);
        assert_eq!(automorphism_order(&LabelledGraph::theta()).unwrap(), 12);
    }

    #[test]
    fn wheel_survives() {
        let x = LabelledGraph::wheel(5);
        assert_ne!(canonicalize(&x).unwrap().sign, 0);
        assert_eq!(automorphism_order(&x).unwrap(), 10);
    }

    #[test]
    fn k4_order() {
        assert_eq!(automorphism_order(&LabelledGraph::complete(4)).unwrap(), 24);
    }

    #[test]
    fn transposition_flips_sign() {
        let x = LabelledGraph::wheel(5);
        let mut p: Vec<usize> = (0..10).collect();
        p.swap(2, 7);
        let a = canonicalize(&x).unwrap();
        let b = canonicalize(&x.permute_edges(&p)).unwrap();
        assert_eq!(a.canonical, b.canonical);
        assert_eq!(a.sign, -b.sign);
    }

    #[test]
    fn rejects_bad_graphs() {
        let path = LabelledGraph::raw(2, vec![(0, 1)], false).unwrap();
        assert!(matches!(canonicalize(&path), Err(GraphError::LowValence { .. })));
        let two = LabelledGraph::raw(4, vec![(0, 1); 3].into_iter().chain(vec![(2, 3); 3]).collect(), false).unwrap();
        assert_eq!(canonicalize(&two), Err(GraphError::Disconnected));
    }

    #[test]
    fn wheel_orbits() {
        let orbits = direction_orbits(&LabelledGraph::wheel(5)).unwrap();
        assert_eq!(orbits.iter().map(|o| o.size).sum::<u64>(), 1024);
    }

    #[test]
    fn loop_flip_counts() {
        // a vertex with two loops (figure eight)
        let g = LabelledGraph::new(1, vec![(0, 0), (0, 0)], false).unwrap();
        assert_eq!(automorphism_order(&g).unwrap(), 8);
        let orbits = direction_orbits(&g).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].size, 4);
    }
}
