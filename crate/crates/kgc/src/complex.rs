//! The graph complex: chains, vertex splitting, the differential, the
//! direction-averaging map η, basis enumeration and cycle search.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::graphs::{
    aut_order_unchecked, canonical_form, direction_orbits_unchecked, GradedDegrees, GraphError, LabelledGraph,
    OrientedClass,
};
use crate::homology;

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("chain grading mismatch: {0:?} vs {1:?}")]
    GradingMismatch(GradedDegrees, GradedDegrees),
    #[error("chain directedness mismatch")]
    DirectedMismatch,
    #[error("expected an undirected chain")]
    ExpectedUndirected,
    #[error("seed is not a basis element of GC({n},{m})")]
    SeedNotInBasis { n: i64, m: i64 },
    #[error("seed class vanishes")]
    VanishingSeed,
}

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Sparse rational combination of canonical classes. Every key is a
/// canonical graph whose class carries sign +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVector {
    terms: BTreeMap<LabelledGraph, Q>,
    grading: GradedDegrees,
    directed: bool,
}

impl ChainVector {
    pub fn zero(grading: GradedDegrees, directed: bool) -> Self {
        Self { terms: BTreeMap::new(), grading, directed }
    }

    /// `coeff · g` for a valid labelled graph.
    pub fn from_graph(g: &LabelledGraph, coeff: Q) -> Result<Self, ComplexError> {
        g.validate()?;
        let mut c = Self::zero(g.grading(), g.is_directed());
        c.add_graph(g, coeff);
        Ok(c)
    }

    pub fn from_class(class: &OrientedClass, coeff: Q) -> Self {
        let mut c = Self::zero(class.canonical.grading(), class.canonical.is_directed());
        c.add_class(class, coeff);
        c
    }

    pub fn grading(&self) -> GradedDegrees {
        self.grading
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn terms(&self) -> &BTreeMap<LabelledGraph, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, canonical: &LabelledGraph) -> Q {
        self.terms.get(canonical).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_class(&mut self, class: &OrientedClass, coeff: Q) {
        if class.sign == 0 || coeff.is_zero() {
            return;
        }
        let c = if class.sign < 0 { -coeff } else { coeff };
        self.add_key(class.canonical.clone(), c);
    }

    /// Adds `coeff · g`, canonicalizing `g`. The graph is assumed valid.
    pub fn add_graph(&mut self, g: &LabelledGraph, coeff: Q) {
        debug_assert_eq!(g.is_directed(), self.directed);
        let c = canonical_form(g);
        self.add_class(&c.class(), coeff);
    }

    fn add_key(&mut self, key: LabelledGraph, coeff: Q) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &ChainVector) -> Result<(), ComplexError> {
        if other.is_empty() {
            return Ok(());
        }
        if self.is_empty() {
            self.grading = other.grading;
            self.directed = other.directed;
        }
        if self.directed != other.directed {
            return Err(ComplexError::DirectedMismatch);
        }
        if self.grading != other.grading {
            return Err(ComplexError::GradingMismatch(self.grading, other.grading));
        }
        for (k, v) in &other.terms {
            self.add_key(k.clone(), v.clone());
        }
        Ok(())
    }

    pub fn scaled(&self, s: &Q) -> Self {
        let mut out = Self::zero(self.grading, self.directed);
        if s.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * s)).collect();
        out
    }

    pub fn sub(&self, other: &ChainVector) -> Result<Self, ComplexError> {
        let mut out = self.clone();
        out.add_assign(&other.scaled(&-Q::one()))?;
        Ok(out)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn merge(mut a: Self, b: Self) -> Self {
        a.add_assign(&b).expect("pieces of one chain share grading");
        a
    }
}

/// Half-edge partitions at `v`: each entry is the set (bitmask over the
/// half-edge list) moved to the new vertex. The first half-edge always stays.
pub fn admissible_partitions(valence: usize) -> Vec<u64> {
    if valence < 4 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mask in 0..(1u64 << valence) {
        if mask & 1 == 1 {
            continue;
        }
        let b = mask.count_ones() as usize;
        if b >= 2 && valence - b >= 2 {
            out.push(mask);
        }
    }
    out
}

/// Half-edges at `v` as (edge index, endpoint slot 0/1), ordered by edge label.
pub fn half_edges_at(g: &LabelledGraph, v: usize) -> Vec<(usize, u8)> {
    let mut hs = Vec::new();
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        if a == v {
            hs.push((i, 0));
        }
        if b == v {
            hs.push((i, 1));
        }
    }
    hs
}

/// The graph obtained by splitting `v`: half-edges selected by `mask` move to
/// a new vertex with index |V|, joined to `v` by a new edge with label 1
/// (directed `v → new` unless `reverse`). Old labels shift up by one.
pub fn split_graph(g: &LabelledGraph, v: usize, mask: u64, reverse: bool) -> LabelledGraph {
    let w = g.vertex_count();
    let hs = half_edges_at(g, v);
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    for (k, &(i, slot)) in hs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            if slot == 0 {
                edges[i].0 = w;
            } else {
                edges[i].1 = w;
            }
        }
    }
    let new_edge = if reverse { (w, v) } else { (v, w) };
    let mut all = Vec::with_capacity(edges.len() + 1);
    all.push(new_edge);
    all.extend(edges);
    LabelledGraph::from_parts(w + 1, all, g.is_directed())
}

/// split(Γ, v): sum over admissible partitions; for directed graphs both
/// directions of the new edge appear (without the factor 1/2).
pub fn split_vertex(g: &LabelledGraph, v: usize) -> Result<ChainVector, ComplexError> {
    g.validate()?;
    if v >= g.vertex_count() {
        return Err(ComplexError::VertexOutOfRange(v));
    }
    Ok(split_vertex_unchecked(g, v))
}

fn split_vertex_unchecked(g: &LabelledGraph, v: usize) -> ChainVector {
    let gr = g.grading();
    let mut out = ChainVector::zero(GradedDegrees { n: gr.n, m: gr.m - 1 }, g.is_directed());
    let valence = half_edges_at(g, v).len();
    for mask in admissible_partitions(valence) {
        out.add_graph(&split_graph(g, v, mask, false), Q::one());
        if g.is_directed() {
            out.add_graph(&split_graph(g, v, mask, true), Q::one());
        }
    }
    out
}

/// ∂ on a single canonical generator.
pub fn differential_of_graph(g: &LabelledGraph) -> ChainVector {
    let gr = g.grading();
    let mut out = ChainVector::zero(GradedDegrees { n: gr.n, m: gr.m - 1 }, g.is_directed());
    for v in 0..g.vertex_count() {
        out.add_assign(&split_vertex_unchecked(g, v)).expect("same grading");
    }
    if g.is_directed() {
        out = out.scaled(&q(1, 2));
    }
    out
}

pub fn differential(c: &ChainVector) -> ChainVector {
    let target = GradedDegrees { n: c.grading.n, m: c.grading.m - 1 };
    let zero = ChainVector::zero(target, c.directed);
    let terms: Vec<(&LabelledGraph, &Q)> = c.terms.iter().collect();
    terms
        .par_iter()
        .map(|(g, coeff)| differential_of_graph(g).scaled(coeff))
        .reduce(|| zero.clone(), ChainVector::merge)
}

/// η on one canonical undirected generator, via the orbit decomposition
/// Σ_α (Γ,α) = Σ_orbits |orbit|·(Γ,α_rep).
pub fn eta_of_graph(g: &LabelledGraph) -> ChainVector {
    let mut out = ChainVector::zero(g.grading(), true);
    if canonical_form(g).sign == 0 {
        return out;
    }
    let total = Q::from_integer(BigInt::one() << g.edge_count());
    for orbit in direction_orbits_unchecked(g) {
        let d = g.with_directions(orbit.representative);
        out.add_graph(&d, Q::from_integer(BigInt::from(orbit.size)) / &total);
    }
    out
}

pub fn eta(c: &ChainVector) -> Result<ChainVector, ComplexError> {
    if c.directed {
        return Err(ComplexError::ExpectedUndirected);
    }
    let zero = ChainVector::zero(c.grading, true);
    let terms: Vec<(&LabelledGraph, &Q)> = c.terms.iter().collect();
    Ok(terms
        .par_iter()
        .map(|(g, coeff)| eta_of_graph(g).scaled(coeff))
        .reduce(|| zero.clone(), ChainVector::merge))
}

/// The forgetful map from the directed complex.
pub fn forget(c: &ChainVector) -> ChainVector {
    let mut out = ChainVector::zero(c.grading, false);
    for (g, coeff) in &c.terms {
        out.add_graph(&g.forget_directions(), coeff.clone());
    }
    out
}

/// All canonical undirected graphs (vanishing ones included) with the given
/// vertex and edge counts, connected, valence >= 3, sorted.
///
/// Contracting any non-loop edge of such a graph gives one with a vertex and
/// an edge fewer, so the graphs are exactly the splits of the level below,
/// starting from a bouquet of loops. Levels are cached for the process.
pub fn all_graphs(vertices: usize, edges: usize) -> Vec<LabelledGraph> {
    graphs_cached(vertices, edges).as_ref().clone()
}

type Level = Arc<Vec<LabelledGraph>>;

fn graphs_cached(vertices: usize, edges: usize) -> Level {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Level>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(l) = cache.lock().expect("cache lock").get(&(vertices, edges)) {
        return l.clone();
    }
    let level: Vec<LabelledGraph> = if vertices == 0 || edges < vertices || 2 * edges < 3 * vertices {
        Vec::new()
    } else if vertices == 1 {
        vec![canonical_form(&LabelledGraph::from_parts(1, vec![(0, 0); edges], false)).graph]
    } else {
        let below = graphs_cached(vertices - 1, edges - 1);
        let set: BTreeSet<LabelledGraph> = below
            .par_iter()
            .flat_map_iter(|g| {
                let mut out = Vec::new();
                for v in 0..g.vertex_count() {
                    for mask in admissible_partitions(half_edges_at(g, v).len()) {
                        out.push(canonical_form(&split_graph(g, v, mask, false)).graph);
                    }
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        set.into_iter().collect()
    };
    let level = Arc::new(level);
    cache.lock().expect("cache lock").insert((vertices, edges), level.clone());
    level
}

/// Nonvanishing canonical classes spanning GC^{(n,m)} (or its directed version).
pub fn basis(n: i64, m: i64, directed: bool) -> Vec<OrientedClass> {
    if n < 1 || m < 0 || m > 2 * n - 1 {
        return Vec::new();
    }
    let (v, e) = ((2 * n - m) as usize, (3 * n - m) as usize);
    let graphs = all_graphs(v, e);
    let mut out: Vec<OrientedClass> = if directed {
        let set: BTreeSet<LabelledGraph> = graphs
            .par_iter()
            .flat_map_iter(|g| {
                direction_orbits_unchecked(g)
                    .into_iter()
                    .map(|o| canonical_form(&g.with_directions(o.representative)))
                    .filter(|c| c.sign != 0)
                    .map(|c| c.graph)
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        set.into_iter().map(|g| OrientedClass { canonical: g, sign: 1 }).collect()
    } else {
        graphs
            .into_iter()
            .filter(|g| canonical_form(g).sign != 0)
            .map(|g| OrientedClass { canonical: g, sign: 1 })
            .collect()
    };
    out.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    out
}

/// Cycles through the seed: the first entry is the solution of
/// ∂(2/|Aut seed|·seed + Σ c_i Γ_i) = 0 (seed taken in its own orientation) with Γ_i ranging over the other basis
/// elements; further entries are kernel directions that meet its support.
/// Empty when ∂(seed) cannot be cancelled.
pub fn cycle_search(n: i64, m: i64, seed: &OrientedClass) -> Result<Vec<ChainVector>, ComplexError> {
    if seed.sign == 0 {
        return Err(ComplexError::VanishingSeed);
    }
    let directed = seed.canonical.is_directed();
    let b = basis(n, m, directed);
    let Some(seed_idx) = b.iter().position(|c| c.canonical == seed.canonical) else {
        return Err(ComplexError::SeedNotInBasis { n, m });
    };
    // columns: every other basis element in order, then the seed
    let mut order: Vec<usize> = (0..b.len()).filter(|&i| i != seed_idx).collect();
    order.push(seed_idx);
    let boundaries: Vec<ChainVector> =
        order.par_iter().map(|&i| differential_of_graph(&b[i].canonical)).collect();
    let rows: Vec<LabelledGraph> = boundaries
        .iter()
        .flat_map(|c| c.terms.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let row_index: BTreeMap<&LabelledGraph, usize> = rows.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut mat = vec![vec![Q::zero(); order.len()]; rows.len()];
    for (j, c) in boundaries.iter().enumerate() {
        for (g, coeff) in &c.terms {
            mat[row_index[g]][j] = coeff.clone();
        }
    }
    let kernel = homology::kernel_basis(&mat, order.len());
    let seed_col = order.len() - 1;
    let scale = q(2 * i64::from(seed.sign), aut_order_unchecked(&seed.canonical) as i64);
    let grading = GradedDegrees { n, m };
    let to_chain = |v: &Vec<Q>| {
        let mut c = ChainVector::zero(grading, directed);
        for (j, x) in v.iter().enumerate() {
            if !x.is_zero() {
                c.add_key(b[order[j]].canonical.clone(), x.clone());
            }
        }
        c
    };
    let Some(lead) = kernel.iter().find(|v| !v[seed_col].is_zero()) else {
        return Ok(Vec::new());
    };
    let lead = {
        let s = &scale / &lead[seed_col];
        lead.iter().map(|x| x * &s).collect::<Vec<_>>()
    };
    let support: BTreeSet<usize> = (0..order.len()).filter(|&j| !lead[j].is_zero()).collect();
    let mut out = vec![to_chain(&lead)];
    for v in &kernel {
        if !v[seed_col].is_zero() {
            continue;
        }
        if support.iter().any(|&j| !v[j].is_zero()) {
            out.push(to_chain(v));
        }
    }
    Ok(out)
}

/// The 5-spoke wheel labelled as in the worked directed example: hub 0, rim
/// 1..5, spokes e1..e5 from rim vertices 3, 4, 5, 1, 2, then the rim e6..e10.
pub fn wheel_x() -> LabelledGraph {
    LabelledGraph::new(
        6,
        vec![(3, 0), (4, 0), (5, 0), (1, 0), (2, 0), (5, 1), (1, 2), (2, 3), (3, 4), (4, 5)],
        false,
    )
    .expect("valid graph")
}

/// The cycle γ = X/5 − Y/2 with Y recovered by [`cycle_search`] seeded at
/// [`wheel_x`]. `x` is that labelled wheel; `y` is canonical.
#[derive(Clone, Debug)]
pub struct Gamma {
    pub x: LabelledGraph,
    pub y: LabelledGraph,
    pub chain: ChainVector,
}

pub fn derive_gamma() -> Result<Gamma, ComplexError> {
    let x = wheel_x();
    let seed = canonical_form(&x);
    let cycles = cycle_search(4, 2, &seed.class())?;
    let chain = cycles.into_iter().next().ok_or(ComplexError::SeedNotInBasis { n: 4, m: 2 })?;
    let y = chain
        .terms
        .keys()
        .find(|g| **g != seed.graph)
        .cloned()
        .ok_or(ComplexError::SeedNotInBasis { n: 4, m: 2 })?;
    Ok(Gamma { x, y, chain })
}

/// Largest absolute value of the numerators, for reporting.
pub fn max_abs_numerator(c: &ChainVector) -> BigInt {
    c.terms.values().map(|v| v.numer().abs()).max().unwrap_or_else(BigInt::zero)
}
