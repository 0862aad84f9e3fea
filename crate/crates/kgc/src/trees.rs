//! Leaf-labelled trees, their contraction poset, directed extensions, the
//! Lie-hedra as abstract simplicial complexes, and the decomposition poset of
//! a directed cycle.
//!
//! A tree with leaves 1..ℓ and internal vertices of valence >= 3 is stored by
//! its splits: each internal edge cuts the leaves into two parts and we keep
//! the part not containing leaf 1, as a bitmask (leaf i is bit i-1).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::complex::{admissible_partitions, half_edges_at, split_graph, ChainVector};
use crate::dimcalc::MultiplicityLedger;
use crate::graphs::{canonical_form, LabelledGraph};
use crate::homology::{rank, SparseRationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("need at least 3 leaves, got {0}")]
    TooFewLeaves(usize),
    #[error("at most 31 leaves are supported")]
    TooManyLeaves,
    #[error("p + q must equal the number of leaves")]
    BadSplit,
    #[error("incompatible or degenerate split {0:#b}")]
    BadEdge(u32),
    #[error("cycle coefficients must be integers")]
    NonIntegral,
    #[error("expected a directed chain")]
    NotDirected,
    #[error("parse error at byte {0}: {1}")]
    Parse(usize, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    leaves: usize,
    splits: Vec<u32>,
    /// For directed trees: p (leaves 1..p incoming) and, per split, whether
    /// the internal edge points into the split side.
    directions: Option<(usize, Vec<bool>)>,
}

fn full(leaves: usize) -> u32 {
    ((1u64 << leaves) - 1) as u32
}

fn is_split(leaves: usize, s: u32) -> bool {
    let k = s.count_ones() as usize;
    s & 1 == 0 && s & !full(leaves) == 0 && k >= 2 && leaves - k >= 2
}

fn compatible(a: u32, b: u32) -> bool {
    a & b == 0 || a & b == a || a & b == b
}

impl Tree {
    /// The tree T_ℓ with a single internal vertex.
    pub fn corolla(leaves: usize) -> Result<Self, TreeError> {
        Self::from_splits(leaves, Vec::new())
    }

    pub fn from_splits(leaves: usize, mut splits: Vec<u32>) -> Result<Self, TreeError> {
        if leaves < 3 {
            return Err(TreeError::TooFewLeaves(leaves));
        }
        if leaves > 31 {
            return Err(TreeError::TooManyLeaves);
        }
        splits.sort_unstable();
        splits.dedup();
        for (i, &s) in splits.iter().enumerate() {
            if !is_split(leaves, s) || splits[..i].iter().any(|&t| !compatible(s, t)) {
                return Err(TreeError::BadEdge(s));
            }
        }
        Ok(Self { leaves, splits, directions: None })
    }

    pub fn leaves(&self) -> usize {
        self.leaves
    }

    pub fn splits(&self) -> &[u32] {
        &self.splits
    }

    pub fn internal_edges(&self) -> usize {
        self.splits.len()
    }

    pub fn excess(&self) -> usize {
        self.leaves - 3 - self.splits.len()
    }

    pub fn directions(&self) -> Option<(usize, &[bool])> {
        self.directions.as_ref().map(|(p, d)| (*p, d.as_slice()))
    }

    /// Valences of the internal vertices, sorted decreasingly.
    pub fn internal_valences(&self) -> Vec<usize> {
        // each internal vertex is determined by the cluster just below it;
        // the root (next to leaf 1) has cluster = all leaves.
        let all = full(self.leaves);
        let mut clusters: Vec<u32> = self.splits.clone();
        clusters.push(all);
        let mut out: Vec<usize> = clusters
            .iter()
            .map(|&c| {
                // leaf 1 already counts as the root's parent edge
                self.children(c).len() + usize::from(c != all)
            })
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Maximal proper sub-clusters and singleton leaves directly below `c`
    /// (leaf 1 excluded at the root).
    fn children(&self, c: u32) -> Vec<u32> {
        let below: Vec<u32> = self.splits.iter().copied().filter(|&s| s != c && s & c == s).collect();
        let mut kids: Vec<u32> = below
            .iter()
            .copied()
            .filter(|&s| !below.iter().any(|&t| t != s && s & t == s))
            .collect();
        let covered = kids.iter().fold(0u32, |a, &b| a | b);
        for i in 0..self.leaves {
            let bit = 1u32 << i;
            if c & bit != 0 && covered & bit == 0 && bit != 1 {
                kids.push(bit);
            }
        }
        if c == full(self.leaves) {
            kids.push(1);
        }
        kids.sort_by_key(|k| k.trailing_zeros());
        kids
    }
}

/// All trees with ℓ labelled leaves and the given excess, sorted.
pub fn enumerate_trees(leaves: usize, excess: usize) -> Result<Vec<Tree>, TreeError> {
    if leaves < 3 {
        return Err(TreeError::TooFewLeaves(leaves));
    }
    if leaves > 31 {
        return Err(TreeError::TooManyLeaves);
    }
    if excess > leaves - 3 {
        return Ok(Vec::new());
    }
    let size = leaves - 3 - excess;
    let all = all_splits(leaves);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(all: &[u32], start: usize, size: usize, cur: &mut Vec<u32>, leaves: usize, out: &mut Vec<Tree>) {
        if cur.len() == size {
            out.push(Tree { leaves, splits: cur.clone(), directions: None });
            return;
        }
        for i in start..all.len() {
            if all.len() - i < size - cur.len() {
                break;
            }
            if cur.iter().all(|&t| compatible(all[i], t)) {
                cur.push(all[i]);
                rec(all, i + 1, size, cur, leaves, out);
                cur.pop();
            }
        }
    }
    rec(&all, 0, size, &mut cur, leaves, &mut out);
    out.sort();
    Ok(out)
}

/// Splits of the ℓ-leaf set, i.e. the one-internal-edge trees, sorted.
pub fn all_splits(leaves: usize) -> Vec<u32> {
    (0..=full(leaves)).filter(|&s| is_split(leaves, s)).collect()
}

/// Single-edge contractions: (contracted split, resulting tree).
pub fn contractions(t: &Tree) -> Vec<(u32, Tree)> {
    t.splits
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let mut splits = t.splits.clone();
            splits.remove(i);
            let directions = t.directions.as_ref().map(|(p, d)| {
                let mut d = d.clone();
                d.remove(i);
                (*p, d)
            });
            (s, Tree { leaves: t.leaves, splits, directions })
        })
        .collect()
}

/// All directions of the internal edges of `t`, leaves fixed by T_ℓ(p,q).
pub fn direction_extensions(t: &Tree, p: usize, q: usize) -> Result<Vec<Tree>, TreeError> {
    if p + q != t.leaves {
        return Err(TreeError::BadSplit);
    }
    let k = t.splits.len();
    Ok((0..1u64 << k)
        .map(|mask| {
            let d = (0..k).map(|i| mask >> i & 1 == 1).collect();
            Tree { leaves: t.leaves, splits: t.splits.clone(), directions: Some((p, d)) }
        })
        .collect())
}

impl fmt::Display for Tree {
    /// Newick-style: rooted at the vertex next to leaf 1; a directed internal
    /// edge is marked `>` (into the subtree) or `<` (out of it) after the
    /// subtree; directed trees are prefixed with `p=<p>:`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((p, _)) = &self.directions {
            write!(f, "p={p}:")?;
        }
        self.write_cluster(f, full(self.leaves))
    }
}

impl Tree {
    fn write_cluster(&self, f: &mut fmt::Formatter<'_>, c: u32) -> fmt::Result {
        if c.count_ones() == 1 {
            return write!(f, "{}", c.trailing_zeros() + 1);
        }
        write!(f, "(")?;
        for (i, k) in self.children(c).into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            self.write_cluster(f, k)?;
        }
        write!(f, ")")?;
        if let (Some((_, d)), Ok(i)) = (&self.directions, self.splits.binary_search(&c)) {
            write!(f, "{}", if d[i] { '>' } else { '<' })?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let text = text.trim();
        let (p, body) = match text.strip_prefix("p=") {
            Some(rest) => {
                let (p, body) = rest.split_once(':').ok_or_else(|| TreeError::Parse(0, "missing `:`".into()))?;
                (Some(p.parse::<usize>().map_err(|_| TreeError::Parse(2, "bad p".into()))?), body)
            }
            None => (None, text),
        };
        let bytes = body.as_bytes();
        let mut pos = 0;
        let mut splits: Vec<(u32, Option<bool>)> = Vec::new();
        let mut max_leaf = 0;
        let root = parse_node(bytes, &mut pos, &mut splits, &mut max_leaf, true)?;
        if pos != bytes.len() {
            return Err(TreeError::Parse(pos, "trailing input".into()));
        }
        let leaves = max_leaf;
        if root != full(leaves) {
            return Err(TreeError::Parse(0, "leaves must be exactly 1..l".into()));
        }
        let mut t = Tree::from_splits(leaves, splits.iter().map(|s| s.0).collect())?;
        if t.splits.len() != splits.len() {
            return Err(TreeError::Parse(0, "repeated cluster".into()));
        }
        if let Some(p) = p {
            let mut d = vec![false; t.splits.len()];
            for (s, dir) in &splits {
                let i = t.splits.binary_search(s).expect("split present");
                d[i] = dir.ok_or_else(|| TreeError::Parse(0, "directed tree needs arrows".into()))?;
            }
            if p > leaves {
                return Err(TreeError::BadSplit);
            }
            t.directions = Some((p, d));
        } else if splits.iter().any(|s| s.1.is_some()) {
            return Err(TreeError::Parse(0, "arrows need a `p=` prefix".into()));
        }
        Ok(t)
    }
}

fn parse_node(
    b: &[u8],
    pos: &mut usize,
    splits: &mut Vec<(u32, Option<bool>)>,
    max_leaf: &mut usize,
    root: bool,
) -> Result<u32, TreeError> {
    if *pos < b.len() && b[*pos] == b'(' {
        *pos += 1;
        let mut mask = 0u32;
        let mut kids = 0;
        loop {
            let m = parse_node(b, pos, splits, max_leaf, false)?;
            if mask & m != 0 {
                return Err(TreeError::Parse(*pos, "repeated leaf".into()));
            }
            mask |= m;
            kids += 1;
            match b.get(*pos) {
                Some(b',') => *pos += 1,
                Some(b')') => {
                    *pos += 1;
                    break;
                }
                _ => return Err(TreeError::Parse(*pos, "expected `,` or `)`".into())),
            }
        }
        if kids < 2 {
            return Err(TreeError::Parse(*pos, "internal vertex of valence < 3".into()));
        }
        let dir = match b.get(*pos) {
            Some(b'>') => {
                *pos += 1;
                Some(true)
            }
            Some(b'<') => {
                *pos += 1;
                Some(false)
            }
            _ => None,
        };
        if !root {
            splits.push((mask, dir));
        }
        Ok(mask)
    } else {
        let start = *pos;
        while *pos < b.len() && b[*pos].is_ascii_digit() {
            *pos += 1;
        }
        let n: usize = std::str::from_utf8(&b[start..*pos])
            .unwrap()
            .parse()
            .map_err(|_| TreeError::Parse(start, "expected a leaf label".into()))?;
        if n == 0 || n > 31 {
            return Err(TreeError::Parse(start, "leaf label out of range".into()));
        }
        *max_leaf = (*max_leaf).max(n);
        Ok(1 << (n - 1))
    }
}

/// Abstract simplicial complex given by its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertex_labels: Vec<String>,
    /// Maximal simplices, each a sorted vertex list.
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(vertex_labels: Vec<String>, facets: Vec<Vec<usize>>) -> Self {
        let mut facets: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        facets.sort();
        facets.dedup();
        let keep: Vec<Vec<usize>> = facets
            .iter()
            .filter(|f| !facets.iter().any(|g| g.len() > f.len() && f.iter().all(|x| g.contains(x))))
            .cloned()
            .collect();
        Self { vertex_labels, facets: keep }
    }

    /// The 1-complex of a simple graph.
    pub fn from_graph(g: &LabelledGraph) -> Self {
        let labels = (1..=g.vertex_count()).map(|v| v.to_string()).collect();
        let mut facets: Vec<Vec<usize>> = g.edges().iter().map(|&(u, v)| vec![u, v]).collect();
        facets.extend((0..g.vertex_count()).map(|v| vec![v]));
        Self::new(labels, facets)
    }

    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    /// All faces of dimension `d`, sorted.
    pub fn faces(&self, d: usize) -> Vec<Vec<usize>> {
        let mut set = BTreeSet::new();
        for f in &self.facets {
            if f.len() < d + 1 {
                continue;
            }
            subsets(f, d + 1, &mut set);
        }
        set.into_iter().collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let dim = self.dimension();
        (0..=dim.max(-1)).map(|d| self.faces(d as usize).len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) }).sum()
    }
}

fn subsets(f: &[usize], k: usize, out: &mut BTreeSet<Vec<usize>>) {
    fn rec(f: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if cur.len() == k {
            out.insert(cur.clone());
            return;
        }
        for i in start..f.len() {
            cur.push(f[i]);
            rec(f, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(f, k, 0, &mut Vec::new(), out);
}

/// L_{ℓ-1}: one simplex per tree T ≠ T_ℓ on its set of internal edges.
pub fn lie_hedron(leaves: usize) -> Result<SimplicialComplex, TreeError> {
    if leaves < 4 {
        return Err(TreeError::TooFewLeaves(leaves));
    }
    let splits = all_splits(leaves);
    let index: BTreeMap<u32, usize> = splits.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let labels = splits
        .iter()
        .map(|&s| Tree { leaves, splits: vec![s], directions: None }.to_string())
        .collect();
    let facets = enumerate_trees(leaves, 0)?
        .iter()
        .map(|t| t.splits.iter().map(|s| index[s]).collect())
        .collect();
    Ok(SimplicialComplex::new(labels, facets))
}

/// Betti numbers over Q, b_0 .. b_dim.
pub fn complex_homology(k: &SimplicialComplex) -> Vec<usize> {
    let dim = k.dimension();
    if dim < 0 {
        return Vec::new();
    }
    let dim = dim as usize;
    let faces: Vec<Vec<Vec<usize>>> = (0..=dim).map(|d| k.faces(d)).collect();
    // ranks[d] = rank of ∂_d : C_d → C_{d-1}
    let mut ranks = vec![0usize; dim + 2];
    for d in 1..=dim {
        let index: BTreeMap<&Vec<usize>, usize> = faces[d - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut m = SparseRationalMatrix::new(faces[d - 1].len(), faces[d].len());
        for (j, f) in faces[d].iter().enumerate() {
            for i in 0..f.len() {
                let mut face = f.clone();
                face.remove(i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(index[&face], j, crate::complex::q(sign, 1)).expect("in range");
            }
        }
        ranks[d] = rank(&m);
    }
    (0..=dim).map(|d| faces[d].len() - ranks[d] - ranks[d + 1]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetNode {
    pub graph: LabelledGraph,
    pub excess: i64,
    pub copies: u64,
    pub n_gamma: u64,
    pub m_gamma: BigInt,
    /// True when the directed class is zero in the complex.
    pub vanishing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionPoset {
    pub nodes: Vec<PosetNode>,
    /// (finer node, coarser node): the coarser is a one-edge contraction.
    pub contractions: Vec<(usize, usize)>,
    pub mu: BigInt,
}

/// The poset of directed graphs reachable from a directed integral cycle by
/// vertex expansions: top terms with |coefficient| copies, everything below
/// with one copy.
pub fn decomposition_poset(cycle: &ChainVector, ledger: &MultiplicityLedger) -> Result<DecompositionPoset, TreeError> {
    if !cycle.is_directed() {
        return Err(TreeError::NotDirected);
    }
    if !cycle.is_integral() {
        return Err(TreeError::NonIntegral);
    }
    let top = cycle.grading().m;
    let mut nodes: Vec<PosetNode> = Vec::new();
    let mut index: BTreeMap<LabelledGraph, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let add = |g: LabelledGraph, excess: i64, copies: u64, nodes: &mut Vec<PosetNode>, index: &mut BTreeMap<LabelledGraph, usize>| {
        if let Some(&i) = index.get(&g) {
            return (i, false);
        }
        let c = canonical_form(&g);
        let m_gamma = g
            .valences()
            .iter()
            .fold(BigInt::one(), |acc, &v| acc * ledger.evaluate(v).unwrap_or_else(|_| BigInt::one()));
        nodes.push(PosetNode {
            graph: g.clone(),
            excess,
            copies,
            n_gamma: 1 << excess.max(0),
            m_gamma,
            vanishing: c.sign == 0,
        });
        index.insert(g, nodes.len() - 1);
        (nodes.len() - 1, true)
    };
    for (g, coeff) in cycle.terms() {
        let copies: u64 = coeff.numer().magnitude().try_into().unwrap_or(u64::MAX);
        let (i, _) = add(g.clone(), top, copies, &mut nodes, &mut index);
        queue.push_back(i);
    }
    let mut arrows = BTreeSet::new();
    while let Some(i) = queue.pop_front() {
        let g = nodes[i].graph.clone();
        let excess = nodes[i].excess;
        if excess == 0 {
            continue;
        }
        for v in 0..g.vertex_count() {
            let valence = half_edges_at(&g, v).len();
            for mask in admissible_partitions(valence) {
                for reverse in [false, true] {
                    let h = canonical_form(&split_graph(&g, v, mask, reverse)).graph;
                    let (j, fresh) = add(h, excess - 1, 1, &mut nodes, &mut index);
                    arrows.insert((j, i));
                    if fresh {
                        queue.push_back(j);
                    }
                }
            }
        }
    }
    let mu = nodes.iter().fold(BigInt::one(), |acc, n| acc.lcm(&n.m_gamma));
    let mu = if mu.is_zero() { BigInt::one() } else { mu };
    Ok(DecompositionPoset { nodes, contractions: arrows.into_iter().collect(), mu })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_trees(4, 0).unwrap().len(), 3);
        assert_eq!(enumerate_trees(5, 1).unwrap().len(), 10);
        assert_eq!(enumerate_trees(4, 1).unwrap(), vec![Tree::corolla(4).unwrap()]);
    }

    #[test]
    fn newick_round_trip() {
        for t in enumerate_trees(6, 1).unwrap() {
            assert_eq!(Tree::parse(&t.to_string()).unwrap(), t);
            for d in direction_extensions(&t, 2, 4).unwrap() {
                assert_eq!(Tree::parse(&d.to_string()).unwrap(), d);
            }
        }
        assert_eq!(Tree::corolla(4).unwrap().to_string(), "(1,2,3,4)");
    }

    #[test]
    fn valences() {
        let t = Tree::from_splits(5, vec![0b11000]).unwrap();
        assert_eq!(t.internal_valences(), vec![4, 3]);
        assert_eq!(t.to_string(), "(1,2,3,(4,5))");
    }

    #[test]
    fn l3_points() {
        let l = lie_hedron(4).unwrap();
        assert_eq!(l.f_vector(), vec![3]);
        assert_eq!(complex_homology(&l), vec![3]);
    }
}
