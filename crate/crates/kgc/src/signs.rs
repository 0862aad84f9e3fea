//! Graded signs: Koszul signs of reorderings, half-edge vertex orientations,
//! split signs, the boundary signs of the triple bracket, graded symmetry of
//! brackets and the one-edge L∞ relations.

use std::fmt;

use thiserror::Error;

use crate::complex::{admissible_partitions, half_edges_at, split_graph};
use crate::graphs::LabelledGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignError {
    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("frame sizes must be >= 2")]
    SmallFrame,
    #[error("expected a directed graph")]
    NotDirected,
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("inadmissible partition")]
    BadPartition,
    #[error("l must be >= 4")]
    SmallArity,
    #[error("parse error at byte {0}: {1}")]
    Parse(usize, String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedWord(pub Vec<Generator>);

fn check_perm(perm: &[usize]) -> Result<(), SignError> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(SignError::NotPermutation(perm.len()));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Sign ε with x_{perm[0]} ∧ … ∧ x_{perm[r-1]} = ε · x_0 ∧ … ∧ x_{r-1}.
pub fn koszul_sign(degrees: &[i64], perm: &[usize]) -> Result<i8, SignError> {
    if perm.len() != degrees.len() {
        return Err(SignError::NotPermutation(degrees.len()));
    }
    check_perm(perm)?;
    Ok(koszul_unchecked(degrees, perm))
}

fn koszul_unchecked(degrees: &[i64], perm: &[usize]) -> i8 {
    let mut odd = 0u64;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] && degrees[perm[i]] % 2 != 0 && degrees[perm[j]] % 2 != 0 {
                odd += 1;
            }
        }
    }
    if odd % 2 == 0 {
        1
    } else {
        -1
    }
}

impl GradedWord {
    pub fn degrees(&self) -> Vec<i64> {
        self.0.iter().map(|g| g.degree).collect()
    }

    pub fn koszul_sign(&self, perm: &[usize]) -> Result<i8, SignError> {
        koszul_sign(&self.degrees(), perm)
    }
}

/// Sign ε with `to = ε · from`, where `to` is a rearrangement of `from`.
/// Items are compared by equality; each item must occur once.
pub fn reorder_sign<T: PartialEq>(from: &[T], to: &[T], degree: impl Fn(&T) -> i64) -> i8 {
    assert_eq!(from.len(), to.len(), "words must have equal length");
    let perm: Vec<usize> =
        to.iter().map(|x| from.iter().position(|y| y == x).expect("same letters")).collect();
    let degrees: Vec<i64> = from.iter().map(&degree).collect();
    koszul_unchecked(&degrees, &perm)
}

/// Rotation θ_r θ_1 … θ_{r-1} of r letters of degree d: (-1)^{(r-1)d}.
pub fn cyclic_sign(r: usize, d: i64) -> i8 {
    let degrees = vec![d; r];
    let mut perm = vec![r - 1];
    perm.extend(0..r - 1);
    koszul_unchecked(&degrees, &perm)
}

/// Half-edge e_+ (incoming, at the head) or e_- (outgoing, at the tail).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    /// 0-based edge index; the label is `edge + 1`.
    pub edge: usize,
    pub plus: bool,
}

impl HalfEdge {
    /// Parity of deg e_+ = k-1, deg e_- = k.
    pub fn degree(&self, k_odd: bool) -> i64 {
        let k = if k_odd { 1 } else { 0 };
        if self.plus {
            k + 1
        } else {
            k
        }
    }
}

impl fmt::Display for HalfEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}{}", self.edge + 1, if self.plus { '+' } else { '-' })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexWord {
    pub vertex: usize,
    pub sign: i8,
    pub word: Vec<HalfEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfEdgeOrientation {
    pub words: Vec<VertexWord>,
    pub global_sign: i8,
}

/// o(v): incoming e_+ by label, then outgoing e_- by label.
pub fn vertex_word(g: &LabelledGraph, v: usize) -> Vec<HalfEdge> {
    let mut w: Vec<HalfEdge> = (0..g.edge_count())
        .filter(|&i| g.edges()[i].1 == v)
        .map(|i| HalfEdge { edge: i, plus: true })
        .collect();
    w.extend((0..g.edge_count()).filter(|&i| g.edges()[i].0 == v).map(|i| HalfEdge { edge: i, plus: false }));
    w
}

/// ⋀_e (e_+ ∧ e_-) in label order.
pub fn edge_word(g: &LabelledGraph) -> Vec<HalfEdge> {
    (0..g.edge_count())
        .flat_map(|i| [HalfEdge { edge: i, plus: true }, HalfEdge { edge: i, plus: false }])
        .collect()
}

/// Writes ⋀_e(e_+∧e_-) = ⋀_v (±o(v)). Normal form: the vertex words are pulled
/// to the front one at a time in vertex order and each step's Koszul sign is
/// attached to that vertex; the global sign is their product.
pub fn half_edge_orientation(g: &LabelledGraph, k_odd: bool) -> Result<HalfEdgeOrientation, SignError> {
    if !g.is_directed() {
        return Err(SignError::NotDirected);
    }
    let deg = |h: &HalfEdge| h.degree(k_odd);
    let mut rest = edge_word(g);
    let mut words = Vec::new();
    let mut global = 1i8;
    for v in 0..g.vertex_count() {
        let w = vertex_word(g, v);
        let mut target = w.clone();
        target.extend(rest.iter().copied().filter(|h| !w.contains(h)));
        let s = reorder_sign(&rest, &target, deg);
        global *= s;
        rest = target[w.len()..].to_vec();
        words.push(VertexWord { vertex: v, sign: s, word: w });
    }
    Ok(HalfEdgeOrientation { words, global_sign: global })
}

/// Checks a supplied signed expansion ⋀_e(e_+∧e_-) = Π (s_v · word_v): every
/// half-edge occurs once and the signs multiply to the reordering sign.
pub fn verify_vertex_orientation(g: &LabelledGraph, k_odd: bool, words: &[(i8, Vec<HalfEdge>)]) -> bool {
    let concat: Vec<HalfEdge> = words.iter().flat_map(|(_, w)| w.iter().copied()).collect();
    let mut sorted = concat.clone();
    sorted.sort();
    let mut expected = edge_word(g);
    expected.sort();
    if sorted != expected {
        return false;
    }
    let s = reorder_sign(&edge_word(g), &concat, |h| h.degree(k_odd));
    let prod: i8 = words.iter().map(|(s, _)| *s).product();
    s == prod
}

/// Sign s with o(v_1) ∧ o(v_2) = s · (e_+ ∧ e_-) ∧ o(v)′ when `v` is split,
/// half-edges selected by `block1` (bitmask over [`half_edges_at`]) going to
/// v_1 and the rest to v_2; the new edge e runs v_1 → v_2 if `from_block1`.
pub fn split_sign(g: &LabelledGraph, v: usize, block1: u64, from_block1: bool, k_odd: bool) -> Result<i8, SignError> {
    if !g.is_directed() {
        return Err(SignError::NotDirected);
    }
    if v >= g.vertex_count() {
        return Err(SignError::BadVertex(v));
    }
    let hs = half_edges_at(g, v);
    let d = hs.len();
    let b1 = (block1 & ((1u64 << d) - 1)).count_ones() as usize;
    if b1 < 2 || d - b1 < 2 || block1 >> d != 0 {
        return Err(SignError::BadPartition);
    }
    // label each half-edge at v by its letter; slot 1 is the head (e_+)
    let letter = |k: usize| HalfEdge { edge: hs[k].0 + 1, plus: hs[k].1 == 1 };
    let in_block1 = |k: usize| block1 >> k & 1 == 1;
    let ov: Vec<HalfEdge> = vertex_word(g, v).iter().map(|h| HalfEdge { edge: h.edge + 1, plus: h.plus }).collect();
    let e_plus = HalfEdge { edge: 0, plus: true };
    let e_minus = HalfEdge { edge: 0, plus: false };
    let word_of = |block: bool| {
        let mut letters: Vec<HalfEdge> = (0..d).filter(|&k| in_block1(k) == block).map(letter).collect();
        // the new edge has label 1, so it leads its group
        letters.push(if block == from_block1 { e_minus } else { e_plus });
        letters.sort_by_key(|h| (!h.plus, h.edge));
        letters
    };
    let mut lhs = word_of(true);
    lhs.extend(word_of(false));
    let mut rhs = vec![e_plus, e_minus];
    rhs.extend(ov);
    Ok(reorder_sign(&rhs, &lhs, |h| h.degree(k_odd)))
}

/// Sign relating the split term oriented through vertex words (with the
/// derivation sign for passing the earlier vertex words) to the term
/// oriented by placing the new edge first. It is +1 exactly when the two
/// conventions agree.
pub fn vertex_route_term_sign(g: &LabelledGraph, v: usize, mask: u64, reverse: bool, k_odd: bool) -> Result<i8, SignError> {
    let gp = split_graph(g, v, mask, reverse);
    let hs = half_edges_at(g, v).len();
    let block1 = !mask & ((1u64 << hs) - 1);
    let s = split_sign(g, v, block1, !reverse, k_odd)?;
    let deg_word = |h: &LabelledGraph, w: usize| vertex_word(h, w).iter().map(|x| x.degree(k_odd)).sum::<i64>();
    let before: i64 = (0..v).map(|w| deg_word(g, w)).sum();
    let after: i64 = (v + 1..g.vertex_count()).map(|w| deg_word(g, w)).sum();
    let rho = if deg_word(&gp, g.vertex_count()) * after % 2 == 0 { 1 } else { -1 };
    let d = if before % 2 == 0 { 1 } else { -1 };
    let h = half_edge_orientation(g, k_odd)?.global_sign;
    let hp = half_edge_orientation(&gp, k_odd)?.global_sign;
    Ok(d * h * s * rho * hp)
}

/// All admissible (mask, reverse) split data at `v`.
pub fn split_data(g: &LabelledGraph, v: usize) -> Vec<(u64, bool)> {
    admissible_partitions(half_edges_at(g, v).len())
        .into_iter()
        .flat_map(|m| [(m, false), (m, true)])
        .collect()
}

/// Coefficients of [[a,b],c], [[b,c],a], [[c,a],b] in ∂[a,b,c] for frames
/// D^p × D^q × D^r, obtained by orienting each boundary face from the word
/// of coordinate vectors (all of degree 1).
pub fn jacobi_signs(p: usize, q: usize, r: usize) -> Result<[i8; 3], SignError> {
    if p < 2 || q < 2 || r < 2 {
        return Err(SignError::SmallFrame);
    }
    let sizes = [p, q, r];
    let frame = |f: usize| -> Vec<(usize, usize)> { (0..sizes[f]).map(|i| (f, i)).collect() };
    let one = |_: &(usize, usize)| 1i64;
    let canonical: Vec<(usize, usize)> = (0..3).flat_map(frame).collect();
    let remove = |w: &mut Vec<(usize, usize)>, x: (usize, usize)| -> i8 {
        let pos = w.iter().position(|&y| y == x).expect("letter present");
        w.remove(pos);
        if pos % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let mut out = [0i8; 3];
    for (t, (fa, fb, fc)) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)].into_iter().enumerate() {
        // the disk: drop the first coordinate of C, then of min(A, B)
        let f = fa.min(fb);
        let mut disk = canonical.clone();
        let s1 = remove(&mut disk, (fc, 0));
        let s2 = remove(&mut disk, (f, 0));
        let disk_sign = -s1 * s2;
        // the iterated sphere: frames of A then B without f_1, then C without c_1
        let mut cycle: Vec<(usize, usize)> = frame(fa);
        cycle.extend(frame(fb));
        let t1 = remove(&mut cycle, (f, 0));
        let ab = cycle.len();
        let mut c = frame(fc);
        c.remove(0);
        // (-1)^{|A|+|B|-1}
        let t2 = if ab % 2 == 1 { -1 } else { 1 };
        cycle.extend(c);
        let t3 = reorder_sign(&disk, &cycle, one);
        out[t] = t1 * t2 * t3 * disk_sign;
    }
    Ok(out)
}

/// (1, (-1)^{pq+pr}, (-1)^{pr+qr}).
pub fn jacobi_closed_form(p: usize, q: usize, r: usize) -> [i8; 3] {
    let s = |e: usize| if e % 2 == 0 { 1 } else { -1 };
    [1, s(p * q + p * r), s(p * r + q * r)]
}

/// Bracket expression over named generators. A k-ary bracket of arguments
/// of degrees d_i has degree Σ d_i - 1; brackets are graded symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bracket {
    Gen(Generator),
    Br(Vec<Bracket>),
}

impl Bracket {
    pub fn gen(name: &str, degree: i64) -> Self {
        Bracket::Gen(Generator { name: name.to_string(), degree })
    }

    pub fn degree(&self) -> i64 {
        match self {
            Bracket::Gen(g) => g.degree,
            Bracket::Br(xs) => xs.iter().map(Bracket::degree).sum::<i64>() - 1,
        }
    }

    fn min_name(&self) -> &str {
        match self {
            Bracket::Gen(g) => &g.name,
            Bracket::Br(xs) => xs.iter().map(Bracket::min_name).min().expect("nonempty bracket"),
        }
    }

    /// Parses `[[a,b],c]`; every generator gets degree `degree(name)`.
    pub fn parse(text: &str, degree: &dyn Fn(&str) -> Option<i64>) -> Result<Self, SignError> {
        let b = text.as_bytes();
        let mut pos = 0;
        let out = parse_bracket(b, &mut pos, degree)?;
        if pos != b.len() {
            return Err(SignError::Parse(pos, "trailing input".into()));
        }
        Ok(out)
    }
}

fn parse_bracket(b: &[u8], pos: &mut usize, degree: &dyn Fn(&str) -> Option<i64>) -> Result<Bracket, SignError> {
    if b.get(*pos) == Some(&b'[') {
        *pos += 1;
        let mut args = Vec::new();
        loop {
            args.push(parse_bracket(b, pos, degree)?);
            match b.get(*pos) {
                Some(b',') => *pos += 1,
                Some(b']') => {
                    *pos += 1;
                    break;
                }
                _ => return Err(SignError::Parse(*pos, "expected `,` or `]`".into())),
            }
        }
        if args.len() < 2 {
            return Err(SignError::Parse(*pos, "bracket needs two arguments".into()));
        }
        Ok(Bracket::Br(args))
    } else {
        let start = *pos;
        while *pos < b.len() && (b[*pos].is_ascii_alphanumeric() || b[*pos] == b'_') {
            *pos += 1;
        }
        if start == *pos {
            return Err(SignError::Parse(start, "expected a generator".into()));
        }
        let name = std::str::from_utf8(&b[start..*pos]).expect("ascii");
        let d = degree(name).ok_or_else(|| SignError::UnknownGenerator(name.to_string()))?;
        Ok(Bracket::gen(name, d))
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracket::Gen(g) => f.write_str(&g.name),
            Bracket::Br(xs) => {
                f.write_str("[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub sign: i8,
    pub bracket: Bracket,
}

/// Permutes the top-level arguments: the result has arguments
/// `args[perm[0]], args[perm[1]], …` and the Koszul coefficient making it
/// equal to the input.
pub fn graded_symmetry(t: &Term, perm: &[usize]) -> Result<Term, SignError> {
    let Bracket::Br(args) = &t.bracket else {
        return if perm.len() == 1 && perm[0] == 0 { Ok(t.clone()) } else { Err(SignError::NotPermutation(1)) };
    };
    let degrees: Vec<i64> = args.iter().map(Bracket::degree).collect();
    let eps = koszul_sign(&degrees, perm)?;
    let new_args = perm.iter().map(|&i| args[i].clone()).collect();
    Ok(Term { sign: t.sign * eps, bracket: Bracket::Br(new_args) })
}

/// Recursively sorts bracket arguments by their least generator name.
pub fn normalize(t: &Term) -> Term {
    fn norm(b: &Bracket) -> (i8, Bracket) {
        match b {
            Bracket::Gen(_) => (1, b.clone()),
            Bracket::Br(xs) => {
                let mut sign = 1i8;
                let inner: Vec<Bracket> = xs
                    .iter()
                    .map(|x| {
                        let (s, y) = norm(x);
                        sign *= s;
                        y
                    })
                    .collect();
                let mut perm: Vec<usize> = (0..inner.len()).collect();
                perm.sort_by(|&i, &j| inner[i].min_name().cmp(inner[j].min_name()));
                let degrees: Vec<i64> = inner.iter().map(Bracket::degree).collect();
                sign *= koszul_unchecked(&degrees, &perm);
                (sign, Bracket::Br(perm.iter().map(|&i| inner[i].clone()).collect()))
            }
        }
    }
    let (s, b) = norm(&t.bracket);
    Term { sign: t.sign * s, bracket: b }
}

/// Generator names a, b, c, … for the ℓ-1 inputs.
pub fn input_names(l: usize) -> Vec<String> {
    (0..l - 1).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// ∂[x_1, …, x_{ℓ-1}] as a sum over one-internal-edge trees: for every
/// subset S with 2 <= |S| = i <= ℓ-2 the term l_j(l_i(x_S), x_rest), j = ℓ-i,
/// with coefficient (-1)^{i(j-1)} times the Koszul sign of the unshuffle
/// (S | rest); all inputs have degree n. Terms are normalized and sorted.
pub fn linf_relation(l: usize, n_odd: bool) -> Result<Vec<Term>, SignError> {
    if l < 4 {
        return Err(SignError::SmallArity);
    }
    let n = if n_odd { 3 } else { 2 };
    let names = input_names(l);
    let k = l - 1;
    let mut out = Vec::new();
    for mask in 0u32..1 << k {
        let i = mask.count_ones() as usize;
        if i < 2 || i > l - 2 {
            continue;
        }
        let s: Vec<usize> = (0..k).filter(|&x| mask >> x & 1 == 1).collect();
        let rest: Vec<usize> = (0..k).filter(|&x| mask >> x & 1 == 0).collect();
        let mut perm = s.clone();
        perm.extend(&rest);
        let eps = koszul_unchecked(&vec![n; k], &perm);
        let j = l - i;
        let sign = if (i * (j - 1)) % 2 == 0 { eps } else { -eps };
        let inner = Bracket::Br(s.iter().map(|&x| Bracket::gen(&names[x], n)).collect());
        let mut args = vec![inner];
        args.extend(rest.iter().map(|&x| Bracket::gen(&names[x], n)));
        out.push(normalize(&Term { sign, bracket: Bracket::Br(args) }));
    }
    out.sort_by_key(|t| t.bracket.to_string());
    Ok(out)
}

/// A coefficient ±1 or ±(-1)^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymSign {
    pub sign: i8,
    pub n_power: bool,
}

impl SymSign {
    pub fn at(&self, n_odd: bool) -> i8 {
        if self.n_power && n_odd {
            -self.sign
        } else {
            self.sign
        }
    }

    pub fn from_parities(even: i8, odd: i8) -> Self {
        SymSign { sign: even, n_power: even != odd }
    }
}

impl fmt::Display for SymSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.sign > 0, self.n_power) {
            (true, false) => f.write_str("+"),
            (false, false) => f.write_str("-"),
            (true, true) => f.write_str("+(-1)^n"),
            (false, true) => f.write_str("-(-1)^n"),
        }
    }
}

/// Relation with symbolic (-1)^n coefficients, combining both parities.
pub fn linf_relation_symbolic(l: usize) -> Result<Vec<(SymSign, Bracket)>, SignError> {
    let even = linf_relation(l, false)?;
    let odd = linf_relation(l, true)?;
    Ok(even
        .iter()
        .zip(&odd)
        .map(|(e, o)| {
            debug_assert_eq!(strip_degrees(&e.bracket), strip_degrees(&o.bracket));
            (SymSign::from_parities(e.sign, o.sign), e.bracket.clone())
        })
        .collect())
}

fn strip_degrees(b: &Bracket) -> String {
    b.to_string()
}

pub fn render_relation(terms: &[(SymSign, Bracket)]) -> String {
    let mut s = String::new();
    for (i, (c, b)) in terms.iter().enumerate() {
        let c = c.to_string();
        let c = if i == 0 && c == "+" { String::new() } else if i == 0 { c.trim_start_matches('+').to_string() } else { c };
        s.push_str(&c);
        s.push_str(&b.to_string());
    }
    s
}

/// Parses a relation such as `[[a,b],c]+(-1)^n[a,[b,c]]-[[a,c],b]`.
pub fn parse_relation(text: &str) -> Result<Vec<(SymSign, String)>, SignError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let b = t.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < b.len() {
        let mut sign = 1i8;
        match b[pos] {
            b'+' => pos += 1,
            b'-' => {
                sign = -1;
                pos += 1
            }
            _ if pos == 0 => {}
            _ => return Err(SignError::Parse(pos, "expected `+` or `-`".into())),
        }
        let n_power = t[pos..].starts_with("(-1)^n");
        if n_power {
            pos += "(-1)^n".len();
        }
        let start = pos;
        let mut depth = 0i32;
        while pos < b.len() {
            match b[pos] {
                b'[' => depth += 1,
                b']' => depth -= 1,
                _ => {}
            }
            pos += 1;
            if depth == 0 {
                break;
            }
        }
        if depth != 0 || start == pos {
            return Err(SignError::Parse(start, "unbalanced bracket".into()));
        }
        out.push((SymSign { sign, n_power }, t[start..pos].to_string()));
    }
    Ok(out)
}

/// Normalizes a parsed relation at a given parity (all generators of degree n).
pub fn normalize_relation(terms: &[(SymSign, String)], n_odd: bool) -> Result<Vec<Term>, SignError> {
    let n = if n_odd { 3 } else { 2 };
    let mut out: Vec<Term> = terms
        .iter()
        .map(|(c, text)| {
            let b = Bracket::parse(text, &|_| Some(n))?;
            Ok(normalize(&Term { sign: c.at(n_odd), bracket: b }))
        })
        .collect::<Result<_, SignError>>()?;
    out.sort_by_key(|t| t.bracket.to_string());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_basics() {
        assert_eq!(koszul_sign(&[1, 1], &[1, 0]).unwrap(), -1);
        assert_eq!(koszul_sign(&[1, 2], &[1, 0]).unwrap(), 1);
        assert_eq!(koszul_sign(&[3, 3, 3], &[0, 1, 2]).unwrap(), 1);
        assert!(koszul_sign(&[1, 1], &[0, 0]).is_err());
    }

    #[test]
    fn cyclic() {
        for r in 1..7 {
            for d in 0..4 {
                let e = ((r as i64 - 1) * d) % 2;
                assert_eq!(cyclic_sign(r, d), if e == 0 { 1 } else { -1 });
            }
        }
    }

    #[test]
    fn jacobi_matches_closed_form_small() {
        for p in 2..6 {
            for q in 2..6 {
                for r in 2..6 {
                    assert_eq!(jacobi_signs(p, q, r).unwrap(), jacobi_closed_form(p, q, r), "{p} {q} {r}");
                }
            }
        }
        assert!(jacobi_signs(1, 2, 2).is_err());
    }

    #[test]
    fn bracket_round_trip() {
        let b = Bracket::parse("[[a,b],c,[d,e]]", &|_| Some(2)).unwrap();
        assert_eq!(b.to_string(), "[[a,b],c,[d,e]]");
    }

    #[test]
    fn single_edge_fragment() {
        let g = LabelledGraph::raw(2, vec![(0, 1)], true).unwrap();
        let o = half_edge_orientation(&g, true).unwrap();
        assert_eq!(o.global_sign, 1);
        assert_eq!(o.words[0].word, vec![HalfEdge { edge: 0, plus: false }]);
        assert_eq!(o.words[1].word, vec![HalfEdge { edge: 0, plus: true }]);
    }

    #[test]
    fn l4_relation() {
        let rel = linf_relation_symbolic(4).unwrap();
        assert_eq!(render_relation(&rel), "[[a,b],c]+(-1)^n[[a,c],b]+(-1)^n[a,[b,c]]");
    }
}
