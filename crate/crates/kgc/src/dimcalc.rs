//! Dimension calculus for string-link types: presuspension, delooping, the
//! vertex families, feasibility of the degree n, band arithmetic, the CFS
//! conditions and the multiplicity ledger.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimError {
    #[error("empty component subset")]
    EmptySubset,
    #[error("component index {0} out of range")]
    BadIndex(usize),
    #[error("component {index} has dimension {dim}, outside [1, {max}]")]
    OutOfRange { index: usize, dim: i64, max: i64 },
    #[error("loop vector has length {got}, expected {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("negative loop exponent {0}")]
    NegativeLoop(i64),
    #[error("no feasible n for l={l}, k={k}")]
    Infeasible { l: i64, k: i64 },
    #[error("n={n} is outside the feasible range for l={l}, k={k}")]
    BadN { l: i64, k: i64, n: i64 },
    #[error("invalid parameter: {0}")]
    Invalid(String),
}

/// Ω^{loops}(a_1, ..., a_r; N).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkType {
    /// Accumulated loop exponents per component; empty means all zero.
    pub loop_prefix: Vec<i64>,
    pub components: Vec<i64>,
    pub ambient: i64,
}

impl LinkType {
    pub fn new(components: Vec<i64>, ambient: i64) -> Result<Self, DimError> {
        let t = Self { loop_prefix: Vec::new(), components, ambient };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<(), DimError> {
        for (index, &dim) in self.components.iter().enumerate() {
            if dim < 1 || dim > self.ambient - 2 {
                return Err(DimError::OutOfRange { index, dim, max: self.ambient - 2 });
            }
        }
        Ok(())
    }

    pub fn loops(&self) -> Vec<i64> {
        if self.loop_prefix.is_empty() {
            vec![0; self.components.len()]
        } else {
            self.loop_prefix.clone()
        }
    }

    /// dim S^{a⃗} = Σ a_i.
    pub fn loop_dimension(&self) -> i64 {
        self.loop_prefix.iter().sum()
    }

    /// Slack in a_1+…+a_r <= (N-2)r - N + 3 (nonnegative when it holds).
    pub fn dimension_slack(&self) -> i64 {
        let r = self.components.len() as i64;
        (self.ambient - 2) * r - self.ambient + 3 - self.components.iter().sum::<i64>()
    }
}

impl fmt::Display for LinkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        if !self.loop_prefix.is_empty() {
            write!(f, "Ω^({})", join(&self.loop_prefix))?;
        }
        write!(f, "({};{})", join(&self.components), self.ambient)
    }
}

/// Adds 1 to each chosen component and to N.
pub fn presuspend(t: &LinkType, subset: &[usize]) -> Result<LinkType, DimError> {
    if subset.is_empty() {
        return Err(DimError::EmptySubset);
    }
    let mut out = t.clone();
    for &i in subset {
        *out.components.get_mut(i).ok_or(DimError::BadIndex(i))? += 1;
    }
    out.ambient += 1;
    out.check()?;
    Ok(out)
}

/// (a_1..a_r; N) → Ω^{p⃗}(a_1-p_1, ..., a_r-p_r; N). Loop exponents add up, so
/// the result does not depend on the order of successive deloopings.
pub fn deloop(t: &LinkType, p: &[i64]) -> Result<LinkType, DimError> {
    if p.len() != t.components.len() {
        return Err(DimError::LengthMismatch { got: p.len(), want: t.components.len() });
    }
    if let Some(&x) = p.iter().find(|&&x| x < 0) {
        return Err(DimError::NegativeLoop(x));
    }
    let mut out = t.clone();
    let mut loops = t.loops();
    for i in 0..p.len() {
        out.components[i] -= p[i];
        loops[i] += p[i];
    }
    out.loop_prefix = if loops.iter().all(|&x| x == 0) { Vec::new() } else { loops };
    out.check()?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleRange {
    pub l: i64,
    pub k: i64,
    /// ⌈(k+ℓ-2)/(ℓ-1)⌉ and ⌊(2k+ℓ-3)/ℓ⌋.
    pub lo: i64,
    pub hi: i64,
    /// (2ℓ²+2ℓ-6)/(ℓ-2), a sufficient threshold for 2k (ℓ >= 3).
    pub general_threshold: Ratio<i64>,
    /// 2ℓ²-4ℓ+3: threshold for 2k guaranteeing a feasible n >= 2ℓ-3.
    pub large_n_threshold: i64,
    /// Whether some feasible n >= 2ℓ-3 exists.
    pub large_n_exists: bool,
}

impl FeasibleRange {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn range(&self) -> Option<(i64, i64)> {
        (!self.is_empty()).then_some((self.lo, self.hi))
    }
}

pub fn feasible_n_range(l: i64, k: i64) -> Result<FeasibleRange, DimError> {
    if l < 3 {
        return Err(DimError::Invalid(format!("l must be >= 3, got {l}")));
    }
    let lo = Integer::div_ceil(&(k + l - 2), &(l - 1));
    let hi = Integer::div_floor(&(2 * k + l - 3), &l);
    Ok(FeasibleRange {
        l,
        k,
        lo,
        hi,
        general_threshold: Ratio::new(2 * l * l + 2 * l - 6, l - 2),
        large_n_threshold: 2 * l * l - 4 * l + 3,
        large_n_exists: hi >= lo.max(2 * l - 3),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexFamily {
    pub l: i64,
    pub j: i64,
    pub k: i64,
    pub n: i64,
    pub delta: i64,
    pub a: i64,
    pub a_vec: Vec<i64>,
    pub start: LinkType,
    pub suspended: LinkType,
    pub final_type: LinkType,
    /// dim S^{a⃗}.
    pub sphere_dim: i64,
    /// dim S^{ℓ-4} × S^{a⃗} (the S^{ℓ-4} factor is absent for ℓ = 3).
    pub total_dim: i64,
    /// Slack of the final type in a_1+…+a_ℓ <= (N-2)ℓ-N+3.
    pub slack: i64,
}

impl VertexFamily {
    pub fn strict(&self) -> bool {
        self.slack > 0
    }
}

/// The type chain for an ℓ-valent vertex: start ((ℓ-1)n-ℓ+2)^ℓ; ℓn-ℓ+3,
/// presuspend the first ℓ-1 components Δ times, then deloop by a⃗.
pub fn vertex_family(l: i64, j: i64, k: i64, n: Option<i64>) -> Result<VertexFamily, DimError> {
    if j < 0 || j > l {
        return Err(DimError::Invalid(format!("j must lie in 0..={l}")));
    }
    let range = feasible_n_range(l, k)?;
    let n = match n {
        Some(n) if n < range.lo || n > range.hi => return Err(DimError::BadN { l, k, n }),
        Some(n) => n,
        None => range.range().ok_or(DimError::Infeasible { l, k })?.0,
    };
    let delta = 2 * k - l * n + l - 3;
    let a = (l - 1) * n - k - (l - 2);
    let lu = l as usize;
    let ju = j as usize;
    let a_vec: Vec<i64> = if j >= 1 {
        let mut v = vec![a + delta; lu - ju];
        v.extend(std::iter::repeat(a + delta + 1).take(ju - 1));
        v.push(a + 1);
        v
    } else {
        let mut v = vec![a + delta; lu - 1];
        v.push(a);
        v
    };
    let start = LinkType::new(vec![(l - 1) * n - (l - 2); lu], l * n - l + 3)?;
    let first: Vec<usize> = (0..lu - 1).collect();
    let mut suspended = start.clone();
    for _ in 0..delta {
        suspended = presuspend(&suspended, &first)?;
    }
    let final_type = deloop(&suspended, &a_vec)?;
    let sphere_dim = final_type.loop_dimension();
    let total_dim = sphere_dim + if l >= 4 { l - 4 } else { 0 };
    let slack = final_type.dimension_slack();
    Ok(VertexFamily { l, j, k, n, delta, a, a_vec, start, suspended, final_type, sphere_dim, total_dim, slack })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExcessBound {
    /// 2μ²+8μ+10: the threshold for 2k.
    pub even: i64,
    /// 2μ²+8μ+9: the same condition for even 2k.
    pub odd: i64,
    pub min_k: i64,
}

pub fn excess_dimension_bound(mu: i64) -> ExcessBound {
    let even = 2 * mu * mu + 8 * mu + 10;
    ExcessBound { even, odd: even - 1, min_k: even / 2 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BandReport {
    pub degree: i64,
    pub band: (i64, i64),
    pub member: bool,
    /// m <= min{√(k-1) - 3, 2n - 1}.
    pub in_d: bool,
}

pub fn band_check(n: i64, m: i64, k: i64) -> Result<BandReport, DimError> {
    if m < 0 || m > 2 * n - 1 {
        return Err(DimError::Invalid(format!("m must lie in 0..={}", 2 * n - 1)));
    }
    let degree = (2 * k - 3) * n + m;
    let band = (2 * k * n - 4 * n - 1, 2 * k * n - 1);
    let member = band.0 <= degree && degree <= band.1;
    let in_d = k >= 1 && (m + 3) * (m + 3) <= k - 1 && m <= 2 * n - 1;
    Ok(BandReport { degree, band, member, in_d })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "HOLDS",
            Verdict::Fails => "FAILS",
            Verdict::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfsReport {
    pub p: Vec<i64>,
    pub m: i64,
    /// Condition (a) per component index.
    pub a: Vec<(usize, bool)>,
    /// Condition (b) is never decided; per pair we still report whether its
    /// linear equation has a positive solution.
    pub b_equation: Vec<((usize, usize), Option<Vec<i64>>)>,
    /// Condition (c): first subsequence (s >= 3) with a positive solution.
    pub c_witness: Option<(Vec<usize>, Vec<i64>)>,
}

impl CfsReport {
    pub fn a_verdict(&self) -> Verdict {
        if self.a.iter().any(|x| x.1) {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    /// Always undecided: the equation data is reported, the set it must
    /// avoid is not modelled.
    pub fn b_verdict(&self) -> Verdict {
        Verdict::Undecided
    }

    pub fn c_verdict(&self) -> Verdict {
        if self.c_witness.is_some() {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

/// Positive integer solution of Σ c_i x_i = target, found by a bounded
/// search (each x_i <= target / c_i since every c_i >= 1).
pub fn positive_solution(coeffs: &[i64], target: i64) -> Option<Vec<i64>> {
    let base: i64 = coeffs.iter().sum();
    let rest = target - base;
    if rest < 0 || coeffs.iter().any(|&c| c < 1) {
        return None;
    }
    let rest = rest as usize;
    // reach[v]: some index i with reach[v - c_i] set; standard coin DP
    let mut how: Vec<Option<usize>> = vec![None; rest + 1];
    let mut ok = vec![false; rest + 1];
    ok[0] = true;
    for v in 1..=rest {
        for (i, &c) in coeffs.iter().enumerate() {
            let c = c as usize;
            if c <= v && ok[v - c] {
                ok[v] = true;
                how[v] = Some(i);
                break;
            }
        }
    }
    if !ok[rest] {
        return None;
    }
    let mut x = vec![1i64; coeffs.len()];
    let mut v = rest;
    while v > 0 {
        let i = how[v].expect("reachable");
        x[i] += 1;
        v -= coeffs[i] as usize;
    }
    Some(x)
}

pub fn cfs_check(p: &[i64], m: i64) -> Result<CfsReport, DimError> {
    if let Some(&bad) = p.iter().find(|&&x| x >= m - 2) {
        return Err(DimError::Invalid(format!("need p_i < m-2, got p={bad}, m={m}")));
    }
    if p.len() > 20 {
        return Err(DimError::Invalid("at most 20 components".into()));
    }
    let a = p
        .iter()
        .enumerate()
        .map(|(i, &pi)| (i, (pi + 1) % 4 == 0 && 2 * m < 3 * pi + 4))
        .collect();
    let coeff: Vec<i64> = p.iter().map(|&pi| m - pi - 2).collect();
    let mut b_equation = Vec::new();
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            b_equation.push(((i, j), positive_solution(&[coeff[i], coeff[j]], m - 3)));
        }
    }
    let r = p.len();
    let mut subsets: Vec<Vec<usize>> = (0u32..1 << r)
        .filter(|s| s.count_ones() >= 3)
        .map(|s| (0..r).filter(|&i| s >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    let c_witness = subsets.into_iter().find_map(|s| {
        let cs: Vec<i64> = s.iter().map(|&i| coeff[i]).collect();
        positive_solution(&cs, m - 3).map(|x| (s, x))
    });
    Ok(CfsReport { p: p.to_vec(), m, a, b_equation, c_witness })
}

/// Symbolic multiplicities. `M(ℓ)` is m_ℓ, `MuB(ℓ)` is μ_ℓ^∂, `Q(ℓ)`/`R(ℓ)`
/// are the free positive parameters q_ℓ, r_ℓ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Int(BigInt),
    Q(usize),
    R(usize),
    M(usize),
    MuB(usize),
    Prod(Vec<Expr>),
    Lcm(Vec<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, xs: &[Expr], sep: &str| -> fmt::Result {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Q(l) => write!(f, "q_{l}"),
            Expr::R(l) => write!(f, "r_{l}"),
            Expr::M(l) => write!(f, "m_{l}"),
            Expr::MuB(l) => write!(f, "μ∂_{l}"),
            Expr::Prod(xs) => list(f, xs, "·"),
            Expr::Lcm(xs) => {
                f.write_str("lcm(")?;
                list(f, xs, ", ")?;
                f.write_str(")")
            }
        }
    }
}

fn int(n: i64) -> Expr {
    Expr::Int(BigInt::from(n))
}

/// One-step definition of m_ℓ and μ_ℓ^∂.
pub fn definition(e: &Expr) -> Option<Expr> {
    match e {
        Expr::M(3) => Some(int(1)),
        Expr::M(4) => Some(int(4)),
        Expr::M(l) if *l >= 5 => Some(Expr::Prod(vec![int(*l as i64), Expr::Q(*l), Expr::R(*l), Expr::MuB(*l)])),
        Expr::MuB(l) if *l >= 4 => Some(Expr::Lcm(
            (2..=l - 2).map(|p| Expr::Prod(vec![Expr::M(p + 1), Expr::M(l - p + 1)])).collect(),
        )),
        _ => None,
    }
}

fn atoms(e: &Expr, out: &mut Vec<Expr>) {
    match e {
        Expr::Prod(xs) => xs.iter().for_each(|x| atoms(x, out)),
        Expr::M(3) => {}
        Expr::M(4) => out.push(int(4)),
        Expr::Int(n) if n.is_one() => {}
        other => out.push(other.clone()),
    }
}

/// Tries to prove a | b from the definitions using: x | x; a | lcm(..) if a
/// divides an argument; a | Π f_i if the factors of a can be grouped so that
/// each group divides a distinct f_i; integer divisibility. `false` means
/// "not proved".
pub fn prove_divides(a: &Expr, b: &Expr) -> bool {
    let mut fa = Vec::new();
    atoms(a, &mut fa);
    fa.sort();
    Prover::default().divides(fa, b)
}

#[derive(Default)]
struct Prover {
    memo: RefCell<HashMap<(Vec<Expr>, Expr), bool>>,
}

impl Prover {
    fn divides(&self, mut a: Vec<Expr>, b: &Expr) -> bool {
        a.retain(|x| !matches!(x, Expr::Int(n) if n.is_one()));
        if a.is_empty() {
            return true;
        }
        a.sort();
        let key = (a.clone(), b.clone());
        if let Some(&r) = self.memo.borrow().get(&key) {
            return r;
        }
        self.memo.borrow_mut().insert(key.clone(), false);
        let r = self.divides_inner(&a, b);
        self.memo.borrow_mut().insert(key, r);
        r
    }

    fn divides_inner(&self, a: &[Expr], b: &Expr) -> bool {
        if a.len() == 1 && &a[0] == b {
            return true;
        }
        match b {
            Expr::Int(k) => {
                let mut prod = BigInt::one();
                for x in a {
                    match x {
                        Expr::Int(n) => prod *= n,
                        _ => return false,
                    }
                }
                (k % prod).is_zero()
            }
            Expr::Q(_) | Expr::R(_) => false,
            Expr::M(_) | Expr::MuB(_) => match definition(b) {
                Some(d) => self.divides(a.to_vec(), &d),
                None => false,
            },
            Expr::Lcm(args) => args.iter().any(|x| self.divides(a.to_vec(), x)),
            Expr::Prod(fs) => {
                let mut groups = vec![Vec::new(); fs.len()];
                self.assign(a, 0, fs, &mut groups)
            }
        }
    }

    fn assign(&self, a: &[Expr], i: usize, fs: &[Expr], groups: &mut Vec<Vec<Expr>>) -> bool {
        if i == a.len() {
            return groups.iter().zip(fs).all(|(g, f)| self.divides(g.clone(), f));
        }
        for k in 0..fs.len() {
            groups[k].push(a[i].clone());
            let ok = self.assign(a, i + 1, fs, groups);
            groups[k].pop();
            if ok {
                return true;
            }
        }
        false
    }
}

/// m_ℓ as numbers for given parameters (missing parameters default to 1).
#[derive(Clone, Debug, Default)]
pub struct MultiplicityLedger {
    pub q: BTreeMap<usize, BigInt>,
    pub r: BTreeMap<usize, BigInt>,
    cache: RefCell<BTreeMap<usize, BigInt>>,
}

impl MultiplicityLedger {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn with_params(q: BTreeMap<usize, BigInt>, r: BTreeMap<usize, BigInt>) -> Result<Self, DimError> {
        for (l, v) in q.iter().chain(r.iter()) {
            if v <= &BigInt::zero() {
                return Err(DimError::Invalid(format!("parameter for l={l} must be positive, got {v}")));
            }
        }
        Ok(Self { q, r, cache: RefCell::new(BTreeMap::new()) })
    }

    fn param(map: &BTreeMap<usize, BigInt>, l: usize) -> BigInt {
        map.get(&l).cloned().unwrap_or_else(BigInt::one)
    }

    pub fn evaluate(&self, l: usize) -> Result<BigInt, DimError> {
        if l < 3 {
            return Err(DimError::Invalid(format!("m_l needs l >= 3, got {l}")));
        }
        if let Some(v) = self.cache.borrow().get(&l) {
            return Ok(v.clone());
        }
        let v = match l {
            3 => BigInt::one(),
            4 => BigInt::from(4),
            _ => BigInt::from(l) * Self::param(&self.q, l) * Self::param(&self.r, l) * self.mu_boundary(l)?,
        };
        self.cache.borrow_mut().insert(l, v.clone());
        Ok(v)
    }

    /// μ_ℓ^∂ = lcm{m_{p+1} m_{q+1} : p + q = ℓ, p, q >= 2}.
    pub fn mu_boundary(&self, l: usize) -> Result<BigInt, DimError> {
        if l < 4 {
            return Err(DimError::Invalid(format!("μ∂_l needs l >= 4, got {l}")));
        }
        let mut acc = BigInt::one();
        for p in 2..=l - 2 {
            acc = acc.lcm(&(self.evaluate(p + 1)? * self.evaluate(l - p + 1)?));
        }
        Ok(acc)
    }

    pub fn evaluate_expr(&self, e: &Expr) -> Result<BigInt, DimError> {
        Ok(match e {
            Expr::Int(n) => n.clone(),
            Expr::Q(l) => Self::param(&self.q, *l),
            Expr::R(l) => Self::param(&self.r, *l),
            Expr::M(l) => self.evaluate(*l)?,
            Expr::MuB(l) => self.mu_boundary(*l)?,
            Expr::Prod(xs) => {
                let mut acc = BigInt::one();
                for x in xs {
                    acc *= self.evaluate_expr(x)?;
                }
                acc
            }
            Expr::Lcm(xs) => {
                let mut acc = BigInt::one();
                for x in xs {
                    acc = acc.lcm(&self.evaluate_expr(x)?);
                }
                acc
            }
        })
    }
}

/// Valence multisets of trees with ℓ leaves and i >= 2 internal vertices:
/// Σ(ℓ_v - 2) = ℓ - 2 with every ℓ_v >= 3, sorted decreasingly.
pub fn face_valences(l: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if cur.len() >= 2 {
                out.push(cur.iter().map(|x| x + 2).collect());
            }
            return;
        }
        for x in (1..=max.min(left)).rev() {
            cur.push(x);
            rec(left - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if l >= 4 {
        rec(l - 2, l - 2, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub l: usize,
    pub definition: Option<Expr>,
    pub value: BigInt,
    pub mu_boundary: Option<BigInt>,
    /// (p, q, proved symbolically, holds numerically) for m_{p+1}m_{q+1} | m_ℓ.
    pub divisibility: Vec<(usize, usize, bool, bool)>,
    /// (valences, proved, integral) for μ_ℓ^∂ / Π m_{ℓ_v}.
    pub faces: Vec<(Vec<usize>, bool, bool)>,
}

pub fn multiplicity(l: usize, ledger: &MultiplicityLedger) -> Result<MultiplicityReport, DimError> {
    let value = ledger.evaluate(l)?;
    let mu = if l >= 4 { Some(ledger.mu_boundary(l)?) } else { None };
    let mut divisibility = Vec::new();
    let mut faces = Vec::new();
    if l >= 4 {
        for p in 2..=l - 2 {
            let q = l - p;
            let a = Expr::Prod(vec![Expr::M(p + 1), Expr::M(q + 1)]);
            let proved = prove_divides(&a, &Expr::M(l));
            let numeric = (&value % ledger.evaluate_expr(&a)?).is_zero();
            divisibility.push((p, q, proved, numeric));
        }
        let mu_v = mu.clone().expect("l >= 4");
        for vals in face_valences(l) {
            let a = Expr::Prod(vals.iter().map(|&v| Expr::M(v)).collect());
            let proved = prove_divides(&a, &Expr::MuB(l));
            let integral = (&mu_v % ledger.evaluate_expr(&a)?).is_zero();
            faces.push((vals, proved, integral));
        }
    }
    Ok(MultiplicityReport { l, definition: definition(&Expr::M(l)), value, mu_boundary: mu, divisibility, faces })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_values() {
        let l = MultiplicityLedger::unit();
        assert_eq!(l.evaluate(5).unwrap(), BigInt::from(20));
        assert_eq!(l.mu_boundary(6).unwrap(), BigInt::from(80));
    }

    #[test]
    fn prover_basics() {
        assert!(prove_divides(&Expr::Prod(vec![Expr::M(4), Expr::M(3)]), &Expr::M(5)));
        assert!(prove_divides(&Expr::M(4), &Expr::M(7)));
        assert!(prove_divides(&Expr::Q(5), &Expr::M(6)));
        assert!(!prove_divides(&Expr::Q(6), &Expr::M(5)));
        assert!(!prove_divides(&int(3), &Expr::M(5)));
    }

    #[test]
    fn presuspend_example() {
        let n = 4;
        let t = LinkType::new(vec![2 * n - 1; 3], 3 * n).unwrap();
        let s = presuspend(&t, &[0, 1]).unwrap();
        assert_eq!(s.components, vec![2 * n, 2 * n, 2 * n - 1]);
        assert_eq!(s.ambient, 3 * n + 1);
        assert_eq!(presuspend(&t, &[]), Err(DimError::EmptySubset));
        assert_eq!(deloop(&t, &[0, 0, 0]).unwrap(), t);
    }

    #[test]
    fn coin_search() {
        assert_eq!(positive_solution(&[1, 1, 1], 5).map(|x| x.iter().sum::<i64>()), Some(5));
        assert_eq!(positive_solution(&[3, 3], 7), None);
    }
}
