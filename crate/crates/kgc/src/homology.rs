//! Exact linear algebra over Q: sparse matrices, fraction-free rank, kernels,
//! boundary matrices, homology dimensions and the cochain pairing.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::complex::{basis, differential_of_graph, ChainVector, Q};
use crate::graphs::{aut_order_unchecked, canonical_form, LabelledGraph, OrientedClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("entry ({0}, {1}) out of range")]
    OutOfRange(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Q>,
}

impl SparseRationalMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::new(k, k);
        for i in 0..k {
            m.entries.insert((i, i), Q::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::new(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    m.entries.insert((i, j), x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Q> {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, x: Q) -> Result<(), MatrixError> {
        if r >= self.rows || c >= self.cols {
            return Err(MatrixError::OutOfRange(r, c));
        }
        if x.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), x);
        }
        Ok(())
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut d = vec![vec![Q::zero(); self.cols]; self.rows];
        for (&(r, c), x) in &self.entries {
            d[r][c] = x.clone();
        }
        d
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut by_row: BTreeMap<usize, Vec<(usize, &Q)>> = BTreeMap::new();
        for (&(r, c), x) in &other.entries {
            by_row.entry(r).or_default().push((c, x));
        }
        let mut out = Self::new(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    let e = out.entries.entry((i, j)).or_insert_with(Q::zero);
                    *e += a * b;
                }
            }
        }
        out.entries.retain(|_, x| !x.is_zero());
        out
    }

    /// Coordinate text: `rows cols` then one `r c num/den` line per entry,
    /// indices 1-based, row-major order.
    pub fn export(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for (&(r, c), x) in &self.entries {
            let _ = writeln!(s, "{} {} {}/{}", r + 1, c + 1, x.numer(), x.denom());
        }
        s
    }

    pub fn import(text: &str) -> Result<Self, MatrixError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let err = |line: usize, msg: &str| MatrixError::Parse { line: line + 1, msg: msg.to_string() };
        let (hl, header) = lines.next().ok_or_else(|| err(0, "missing header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| err(hl, "bad dimension")))
            .collect::<Result<_, _>>()?;
        if dims.len() != 2 {
            return Err(err(hl, "header must be `rows cols`"));
        }
        let mut m = Self::new(dims[0], dims[1]);
        for (ln, line) in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 3 {
                return Err(err(ln, "expected `r c num/den`"));
            }
            let r: usize = t[0].parse().map_err(|_| err(ln, "bad row"))?;
            let c: usize = t[1].parse().map_err(|_| err(ln, "bad column"))?;
            let x = crate::formats::parse_rational(t[2]).ok_or_else(|| err(ln, "bad rational"))?;
            if r == 0 || c == 0 {
                return Err(err(ln, "indices are 1-based"));
            }
            m.set(r - 1, c - 1, x).map_err(|_| err(ln, "index out of range"))?;
        }
        Ok(m)
    }
}

/// Rank over Q by fraction-free (Bareiss) elimination on the integer matrix
/// obtained by clearing each row's denominators. Pivot: smallest nonzero
/// magnitude in the remaining block, ties broken by (row, col).
pub fn rank(m: &SparseRationalMatrix) -> usize {
    let mut a = integer_rows(m);
    bareiss_rank(&mut a)
}

fn integer_rows(m: &SparseRationalMatrix) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); m.cols]; m.rows];
    let mut lcm = vec![BigInt::one(); m.rows];
    for (&(r, _), x) in &m.entries {
        lcm[r] = lcm[r].lcm(x.denom());
    }
    for (&(r, c), x) in &m.entries {
        rows[r][c] = x.numer() * (&lcm[r] / x.denom());
    }
    rows
}

pub(crate) fn bareiss_rank(a: &mut [Vec<BigInt>]) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut col_perm: Vec<usize> = (0..cols).collect();
    let mut prev = BigInt::one();
    let mut k = 0;
    while k < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for jj in k..cols {
                let x = &a[i][col_perm[jj]];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.abs() < a[bi][col_perm[bj]].abs(),
                };
                if better {
                    best = Some((i, jj));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(k, pi);
        col_perm.swap(k, pj);
        let pc = col_perm[k];
        let pivot = a[k][pc].clone();
        for i in k + 1..rows {
            let f = a[i][pc].clone();
            for jj in k + 1..cols {
                let j = col_perm[jj];
                let v = &a[i][j] * &pivot - &f * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][pc] = BigInt::zero();
        }
        prev = pivot;
        k += 1;
    }
    k
}

/// Reduced row echelon form over Q; returns the pivot columns.
pub fn rref(mat: &mut [Vec<Q>], cols: usize) -> Vec<usize> {
    let rows = mat.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else { continue };
        mat.swap(r, p);
        let inv = Q::one() / &mat[r][c];
        for x in mat[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    let t = &f * &mat[r][j];
                    mat[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel, one vector per free column (ascending).
pub fn kernel_basis(mat: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut m = mat.to_vec();
    let pivots = rref(&mut m, cols);
    let mut out = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); cols];
        v[f] = Q::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][f].clone();
        }
        out.push(v);
    }
    out
}

/// Matrix of ∂: GC^{(n,m)} → GC^{(n,m-1)} in the bases of [`basis`].
pub fn boundary_matrix(n: i64, m: i64, directed: bool) -> SparseRationalMatrix {
    let cols = basis(n, m, directed);
    let rows = basis(n, m - 1, directed);
    boundary_matrix_in(&cols, &rows)
}

pub fn boundary_matrix_in(cols: &[OrientedClass], rows: &[OrientedClass]) -> SparseRationalMatrix {
    use rayon::prelude::*;
    let index: BTreeMap<&LabelledGraph, usize> = rows.iter().enumerate().map(|(i, c)| (&c.canonical, i)).collect();
    let images: Vec<ChainVector> = cols.par_iter().map(|c| differential_of_graph(&c.canonical)).collect();
    let mut mat = SparseRationalMatrix::new(rows.len(), cols.len());
    for (j, img) in images.iter().enumerate() {
        for (g, x) in img.terms() {
            let i = *index.get(g).expect("boundary term lies in the target basis");
            mat.entries.insert((i, j), x.clone());
        }
    }
    mat
}

/// dim H_{n,m} of the excess-truncated complex (terms above `mu` set to 0).
pub fn homology_dim(n: i64, m: i64, mu: i64, directed: bool) -> usize {
    assert!(m <= mu, "m must not exceed the truncation");
    let dim = basis(n, m, directed).len();
    let out_rank = if m >= 1 { rank(&boundary_matrix(n, m, directed)) } else { 0 };
    let in_rank = if m == mu { 0 } else { rank(&boundary_matrix(n, m + 1, directed)) };
    dim - out_rank - in_rank
}

/// ⟨Γ, c⟩ = Σ ±|Aut Γ|·coeff over terms of `c` whose underlying class is Γ.
pub fn pairing(cochain: &OrientedClass, c: &ChainVector) -> Q {
    if cochain.sign == 0 {
        return Q::zero();
    }
    let target = cochain.canonical.forget_directions();
    let aut = Q::from_integer(BigInt::from(aut_order_unchecked(&target)));
    let mut total = Q::zero();
    for (g, coeff) in c.terms() {
        let f = canonical_form(&g.forget_directions());
        if f.sign == 0 || f.graph != target {
            continue;
        }
        let s = i64::from(f.sign * cochain.sign);
        total += coeff * &aut * Q::from_integer(BigInt::from(s));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::q;

    #[test]
    fn ranks() {
        assert_eq!(rank(&SparseRationalMatrix::new(3, 4)), 0);
        assert_eq!(rank(&SparseRationalMatrix::identity(5)), 5);
        let m = SparseRationalMatrix::from_dense(&[
            vec![q(1, 2), q(1, 3), q(1, 1)],
            vec![q(1, 1), q(2, 3), q(2, 1)],
            vec![q(0, 1), q(1, 1), q(5, 7)],
        ]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn export_round_trip() {
        let m = SparseRationalMatrix::from_dense(&[vec![q(-3, 4), q(0, 1)], vec![q(0, 1), q(5, 1)]]);
        let t = m.export();
        assert_eq!(t, "2 2\n1 1 -3/4\n2 2 5/1\n");
        assert_eq!(SparseRationalMatrix::import(&t).unwrap(), m);
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel_basis(&[vec![q(1, 1), q(2, 1), q(3, 1)]], 3);
        assert_eq!(k.len(), 2);
        for v in k {
            assert_eq!(&v[0] + q(2, 1) * &v[1] + q(3, 1) * &v[2], q(0, 1));
        }
    }
}
