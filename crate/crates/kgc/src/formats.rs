//! Text formats for graphs and chains.
//!
//! ```text
//! graph X vertices=6
//! e 1 2
//! e 1 3
//! ...
//! 1/5 X
//! -1/2 Y
//! ```
//!
//! Vertices are 1-based in text. Lines starting with `#` are ignored.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::complex::{ChainVector, Q};
use crate::graphs::{GradedDegrees, LabelledGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn perr(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

pub fn parse_rational(s: &str) -> Option<Q> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

pub fn format_rational(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn write_graph(name: &str, g: &LabelledGraph) -> String {
    let mut s = format!("graph {} vertices={}", name, g.vertex_count());
    if g.is_directed() {
        s.push_str(" directed");
    }
    s.push('\n');
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "e {} {}", u + 1, v + 1);
    }
    s
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub graphs: Vec<(String, LabelledGraph)>,
    pub chain: Vec<(Q, String)>,
}

impl Document {
    pub fn graph(&self, name: &str) -> Option<&LabelledGraph> {
        self.graphs.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    /// The chain lines as a [`ChainVector`]; every referenced graph must be
    /// defined and valid, and all must share a bigrading.
    pub fn to_chain(&self) -> Result<ChainVector, ParseError> {
        let mut out: Option<ChainVector> = None;
        for (coeff, name) in &self.chain {
            let g = self.graph(name).ok_or_else(|| perr(0, format!("undefined graph `{name}`")))?;
            let c = ChainVector::from_graph(g, coeff.clone()).map_err(|e| perr(0, format!("graph `{name}`: {e}")))?;
            match &mut out {
                None => out = Some(c),
                Some(acc) => acc.add_assign(&c).map_err(|e| perr(0, e.to_string()))?,
            }
        }
        out.ok_or_else(|| perr(0, "no chain lines"))
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (name, g) in &self.graphs {
            s.push_str(&write_graph(name, g));
        }
        for (c, name) in &self.chain {
            let _ = writeln!(s, "{} {}", format_rational(c), name);
        }
        s
    }
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut doc = Document::default();
    let mut current: Option<(String, usize, bool, Vec<(usize, usize)>, usize)> = None;
    let finish = |cur: &mut Option<(String, usize, bool, Vec<(usize, usize)>, usize)>,
                  doc: &mut Document|
     -> Result<(), ParseError> {
        if let Some((name, k, directed, edges, line)) = cur.take() {
            let g = LabelledGraph::raw(k, edges, directed).map_err(|e| perr(line, e.to_string()))?;
            if doc.graph(&name).is_some() {
                return Err(perr(line, format!("duplicate graph `{name}`")));
            }
            doc.graphs.push((name, g));
        }
        Ok(())
    };
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "graph" => {
                finish(&mut current, &mut doc)?;
                if toks.len() < 3 || toks.len() > 4 {
                    return Err(perr(ln, "expected `graph <name> vertices=<k> [directed]`"));
                }
                let k = toks[2]
                    .strip_prefix("vertices=")
                    .and_then(|v| v.parse::<usize>().ok())
                    .ok_or_else(|| perr(ln, "expected vertices=<k>"))?;
                let directed = match toks.get(3) {
                    None => false,
                    Some(&"directed") => true,
                    Some(t) => return Err(perr(ln, format!("unknown flag `{t}`"))),
                };
                current = Some((toks[1].to_string(), k, directed, Vec::new(), ln));
            }
            "e" => {
                let Some(cur) = current.as_mut() else {
                    return Err(perr(ln, "edge outside a graph block"));
                };
                if toks.len() != 3 {
                    return Err(perr(ln, "expected `e <u> <v>`"));
                }
                let u: usize = toks[1].parse().map_err(|_| perr(ln, "bad vertex"))?;
                let v: usize = toks[2].parse().map_err(|_| perr(ln, "bad vertex"))?;
                if u == 0 || v == 0 || u > cur.1 || v > cur.1 {
                    return Err(perr(ln, "vertex out of range"));
                }
                cur.3.push((u - 1, v - 1));
            }
            _ => {
                finish(&mut current, &mut doc)?;
                if toks.len() != 2 {
                    return Err(perr(ln, format!("unrecognized line `{line}`")));
                }
                let c = parse_rational(toks[0]).ok_or_else(|| perr(ln, "bad coefficient"))?;
                doc.chain.push((c, toks[1].to_string()));
            }
        }
    }
    finish(&mut current, &mut doc)?;
    for (_, name) in &doc.chain {
        if doc.graph(name).is_none() {
            return Err(perr(0, format!("undefined graph `{name}`")));
        }
    }
    Ok(doc)
}

/// Renders a chain with graphs named `<prefix>1`, `<prefix>2`, ... in term order.
pub fn write_chain(c: &ChainVector, prefix: &str) -> String {
    let mut doc = Document::default();
    for (i, (g, coeff)) in c.terms().iter().enumerate() {
        let name = format!("{prefix}{}", i + 1);
        doc.graphs.push((name.clone(), g.clone()));
        doc.chain.push((coeff.clone(), name));
    }
    doc.render()
}

pub fn parse_chain(text: &str) -> Result<ChainVector, ParseError> {
    parse_document(text)?.to_chain()
}

pub fn format_grading(g: GradedDegrees) -> String {
    format!("(n={}, m={})", g.n, g.m)
}
