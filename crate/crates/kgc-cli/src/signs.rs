use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use serde_json::json;

use kgc::formats::parse_document;
use kgc::signs::{half_edge_orientation, jacobi_closed_form, jacobi_signs, linf_relation, linf_relation_symbolic, render_relation};

use crate::out::{sign_str, Out};
use crate::CmdResult;

#[derive(Clone, Copy, ValueEnum)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn is_odd(self) -> bool {
        matches!(self, Parity::Odd)
    }
}

#[derive(Subcommand)]
pub enum SignsCmd {
    /// Coefficients of the three faces in ∂[a,b,c] for frames of sizes p, q, r.
    Jacobi {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: usize,
    },
    /// Vertex words and signs of the half-edge orientation of directed graphs.
    Halfedge {
        file: PathBuf,
        /// Parity of k (deg e+ = k-1, deg e- = k).
        #[arg(long, value_enum, default_value = "odd")]
        k: Parity,
    },
    /// The one-edge L∞ relation ∂[x_1, …, x_{l-1}] for inputs of degree n.
    Linf {
        #[arg(long)]
        l: usize,
        /// Evaluate at a parity of n instead of printing (-1)^n symbolically.
        #[arg(long, value_enum)]
        n: Option<Parity>,
    },
}

pub fn run(cmd: SignsCmd, out: &mut Out) -> CmdResult {
    match cmd {
        SignsCmd::Jacobi { p, q, r } => {
            let c = jacobi_signs(p, q, r).map_err(|e| e.to_string())?;
            let closed = jacobi_closed_form(p, q, r);
            let agree = c == closed;
            out.text(format!(
                "coefficients of [[a,b],c], [[b,c],a], [[c,a],b]: {} {} {}",
                c[0], c[1], c[2]
            ));
            out.text(format!(
                "closed form 1, (-1)^(pq+pr), (-1)^(pr+qr): {} {} {} ({})",
                closed[0],
                closed[1],
                closed[2],
                if agree { "agree" } else { "DISAGREE" }
            ));
            out.record(
                "signs.jacobi",
                json!({ "p": p, "q": q, "r": r, "coefficients": c, "closed_form": closed, "agree": agree }),
            );
            Ok(agree)
        }
        SignsCmd::Halfedge { file, k } => {
            let text = std::fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let doc = parse_document(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            for (name, g) in &doc.graphs {
                let o = half_edge_orientation(g, k.is_odd()).map_err(|e| format!("{name}: {e}"))?;
                out.text(format!("{name}: global sign {}", sign_str(o.global_sign)));
                for w in &o.words {
                    let word: Vec<String> = w.word.iter().map(ToString::to_string).collect();
                    out.text(format!("  vertex {}: {}({})", w.vertex + 1, sign_str(w.sign), word.join(" ")));
                    out.record(
                        "signs.halfedge",
                        json!({ "graph": name, "vertex": w.vertex + 1, "sign": w.sign, "word": word }),
                    );
                }
            }
            Ok(true)
        }
        SignsCmd::Linf { l, n } => {
            match n {
                None => {
                    let rel = linf_relation_symbolic(l).map_err(|e| e.to_string())?;
                    out.text(format!("{} terms", rel.len()));
                    out.text(render_relation(&rel));
                    for (c, b) in &rel {
                        out.record("signs.linf", json!({ "l": l, "coefficient": c.to_string(), "bracket": b.to_string() }));
                    }
                }
                Some(par) => {
                    let rel = linf_relation(l, par.is_odd()).map_err(|e| e.to_string())?;
                    out.text(format!("{} terms", rel.len()));
                    let mut s = String::new();
                    for (i, t) in rel.iter().enumerate() {
                        if t.sign < 0 {
                            s.push('-');
                        } else if i > 0 {
                            s.push('+');
                        }
                        s.push_str(&t.bracket.to_string());
                    }
                    out.text(s);
                    for t in &rel {
                        out.record("signs.linf", json!({ "l": l, "coefficient": t.sign, "bracket": t.bracket.to_string() }));
                    }
                }
            }
            Ok(true)
        }
    }
}
