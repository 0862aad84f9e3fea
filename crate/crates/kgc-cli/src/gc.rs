use std::path::PathBuf;

use clap::Subcommand;
use num_bigint::BigInt;
use serde_json::{json, Value};

use kgc::complex::{basis, derive_gamma, differential, eta, ChainVector, Q};
use kgc::formats::{format_grading, format_rational, parse_document, parse_rational, write_chain, Document};
use kgc::graphs::{automorphism_order, canonicalize, direction_orbits, LabelledGraph};
use kgc::homology::{boundary_matrix, pairing, rank};

use crate::out::{sign_str, Out};
use crate::CmdResult;

/// The cycle γ as produced by `kgc gc derive-gamma`.
pub const BUNDLED_GAMMA: &str = include_str!("../data/gamma.txt");

#[derive(Subcommand)]
pub enum GcCmd {
    /// Nonvanishing canonical classes of bidegree (n, m).
    Basis {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        directed: bool,
        /// Print the graphs, not just the count.
        #[arg(long)]
        list: bool,
    },
    /// Apply the differential to a chain file.
    Diff { file: PathBuf },
    /// dim H at (n, m) of the complex truncated above excess `mu`.
    Homology {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        /// Truncation; defaults to no truncation (2n-1).
        #[arg(long)]
        mu: Option<i64>,
        #[arg(long)]
        directed: bool,
    },
    /// Check that a chain is a cycle; pair it with graph `X` if present.
    /// Without a file the bundled γ is used.
    VerifyCycle { file: Option<PathBuf> },
    /// Recover γ = X/5 - Y/2 by solving for a cycle through the 5-spoke wheel.
    DeriveGamma,
    /// η(scale · c) for an undirected chain.
    Eta {
        file: PathBuf,
        #[arg(long, default_value = "1")]
        scale: String,
    },
    /// ⟨Γ, c⟩ with Γ the first graph of the cochain file.
    Pair {
        #[arg(long)]
        cochain: PathBuf,
        #[arg(long)]
        chain: PathBuf,
    },
    /// Automorphism orders and orientation signs of every graph in a file.
    Aut { file: PathBuf },
    /// Orbits of direction assignments under the automorphism group.
    Orbits { file: PathBuf },
}

pub fn run(cmd: GcCmd, out: &mut Out) -> CmdResult {
    match cmd {
        GcCmd::Basis { n, m, directed, list } => cmd_basis(n, m, directed, list, out),
        GcCmd::Diff { file } => {
            let c = read_chain(&file)?;
            let d = differential(&c);
            emit_chain("gc.diff", &d, "d", out);
            Ok(true)
        }
        GcCmd::Homology { n, m, mu, directed } => cmd_homology(n, m, mu, directed, out),
        GcCmd::VerifyCycle { file } => {
            let (name, text) = match file {
                Some(p) => (p.display().to_string(), read(&p)?),
                None => ("bundled γ".to_string(), BUNDLED_GAMMA.to_string()),
            };
            let doc = parse_document(&text).map_err(|e| format!("{name}: {e}"))?;
            verify_cycle(&doc, out)
        }
        GcCmd::DeriveGamma => {
            out.block(&gamma_document()?);
            Ok(true)
        }
        GcCmd::Eta { file, scale } => {
            let s = parse_rational(&scale).ok_or_else(|| format!("bad scale `{scale}`"))?;
            let c = read_chain(&file)?;
            let e = eta(&c.scaled(&s)).map_err(|e| e.to_string())?;
            emit_chain("gc.eta", &e, "d", out);
            Ok(true)
        }
        GcCmd::Pair { cochain, chain } => {
            let doc = read_doc(&cochain)?;
            let (name, g) = doc.graphs.first().ok_or("cochain file defines no graph")?;
            let class = canonicalize(g).map_err(|e| format!("{name}: {e}"))?;
            let c = read_chain(&chain)?;
            let v = pairing(&class, &c);
            out.text(format!("pairing with {name}: {}", show(&v)));
            out.record("gc.pair", json!({ "cochain": name, "value": format_rational(&v) }));
            Ok(true)
        }
        GcCmd::Aut { file } => {
            let doc = read_doc(&file)?;
            for (name, g) in &doc.graphs {
                let class = canonicalize(g).map_err(|e| format!("{name}: {e}"))?;
                let aut = automorphism_order(g).map_err(|e| format!("{name}: {e}"))?;
                out.text(format!("{name}: |Aut| = {aut}, orientation sign {}", sign_str(class.sign)));
                out.record(
                    "gc.aut",
                    json!({ "graph": name, "directed": g.is_directed(), "aut": aut, "sign": class.sign }),
                );
            }
            Ok(true)
        }
        GcCmd::Orbits { file } => {
            let doc = read_doc(&file)?;
            for (name, g) in &doc.graphs {
                let orbits = direction_orbits(g).map_err(|e| format!("{name}: {e}"))?;
                let e = g.edge_count();
                out.text(format!("{name}: 2^{e} direction assignments in {} orbits", orbits.len()));
                for o in &orbits {
                    let bits = direction_bits(o.representative, e);
                    let aut = automorphism_order(&g.with_directions(o.representative)).map_err(|e| e.to_string())?;
                    out.text(format!("  reversed={bits} size={} |Aut(G,a)|={aut}", o.size));
                    out.record(
                        "gc.orbit",
                        json!({ "graph": name, "reversed": bits, "size": o.size, "aut": aut }),
                    );
                }
            }
            Ok(true)
        }
    }
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_doc(path: &PathBuf) -> Result<Document, String> {
    parse_document(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_chain(path: &PathBuf) -> Result<ChainVector, String> {
    read_doc(path)?.to_chain().map_err(|e| format!("{}: {e}", path.display()))
}

/// `1` at position i when edge i+1 is reversed.
fn direction_bits(alpha: u64, edges: usize) -> String {
    (0..edges).map(|i| if alpha >> i & 1 == 1 { '1' } else { '0' }).collect()
}

/// Integers without the `/1`.
fn show(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format_rational(x)
    }
}

fn edges_json(g: &LabelledGraph) -> Value {
    Value::from(g.edges().iter().map(|&(u, v)| vec![u + 1, v + 1]).collect::<Vec<_>>())
}

fn emit_chain(kind: &str, c: &ChainVector, prefix: &str, out: &mut Out) {
    out.text(format!("# {} terms at {}", c.len(), format_grading(c.grading())));
    out.block(&write_chain(c, prefix));
    for (g, x) in c.terms() {
        out.record(
            kind,
            json!({ "coeff": format_rational(x), "directed": g.is_directed(), "vertices": g.vertex_count(), "edges": edges_json(g) }),
        );
    }
}

fn cmd_basis(n: i64, m: i64, directed: bool, list: bool, out: &mut Out) -> CmdResult {
    let b = basis(n, m, directed);
    let kind = if directed { "directed" } else { "undirected" };
    out.text(format!("basis {}: {} classes ({kind})", format_grading(kgc::graphs::GradedDegrees { n, m }), b.len()));
    for (i, c) in b.iter().enumerate() {
        let aut = automorphism_order(&c.canonical).map_err(|e| e.to_string())?;
        if list {
            out.text(format!("# |Aut| = {aut}"));
            out.block(&kgc::formats::write_graph(&format!("b{}", i + 1), &c.canonical));
        }
        out.record(
            "gc.basis",
            json!({ "n": n, "m": m, "directed": directed, "index": i + 1, "aut": aut, "edges": edges_json(&c.canonical) }),
        );
    }
    Ok(true)
}

fn cmd_homology(n: i64, m: i64, mu: Option<i64>, directed: bool, out: &mut Out) -> CmdResult {
    if n < 1 || m < 0 || m > 2 * n - 1 {
        return Err(format!("need n >= 1 and 0 <= m <= 2n-1, got n={n}, m={m}"));
    }
    let mu = mu.unwrap_or(2 * n - 1);
    if m > mu {
        return Err(format!("m={m} exceeds the truncation mu={mu}"));
    }
    let dim = basis(n, m, directed).len();
    let out_rank = if m >= 1 { rank(&boundary_matrix(n, m, directed)) } else { 0 };
    let in_rank = if m < mu { rank(&boundary_matrix(n, m + 1, directed)) } else { 0 };
    let h = dim - out_rank - in_rank;
    out.text(format!(
        "H {} (mu={mu}): dim {h} (chains {dim}, rank out {out_rank}, rank in {in_rank})",
        format_grading(kgc::graphs::GradedDegrees { n, m })
    ));
    out.record(
        "gc.homology",
        json!({ "n": n, "m": m, "mu": mu, "directed": directed, "dim": h, "chains": dim, "rank_out": out_rank, "rank_in": in_rank }),
    );
    Ok(true)
}

/// The γ document: the labelled wheel `X`, the derived partner `Y`, and the
/// coefficients relative to those labellings.
pub fn gamma_document() -> Result<String, String> {
    let g = derive_gamma().map_err(|e| e.to_string())?;
    let mut doc = Document::default();
    doc.graphs.push(("X".into(), g.x.clone()));
    doc.graphs.push(("Y".into(), g.y.clone()));
    for name in ["X", "Y"] {
        let graph = doc.graph(name).expect("just added");
        let class = canonicalize(graph).map_err(|e| e.to_string())?;
        let coeff = g.chain.coefficient(&class.canonical) * Q::from_integer(BigInt::from(class.sign));
        doc.chain.push((coeff, name.to_string()));
    }
    let mut text = String::from("# gamma = X/5 - Y/2, Y found by cycle search through X\n");
    text.push_str(&doc.render());
    Ok(text)
}

fn verify_cycle(doc: &Document, out: &mut Out) -> CmdResult {
    let c = doc.to_chain().map_err(|e| e.to_string())?;
    let d = differential(&c);
    let is_cycle = d.is_empty();
    let mut line = if is_cycle {
        "cycle: yes".to_string()
    } else {
        format!("cycle: no ({} boundary terms)", d.len())
    };
    let mut record = json!({ "cycle": is_cycle, "boundary_terms": d.len() });
    if let Some(x) = doc.graph("X") {
        let class = canonicalize(x).map_err(|e| format!("X: {e}"))?;
        if c.is_directed() {
            let v = pairing(&class, &c);
            line.push_str(&format!("; pairing with X: {}", show(&v)));
            record["pairing"] = Value::from(format_rational(&v));
        } else {
            let e = x.edge_count();
            let scale = Q::from_integer(BigInt::from(1) << e);
            let directed = eta(&c.scaled(&scale)).map_err(|e| e.to_string())?;
            let v = pairing(&class, &directed);
            line.push_str(&format!("; pairing with X: {} (after η·2^{e})", show(&v)));
            record["pairing"] = Value::from(format_rational(&v));
            record["eta_scale_exponent"] = Value::from(e);
        }
    }
    out.text(line);
    out.record("gc.verify_cycle", record);
    Ok(is_cycle)
}
