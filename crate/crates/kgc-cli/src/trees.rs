use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::Subcommand;
use num_bigint::BigInt;
use serde_json::json;

use kgc::complex::{derive_gamma, eta, q};
use kgc::dimcalc::MultiplicityLedger;
use kgc::formats::parse_document;
use kgc::trees::{complex_homology, decomposition_poset, direction_extensions, enumerate_trees, lie_hedron, SimplicialComplex};

use crate::out::Out;
use crate::CmdResult;

#[derive(Subcommand)]
pub enum TreesCmd {
    /// Trees with `l` labelled leaves and the given excess.
    Enum {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        excess: usize,
        /// List every direction of the internal edges, leaves 1..p incoming.
        #[arg(long)]
        directed: Option<usize>,
    },
    /// The Lie-hedron of trees with `l` leaves: f-vector, Euler characteristic.
    Liehedron {
        #[arg(long)]
        l: usize,
        /// Also list the facets.
        #[arg(long)]
        facets: bool,
    },
    /// Rational Betti numbers of a Lie-hedron or of the graphs in a file.
    Betti {
        #[arg(long, conflicts_with = "graph")]
        l: Option<usize>,
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Decomposition poset of an integral directed cycle; by default 5·η(2^10 γ).
    Decompose {
        file: Option<PathBuf>,
        /// List every node.
        #[arg(long)]
        nodes: bool,
    },
}

pub fn run(cmd: TreesCmd, out: &mut Out) -> CmdResult {
    match cmd {
        TreesCmd::Enum { l, excess, directed } => {
            let trees = enumerate_trees(l, excess).map_err(|e| e.to_string())?;
            let trees = match directed {
                None => trees,
                Some(p) => {
                    if p > l {
                        return Err(format!("p={p} exceeds l={l}"));
                    }
                    let mut all = Vec::new();
                    for t in &trees {
                        all.extend(direction_extensions(t, p, l - p).map_err(|e| e.to_string())?);
                    }
                    all
                }
            };
            out.text(format!("{} trees with {l} leaves and excess {excess}", trees.len()));
            for t in &trees {
                out.text(t.to_string());
                out.record(
                    "trees.enum",
                    json!({ "l": l, "excess": excess, "tree": t.to_string(), "valences": t.internal_valences() }),
                );
            }
            Ok(true)
        }
        TreesCmd::Liehedron { l, facets } => {
            let k = lie_hedron(l).map_err(|e| e.to_string())?;
            let f = k.f_vector();
            let chi = k.euler_characteristic();
            out.text(format!("L_{} ({} leaves): dimension {}", l - 1, l, k.dimension()));
            out.text(format!("f-vector {}", join(&f)));
            out.text(format!("euler characteristic {chi}"));
            if facets {
                for fct in &k.facets {
                    let labels: Vec<&str> = fct.iter().map(|&i| k.vertex_labels[i].as_str()).collect();
                    out.text(format!("  {{{}}}", labels.join(", ")));
                }
            }
            out.record(
                "trees.liehedron",
                json!({ "l": l, "dimension": k.dimension(), "f_vector": f, "euler": chi }),
            );
            Ok(true)
        }
        TreesCmd::Betti { l, graph } => {
            let complexes: Vec<(String, SimplicialComplex)> = match (l, graph) {
                (Some(l), None) => vec![(format!("L_{}", l - 1), lie_hedron(l).map_err(|e| e.to_string())?)],
                (None, Some(p)) => {
                    let text = std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
                    let doc = parse_document(&text).map_err(|e| format!("{}: {e}", p.display()))?;
                    doc.graphs.iter().map(|(n, g)| (n.clone(), SimplicialComplex::from_graph(g))).collect()
                }
                _ => return Err("give exactly one of --l or --graph".into()),
            };
            for (name, k) in &complexes {
                let b = complex_homology(k);
                out.text(format!("{name}: betti {}", join(&b)));
                out.record("trees.betti", json!({ "name": name, "betti": b }));
            }
            Ok(true)
        }
        TreesCmd::Decompose { file, nodes } => {
            let cycle = match file {
                Some(p) => {
                    let text = std::fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
                    let doc = parse_document(&text).map_err(|e| format!("{}: {e}", p.display()))?;
                    doc.to_chain().map_err(|e| format!("{}: {e}", p.display()))?
                }
                None => {
                    let g = derive_gamma().map_err(|e| e.to_string())?;
                    eta(&g.chain.scaled(&q(5 * 1024, 1))).map_err(|e| e.to_string())?
                }
            };
            let poset = decomposition_poset(&cycle, &MultiplicityLedger::unit()).map_err(|e| e.to_string())?;
            let mut by_excess: BTreeMap<i64, (usize, u64, usize)> = BTreeMap::new();
            for node in &poset.nodes {
                let e = by_excess.entry(node.excess).or_default();
                e.0 += 1;
                e.1 += node.copies;
                e.2 += usize::from(node.vanishing);
            }
            for (excess, (count, copies, vanishing)) in by_excess.iter().rev() {
                out.text(format!(
                    "excess {excess}: {count} directed graphs, {copies} copies, {vanishing} vanishing, n = {}",
                    1u64 << excess
                ));
                out.record(
                    "trees.decompose.level",
                    json!({ "excess": excess, "graphs": count, "copies": copies, "vanishing": vanishing, "n": 1u64 << excess }),
                );
            }
            out.text(format!("contractions {}", poset.contractions.len()));
            out.text(format!("mu = {}", poset.mu));
            out.record(
                "trees.decompose",
                json!({ "contractions": poset.contractions.len(), "mu": poset.mu.to_string() }),
            );
            if nodes {
                for (i, node) in poset.nodes.iter().enumerate() {
                    let edges: Vec<String> =
                        node.graph.edges().iter().map(|&(u, v)| format!("{}>{}", u + 1, v + 1)).collect();
                    out.text(format!(
                        "  [{}] excess {} copies {} m = {} edges {}",
                        i + 1,
                        node.excess,
                        node.copies,
                        node.m_gamma,
                        edges.join(" ")
                    ));
                    out.record(
                        "trees.decompose.node",
                        json!({ "index": i + 1, "excess": node.excess, "copies": node.copies, "m": big(&node.m_gamma), "edges": edges }),
                    );
                }
            }
            Ok(true)
        }
    }
}

fn big(x: &BigInt) -> String {
    x.to_string()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
