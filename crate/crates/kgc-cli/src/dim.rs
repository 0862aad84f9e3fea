use std::collections::BTreeMap;

use clap::Subcommand;
use num_bigint::BigInt;
use serde_json::json;

use kgc::dimcalc::{
    band_check, cfs_check, excess_dimension_bound, feasible_n_range, multiplicity, vertex_family, MultiplicityLedger,
};

use crate::out::Out;
use crate::CmdResult;

#[derive(Subcommand)]
pub enum DimCmd {
    /// Type chain and dimension of the family at an l-valent vertex.
    VertexFamily {
        #[arg(long)]
        l: i64,
        #[arg(long)]
        j: i64,
        #[arg(long)]
        k: i64,
        /// Defaults to the least feasible n.
        #[arg(long)]
        n: Option<i64>,
    },
    /// Feasible n for (l, k), and the thresholds on 2k.
    Feasible {
        #[arg(long)]
        l: i64,
        #[arg(long)]
        k: i64,
    },
    /// Conditions (a), (b), (c) for link components p_1, …, p_r in S^m.
    Cfs {
        /// Comma-separated component dimensions.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<i64>,
        #[arg(long)]
        m: i64,
    },
    /// Degree and band of an (n, m) cycle in dimension 2k; excess bound.
    Bands {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        k: i64,
    },
    /// m_l, μ∂_l and the divisibility ledger.
    Multiplicity {
        #[arg(long)]
        l: usize,
        /// Parameter q_l as `l=value`; repeatable.
        #[arg(long = "q")]
        q: Vec<String>,
        /// Parameter r_l as `l=value`; repeatable.
        #[arg(long = "r")]
        r: Vec<String>,
    },
}

fn params(xs: &[String]) -> Result<BTreeMap<usize, BigInt>, String> {
    xs.iter()
        .map(|s| {
            let (l, v) = s.split_once('=').ok_or_else(|| format!("expected l=value, got `{s}`"))?;
            let l = l.trim().parse().map_err(|_| format!("bad l in `{s}`"))?;
            let v = v.trim().parse().map_err(|_| format!("bad value in `{s}`"))?;
            Ok((l, v))
        })
        .collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn run(cmd: DimCmd, out: &mut Out) -> CmdResult {
    match cmd {
        DimCmd::VertexFamily { l, j, k, n } => {
            let f = vertex_family(l, j, k, n).map_err(|e| e.to_string())?;
            out.text(format!("l={l} j={j} k={k} n={} delta={} a={}", f.n, f.delta, f.a));
            out.text(format!("start      {}", f.start));
            out.text(format!("suspended  {}", f.suspended));
            out.text(format!("final      {}", f.final_type));
            out.text(format!("a-vector   ({})", join(&f.a_vec)));
            out.text(format!("dim sphere {}  total {}", f.sphere_dim, f.total_dim));
            out.text(format!("slack {} ({})", f.slack, if f.strict() { "strict" } else { "equality" }));
            out.record(
                "dim.vertex_family",
                json!({
                    "l": l, "j": j, "k": k, "n": f.n, "delta": f.delta, "a": f.a, "a_vec": f.a_vec,
                    "start": f.start.to_string(), "final": f.final_type.to_string(),
                    "sphere_dim": f.sphere_dim, "total_dim": f.total_dim, "slack": f.slack,
                }),
            );
            Ok(true)
        }
        DimCmd::Feasible { l, k } => {
            let r = feasible_n_range(l, k).map_err(|e| e.to_string())?;
            match r.range() {
                Some((lo, hi)) => out.text(format!("l={l} k={k}: n in [{lo}, {hi}]")),
                None => out.text(format!("l={l} k={k}: no feasible n")),
            }
            out.text(format!("sufficient: 2k >= {}", r.general_threshold));
            out.text(format!(
                "with n >= 2l-3: 2k >= {} ({})",
                r.large_n_threshold,
                if r.large_n_exists { "feasible here" } else { "not feasible here" }
            ));
            out.record(
                "dim.feasible",
                json!({
                    "l": l, "k": k, "range": r.range().map(|(a, b)| vec![a, b]),
                    "general_threshold": r.general_threshold.to_string(),
                    "large_n_threshold": r.large_n_threshold, "large_n_exists": r.large_n_exists,
                }),
            );
            Ok(true)
        }
        DimCmd::Cfs { p, m } => {
            let rep = cfs_check(&p, m).map_err(|e| e.to_string())?;
            let a_ok: Vec<usize> = rep.a.iter().filter(|x| x.1).map(|x| x.0 + 1).collect();
            out.text(format!("(a) {}{}", rep.a_verdict(), if a_ok.is_empty() { String::new() } else { format!(" at components {}", join(&a_ok)) }));
            let solvable: Vec<String> = rep
                .b_equation
                .iter()
                .filter(|x| x.1.is_some())
                .map(|((i, j), _)| format!("({},{})", i + 1, j + 1))
                .collect();
            out.text(format!(
                "(b) {} (equation solvable for pairs: {})",
                rep.b_verdict(),
                if solvable.is_empty() { "none".to_string() } else { solvable.join(" ") }
            ));
            match &rep.c_witness {
                Some((s, x)) => out.text(format!(
                    "(c) {} components {} x = {}",
                    rep.c_verdict(),
                    join(&s.iter().map(|i| i + 1).collect::<Vec<_>>()),
                    join(x)
                )),
                None => out.text(format!("(c) {}", rep.c_verdict())),
            }
            for (cond, verdict) in [("a", rep.a_verdict()), ("b", rep.b_verdict()), ("c", rep.c_verdict())] {
                let witness = match cond {
                    "a" => json!(a_ok),
                    "b" => json!(solvable),
                    _ => json!(rep.c_witness.as_ref().map(|(s, x)| json!({ "components": s.iter().map(|i| i + 1).collect::<Vec<_>>(), "x": x }))),
                };
                out.record(
                    "dim.cfs",
                    json!({ "p": p, "m": m, "condition": cond, "verdict": verdict.to_string(), "witness": witness }),
                );
            }
            Ok(true)
        }
        DimCmd::Bands { n, m, k } => {
            let b = band_check(n, m, k).map_err(|e| e.to_string())?;
            out.text(format!(
                "degree {} in band [{}, {}]: {}",
                b.degree,
                b.band.0,
                b.band.1,
                if b.member { "yes" } else { "no" }
            ));
            out.text(format!("(n, m) in D(n, 2k): {}", if b.in_d { "yes" } else { "no" }));
            let bound = excess_dimension_bound(m);
            out.text(format!("excess bound at mu={m}: 2k >= {} (k >= {})", bound.even, bound.min_k));
            out.record(
                "dim.bands",
                json!({
                    "n": n, "m": m, "k": k, "degree": b.degree, "band": [b.band.0, b.band.1],
                    "member": b.member, "in_d": b.in_d, "bound_2k": bound.even, "min_k": bound.min_k,
                }),
            );
            Ok(b.member)
        }
        DimCmd::Multiplicity { l, q, r } => {
            let ledger = MultiplicityLedger::with_params(params(&q)?, params(&r)?).map_err(|e| e.to_string())?;
            let rep = multiplicity(l, &ledger).map_err(|e| e.to_string())?;
            match &rep.definition {
                Some(d) => out.text(format!("m_{l} = {d} = {}", rep.value)),
                None => out.text(format!("m_{l} = {}", rep.value)),
            }
            if let Some(mu) = &rep.mu_boundary {
                out.text(format!("mu_{l} = {mu}"));
            }
            let mut ok = true;
            for (p, qq, proved, numeric) in &rep.divisibility {
                ok &= *proved && *numeric;
                out.text(format!(
                    "m_{} m_{} | m_{l}: {} symbolically, {} numerically",
                    p + 1,
                    qq + 1,
                    if *proved { "proved" } else { "not proved" },
                    if *numeric { "holds" } else { "fails" }
                ));
            }
            for (vals, proved, integral) in &rep.faces {
                ok &= *proved && *integral;
                out.text(format!(
                    "face {}: mu / prod m {}, {}",
                    join(vals),
                    if *proved { "proved" } else { "not proved" },
                    if *integral { "integral" } else { "not integral" }
                ));
            }
            out.record(
                "dim.multiplicity",
                json!({
                    "l": l, "value": rep.value.to_string(),
                    "mu_boundary": rep.mu_boundary.as_ref().map(ToString::to_string),
                    "divisibility": rep.divisibility.iter().map(|(p, q, a, b)| json!({ "p": p, "q": q, "proved": a, "numeric": b })).collect::<Vec<_>>(),
                    "faces": rep.faces.iter().map(|(v, a, b)| json!({ "valences": v, "proved": a, "integral": b })).collect::<Vec<_>>(),
                }),
            );
            Ok(ok)
        }
    }
}
