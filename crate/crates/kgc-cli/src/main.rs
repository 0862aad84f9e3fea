//! `kgc`: command-line front end for the graph complex workbench.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod dim;
mod gc;
mod out;
mod signs;
mod trees;

use out::Out;

#[derive(Parser)]
#[command(name = "kgc", version, about = "Exact computations in the Kontsevich graph complex")]
struct Cli {
    /// Emit one JSON record per result instead of text.
    #[arg(long, global = true)]
    records: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graph complex: bases, differentials, homology, cycles, η and pairings.
    #[command(subcommand)]
    Gc(gc::GcCmd),
    /// Leaf-labelled trees, Lie-hedra and decomposition posets.
    #[command(subcommand)]
    Trees(trees::TreesCmd),
    /// Graded signs and L∞ relations.
    #[command(subcommand)]
    Signs(signs::SignsCmd),
    /// Dimension and multiplicity arithmetic.
    #[command(subcommand)]
    Dim(dim::DimCmd),
}

/// Outcome of a subcommand: `Ok(true)` success, `Ok(false)` a check that ran
/// but came out negative.
pub type CmdResult = Result<bool, String>;

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("KGC_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("KGC_THREADS must be a positive integer, got `{v}`"))?;
    if n == 0 {
        return Err("KGC_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let mut out = Out::new(cli.records);
    let result = match cli.command {
        Command::Gc(c) => gc::run(c, &mut out),
        Command::Trees(c) => trees::run(c, &mut out),
        Command::Signs(c) => signs::run(c, &mut out),
        Command::Dim(c) => dim::run(c, &mut out),
    };
    match result {
        Ok(ok) => {
            out.flush();
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
