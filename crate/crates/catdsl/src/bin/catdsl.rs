//! Command line front end.
//!
//! Reads a workspace file, optionally runs one query against it, and
//! writes the result to stdout in the chosen format.  Without a query
//! the canonical form of the workspace is printed, which is also the
//! round-trip check: feeding the output back in reproduces it.

use catdsl::{emit, parse_query, parse_workspace_with, run_query, Format, ResolveOptions};
use clap::Parser;
use fincat::exec::{set_mode, ExecMode};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "catdsl", about = "Run queries against a workspace of finite categories")]
struct Args {
    /// Workspace file to load.
    #[arg(long)]
    input: PathBuf,

    /// Query to run; omit to print the canonical form of the workspace.
    #[arg(long)]
    query: Option<String>,

    /// Output format: text, json, or dot.
    #[arg(long, default_value = "text")]
    format: String,

    /// Overrides the bound of every monoid in the file.
    #[arg(long)]
    bound: Option<usize>,

    /// Worker threads: 1 forces sequential evaluation, more configures
    /// the data-parallel pool.  Results are identical either way.
    #[arg(long)]
    parallel: Option<usize>,

    /// Accepted for compatibility with corpus-generation tooling; every
    /// query here is deterministic, so the seed is not consulted.
    #[arg(long)]
    seed: Option<u64>,
}

fn run(args: &Args) -> Result<String, String> {
    let format = Format::from_name(&args.format)
        .ok_or_else(|| format!("unknown format '{}', expected text, json, or dot", args.format))?;
    match args.parallel {
        None => {}
        Some(0) => return Err("--parallel must be at least 1".to_string()),
        Some(1) => set_mode(ExecMode::Sequential),
        Some(n) => {
            set_mode(ExecMode::Parallel);
            // The global pool can only be sized once per process; a
            // rebuild attempt after that is not an error worth failing on.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let _ = args.seed;
    let src = std::fs::read_to_string(&args.input)
        .map_err(|e| format!("cannot read {}: {e}", args.input.display()))?;
    let opts = ResolveOptions { bound_override: args.bound };
    let ws = parse_workspace_with(&src, opts).map_err(|e| e.to_string())?;
    match &args.query {
        None => Ok(catdsl::print_workspace(&ws.ast)),
        Some(q) => {
            let query = parse_query(q).map_err(|e| format!("in query: {e}"))?;
            let result = run_query(&ws, &query).map_err(|e| e.to_string())?;
            Ok(emit(&result, format))
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
