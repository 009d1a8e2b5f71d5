//! `tdkit` command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure (payload carries the
//! witness), 2 usage or input error, 3 size/budget refusal, 4 indeterminate.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Failure, Format};

#[derive(Parser, Debug)]
#[command(name = "tdkit", version, about = "Tree-depth and sparse-graph toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for random graph families.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Override the exact-search size limit of the command.
    #[arg(long, global = true)]
    pub exact_limit: Option<usize>,
    /// Override the search step budget of the command.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Measure {
    Grad,
    Topgrad,
    Immgrad,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CountMethod {
    Ltd,
    Bruteforce,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact tree-depth with an elimination forest witness.
    Td { input: String },
    /// Low tree-depth coloring with parameter p.
    Decompose {
        #[arg(short)]
        p: usize,
        input: String,
    },
    /// Verify a decomposition produced by `decompose`.
    VerifyLtd {
        /// JSON file with `colors` and `p`.
        #[arg(long)]
        decomposition: String,
        /// Overrides `p` from the file.
        #[arg(short)]
        p: Option<usize>,
        input: String,
    },
    /// Count copies of a pattern.
    Count {
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value = "subgraph")]
        mode: String,
        #[arg(long, value_enum, default_value = "ltd")]
        method: CountMethod,
        input: String,
    },
    /// Shallow minor, topological minor or immersion density.
    Density {
        #[arg(long, value_enum, default_value = "grad")]
        measure: Measure,
        #[arg(short, default_value_t = 1)]
        r: usize,
        input: String,
    },
    /// Density trajectory of a graph family (CSV by default).
    DensityProfile {
        /// subdivided_cliques:p | grids | bounded_degree:d | trees
        #[arg(long)]
        family: String,
        #[arg(short, default_value_t = 1)]
        r: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [3, 4, 5])]
        sizes: Vec<usize>,
    },
    /// Coloring separating vertices at distance exactly n.
    Dncolor {
        #[arg(short)]
        n: usize,
        input: String,
    },
    /// Greedy r-neighborhood cover.
    Cover {
        #[arg(short)]
        r: usize,
        input: String,
    },
    /// Largest set of vertices pairwise at odd distance.
    Oddset { input: String },
    /// Homomorphism from the first graph to the second.
    Hom { source: String, target: String },
    /// Core with a retraction.
    Core { input: String },
    /// Check a duality pair against every graph file in a directory.
    DualCheck {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        dual: String,
        dir: String,
    },
    /// Exhaustive k-choosability.
    Choosable {
        #[arg(short)]
        k: usize,
        input: String,
    },
    /// Induced P_s, K_t and K_{q,q} scan.
    Scan {
        #[arg(long = "s")]
        s: usize,
        #[arg(long = "t")]
        t: usize,
        #[arg(long = "q")]
        q: usize,
        input: String,
    },
    /// Emit a catalog or generated graph as an edge list.
    Gen { spec: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("usage error").trim_start_matches("error: ");
            return output::report_failure(&Failure::Usage(first.to_string()));
        }
    };
    if let Some(t) = cli.global.threads {
        if t == 0 {
            return output::report_failure(&Failure::Usage("--threads must be at least 1".into()));
        }
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match commands::run(&cli) {
        Ok(out) => out.emit(cli.global.format),
        Err(f) => output::report_failure(&f),
    }
}
