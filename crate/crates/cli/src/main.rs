use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mrdlab::battery::Scope;
use mrdlab::matrix::{Side, DEFAULT_CAP};

mod commands;
mod output;

#[derive(Parser)]
#[command(name = "mrdlab", version, about = "Rank-metric codes, k-good random matrices and dense sets in matrix geometries")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Field order.
    #[arg(long, global = true, default_value_t = 2)]
    pub q: u32,
    /// Modulus of an extension field, constant coefficient first (e.g. 1,1,0,1).
    #[arg(long, global = true, value_delimiter = ',')]
    pub poly: Option<Vec<u16>>,
    /// Largest enumeration allowed, in states.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u128,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form counts checked against brute force.
    #[command(subcommand)]
    Count(CountCmd),
    /// Construct and check matrix codes.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Distributions on matrix spaces.
    #[command(subcommand)]
    Dist(DistCmd),
    /// Homogeneous weights.
    #[command(subcommand)]
    Homweight(HomweightCmd),
    /// Affine matrix geometries.
    #[command(subcommand)]
    Geom(GeomCmd),
    /// Minimum dense sets.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Random coding: joint laws, intersecting codes, F-sets.
    #[command(subcommand)]
    Rc(RcCmd),
    /// Run the reproduction battery.
    Verify {
        /// Skip the slow search and the Monte Carlo run.
        #[arg(long)]
        fast: bool,
        #[arg(long, value_parser = clap::builder::ValueParser::new(parse_scope))]
        scope: Option<Scope>,
        /// JSON instead of the TSV table.
        #[arg(long)]
        json: bool,
    },
}

fn parse_scope(s: &str) -> Result<Scope, String> {
    s.parse()
}

#[derive(Subcommand)]
pub enum CountCmd {
    /// Gaussian binomial [n choose m]_q.
    Gaussian {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: i64,
    },
    /// l-subspaces of F_q^n meeting a fixed m-subspace in dimension k.
    Intersecting {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Full-rank m x n matrices M with rank(M N^T) = k for a fixed rank-l N.
    Products {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Orbits of MRD codes under the matrix field action.
    Orbits {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand)]
pub enum CodeCmd {
    /// Gabidulin (m, n, k) code.
    Gabidulin {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Write the codewords here instead of printing a summary only.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether a code file is an (m, n, k) MRD code.
    Check {
        #[arg(long)]
        k: usize,
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args)]
pub struct DistSource {
    /// Distribution file (matrices with `w p/q` lines).
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Uniform distribution on the matrices of a file.
    #[arg(long)]
    pub uniform: Option<PathBuf>,
    /// Uniform distribution on all m x n matrices (needs --m and --n).
    #[arg(long)]
    pub full: bool,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Subcommand)]
pub enum DistCmd {
    /// Exact k-goodness verdict with a witness on failure.
    Check {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        source: DistSource,
    },
    /// Minimum-support classification.
    Classify {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        source: DistSource,
    },
}

#[derive(Subcommand)]
pub enum HomweightCmd {
    /// Rank to normalised weight table (TSV).
    Table {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        side: Side,
    },
}

#[derive(Subcommand)]
pub enum GeomCmd {
    /// Points and flat counts of the right geometry.
    Stats {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Whether a point set is k-dense.
    CheckDense {
        #[arg(long)]
        k: usize,
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum SearchCmd {
    /// Smallest k-dense set, or a decision at a given size.
    MinDense {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Decide whether a k-dense set of this size exists.
        #[arg(long)]
        decide: Option<usize>,
        #[arg(long, default_value_t = 1 << 32)]
        budget_nodes: u64,
        #[arg(long)]
        no_symmetry: bool,
        /// Write the witness point set here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Linear,
    Affine,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Singletons,
    Separating,
}

#[derive(Subcommand)]
pub enum RcCmd {
    /// Exact joint law of the codeword maps of a k-good distribution.
    JointCheck {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Linear)]
        mode: ModeArg,
        #[command(flatten)]
        source: DistSource,
    },
    /// Failure probability of k-wise intersection for uniform m x n matrices.
    Intersect {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Print only the closed-form bound.
        #[arg(long, conflicts_with = "estimate")]
        bound: bool,
        /// Monte Carlo estimate instead of the exact value.
        #[arg(long)]
        estimate: bool,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Extract an F-set from vectors.
    FsetExtract {
        /// One vector per line, entries separated by spaces or commas.
        #[arg(long = "in", conflicts_with = "random")]
        input: Option<PathBuf>,
        /// Draw this many random vectors instead (needs --length).
        #[arg(long, requires = "length")]
        random: Option<usize>,
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, value_enum, default_value_t = FamilyArg::Singletons)]
        family: FamilyArg,
        /// Tuple size for the singleton family.
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            output::error("Threads", &e.to_string());
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli.global, cli.command) {
        Ok(code) => code,
        Err(e) => {
            e.report();
            e.exit_code()
        }
    }
}
