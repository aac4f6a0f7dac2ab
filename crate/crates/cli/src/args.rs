use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use subranks_core::equations::{DEFAULT_ORBIT_BUDGET, DEFAULT_SIZE_CAP};
use subranks_core::rank::DEFAULT_BUDGET;

#[derive(Parser, Debug, Clone)]
#[command(name = "subranks", version, about = "Partition rank, slice rank and strength experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add wall-clock timing to the report (breaks byte-identical reruns).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    /// Every entry uniform over the field.
    Uniform,
    /// About one entry in five nonzero.
    Sparse,
    /// Random nonzero values on the main diagonal only.
    Diagonal,
}

/// A tensor from a file, or from a seeded generator.
#[derive(Args, Debug, Clone)]
pub struct TensorSource {
    /// Tensor JSON file.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub gen: Option<Generator>,
    #[arg(long, value_delimiter = ',')]
    pub dims: Vec<usize>,
    /// A prime, or "rational".
    #[arg(long, default_value = "2")]
    pub field: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Node budget per rank query.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Try splits with larger flattening rank first.
    #[arg(long)]
    pub heuristic_order: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Partition,
    Slice,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Paper,
    Tight,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Partition and slice rank certificates of one tensor.
    Rank {
        #[command(flatten)]
        src: TensorSource,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value = "both")]
        kind: KindArg,
    },
    /// Ranks of all (or sampled) s x ... x s subtensors.
    SubtensorScan {
        #[command(flatten)]
        src: TensorSource,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        size: usize,
        #[arg(long, conflicts_with = "sample")]
        exhaustive: bool,
        /// Check this many seeded random subset tuples instead.
        #[arg(long)]
        sample: Option<usize>,
        /// Enumerate exhaustively below this many subset tuples unless
        /// --sample is given.
        #[arg(long, default_value_t = 100_000)]
        threshold: u64,
    },
    /// Look for rank-r blocks whose one-point extensions keep rank r, and
    /// record the rank of the complementary block.
    Question12 {
        #[command(flatten)]
        src: TensorSource,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        r: usize,
        /// Number of generated tensors (seeds seed, seed+1, ...).
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// A polynomial vanishing on the tensors of partition rank <= r.
    FindEquation {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "tight")]
        mode: ModeArg,
        #[arg(long, default_value = "rational")]
        field: String,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: u128,
        /// Also write the polynomial file here.
        #[arg(long)]
        artifact: Option<PathBuf>,
    },
    /// Chain of a multilinear polynomial.
    Hchain {
        poly: PathBuf,
        /// Field for files that do not name one.
        #[arg(long, default_value = "rational")]
        field: String,
        #[arg(long)]
        artifact: Option<PathBuf>,
    },
    /// Explicit decomposition of a tensor on which the polynomial's orbit
    /// vanishes.
    Decompose {
        #[command(flatten)]
        src: TensorSource,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ORBIT_BUDGET)]
        budget: u64,
        #[arg(long)]
        artifact: Option<PathBuf>,
    },
    /// Strength and partition rank across the polynomial/tensor bridge.
    Bridge {
        /// Polynomial ("vars": "point") or cubical tensor file.
        input: PathBuf,
        /// Field for polynomial files that do not name one.
        #[arg(long, default_value = "7")]
        field: String,
        /// Run the restriction pipeline with this strength bound.
        #[arg(long)]
        r: Option<usize>,
        /// Largest variable subset used by the pipeline.
        #[arg(long, default_value_t = 2)]
        cap: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Closed-form bounds.
    Bounds {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        m: Option<u64>,
    },
    /// The counting inequality at n = 2^(d+3) r, m = n^(2d), or at given n, m.
    CountingCheck {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Re-check every certificate of a report.
    VerifyReport {
        report: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
}
