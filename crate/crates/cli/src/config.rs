use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use starclean::{Recipe, HARD_MAX_ORDER};

#[derive(Debug, Parser)]
#[command(name = "starclean", version, about = "Finite rings with involution: classify, construct, verify")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Largest ring order accepted for element-level work
    #[arg(long, global = true, env = "STARCLEAN_MAX_ORDER")]
    pub max_order: Option<NonZeroUsize>,
    /// Largest ring order whose ideal lattice is enumerated
    #[arg(long, global = true, default_value_t = NonZeroUsize::new(64).unwrap())]
    pub ideal_cap: NonZeroUsize,
    /// Directory that receives report files
    #[arg(long, global = true, default_value = "starclean-reports")]
    pub out_dir: PathBuf,
    /// Do not write report files
    #[arg(long, global = true)]
    pub no_write: bool,
    /// Worker threads (defaults to the number of cores)
    #[arg(short, long, global = true)]
    pub jobs: Option<NonZeroUsize>,
    /// More detail on stdout (repeatable)
    #[arg(short, long, global = true, action = clap::ArgAction::Count, conflicts_with = "quiet")]
    pub verbose: u8,
    /// Only errors on stderr
    #[arg(short, long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide every ring class for one or more rings
    Classify(Input),
    /// Run the theorem checks over a corpus
    Verify(VerifyArgs),
    /// Build R[i] with i² = μi + η, or R[x]/(xⁿ)
    Extend(ExtendArgs),
    /// List the two-sided ideals of a ring with their flags
    Ideals(IdealsArgs),
    /// Emit the ring spec for a constructor expression
    Construct {
        /// e.g. zn:4, product:zn:2,zn:3, example:transpose-8
        expr: String,
    },
    /// List check ids and constructor examples
    List,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Ring-spec JSON files
    pub files: Vec<PathBuf>,
    /// Constructor expressions (repeatable)
    #[arg(short = 'c', long = "construct", value_name = "EXPR")]
    pub construct: Vec<String>,
}

impl Input {
    pub fn is_empty(&self) -> bool {
        self.files.is_empty() && self.construct.is_empty()
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `default` or `file:PATH` (JSON array of expressions or ring specs)
    #[arg(long, default_value = "default")]
    pub corpus: String,
    /// Run only these checks (repeatable or comma separated)
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Largest commutative base swept over every (μ, η)
    #[arg(long, default_value_t = 16)]
    pub extension_base_max: usize,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("shape").required(true).args(["mu", "poly"]))]
pub struct ExtendArgs {
    /// Base ring expression
    #[arg(long)]
    pub base: String,
    #[arg(long, requires = "eta")]
    pub mu: Option<usize>,
    #[arg(long, requires = "mu")]
    pub eta: Option<usize>,
    /// Truncation degree n in R[x]/(xⁿ)
    #[arg(long)]
    pub poly: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum IdealFlag {
    Maximal,
    Prime,
    Semiprime,
    Primary,
    Submaximal,
    StarClosed,
}

#[derive(Debug, Args)]
pub struct IdealsArgs {
    #[command(flatten)]
    pub input: Input,
    /// Keep only ideals carrying every listed flag
    #[arg(long, value_enum)]
    pub flag: Vec<IdealFlag>,
}

/// Settings shared by every command once arguments are resolved.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub max_order: usize,
    pub ideal_cap: usize,
    pub out_dir: Option<PathBuf>,
    pub verbosity: i8,
    pub jobs: Option<usize>,
    pub corpus: Vec<Recipe>,
}

impl RunConfig {
    pub fn from_args(g: &GlobalArgs) -> Self {
        let max_order = g.max_order.map_or(HARD_MAX_ORDER, |n| n.get().min(HARD_MAX_ORDER));
        RunConfig {
            max_order,
            ideal_cap: g.ideal_cap.get(),
            out_dir: (!g.no_write).then(|| g.out_dir.clone()),
            verbosity: if g.quiet { -1 } else { g.verbose as i8 },
            jobs: g.jobs.map(NonZeroUsize::get),
            corpus: Vec::new(),
        }
    }
}
