//! `subelect`: hidden clones, identities and antagonisms from the shell.
//!
//! Every analysis prints one JSON report on stdout. Exit codes: 0 when the
//! command ran (including "nothing found"), 2 on unreadable input, 3 on
//! invalid sizes or arguments, 4 when a search budget ran out.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "subelect",
    version,
    about = "Find hidden consistent subelections in ordinal elections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// `m n` header, candidate labels, one `a > b > c` vote per line
    Profile,
    /// PrefLib strict-order complete list (`count: i1,i2,...`)
    PreflibSoc,
}

#[derive(Args, Debug)]
pub struct Input {
    /// Election file
    pub file: PathBuf,
    #[arg(long, value_enum, default_value = "profile")]
    pub format: InputFormat,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Enumeration strategy: auto, by-voters or by-candidates
    #[arg(long, default_value = "auto")]
    pub strategy: String,
    /// Largest number of subsets an enumeration may visit
    #[arg(long, default_value_t = subelect::search::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Solve the ILP instead of failing when enumeration is over budget
    #[arg(long)]
    pub ilp_fallback: bool,
    /// Node limit of the built-in ILP solver
    #[arg(long, default_value_t = subelect::search::DEFAULT_ILP_NODES)]
    pub ilp_nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Internal,
    None,
}

#[derive(Args, Debug)]
pub struct IlpArgs {
    /// Write the 0-1 program in LP format
    #[arg(long, value_name = "PATH")]
    pub lp_out: Option<PathBuf>,
    /// Solve the 0-1 program
    #[arg(long)]
    pub solve: bool,
    /// Solver used by --solve
    #[arg(long, value_enum, default_value = "internal")]
    pub backend: Backend,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    Clone,
    Id,
    An,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Maxclone2,
    Maxid5,
    Maxan5,
}

#[derive(Args, Debug)]
pub struct CultureArgs {
    /// Culture name (impartial, urn, mallows, sp_conitzer, sp_walsh, spoc,
    /// single_crossing, euclidean, gs_balanced, gs_caterpillar, compass_id, compass_an)
    #[arg(long)]
    pub culture: String,
    #[arg(long, default_value_t = 10)]
    pub m: usize,
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    /// Culture parameter, e.g. `alpha=0.5`, `phi=0.2`, `dim=circle`
    #[arg(long = "param", value_name = "K=V")]
    pub params: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Clone sets: maximum, search, counting and swap distance
    Clones {
        #[command(flatten)]
        input: Input,
        m_prime: usize,
        n_prime: Option<usize>,
        /// Count (candidate set, voter set) pairs of size (m', n')
        #[arg(long)]
        count: bool,
        /// Swap distance of this candidate set (comma-separated labels)
        #[arg(long, value_name = "LABELS")]
        swap_set: Option<String>,
        /// Closest set of m' candidates to being a clone set for n' voters
        #[arg(long)]
        closest: bool,
        /// With --closest, score every m'-subset instead of vote segments
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Identity subelections
    Identity {
        #[command(flatten)]
        input: Input,
        m_prime: Option<usize>,
        n_prime: Option<usize>,
        /// Pin the voter set (0-based indices or v1-style names)
        #[arg(long)]
        voters: Option<String>,
        /// Pin the candidate set (comma-separated labels)
        #[arg(long)]
        candidates: Option<String>,
        #[arg(long)]
        count: bool,
        /// Pareto frontier of identity sizes
        #[arg(long)]
        signature: bool,
        #[command(flatten)]
        ilp: IlpArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Antagonism subelections
    Antagonism {
        #[command(flatten)]
        input: Input,
        m_prime: Option<usize>,
        n_prime: Option<usize>,
        #[arg(long, default_value = "rigid")]
        variant: String,
        #[arg(long)]
        voters: Option<String>,
        #[arg(long)]
        candidates: Option<String>,
        #[arg(long)]
        signature: bool,
        #[command(flatten)]
        ilp: IlpArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// MaxClone / Max-ID / Max-AN for every m'
    Curve {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        kind: CurveKind,
        /// CSV destination (`m_prime,value`)
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Sample an election from a statistical culture
    Generate {
        #[command(flatten)]
        culture: CultureArgs,
        /// Profile destination; printed to stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A statistic over a batch of sampled elections
    BatchStats {
        #[command(flatten)]
        culture: CultureArgs,
        #[arg(long, default_value_t = 20)]
        repeat: usize,
        #[arg(long, value_enum)]
        metric: Metric,
        /// CSV destination (`sample,seed,value`)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(command: Command) -> Result<report::RunReport, Failure> {
    match command {
        Command::Clones {
            input,
            m_prime,
            n_prime,
            count,
            swap_set,
            closest,
            exhaustive,
            search,
        } => commands::clones(
            &input,
            m_prime,
            n_prime,
            count,
            swap_set.as_deref(),
            closest,
            exhaustive,
            &search,
        ),
        Command::Identity {
            input,
            m_prime,
            n_prime,
            voters,
            candidates,
            count,
            signature,
            ilp,
            search,
        } => commands::identity(
            &input,
            m_prime,
            n_prime,
            voters.as_deref(),
            candidates.as_deref(),
            count,
            signature,
            &ilp,
            &search,
        ),
        Command::Antagonism {
            input,
            m_prime,
            n_prime,
            variant,
            voters,
            candidates,
            signature,
            ilp,
            search,
        } => commands::antagonism(
            &input,
            m_prime,
            n_prime,
            &variant,
            voters.as_deref(),
            candidates.as_deref(),
            signature,
            &ilp,
            &search,
        ),
        Command::Curve {
            input,
            kind,
            out,
            search,
        } => commands::curve(&input, kind, out.as_deref(), &search),
        Command::Generate { culture, out } => commands::generate(&culture, out.as_deref()),
        Command::BatchStats {
            culture,
            repeat,
            metric,
            out,
        } => commands::batch_stats(&culture, repeat, metric, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            println!("{}", report.render());
            ExitCode::from(report.exit_code())
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
