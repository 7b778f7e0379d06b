use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use heis_core::Angle;

#[derive(Parser, Debug)]
#[command(name = "heis", version, about = "Invertibility and expansiveness diagnostics for the discrete Heisenberg group ring")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate an element at one rational representation.
    Eval(EvalArgs),
    /// Sweep the smallest singular value over rational representations.
    Sweep(SweepArgs),
    /// Criteria for elements g1(y,z) x - g0(y,z).
    #[command(subcommand)]
    Linear(LinearCommand),
    /// Twisted convolution of two elements.
    Twisted(TwistedArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Embed the wall-clock duration in the manifest (reports then differ
    /// between runs).
    #[arg(long)]
    pub record_duration: bool,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Element JSON file.
    #[arg(long)]
    pub f: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub p: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub q: i64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub s: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub t: f64,
    /// Include the q x q matrix as [re, im] pairs.
    #[arg(long)]
    pub matrix: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub f: PathBuf,
    #[arg(long, default_value_t = 64)]
    pub q_max: u32,
    #[arg(long, default_value_t = 8)]
    pub grid_s: u32,
    #[arg(long, default_value_t = 8)]
    pub grid_t: u32,
    #[arg(long, default_value_t = 1e-8)]
    pub threshold: f64,
    /// Minima up to threshold * band are reported as inconclusive.
    #[arg(long, default_value_t = 100.0)]
    pub band: f64,
    /// Skip the windowed irrational-angle probes.
    #[arg(long)]
    pub no_probes: bool,
    #[command(flatten)]
    pub workers: Workers,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Workers {
    /// Worker threads; defaults to every hardware thread.
    #[arg(long, env = "HEIS_WORKERS")]
    pub workers: Option<usize>,
}

#[derive(Args, Debug)]
pub struct Pair {
    /// g0 as Laurent polynomial JSON.
    #[arg(long)]
    pub g0: PathBuf,
    /// g1 as Laurent polynomial JSON.
    #[arg(long)]
    pub g1: PathBuf,
}

#[derive(Args, Debug)]
pub struct OptionalPair {
    /// g0 as Laurent polynomial JSON (default: 3 - y - 1/y - z - 1/z).
    #[arg(long)]
    pub g0: Option<PathBuf>,
    /// g1 as Laurent polynomial JSON (default: 1 - y - 1/y - z - 1/z).
    #[arg(long)]
    pub g1: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum LinearCommand {
    /// Mahler measure of g0 (two variables), or of g0(., chi) with --chi.
    Mahler {
        #[arg(long)]
        g0: PathBuf,
        #[arg(long)]
        chi: Option<Angle>,
        /// Gauss points per panel for the two-variable measure.
        #[arg(long, default_value_t = 256)]
        nodes: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Roots of g0(., chi), and those on the unit circle.
    Roots {
        #[arg(long)]
        g0: PathBuf,
        #[arg(long)]
        chi: Angle,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// One slice variety empty, the other not, with a signed log-integral.
    OneEmpty {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        chi: Angle,
        #[command(flatten)]
        output: Output,
    },
    /// Intersections of U(g1) with the sheared U(g0) for a range of shears.
    Orbit {
        #[command(flatten)]
        pair: OptionalPair,
        /// Shears: `a..b` (exclusive), `a..=b`, or a single integer.
        #[arg(long, default_value = "0..=4", allow_hyphen_values = true)]
        m: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Also report the intersections read for g0 x - g1.
        #[arg(long)]
        swapped: bool,
        #[command(flatten)]
        workers: Workers,
        #[command(flatten)]
        output: Output,
    },
    /// Both slice varieties nonempty with different Mahler measures.
    Mismatch {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        chi: Angle,
        #[arg(long, default_value_t = 1e-6)]
        margin: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Expansiveness when both unitary varieties are empty.
    Ls2 {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 1e-6)]
        margin: f64,
        #[arg(long, default_value_t = 1024)]
        chi_samples: usize,
        #[arg(long, default_value_t = 256)]
        nodes: usize,
        #[command(flatten)]
        output: Output,
    },
    /// CSV samples of the curves U(g1) and U(g0 sheared by m).
    Curves {
        #[command(flatten)]
        pair: OptionalPair,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct TwistedArgs {
    /// Twist angle, decimal or `p,q`.
    #[arg(long)]
    pub theta: Angle,
    /// Twisted-element JSON, or group-ring element JSON (localized to the
    /// twist angle).
    #[arg(long)]
    pub f: PathBuf,
    #[arg(long)]
    pub g: PathBuf,
    /// Compare the product with the localization of the group-ring product
    /// (both inputs must be group-ring elements).
    #[arg(long)]
    pub check_localize: bool,
    #[command(flatten)]
    pub output: Output,
}
