mod cmd;
mod tsv;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Fixed default for every seeded run.
pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Parser, Debug)]
#[command(name = "dadkit", version, about = "Dynamic asymptotic dimension witnesses for finite groupoids")]
pub struct Cli {
    /// Directory for JSON artifacts.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the groupoid axioms of instance files or directories of them.
    Validate { paths: Vec<PathBuf> },
    /// Least d with a (K, L) witness.
    Dad {
        path: PathBuf,
        #[command(flatten)]
        scales: Scales,
    },
    /// (E, F) decompositions of a fiber or of the arrow space.
    Asdim(AsdimArgs),
    #[command(subcommand)]
    Theorem(Theorem),
    /// d and asdim columns over a family of windows.
    Sweep(SweepArgs),
    /// Write an instance file.
    Build(BuildArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Scales {
    #[arg(long = "k-spec", default_value = "ball:1")]
    pub k: String,
    #[arg(long = "l-spec", default_value = "power:K:2")]
    pub l: String,
    #[arg(long = "d-max", default_value_t = 3, allow_negative_numbers = true)]
    pub d_max: i64,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Greedy,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Fiber,
    Arrows,
}

#[derive(Args, Debug)]
pub struct AsdimArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value_t = Space::Fiber)]
    pub space: Space,
    /// Unit whose range fiber is decomposed; all units when omitted.
    #[arg(long)]
    pub unit: Option<u32>,
    #[arg(long = "e-spec", default_value = "ball:1")]
    pub e: String,
    #[arg(long = "f-spec", default_value = "ball:3")]
    pub f: String,
    #[arg(long = "d-max", default_value_t = 3, allow_negative_numbers = true)]
    pub d_max: i64,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Annulus cover of the declared graphing with parameter N instead of a search.
    #[arg(long)]
    pub treeable: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Theorem {
    /// Product bound on G × H with a window refutation one dimension lower.
    Product {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        scales: Scales,
        /// Units of each factor spanning the refutation window, e.g. `1-5`.
        #[arg(long)]
        window: Option<String>,
    },
    /// Union of witnesses over a partition of the units.
    Union {
        path: PathBuf,
        /// Parts separated by `;`, e.g. `0-6;7-12`.
        #[arg(long)]
        parts: String,
        #[arg(long = "k-spec", default_value = "ball:1")]
        k: String,
        /// Dimension of each part's control function.
        #[arg(long, default_value_t = 1)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Blow-up round trip along `x ↦ ⌊x / copies⌋`.
    Morita {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        copies: usize,
        #[command(flatten)]
        scales: Scales,
    },
    /// dad → asdim → dad.
    Bridge {
        path: PathBuf,
        #[command(flatten)]
        scales: Scales,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepFamily {
    /// Pair groupoids with the line graphing.
    Pair,
    /// Binary tree windows; sizes are depths.
    Binary,
    /// Rotation of ℤ/n.
    Cycle,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value_t = SweepFamily::Pair)]
    pub family: SweepFamily,
    /// Sizes such as `4-16` or `2,3,5`.
    #[arg(long)]
    pub sizes: String,
    #[command(flatten)]
    pub scales: Scales,
    /// Annulus parameter for the asdim column.
    #[arg(long = "annulus", default_value_t = 1)]
    pub annulus: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Pair,
    Action,
    Partial,
    Tree,
    Product,
    Blowup,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Path,
    Binary,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Units for pair, rotation size for action, window for partial, vertices or depth for tree.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Shape::Path)]
    pub shape: Shape,
    #[arg(long)]
    pub left: Option<PathBuf>,
    #[arg(long)]
    pub right: Option<PathBuf>,
    /// Instance to blow up.
    #[arg(long)]
    pub base: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub copies: usize,
    /// Arrow budget for the random family.
    #[arg(long, default_value_t = 64)]
    pub max_arrows: usize,
    /// File name inside `--out`; defaults to one derived from the parameters.
    #[arg(long)]
    pub name: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("DADKIT_WORKERS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let start = std::time::Instant::now();
    let code = match cmd::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            cmd::INPUT_ERROR
        }
    };
    eprintln!("wall time {:.3}s", start.elapsed().as_secs_f64());
    ExitCode::from(code)
}
