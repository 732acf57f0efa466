use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rydberg_renyi::entropy::{Method, Quantity};

#[derive(Parser, Debug)]
#[command(
    name = "rydberg-renyi",
    version,
    about = "Renyi entropies and L_p-norms of D-dimensional oscillator states"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. They override the file named by
/// RYDBERG_RENYI_CONFIG.
#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file (a directory for `figures`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub method: Option<MethodArg>,
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    /// Growing zone starts at 4n + n^(1/3+theta).
    #[arg(long, global = true)]
    pub theta: Option<f64>,
    /// Oscillatory model ends at (4-epsilon)n.
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// Half-width of the soft-edge zone in the edge variable.
    #[arg(long, global = true)]
    pub t_max: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one entropic quantity.
    Entropy(EntropyArgs),
    /// Evaluate a quantity over a range of one parameter.
    Sweep(SweepArgs),
    /// Write the data of one figure (or all) as CSV.
    Figures(FigureArgs),
    /// Run the acceptance suite.
    Verify(VerifyArgs),
    /// Cosine, Bessel and Airy moment constants.
    Constants(ConstantArgs),
}

#[derive(Args, Debug)]
pub struct EntropyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub l: usize,
    #[arg(long)]
    pub dim: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, value_enum, default_value_t = QuantityArg::Renyi)]
    pub quantity: QuantityArg,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub var: SweepVar,
    /// start:stop:step, stop included.
    #[arg(long)]
    pub range: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub dim: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, value_enum, default_value_t = QuantityArg::Renyi)]
    pub quantity: QuantityArg,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    /// Figure id 1-5, or `all`.
    #[arg(long)]
    pub which: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Skip the large-degree criteria.
    #[arg(long)]
    pub fast: bool,
    /// Run only these criteria (comma separated ids).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct ConstantArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<f64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodArg {
    Exact,
    Asymptotic,
    Auto,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Exact => Method::Exact,
            MethodArg::Asymptotic => Method::Asymptotic,
            MethodArg::Auto => Method::Auto,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantityArg {
    Renyi,
    Power,
    Wp,
    Diseq,
}

impl From<QuantityArg> for Quantity {
    fn from(q: QuantityArg) -> Quantity {
        match q {
            QuantityArg::Renyi => Quantity::Renyi,
            QuantityArg::Power => Quantity::Power,
            QuantityArg::Wp => Quantity::Wp,
            QuantityArg::Diseq => Quantity::Disequilibrium,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    P,
    N,
    L,
    Dim,
}

impl SweepVar {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepVar::P => "p",
            SweepVar::N => "n",
            SweepVar::L => "l",
            SweepVar::Dim => "dim",
        }
    }
}
