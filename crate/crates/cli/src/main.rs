use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use equitau::acceptance::DEFAULT_SEED;
use equitau::gradedring::DEFAULT_TRUNCATION;
use equitau::reprring::DEFAULT_CERTIFICATE_BOUND;

mod commands;
mod document;

#[derive(Debug, Parser)]
#[command(
    name = "equitau",
    version,
    about = "Exact equivariant Riemann-Roch and sector bookkeeping"
)]
struct Cli {
    /// Highest total degree kept in power series.
    #[arg(long, global = true, env = "EQUITAU_TRUNC", default_value_t = DEFAULT_TRUNCATION)]
    trunc: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Equivariant Euler characteristic of a bundle on P(V) by HRR.
    Chi(ChiArgs),
    /// Compare HRR, the Weyl character and brute-force sections on P^1.
    Weyl(WeylArgs),
    /// Reduce a polynomial in h and push it forward to the point.
    Pushforward(PushforwardArgs),
    /// Twisted-sector table for a finite group acting on P(V).
    Sectors(SectorsArgs),
    /// Support subgroup of a character point.
    Support(SupportArgs),
    /// Search for (t_i - 1)^d as a combination of e_k - C(n,k).
    Segal(SegalArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct ChiArgs {
    /// Torus weights of the coordinates, flattened, `rank` entries each.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub weights: Vec<i64>,
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
    /// n in O(n).
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub twist: i64,
    /// Extra torus character tensored onto O(n).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub character: Option<Vec<i64>>,
    /// Use the tangent bundle instead of a line bundle.
    #[arg(long, conflicts_with_all = ["twist", "character"])]
    pub tangent: bool,
}

#[derive(Debug, Args)]
pub struct WeylArgs {
    #[arg(long, default_value_t = 10)]
    pub nmax: u32,
}

#[derive(Debug, Args)]
pub struct PushforwardArgs {
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub weights: Vec<i64>,
    #[arg(long, default_value_t = 1)]
    pub rank: usize,
    /// Integer coefficients a_0,a_1,... of p(h) = Σ a_k h^k.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub poly: Vec<i64>,
}

#[derive(Debug, Args)]
pub struct FiniteGroupArgs {
    /// Cyclic group of order d.
    #[arg(long, conflicts_with = "orders")]
    pub order: Option<u64>,
    /// Product of cyclic groups, each order dividing the next.
    #[arg(long, value_delimiter = ',')]
    pub orders: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
pub struct SectorsArgs {
    #[command(flatten)]
    pub group: FiniteGroupArgs,
    /// Weights of the coordinates, one entry per cyclic factor each.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub weights: Vec<i64>,
}

#[derive(Debug, Args)]
pub struct SupportArgs {
    #[command(flatten)]
    pub group: FiniteGroupArgs,
    /// Free rank of the character group.
    #[arg(long, default_value_t = 0)]
    pub rank: usize,
    /// Values of the point on each generator, as rationals like 1/3.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub point: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SegalArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub degree: u32,
    /// Which t_i to use.
    #[arg(long, default_value_t = 1)]
    pub index: usize,
    /// Largest cofactor box [-D, D]^n searched.
    #[arg(long, default_value_t = DEFAULT_CERTIFICATE_BOUND)]
    pub bound: usize,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let t = cli.trunc;
    let outcome = match &cli.command {
        Command::Chi(a) => commands::chi(a, t),
        Command::Weyl(a) => commands::weyl(a, t),
        Command::Pushforward(a) => commands::pushforward(a, t),
        Command::Sectors(a) => commands::sectors(a, t),
        Command::Support(a) => commands::support(a, t),
        Command::Segal(a) => commands::segal(a, t),
        Command::Selftest(a) => commands::selftest(a, t),
    };
    match outcome {
        Ok(doc) => {
            let rendered = match cli.format {
                Format::Text => doc.to_text(),
                Format::Json => doc.to_json(),
            };
            let _ = writeln!(std::io::stdout().lock(), "{rendered}");
            if doc.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(commands::UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
