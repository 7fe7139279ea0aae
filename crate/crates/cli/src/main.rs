//! `rbj`: verify, construct and count weight-zero Rota-Baxter operators on
//! `J_{n+1}(f)`.
//!
//! Exit codes: 0 success, 1 domain failure (not RB, no parameters, unsupported
//! field, mismatch), 2 usage or parse failure.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "rbj", version, about = "Rota-Baxter operators on Jordan algebras of a bilinear form")]
struct Cli {
    /// Output format.
    #[arg(long, short, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    J3,
    Example4,
    Example5,
    Bigc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Certify {
    Table,
    Brute,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Auto,
    Naive,
    Pruned,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolveKind {
    Isotropic,
    Represent,
    Unit,
}

/// Field descriptors: `Zp:<p>`, `Q`, `R`, `Cbar`. Forms and lists are
/// comma-separated scalars such as `-1,-1,-1` or `1/2,3`.
#[derive(Subcommand, Debug)]
enum Command {
    /// Check the RB identity for an operator file.
    Verify {
        file: PathBuf,
        /// Weight of the identity.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        weight: String,
    },
    /// Build an operator from one of the explicit families.
    Construct {
        #[arg(value_enum)]
        family: Family,
        field: String,
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[command(flatten)]
        params: ConstructParams,
        /// Find parameters with the quadratic form solvers.
        #[arg(long)]
        auto: bool,
        /// Write the operator file here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The nilpotency index rb(J).
    Index {
        field: String,
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long, value_enum, default_value_t = Certify::Table)]
        certify: Certify,
        /// Write the witness operator file here.
        #[arg(long)]
        witness_out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Exhaustive search over Z_p: maximum index and census.
    Search {
        field: String,
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[command(flatten)]
        search: SearchArgs,
        /// Write the witness operator file here.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Census rows (p, form, index, count, certified) for one or more forms.
    Census {
        field: String,
        /// A form; repeat for several.
        #[arg(long = "form", required = true, allow_hyphen_values = true)]
        forms: Vec<String>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Solve a diagonal quadratic form.
    SolveForm {
        #[arg(value_enum)]
        kind: SolveKind,
        field: String,
        /// `d_1,...,d_m` for isotropic and unit; `a,b,c` for `a x^2 + b y^2 = c`.
        #[arg(allow_hyphen_values = true)]
        coefficients: String,
        /// Height bound for searches over Q.
        #[arg(long, default_value_t = rbj_core::quadform::DEFAULT_HEIGHT_BOUND)]
        bound: u64,
    },
}

#[derive(clap::Args, Debug, Default)]
pub struct ConstructParams {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Scalar `k` for j3; isotropic vector for example4/example5.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Scalar `l` for j3; unit representation for example4.
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<String>,
    /// Split point for example4.
    #[arg(long)]
    pub split: Option<usize>,
    /// `x0` with `x0^2 + d_1 d_2 d_3 = 0`, for example5.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
}

#[derive(clap::Args, Debug)]
pub struct SearchArgs {
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    /// Worker threads for the search (default: available parallelism).
    #[arg(long)]
    pub width: Option<usize>,
    /// Node budget for the pruned search.
    #[arg(long)]
    pub max_nodes: Option<u64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command, cli.format) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}
