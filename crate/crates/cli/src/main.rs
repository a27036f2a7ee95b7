//! `tetragate`: build, verify and export tetrahedron operators.
//!
//! Exit status: 0 on success, 1 when a verification or constraint fails,
//! 2 on usage errors.

mod commands;
mod params;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

const PARAM_HELP: &str = "Comma-separated key=value list. Complex values are written a+bi or r@theta \
(theta in radians); reals accept multiples of pi such as -pi/2.";

#[derive(Parser, Debug)]
#[command(name = "tetragate", version, about = "Tetrahedron operators: catalog, construction, verification and gates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Browse the family catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Construct a family point and certify it.
    Build {
        /// Family id: row1..row7, optionally suffixed with -YxM or -MxY.
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "", help = PARAM_HELP)]
        params: String,
        /// Lift placement for rows 2..7.
        #[arg(long)]
        placement: Option<String>,
        /// Sign branch for rows 5 and 6.
        #[arg(long, allow_hyphen_values = true)]
        branch: Option<String>,
        /// Word pair of the row-1 operator.
        #[arg(long, value_enum, default_value_t = VariantArg::BbbAab)]
        variant: VariantArg,
        /// Write the matrix here (SIMPLEXMAT).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check a stored matrix against a simplex relation.
    Verify {
        /// One of tetra-vertex, tetra-edge, anti-tetra, ybe-braided, ybe-vertex, 4simplex, anti4, 5simplex.
        #[arg(long)]
        relation: String,
        #[arg(long)]
        input: PathBuf,
        /// Use the matrix-free check with this many probe vectors (forced for 5simplex).
        #[arg(long)]
        probes: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Pass threshold; defaults to 1e-10 dense and 1e-8 matrix-free.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Compose and verify a gate recipe.
    Gate {
        /// cz, cnot, controlled-u, swap, iswap, ccz, toffoli, deutsch, margolus or fredkin.
        name: String,
        /// phi and psi for controlled-u, lambda for deutsch.
        #[arg(long, default_value = "", help = PARAM_HELP)]
        params: String,
        /// Directory for the product, target and factor matrices and the report.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Numerically solve a constraint system.
    Solve {
        #[arg(value_enum)]
        problem: Problem,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 500)]
        max_iter: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::BbbAab)]
        variant: VariantArg,
        /// Write the resulting operator here (SIMPLEXMAT).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the catalog manifest, representative family matrices and gate matrices.
    Export {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::All)]
        kind: Kind,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Print one block per record.
    List {
        #[arg(long, value_enum, default_value_t = Kind::All)]
        kind: Kind,
    },
    /// Print a single record by id or alias.
    Show { id: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Unitary,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    #[value(name = "bbb-aab")]
    BbbAab,
    #[value(name = "aaa-bba")]
    AaaBba,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Problem {
    #[value(name = "clifford-case1")]
    CliffordCase1,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let outcome = match cli.command {
        Command::Catalog { action: CatalogAction::List { kind } } => commands::catalog_list(kind == Kind::Unitary),
        Command::Catalog { action: CatalogAction::Show { id } } => commands::catalog_show(&id),
        Command::Build { family, params, placement, branch, variant, out, report } => commands::build(&commands::BuildArgs {
            family,
            params,
            placement,
            branch,
            aaa_bba: variant == VariantArg::AaaBba,
            out,
            report,
        }),
        Command::Verify { relation, input, probes, seed, tol } => commands::verify(&relation, &input, probes, seed, tol),
        Command::Gate { name, params, emit } => commands::gate(&name, &params, emit.as_deref()),
        Command::Solve { problem: Problem::CliffordCase1, seed, tol, max_iter, variant, out } => {
            commands::solve_case1(seed, tol, max_iter, variant == VariantArg::AaaBba, out.as_deref())
        }
        Command::Export { out, kind } => commands::export(&out, kind == Kind::Unitary),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(commands::Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
