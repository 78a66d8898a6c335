use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use etalab::Error;

mod commands;

/// Conjugacy classes of maximal cyclic subgroups of finite p-groups, and
/// exhaustive checks of the bounds relating them to order and class.
#[derive(Parser, Debug)]
#[command(name = "etalab", version)]
pub struct Cli {
    /// Refuse groups larger than this.
    #[arg(long, global = true, env = "ETALAB_MAX_ORDER", default_value_t = 5000)]
    pub max_order: u64,

    /// Primes for catalog construction, comma separated.
    #[arg(long, global = true, env = "ETALAB_PRIMES", value_delimiter = ',', default_value = "2,3,5")]
    pub primes: Vec<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, short, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    /// JSON.
    Structured,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count conjugacy classes of maximal cyclic subgroups.
    Eta { spec: String },
    /// Order, class, lower central series, center and exponent of G^l.
    Invariants { spec: String },
    /// Whether the maximal cyclic subgroups form an irredundant cover.
    Cover { spec: String },
    /// Run a verification suite over the default catalog.
    Verify {
        /// Suite name, or `all` for every suite.
        #[arg(long)]
        suite: String,
        /// Record the run time in the report.
        #[arg(long)]
        timestamp: bool,
    },
    /// Value grids for the closed forms.
    Table {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        amax: u32,
        #[arg(long, default_value_t = 10)]
        nmax: u32,
        #[arg(long, default_value_t = 3)]
        lmax: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// eta of C_{p^a} x C_{p^b} against g_p(a, b).
    Pxp,
    /// (p-1)(n/l-2)+p+1 over n and l.
    BoundGrid,
}

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::OrderTooLarge { .. } => EXIT_LIMIT,
        Error::Spec(_) | Error::Gtbl(_) | Error::Law(_) | Error::UnknownSuite { .. } | Error::Config(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Rendered output plus whether every check in it passed.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(output) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &output.text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", output.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            if output.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILURE)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
