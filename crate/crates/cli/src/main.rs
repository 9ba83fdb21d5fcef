use std::fs;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand, ValueEnum};

use cohsys_cli::config::{CliError, Format, JobConfig};
use cohsys_cli::{execute, Command, Outcome};

#[derive(Parser)]
#[command(
    name = "cohsys",
    version,
    about = "Exact stability calculus for coherent systems on algebraic surfaces"
)]
struct Cli {
    /// Path to the JSON job configuration
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output format (overrides the config's options.format)
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Euler characteristic, slope, Hilbert polynomial, generated condition
    Info,
    /// alpha_max with the torsion and injectivity thresholds
    Bound,
    /// Enumerate candidate critical values over the search window
    Walls {
        /// Number of enumeration workers (output is identical for any count)
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Grassmann-bundle dimension data and hypothesis checks
    Dim,
    /// Upper bounds for the number of independent sections
    Clifford {
        /// Fix the auxiliary integer a (default: search the smallest valid one)
        #[arg(long)]
        a: Option<i64>,
    },
    /// Generic-smoothness predicate on the projective plane
    Smooth,
    /// Stability verdict against one subsystem candidate
    Check {
        /// Stability parameter, e.g. "2*m + 2"
        #[arg(long)]
        alpha: String,
        /// Candidate as "n,c1h,chi,k", e.g. "1,0,1,1"
        #[arg(long)]
        candidate: String,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let path = cli
        .config
        .ok_or_else(|| CliError::Config("missing --config PATH".to_string()))?;
    let text = fs::read_to_string(&path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let config = JobConfig::from_json(&text)?;
    let format = match cli.format {
        Some(FormatArg::Json) => Format::Json,
        Some(FormatArg::Text) => Format::Text,
        None => config.options.format.unwrap_or(Format::Text),
    };
    let command = match cli.command {
        CliCommand::Info => Command::Info,
        CliCommand::Bound => Command::Bound,
        CliCommand::Walls { workers } => Command::Walls { workers },
        CliCommand::Dim => Command::Dim,
        CliCommand::Clifford { a } => Command::Clifford { a },
        CliCommand::Smooth => Command::Smooth,
        CliCommand::Check { alpha, candidate } => Command::Check { alpha, candidate },
    };
    execute(&command, &config, format)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            for line in &outcome.diagnostics {
                eprintln!("{line}");
            }
            print!("{}", outcome.stdout);
        }
        Err(err) => {
            eprintln!("{err}");
            process::exit(err.exit_code());
        }
    }
}
