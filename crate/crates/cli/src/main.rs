use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use motcalc_cli::commands::{analyze, dual, failed_invariants, graded, AnalyzeOptions};
use motcalc_cli::CliError;

#[derive(Parser)]
#[command(name = "motcalc", version, about = "Exact invariants of 1-motives up to isogeny")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Weight filtration, graded Lie algebra and unipotent radical.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Run the property suite on every motive; exit 1 on a violation.
        #[arg(long)]
        check_invariants: bool,
        /// Dimension of the reductive part, overriding the file.
        #[arg(long, value_name = "N")]
        reductive_dim: Option<usize>,
    },
    /// The Cartier-dual input document.
    Dual { file: PathBuf },
    /// Ranks and abelian part of the graded pieces.
    Gr { file: PathBuf },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze {
            file,
            format,
            check_invariants,
            reductive_dim,
        } => {
            let report = analyze(
                &file,
                AnalyzeOptions {
                    check_invariants,
                    reductive_dim,
                },
            )?;
            match format {
                Format::Json => print!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            match failed_invariants(&report) {
                Some(e) => Err(e),
                None => Ok(()),
            }
        }
        Command::Dual { file } => {
            print!("{}", dual(&file)?.to_json());
            Ok(())
        }
        Command::Gr { file } => {
            print!("{}", graded(&file)?.to_json());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("motcalc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
