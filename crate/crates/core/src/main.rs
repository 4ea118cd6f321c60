use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use qswitch::harness::cli::{execute, EXIT_PARSE};
use qswitch::harness::{Command, Format};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CommandArg {
    Run,
    Relabel,
    Report,
    Distill,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Self {
        match c {
            CommandArg::Run => Command::Run,
            CommandArg::Relabel => Command::Relabel,
            CommandArg::Report => Command::Report,
            CommandArg::Distill => Command::Distill,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Structured,
    Tabular,
}

/// Simulate the two-process quantum switch and describe it as a definite
/// order of relabeled processes.
#[derive(Debug, Parser)]
#[command(
    name = "qswitch",
    version = concat!(env!("CARGO_PKG_VERSION"), " (conventions v1)"),
)]
struct Args {
    command: CommandArg,

    /// JSON experiment config.
    #[arg(long)]
    config: PathBuf,

    #[arg(long, value_enum, default_value = "structured")]
    format: FormatArg,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", args.config.display());
            return ExitCode::from(EXIT_PARSE as u8);
        }
    };
    let format = match args.format {
        FormatArg::Structured => Format::Structured,
        FormatArg::Tabular => Format::Tabular,
    };
    let exec = execute(args.command.into(), &text, format);
    eprint!("{}", exec.diagnostics);
    let written = match &args.out {
        Some(path) => fs::write(path, &exec.output),
        None => std::io::stdout().write_all(exec.output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("cannot write report: {e}");
        return ExitCode::FAILURE;
    }
    ExitCode::from(exec.exit_code as u8)
}
