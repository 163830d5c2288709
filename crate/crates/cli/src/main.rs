use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use endsum::report::render;
use endsum::{check_source, run_source, Format, Options, Status};

#[derive(Parser)]
#[command(name = "endsum", version, about = "Cohomology at infinity of ladder manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Oracle truncation depth for directives without a `depth` clause.
    #[arg(long, default_value_t = 8, global = true, value_parser = clap::value_parser!(u64).range(1..=64))]
    depth: u64,
    /// Deterministic mode. Always on; accepted for compatibility.
    #[arg(long, global = true)]
    seedless: bool,
    /// Record wall-clock time per directive.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run every directive in a scenario file.
    Run { file: PathBuf },
    /// Parse and elaborate a scenario file without running it.
    Check { file: PathBuf },
}

fn read(path: &Path) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        ExitCode::from(2)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        format: cli.format,
        depth: cli.depth as usize,
        timing: cli.timing,
    };
    let (path, run) = match &cli.command {
        Command::Run { file } => (file, true),
        Command::Check { file } => (file, false),
    };
    let src = match read(path) {
        Ok(s) => s,
        Err(code) => return code,
    };
    if !run {
        return match check_source(&src) {
            Ok(sc) => {
                println!(
                    "ok: {} space(s), {} directive(s)",
                    sc.spaces.len(),
                    sc.jobs.len()
                );
                ExitCode::SUCCESS
            }
            Err(d) => {
                eprintln!("{}:{d}", path.display());
                ExitCode::from(2)
            }
        };
    }
    match run_source(&src, &opts) {
        Ok(records) => {
            print!("{}", render(&records, opts.format));
            if records.iter().all(|r| r.status == Status::Ok) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(d) => {
            eprintln!("{}:{d}", path.display());
            ExitCode::from(2)
        }
    }
}
