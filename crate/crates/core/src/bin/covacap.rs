use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use covacap::cli::{self, Format, Overrides, RunReport, EXIT_ERROR, EXIT_OK, SEED_ENV};
use covacap::numerics::LogBase;

#[derive(Parser)]
#[command(
    name = "covacap",
    version,
    about = "Capacity of group-covariant mixed unitary channels"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group, representation and candidate subgroups.
    Describe(Common),
    /// Closed-form capacity with a numerical cross-check.
    Capacity(Common),
    /// Sampling oracles; level 2 adds tensor-square checks.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
}

#[derive(clap::Args)]
struct Common {
    config: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_parser = parse_base)]
    base: Option<LogBase>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

fn parse_base(s: &str) -> Result<LogBase, String> {
    match s {
        "2" => Ok(LogBase::Two),
        "e" => Ok(LogBase::E),
        _ => Err(format!("expected 2 or e, got {s:?}")),
    }
}

fn run(args: Args) -> covacap::Result<(RunReport, Format, i32)> {
    let env_seed = std::env::var(SEED_ENV).ok();
    let env_seed = env_seed.as_deref();
    let (common, level) = match &args.command {
        Command::Describe(c) | Command::Capacity(c) => (c, 1),
        Command::Verify { common, level } => (common, *level),
    };
    let config = cli::parse_config(&common.config)?;
    let overrides = Overrides {
        seed: common.seed,
        restarts: common.restarts,
        samples: common.samples,
        base: common.base,
    };
    let format = match common.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    let (report, code) = match args.command {
        Command::Describe(_) => (cli::cmd_describe(&config, &overrides, env_seed)?, EXIT_OK),
        Command::Capacity(_) => cli::cmd_capacity(&config, &overrides, env_seed)?,
        Command::Verify { .. } => cli::cmd_verify(&config, level, &overrides, env_seed)?,
    };
    Ok((report, format, code))
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok((report, format, code)) => {
            let _ = writeln!(
                std::io::stdout().lock(),
                "{}",
                report.render(format).trim_end()
            );
            if matches!(format, Format::Json) {
                for w in &report.warnings {
                    eprintln!("warning: {w}");
                }
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
