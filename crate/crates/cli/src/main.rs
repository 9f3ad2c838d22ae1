use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod error;
mod model;
mod report;
mod spec_file;

use commands::{IndexSelector, Outcome, QuotaFlags};
use error::CliError;
use report::{Format, RenderOptions};

/// Exact voting power in multicameral legislatures.
#[derive(Debug, Parser)]
#[command(name = "votepower", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Print every critical number in full.
    #[arg(long, global = true)]
    full: bool,
    /// Omit the metadata block.
    #[arg(long, global = true)]
    no_meta: bool,
    /// Add decimal approximations next to exact index values.
    #[arg(long, global = true)]
    approx: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Critical vectors, index values and ranking for a spec file.
    Analyze {
        spec: PathBuf,
        /// banzhaf, shapley, pointmass:<k> or file:<path>
        #[arg(long, default_value = "banzhaf")]
        index: IndexSelector,
    },
    /// Weak desirability between two classes of players.
    Compare { spec: PathBuf, a: String, b: String },
    /// Cross-check closed forms against exhaustive enumeration.
    Oracle { spec: PathBuf },
    /// The built-in president, vice president, senate and house system.
    Us {
        #[arg(long)]
        qs: Option<u64>,
        #[arg(long)]
        qr: Option<u64>,
        #[arg(long = "os")]
        senate_override: Option<u64>,
        #[arg(long = "or")]
        house_override: Option<u64>,
        #[arg(long, default_value = "banzhaf")]
        index: IndexSelector,
    },
    /// Sizes at which a larger chamber's member out-swings a smaller one's.
    Crossover {
        #[arg(long)]
        ms: u64,
        #[arg(long)]
        mr: u64,
        #[arg(long)]
        qs: Option<u64>,
        #[arg(long)]
        qr: Option<u64>,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let meta = !cli.no_meta;
    match &cli.command {
        Command::Analyze { spec, index } => commands::analyze(spec, index, meta),
        Command::Compare { spec, a, b } => commands::compare(spec, a, b, meta),
        Command::Oracle { spec } => commands::oracle(spec, meta),
        Command::Us {
            qs,
            qr,
            senate_override,
            house_override,
            index,
        } => {
            let flags = QuotaFlags {
                senate_quota: *qs,
                house_quota: *qr,
                senate_override: *senate_override,
                house_override: *house_override,
            };
            commands::us(flags, index, meta)
        }
        Command::Crossover { ms, mr, qs, qr } => commands::crossover(*ms, *mr, *qs, *qr, meta),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = RenderOptions {
        full: cli.full,
        approx: cli.approx,
    };
    let result = run(&cli).and_then(|outcome| {
        let text = outcome.report.render(cli.format, opts);
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(text.as_bytes())?;
        stdout.flush()?;
        Ok(outcome.exit_code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
