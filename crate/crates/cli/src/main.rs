use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nrgit::binary_forms::LinParam;
use nrgit::envelope::EnvParams;
use nrgit::Exec;

mod commands;
mod diagram;
mod report;

use commands::{CliError, CmdResult};

const EXIT_USAGE: u8 = 2;
const EXIT_DISAGREEMENT: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "nrgit", version, about = "Stability of binary forms under the Borel subgroup of SL(2)")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Run census sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one divisor, given as inf=<k>,zero=<k>,roots=<k1+k2+...>
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long)]
        profile: String,
    },
    /// Weights of the torus-fixed points of the envelope
    Table1 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
    },
    /// Walls and chambers in the slope τ
    Walls {
        #[arg(long)]
        n: u32,
    },
    /// Quotient profile at a slope
    Chamber {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Flip data at an interior wall
    Flips {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Check every closed form against the brute-force oracle over the census
    Census {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
    },
    /// Check the unipotent classifiers against the SL(2)-only envelope
    Unipotent {
        #[arg(long)]
        n: u32,
    },
    /// Concrete N from which the symbolic answers hold
    Threshold {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
    },
    /// SVG weight diagram of the fixed points at a display value of N
    Diagram {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long = "N", default_value = "10")]
        n_display: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run_diagram(n: u32, m: i64, r: i64, n_display: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    let params = EnvParams::new(n, LinParam::new(m, r)?)?;
    let nd = commands::positive_display_n(n_display)?;
    let svg = diagram::render(&params, &nd)?;
    match out {
        Some(path) => fs::write(path, svg).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{svg}");
            Ok(())
        }
    }
}

fn fail(e: CliError) -> ExitCode {
    match e {
        CliError::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        CliError::Internal(msg) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let outcome: CmdResult = match &cli.command {
        Command::Classify { n, m, r, profile } => commands::cmd_classify(*n, *m, *r, profile),
        Command::Table1 { n, m, r } => commands::cmd_table1(*n, *m, *r),
        Command::Walls { n } => commands::cmd_walls(*n),
        Command::Chamber { n, tau } => commands::cmd_chamber(*n, tau),
        Command::Flips { n, tau } => commands::cmd_flips(*n, tau),
        Command::Census { n, m, r } => commands::cmd_census(*n, *m, *r, exec),
        Command::Unipotent { n } => commands::cmd_unipotent(*n, exec),
        Command::Threshold { n, m, r } => commands::cmd_threshold(*n, *m, *r, exec),
        Command::Diagram { n, m, r, n_display, out } => {
            return match run_diagram(*n, *m, *r, n_display, out.as_ref()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(e),
            };
        }
    };
    match outcome {
        Ok(o) => {
            match cli.format {
                Format::Json => print!("{}", o.report.to_json()),
                Format::Text => print!("{}", o.report.to_text()),
            }
            if o.disagreement {
                ExitCode::from(EXIT_DISAGREEMENT)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => fail(e),
    }
}
