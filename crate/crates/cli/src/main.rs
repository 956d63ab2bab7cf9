//! `zerosector`: certify root locations from coefficient ratios.
//!
//! Exit codes: 0 success, 1 error, 2 certificate refused, 64 usage error.

mod angle;
mod commands;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use angle::Angle;
use source::CoeffSource;

pub const DIGITS_ENV: &str = "ZEROSECTOR_DIGITS";

#[derive(Debug, Parser)]
#[command(
    name = "zerosector",
    version,
    about = "Root localization from log-concavity ratios"
)]
struct Cli {
    /// Output format; `table` is available for roots, beta, constant-ratio and sweep.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    output: OutputFormat,
    /// Working precision in significant digits (at least 15). Defaults to
    /// $ZEROSECTOR_DIGITS, else 15 for sector and annulus work and 50 for constant-ratio work.
    #[arg(long, global = true)]
    digits: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    G,
    H,
    J,
    K,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    /// β₀ over a θ grid.
    Theta,
    /// Constant-ratio classification over a b grid.
    B,
    /// Random sequences above β₀(θ), certified and checked against the root oracle.
    Soundness,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// β-profile, minimum ratio and mode of a coefficient sequence.
    Beta {
        #[command(flatten)]
        source: CoeffSource,
        /// Use |c_j| (for sequences with negative or complex-phase coefficients).
        #[arg(long)]
        moduli: bool,
    },
    /// The sector threshold β₀(θ), or the branch breakpoints.
    Beta0 {
        #[arg(
            long,
            allow_hyphen_values = true,
            required_unless_present = "breakpoints"
        )]
        theta: Option<Angle>,
        #[arg(long, conflicts_with = "theta")]
        breakpoints: bool,
    },
    /// The inverse Θ(β): the widest sector certified by min β.
    Theta {
        #[arg(long)]
        beta: f64,
        /// Also compare the closed-form branch expressions with the inverse.
        #[arg(long)]
        probe: bool,
    },
    /// Certify |arg z| > θ for every root, or report the widest certified sector.
    Certify {
        #[command(flatten)]
        source: CoeffSource,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "max")]
        theta: Option<Angle>,
        #[arg(long, conflicts_with = "theta")]
        max: bool,
    },
    /// Extremal polynomial with min β near β₀(θ) and a root near e^{iθ}.
    Sharpness {
        #[arg(long, allow_hyphen_values = true)]
        theta: Angle,
        /// Base polynomial; defaults to the one matching the active branch of β₀(θ).
        #[arg(long, value_enum)]
        base: Option<BaseArg>,
        #[arg(long, default_value_t = 1000)]
        n: u32,
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
    /// The annulus constant, or annulus and real-root charts for a sequence.
    Kurtz {
        #[arg(long, value_name = "FILE", conflicts_with = "inline")]
        coeffs: Option<PathBuf>,
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        inline: Option<String>,
        /// Annuli holding exactly one root (the default when coefficients are given).
        #[arg(long)]
        annuli: bool,
        /// Interval for each negative real root, with sign witnesses.
        #[arg(long = "real-chart", conflicts_with = "annuli")]
        real_chart: bool,
    },
    /// All complex roots with per-root backward residuals.
    Roots {
        #[command(flatten)]
        source: CoeffSource,
    },
    /// Constant-ratio family: critical bases, the B₀ squeeze and classification.
    ConstantRatio {
        /// Critical base b₀(L).
        #[arg(long, value_name = "L", group = "op")]
        critical: Option<usize>,
        /// Bracket B₀ using l = 2..=lmax.
        #[arg(long, group = "op")]
        squeeze: bool,
        /// Classify f_{B,N}.
        #[arg(long, num_args = 2, value_names = ["B", "N"], group = "op")]
        classify: Option<Vec<String>>,
        #[arg(long, default_value_t = 11)]
        lmax: usize,
    },
    /// Large ratios with nonreal roots next to smaller constant ratios with real roots.
    DemoParadox,
    /// Parameter sweeps, merged in grid order.
    Sweep {
        #[arg(long, value_enum, default_value_t = SweepKind::Theta)]
        kind: SweepKind,
        /// Grid start (angle for theta, decimal for b).
        #[arg(long, allow_hyphen_values = true)]
        from: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        to: Option<String>,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Degree for b sweeps.
        #[arg(long, default_value_t = 30)]
        degree: usize,
        /// Sector angle for soundness sweeps.
        #[arg(long, allow_hyphen_values = true, default_value = "0.75pi")]
        theta: Angle,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit CSV rows (to FILE, or stdout when no file is given).
        #[arg(long, value_name = "FILE", num_args = 0..=1, default_missing_value = "-")]
        csv: Option<PathBuf>,
    },
}

/// Resolved run settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub digits: u32,
    pub output: OutputFormat,
}

pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<zerosector::Error> for CliError {
    fn from(e: zerosector::Error) -> CliError {
        CliError::Failed(e.to_string())
    }
}

fn resolve_digits(flag: Option<u32>, command_default: u32) -> Result<u32, CliError> {
    let digits = match flag {
        Some(d) => d,
        None => match std::env::var(DIGITS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{DIGITS_ENV}={v:?} is not an integer")))?,
            Err(_) => command_default,
        },
    };
    if digits < 15 {
        return Err(CliError::Usage(format!(
            "digits must be at least 15, got {digits}"
        )));
    }
    Ok(digits)
}

fn run(cli: Cli) -> Result<commands::Output, CliError> {
    let command_default = match cli.command {
        Command::ConstantRatio { .. } | Command::DemoParadox => 50,
        Command::Sweep {
            kind: SweepKind::B, ..
        } => 50,
        _ => 15,
    };
    let cfg = RunConfig {
        digits: resolve_digits(cli.digits, command_default)?,
        output: cli.output,
    };
    match cli.command {
        Command::Beta { source, moduli } => commands::beta(cfg, &source, moduli),
        Command::Beta0 { theta, .. } => commands::beta0(cfg, theta),
        Command::Theta { beta, probe } => commands::theta(cfg, beta, probe),
        Command::Certify { source, theta, .. } => commands::certify(cfg, &source, theta),
        Command::Sharpness {
            theta,
            base,
            n,
            degree,
        } => commands::sharpness(cfg, theta, base, n, degree),
        Command::Kurtz {
            coeffs,
            inline,
            annuli,
            real_chart,
        } => {
            let source = match (coeffs, inline) {
                (None, None) if annuli || real_chart => {
                    return Err(CliError::Usage(
                        "--annuli and --real-chart need --coeffs or --inline".into(),
                    ))
                }
                (None, None) => None,
                (coeffs, inline) => Some(CoeffSource { coeffs, inline }),
            };
            commands::kurtz(cfg, source.as_ref(), real_chart)
        }
        Command::Roots { source } => commands::roots(cfg, &source),
        Command::ConstantRatio {
            critical,
            squeeze,
            classify,
            lmax,
        } => commands::constant_ratio(cfg, critical, squeeze, classify, lmax),
        Command::DemoParadox => commands::demo_paradox(cfg),
        Command::Sweep {
            kind,
            from,
            to,
            steps,
            degree,
            theta,
            count,
            seed,
            csv,
        } => commands::sweep(
            cfg,
            commands::SweepArgs {
                kind,
                from,
                to,
                steps,
                degree,
                theta,
                count,
                seed,
                csv,
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.refused { 2 } else { 0 })
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(64)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
