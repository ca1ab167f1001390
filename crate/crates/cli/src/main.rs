//! `pkspec`: forward and inverse spectral analysis of periodic
//! multi-peakon pairs from the command line.
//!
//! Every command is a thin adapter between the JSON file formats and the
//! library; no numeric logic lives here. Exit codes: 0 on success, 1 on a
//! domain error (inadmissible data, off-torus divisor, ...), 2 on
//! unreadable or malformed input files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use peakon_spectral::files::{DiscriminantFile, DivisorFile, PairFile, SpectralFile};
use peakon_spectral::{
    dirichlet_data, discriminant, divisor_from_dirichlet, isospectral_sample, monodromy,
    solve_dirichlet_with, solve_periodic_with, spectral_data, trace_report, PeakonPair,
    SpectralError,
};

#[derive(Parser)]
#[command(
    name = "pkspec",
    about = "Spectral analysis of periodic multi-peakon measure pairs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Mode {
    #[default]
    Float,
    Rational,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full spectral data of a pair file.
    Forward {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
    },
    /// Reconstruct the pair from Dirichlet spectral data.
    InvDirichlet {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
        /// Forward re-verification tolerance.
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Reconstruct the pair from a discriminant and a torus divisor
    /// (base point fixed at 0).
    InvPeriodic {
        #[arg(long)]
        discriminant: PathBuf,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Run both inverse problems against the forward data of a pair and
    /// report the largest node residual.
    Roundtrip {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Evaluate the eight trace identities of a pair.
    TraceCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Sample the isospectral family of a discriminant on a torus grid,
    /// one pair record per line.
    IsospectralSample {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        samples: usize,
        /// Output stream; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Move the base point of a pair, check that the discriminant stays
    /// put, and show how the Dirichlet spectrum moves.
    ShiftBase {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        new_base: f64,
        #[arg(long)]
        output: PathBuf,
    },
}

enum CliError {
    /// Unreadable or malformed input.
    Input(String),
    /// The computation rejected the data.
    Domain(SpectralError),
}

impl From<SpectralError> for CliError {
    fn from(e: SpectralError) -> Self {
        CliError::Domain(e)
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Input(format!("serialization: {e}")))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_pair(path: &Path) -> Result<PeakonPair<f64>, CliError> {
    let file: PairFile = read_json(path)?;
    file.to_pair().map_err(|e| CliError::Input(e.to_string()))
}

/// Largest relative deviation between the node data of two pairs.
fn pair_distance(lhs: &PeakonPair<f64>, rhs: &PeakonPair<f64>) -> f64 {
    if lhs.len() != rhs.len() {
        return f64::INFINITY;
    }
    let rel = |a: f64, b: f64| (a - b).abs() / (1.0 + a.abs().max(b.abs()));
    let mut worst = rel(lhs.ell(), rhs.ell());
    for (l, r) in lhs.nodes().iter().zip(rhs.nodes()) {
        worst = worst.max(rel(l.x, r.x));
        worst = worst.max(rel(l.omega, r.omega));
        worst = worst.max(rel(l.upsilon, r.upsilon));
    }
    worst
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Forward {
            input,
            output,
            mode,
        } => {
            let file: PairFile = read_json(&input)?;
            let spectral = match mode {
                Mode::Float => {
                    let pair = file.to_pair().map_err(|e| CliError::Input(e.to_string()))?;
                    SpectralFile::from_data(&spectral_data(&pair)?, None)
                }
                Mode::Rational => {
                    let pair = file
                        .to_pair_exact()
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    let tanh = pair.period().tanh_half().to_string();
                    SpectralFile::from_data(&spectral_data(&pair)?, Some(tanh))
                }
            };
            write_json(&output, &spectral)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::InvDirichlet {
            input,
            output,
            mode,
            tol,
        } => {
            let file: SpectralFile = read_json(&input)?;
            let pair_file = match mode {
                Mode::Float => {
                    let spec_input = file
                        .to_dirichlet_input()
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    let rec = solve_dirichlet_with(&spec_input, Some(tol))?;
                    println!("reconstruction residual: {:e}", rec.residual);
                    PairFile::from_pair(&rec.pair)
                }
                Mode::Rational => {
                    let spec_input = file
                        .to_dirichlet_input_exact()
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    let rec = solve_dirichlet_with(&spec_input, Some(tol))?;
                    println!("reconstruction residual: {:e}", rec.residual);
                    PairFile::from_pair_exact(&rec.pair)
                }
            };
            write_json(&output, &pair_file)?;
            Ok(ExitCode::SUCCESS)
        }

        Command::InvPeriodic {
            discriminant: disc_path,
            divisor: divisor_path,
            output,
            tol,
        } => {
            let disc: DiscriminantFile = read_json(&disc_path)?;
            let divisor_file: DivisorFile = read_json(&divisor_path)?;
            let divisor = divisor_file
                .to_points()
                .map_err(|e| CliError::Input(e.to_string()))?;
            let period = disc.period().map_err(|e| CliError::Input(e.to_string()))?;
            let rec = solve_periodic_with(&disc.to_poly(), &divisor, &period, 0.0, Some(tol))?;
            println!("reconstruction residual: {:e}", rec.residual);
            write_json(&output, &PairFile::from_pair(&rec.pair))?;
            Ok(ExitCode::SUCCESS)
        }

        Command::Roundtrip { input, tol } => {
            let pair = load_pair(&input)?;
            let data = spectral_data(&pair)?;

            let dirichlet_input = peakon_spectral::DirichletSpectralInput {
                sigma: data.dirichlet.finite_kappas(),
                gammas: data.dirichlet.gammas.clone(),
                omega_a: data.dirichlet.omega_a,
                upsilon_a: data.dirichlet.upsilon_a,
                period: pair.period().clone(),
                a: pair.base(),
            };
            let from_dirichlet = solve_dirichlet_with(&dirichlet_input, None)?;
            let d1 = pair_distance(&pair, &from_dirichlet.pair);
            println!("dirichlet roundtrip residual: {d1:e}");

            let divisor = divisor_from_dirichlet(&data.dirichlet);
            let from_periodic =
                solve_periodic_with(&data.delta, &divisor, pair.period(), pair.base(), None)?;
            let d2 = pair_distance(&pair, &from_periodic.pair);
            println!("periodic roundtrip residual: {d2:e}");

            let worst = d1.max(d2);
            println!("max residual: {worst:e} (tolerance {tol:e})");
            if worst < tol {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }

        Command::TraceCheck { input, tol } => {
            let pair = load_pair(&input)?;
            let report = trace_report(&pair)?;
            let text = serde_json::to_string_pretty(&report)
                .map_err(|e| CliError::Input(e.to_string()))?;
            println!("{text}");
            let worst = report.max_residual();
            println!("max residual: {worst:e} (tolerance {tol:e})");
            if worst < tol {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }

        Command::IsospectralSample {
            input,
            samples,
            output,
        } => {
            let disc: DiscriminantFile = read_json(&input)?;
            let period = disc.period().map_err(|e| CliError::Input(e.to_string()))?;
            let pairs = isospectral_sample(&disc.to_poly(), &period, 0.0, samples)?;
            let mut lines = String::new();
            for pair in &pairs {
                let record = serde_json::to_string(&PairFile::from_pair(pair))
                    .map_err(|e| CliError::Input(e.to_string()))?;
                lines.push_str(&record);
                lines.push('\n');
            }
            match output {
                Some(path) => std::fs::write(&path, lines)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
                None => print!("{lines}"),
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::ShiftBase {
            input,
            new_base,
            output,
        } => {
            let pair = load_pair(&input)?;
            let shifted = pair.rebase(new_base);
            write_json(&output, &PairFile::from_pair(&shifted))?;

            let old_delta = discriminant(&monodromy(&pair)?);
            let new_delta = discriminant(&monodromy(&shifted)?);
            let mut drift: f64 = 0.0;
            for i in 0..old_delta.coeffs().len().max(new_delta.coeffs().len()) {
                drift = drift.max((old_delta.coeff(i) - new_delta.coeff(i)).abs());
            }
            let old_kappas: Vec<f64> = dirichlet_data(&pair)?
                .kappas
                .iter()
                .map(|k| k.to_f64())
                .collect();
            let new_kappas: Vec<f64> = dirichlet_data(&shifted)?
                .kappas
                .iter()
                .map(|k| k.to_f64())
                .collect();
            println!(
                "dirichlet spectrum at base {}: {:?}",
                pair.base(),
                old_kappas
            );
            println!("dirichlet spectrum at base {new_base}: {new_kappas:?}");
            println!("discriminant drift: {drift:e}");
            if drift > 1e-9 * (1.0 + old_delta.max_abs()) {
                return Err(SpectralError::InternalInconsistency(format!(
                    "discriminant moved by {drift:e} under a base shift"
                ))
                .into());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Input(e)) => {
            eprintln!("input error: {e}");
            ExitCode::from(2)
        }
    }
}
