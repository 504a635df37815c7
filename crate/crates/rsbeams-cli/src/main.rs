//! `rsbeams` — sample exact electromagnetic beams, verify the identities
//! they satisfy, and export spectral curves and photon observables.

mod commands;
mod config;
mod csvout;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CommandError, SpectrumArgs};
use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "rsbeams",
    version,
    about = "Exact Bessel and Laguerre-Gauss beams through the Riemann-Silberstein vector"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args)]
struct CommonArgs {
    /// Key-value configuration file (see the README key reference).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Use SI constants (CODATA); default is natural units c = ħ = ε₀ = 1.
    #[arg(long)]
    si: bool,
    /// Central finite-difference stencil order.
    #[arg(long = "fd-order", value_parser = ["2", "4"])]
    fd_order: Option<String>,
    /// Relative quadrature tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

impl CommonArgs {
    fn resolve(&self) -> Result<RunConfig, CommandError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_file(path)
                .map_err(|e| CommandError::Usage(e.to_string()))?,
            None => RunConfig::default(),
        };
        if self.si {
            cfg.preset = config::Preset::Si;
        }
        if let Some(order) = &self.fd_order {
            cfg.fd_order =
                config::parse_order(order).map_err(|e| CommandError::Usage(e.to_string()))?;
        }
        if let Some(tol) = self.tol {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(CommandError::Usage(format!(
                    "tolerance must be positive, got {tol}"
                )));
            }
            cfg.tol = tol;
        }
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample the beam on a grid and export fields plus densities as CSV.
    Sample {
        #[command(flatten)]
        common: CommonArgs,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Component basis for the exported field.
        #[arg(long, value_parser = ["cartesian", "cylindrical"])]
        basis: Option<String>,
    },
    /// Run the verification suite; exit 0 only if every check passes.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Fault injection: negate F_z before verification (must fail).
        #[arg(long = "corrupt-negate-fz")]
        corrupt_negate_fz: bool,
    },
    /// Export the normalized spectral weight w(ω) as CSV.
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
        /// Output CSV path; multiple cases get _n{n}_m{m} suffixes.
        #[arg(long)]
        out: PathBuf,
        #[arg(long = "omega-min")]
        omega_min: Option<f64>,
        #[arg(long = "omega-max")]
        omega_max: Option<f64>,
        /// Samples per curve.
        #[arg(long, default_value_t = 2000)]
        count: usize,
        /// Extra (n,m) cases, e.g. --cases "0,0;1,1;2,2".
        #[arg(long)]
        cases: Option<String>,
    },
    /// Report photon-number-normalized observables of an LG beam.
    Observables {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn parse_cases(text: &str) -> Result<Vec<(u32, u32)>, CommandError> {
    let mut cases = Vec::new();
    for chunk in text.split(';') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let (n, m) = chunk
            .split_once(',')
            .ok_or_else(|| CommandError::Usage(format!("bad case '{chunk}', expected n,m")))?;
        let n = n.trim().parse().map_err(|_| {
            CommandError::Usage(format!("bad radial index in case '{chunk}'"))
        })?;
        let m = m.trim().parse().map_err(|_| {
            CommandError::Usage(format!("bad azimuthal index in case '{chunk}'"))
        })?;
        cases.push((n, m));
    }
    Ok(cases)
}

fn run() -> Result<(), CommandError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Sample { common, out, basis } => {
            let mut cfg = common.resolve()?;
            if let Some(basis) = &basis {
                cfg.basis = config::parse_basis(basis)
                    .map_err(|e| CommandError::Usage(e.to_string()))?;
            }
            commands::cmd_sample(&cfg, &out)
        }
        Command::Verify {
            common,
            corrupt_negate_fz,
        } => {
            let mut cfg = common.resolve()?;
            cfg.corrupt_negate_fz = corrupt_negate_fz;
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let result = commands::cmd_verify(&cfg, &mut lock);
            lock.flush().ok();
            result
        }
        Command::Spectrum {
            common,
            out,
            omega_min,
            omega_max,
            count,
            cases,
        } => {
            let cfg = common.resolve()?;
            let args = SpectrumArgs {
                omega_min,
                omega_max,
                count,
                cases: cases.as_deref().map(parse_cases).transpose()?.unwrap_or_default(),
            };
            commands::cmd_spectrum(&cfg, &args, &out).map(|written| {
                for path in written {
                    println!("wrote {}", path.display());
                }
            })
        }
        Command::Observables { common } => {
            let cfg = common.resolve()?;
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let result = commands::cmd_observables(&cfg, &mut lock);
            lock.flush().ok();
            result
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rsbeams: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
