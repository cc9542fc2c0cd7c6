//! `fueter`: evaluate the Fueter mapping, check monogenicity, tabulate
//! monomial images, compute sphere kernels and run the inverse.

mod commands;
mod output;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fueter::FueterError;

use output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] FueterError),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                FueterError::Domain(_)
                | FueterError::Region(_)
                | FueterError::Representation(_)
                | FueterError::NonIntrinsic { .. } => 3,
                FueterError::NotConverged { .. } => 4,
                _ => 2,
            },
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fueter", version, about = "Fueter mapping in Clifford analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Output format (default: csv for `table`, json otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Truncation tolerance of the kernel series used by `inverse` and `roundtrip`.
    #[arg(long = "series-tol", global = true, env = "FUETER_TOL", default_value_t = 1e-12)]
    series_tol: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate beta(f0) at a point for a Laurent series f0.
    Eval {
        #[arg(long, value_name = "FILE")]
        series: PathBuf,
        #[arg(long)]
        n: usize,
        /// Comma-separated components `x0,x1,...,xn`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Check that beta(z^l) is axially monogenic.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        #[arg(long)]
        n: usize,
        /// Threshold for the numeric Dirac residual (even n).
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Classify beta(z^l) for a range of l with axis restrictions.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = -4)]
        lmin: i64,
        /// Defaults to n + 4.
        #[arg(long, allow_hyphen_values = true)]
        lmax: Option<i64>,
    },
    /// Sphere kernel K+ or K- at the axial point x0 + r e1.
    Kernel {
        #[arg(long, value_enum)]
        which: commands::WhichArg,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long)]
        r: f64,
        /// Gauss–Jacobi nodes.
        #[arg(long, default_value_t = 64)]
        quad: usize,
    },
    /// Reconstruct f0 from beta of a series sampled on a contour.
    Inverse {
        /// Contour JSON: {"center": [u0, r0], "radius": R, "samples": N}.
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        /// Series whose beta image is sampled on the contour.
        #[arg(long, value_name = "FILE")]
        series: PathBuf,
        #[arg(long)]
        n: usize,
        /// Points `x0,...,xn` where the reconstruction is evaluated at x0 + i|x_vec|.
        #[arg(long, allow_hyphen_values = true)]
        point: Vec<String>,
        #[arg(long, allow_hyphen_values = true, default_value_t = -8)]
        lmin: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 8)]
        lmax: i64,
        /// Real center of the expansion circle (default: contour center u0).
        #[arg(long, allow_hyphen_values = true)]
        expand_center: Option<f64>,
        /// Radius of the expansion circle (default: r0 + R + 1, enclosing the contour).
        #[arg(long)]
        expand_radius: Option<f64>,
    },
    /// Run f0 -> beta(f0) -> g0 -> beta(g0) and compare (odd n).
    Roundtrip {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        #[arg(long, value_name = "FILE")]
        series: PathBuf,
        #[arg(long)]
        n: usize,
        /// Test points `x0,...,xn` inside the contour (default: 8 points on
        /// a circle of half the contour radius).
        #[arg(long, allow_hyphen_values = true)]
        point: Vec<String>,
        /// Largest accepted relative spread of the fitted constant.
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match commands::run(&cli) {
        Ok(report) => {
            let text = match report.render(cli.format) {
                Ok(text) => text,
                Err(e) => return fail(&e),
            };
            if let Err(e) = output::emit(&text, cli.out.as_deref()) {
                return fail(&e);
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code())
}
