//! `slice-series`: evaluate power and spherical series over real alternative
//! *-algebras, recover their coefficients, and check the invariant suite.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exit codes.
const EXIT_INPUT: u8 = 1;
const EXIT_NONCONVERGENCE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "slice-series", version, about = "Power and spherical series of slice functions")]
pub struct Cli {
    /// Algebra: H, O, C or Cl<n> with 1 <= n <= 5.
    #[arg(long, global = true, default_value = "H")]
    pub algebra: String,
    /// JSON algebra config; overrides --algebra.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Quadrature nodes per loop, or points per boundary loop.
    #[arg(long, global = true)]
    pub points: Option<usize>,
    /// Truncation order.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    /// Random samples for constant estimation and property checks.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Run on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate Σ (x − y)^{·n} a_n at the given points.
    EvalPower(EvalArgs),
    /// Evaluate Σ S_{y,n}(x) s_n at the given points.
    EvalSpherical(EvalArgs),
    /// Estimate the radius of convergence of a stored series.
    Radius {
        /// Series JSON (file, inline text, or - for stdin).
        series: String,
    },
    /// Recover expansion coefficients of a stem.
    Coeffs(CoeffsArgs),
    /// CSV boundary points of a Cassini oval or a σ-ball slice.
    Boundary(BoundaryArgs),
    /// σ_A and τ_A between two points.
    Metric {
        /// First point, optionally written x=<element>.
        x: String,
        /// Second point, optionally written y=<element>.
        y: String,
    },
    /// Run the property suite.
    Verify {
        /// Only the named properties.
        #[arg(long)]
        only: Vec<String>,
        /// Print JSON instead of one line per property.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Series JSON {center, coeffs, order}.
    pub series: String,
    /// Evaluation points: a JSON list of elements, or one element.
    #[arg(long)]
    pub at: String,
}

#[derive(Args, Debug)]
pub struct CoeffsArgs {
    /// Stem JSON: a term list, {"piecewise_constant": ..}, or {"stem": .., "center": ..}.
    pub stem: String,
    /// Expansion center; required unless the stem file carries one.
    #[arg(long)]
    pub center: Option<String>,
    /// deriv, system or contour.
    #[arg(long, default_value = "system")]
    pub method: String,
    /// power or spherical.
    #[arg(long, default_value = "spherical")]
    pub kind: String,
    /// Contour radius in the plane of the center.
    #[arg(long, default_value_t = 0.5)]
    pub radius: f64,
    /// Allowed disagreement between the contour rule and its refinement.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Points at which to report remainders of the truncated expansion.
    #[arg(long)]
    pub at: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct BoundaryArgs {
    /// Oval |z − w||z − w̄| = r², as w=<complex> r=<radius>.
    #[arg(long, num_args = 1..)]
    pub cassini: Option<Vec<String>>,
    /// σ-ball slices around w, as w=<complex> r=<radius>.
    #[arg(long, num_args = 1..)]
    pub ball: Option<Vec<String>>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                commands::Failure::Input(_) => EXIT_INPUT,
                commands::Failure::NonConvergence(_) => EXIT_NONCONVERGENCE,
                commands::Failure::Verify(_) => EXIT_VERIFY,
            })
        }
    }
}
