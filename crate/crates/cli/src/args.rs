use std::path::PathBuf;

use clap::Parser;

use crate::config::OutputFormat;

/// Cartan-connection curvature, nullity and kernel spaces of a Finsler function.
#[derive(Debug, Clone, Parser)]
#[command(name = "finsler", version)]
pub struct Args {
    /// Finsler function F(x, y), e.g. "sqrt(x3*y1*sqrt(y2^2+y3^2))".
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    pub func: Option<String>,

    /// Built-in function: paper-counterexample, locally-minkowski,
    /// riemann-constant-curvature.
    #[arg(long)]
    pub preset: Option<String>,

    /// Dimension n of the base manifold.
    #[arg(long)]
    pub dim: Option<usize>,

    /// Evaluation point "x1,..,xn;y1,..,yn"; repeatable.
    #[arg(long = "point", allow_hyphen_values = true)]
    pub points: Vec<String>,

    /// Grid "<coord>=<lo>:<hi>:<count>,..." around the first point (or the
    /// preset's default point).
    #[arg(long, allow_hyphen_values = true)]
    pub scan: Option<String>,

    /// Relative singular-value threshold for rank decisions.
    #[arg(long, env = "FINSLER_TOL")]
    pub tol: Option<f64>,

    /// Compare jet derivatives of F² against finite differences.
    #[arg(long)]
    pub fd_check: bool,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Seed for scan jitter.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Perturb scan points by up to this fraction of the grid step.
    #[arg(long, default_value_t = 0.0)]
    pub jitter: f64,

    /// Write per-point scan rows as CSV to this path.
    #[arg(long)]
    pub csv: Option<PathBuf>,

    /// Sectional curvature c of riemann-constant-curvature (default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub curvature: Option<f64>,
}
