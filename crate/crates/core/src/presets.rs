//! Built-in Finsler functions.

use crate::expr::ParseError;
use crate::finsler::FinslerFunction;

#[derive(Debug, Clone, PartialEq)]
pub enum Preset {
    /// `F = sqrt(x3 y1 sqrt(y2² + y3²))` on `x3 y1 > 0`, `n = 3`: nullity and
    /// kernel spaces are distinct lines.
    Counterexample,
    /// `F = (y1⁴ + y2⁴ + y3⁴)^(1/4)`; all curvature vanishes.
    LocallyMinkowski,
    /// Conformally flat metric of constant sectional curvature `c`.
    RiemannConstantCurvature { c: f64 },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PresetError {
    #[error("unknown preset '{0}' (expected one of: {names})", names = Preset::NAMES.join(", "))]
    Unknown(String),
    #[error("curvature parameter must be finite, got {0}")]
    Parameter(f64),
}

pub const COUNTEREXAMPLE_SOURCE: &str = "sqrt(x3*y1*sqrt(y2^2+y3^2))";
pub const LOCALLY_MINKOWSKI_SOURCE: &str = "(y1^4+y2^4+y3^4)^1/4";

impl Preset {
    pub const NAMES: [&'static str; 3] = [
        "paper-counterexample",
        "locally-minkowski",
        "riemann-constant-curvature",
    ];

    /// Looks a preset up by name; `c` only applies to the constant-curvature
    /// preset and defaults to 1.
    pub fn from_name(name: &str, c: Option<f64>) -> Result<Self, PresetError> {
        match name {
            "paper-counterexample" => Ok(Preset::Counterexample),
            "locally-minkowski" => Ok(Preset::LocallyMinkowski),
            "riemann-constant-curvature" => {
                let c = c.unwrap_or(1.0);
                if !c.is_finite() {
                    return Err(PresetError::Parameter(c));
                }
                Ok(Preset::RiemannConstantCurvature { c })
            }
            other => Err(PresetError::Unknown(other.to_owned())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Counterexample => Self::NAMES[0],
            Preset::LocallyMinkowski => Self::NAMES[1],
            Preset::RiemannConstantCurvature { .. } => Self::NAMES[2],
        }
    }

    pub fn dim(&self) -> usize {
        3
    }

    pub fn source(&self) -> String {
        match self {
            Preset::Counterexample => COUNTEREXAMPLE_SOURCE.to_owned(),
            Preset::LocallyMinkowski => LOCALLY_MINKOWSKI_SOURCE.to_owned(),
            Preset::RiemannConstantCurvature { c } => {
                format!("sqrt(y1^2+y2^2+y3^2)/(1+({c:?}/4)*(x1^2+x2^2+x3^2))")
            }
        }
    }

    /// A point where the preset is regular.
    pub fn default_point(&self) -> (Vec<f64>, Vec<f64>) {
        match self {
            Preset::Counterexample => (vec![0.0, 0.0, 1.0], vec![1.0, 2.0, 2.0]),
            Preset::LocallyMinkowski => (vec![0.0, 0.0, 0.0], vec![1.0, 2.0, 2.0]),
            Preset::RiemannConstantCurvature { .. } => (vec![0.1, 0.2, 0.3], vec![1.0, 2.0, 2.0]),
        }
    }

    pub fn function(&self) -> Result<FinslerFunction, ParseError> {
        FinslerFunction::parse(&self.source(), self.dim())
    }
}
