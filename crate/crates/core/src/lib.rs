//! Cartan-connection curvature of Finsler functions given as expressions,
//! with nullity and kernel spaces of the h-curvature.

pub mod autodiff;
pub mod distributions;
pub mod expr;
pub mod finsler;
pub mod jet;
pub mod presets;
pub mod scalar;
pub mod subspace;
pub mod tensor;

pub use distributions::{
    CoincidenceVerdict, ConditionKind, ConditionReport, DistributionError, ObstructionReport,
    Tolerances,
};
pub use expr::{parse, EvalError, Expression, ParseError};
pub use finsler::{FinslerFunction, GeometryError, PointGeometry, TangentPoint};
pub use presets::{Preset, PresetError};
pub use subspace::Subspace;
pub use tensor::{PiVector, TensorBlock, Variance};
