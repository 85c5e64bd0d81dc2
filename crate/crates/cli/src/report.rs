use std::collections::BTreeMap;

use finsler_core::{ConditionReport, ObstructionReport};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub function: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<ScanSummary>,
    pub points: Vec<PointReport>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub points_total: usize,
    pub points_valid: usize,
    pub coincide_count: usize,
    pub cyclic_pass: usize,
    pub integrability_pass: usize,
    pub isotropy_pass: usize,
}

/// Everything computed at one point; all fields but `x`, `y` and `skipped`
/// are absent for skipped points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    pub f: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensors: Option<Tensors>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nullity: Option<SpaceReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<SpaceReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coincide: Option<CoincideReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditions: Option<Conditions>,
    /// One entry per nullity basis vector.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Vec<ObstructionReport>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Diagnostics>,
    pub skipped: Option<Skip>,
}

impl PointReport {
    pub fn skipped(x: Vec<f64>, y: Vec<f64>, reason: String) -> Self {
        PointReport {
            x,
            y,
            f: None,
            tensors: None,
            nullity: None,
            kernel: None,
            coincide: None,
            conditions: None,
            obstruction: None,
            diagnostics: None,
            skipped: Some(Skip { reason }),
        }
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped.is_some()
    }
}

/// Components as nested arrays, outermost index first; `labels` gives the
/// index pattern of each array.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tensors {
    pub labels: BTreeMap<String, String>,
    pub g: Vec<Vec<f64>>,
    #[serde(rename = "N")]
    pub n: Vec<Vec<f64>>,
    #[serde(rename = "Gamma")]
    pub gamma: Vec<Vec<Vec<f64>>>,
    #[serde(rename = "R")]
    pub r: Vec<Vec<Vec<Vec<f64>>>>,
    #[serde(rename = "Rhat")]
    pub rhat: Vec<Vec<Vec<f64>>>,
}

impl Tensors {
    pub fn labels() -> BTreeMap<String, String> {
        [
            ("g", "g_ij"),
            ("N", "N^i_j"),
            ("Gamma", "Gamma^i_jk"),
            ("R", "R^h_ijk"),
            ("Rhat", "Rhat^h_jk"),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_owned(), v.to_owned()))
        .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceReport {
    pub dim: usize,
    /// Orthonormal basis vectors.
    pub basis: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoincideReport {
    pub verdict: bool,
    pub angles: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conditions {
    pub cyclic: ConditionReport,
    pub integrability: ConditionReport,
    pub isotropy: ConditionReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub det_g: f64,
    pub max_abs_r: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fd_check: Option<FdCheck>,
}

/// Jet versus finite-difference comparison of all partials of `F²` up to order 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FdCheck {
    pub derivatives: usize,
    pub max_rel_error: f64,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skip {
    pub reason: String,
}
