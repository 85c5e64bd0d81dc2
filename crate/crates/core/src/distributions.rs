//! Nullity and kernel spaces of the h-curvature and the conditions under
//! which they coincide.
//!
//! With `Rʰᵢⱼₖ` (transported slot `i`, horizontal pair `(j, k)`):
//!
//! - nullity: `{X : Xʲ Rʰᵢⱼₖ = 0 ∀ h, i, k}`
//! - kernel:  `{Z : Zⁱ Rʰᵢⱼₖ = 0 ∀ h, j, k}`

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::finsler::PointGeometry;
use crate::subspace::Subspace;
use crate::tensor::{PiVector, TensorBlock, Variance};

/// Numerical thresholds of the distribution analysis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Singular values `≤ rank_rel · σ_max` count as zero.
    pub rank_rel: f64,
    /// Largest principal angle (radians) for two subspaces to coincide.
    pub angle: f64,
    /// Cyclic sum passes when `max |S| ≤ cyclic_rel · max |R|`.
    pub cyclic_rel: f64,
    /// `R̂` counts as zero when `max |R̂| ≤ integrability_rel · max(1, max |N|)`.
    pub integrability_rel: f64,
    /// Relative misfit allowed by the isotropy model.
    pub isotropy: f64,
    /// Nullity membership and obstruction mismatch, relative to `max(1, max |R|)`.
    pub identity_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_rel: 1e-8,
            angle: 1e-6,
            cyclic_rel: 1e-8,
            integrability_rel: 1e-10,
            isotropy: 1e-6,
            identity_rel: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionKind {
    Cyclic,
    Integrability,
    Isotropy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub kind: ConditionKind,
    pub residual: f64,
    pub threshold: f64,
    pub passes: bool,
    /// Fitted isotropy factor `λ`; only for [`ConditionKind::Isotropy`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
}

impl ConditionReport {
    fn new(kind: ConditionKind, residual: f64, threshold: f64, lambda: Option<f64>) -> Self {
        ConditionReport {
            kind,
            residual,
            threshold,
            passes: residual <= threshold,
            lambda,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoincidenceVerdict {
    pub dim_nullity: usize,
    pub dim_kernel: usize,
    pub coincide: bool,
    /// Ascending, radians; `min(dim_nullity, dim_kernel)` entries.
    pub principal_angles: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionPair {
    pub j: usize,
    pub k: usize,
    /// `Xⁱ Rʰᵢⱼₖ`, i.e. `R(h̄ⱼ, h̄ₖ)X̄`.
    pub lhs: PiVector,
    /// `T(X, [hⱼ, hₖ])`.
    pub rhs: PiVector,
}

/// Both sides of `R(Ȳ, Z̄)X̄ = T(X, [Y, Z])` for `X` in the nullity space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub x: Vec<f64>,
    pub pairs: Vec<ObstructionPair>,
    pub max_mismatch: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DistributionError {
    #[error("vector is not in the nullity space (residual {residual:e} > {threshold:e})")]
    NotInNullity { residual: f64, threshold: f64 },
    #[error("vector has length {got}, expected {expected}")]
    Dimension { expected: usize, got: usize },
}

/// Rows `(h, i, k)`, column `j`: `Rʰᵢⱼₖ`.
pub fn nullity_matrix(geo: &PointGeometry) -> DMatrix<f64> {
    let n = geo.dim();
    let r = geo.h_curvature();
    DMatrix::from_fn(n * n * n, n, |row, j| {
        let (h, i, k) = (row / (n * n), (row / n) % n, row % n);
        r.get(&[h, i, j, k])
    })
}

/// Rows `(h, j, k)`, column `i`: `Rʰᵢⱼₖ`.
pub fn kernel_matrix(geo: &PointGeometry) -> DMatrix<f64> {
    let n = geo.dim();
    let r = geo.h_curvature();
    DMatrix::from_fn(n * n * n, n, |row, i| {
        let (h, j, k) = (row / (n * n), (row / n) % n, row % n);
        r.get(&[h, i, j, k])
    })
}

pub fn nullity_space(geo: &PointGeometry, tol: &Tolerances) -> Subspace {
    Subspace::nullspace(&nullity_matrix(geo), tol.rank_rel)
}

pub fn kernel_space(geo: &PointGeometry, tol: &Tolerances) -> Subspace {
    Subspace::nullspace(&kernel_matrix(geo), tol.rank_rel)
}

pub fn compare(nullity: &Subspace, kernel: &Subspace, tol: &Tolerances) -> CoincidenceVerdict {
    let angles = nullity.principal_angles(kernel);
    let same_dim = nullity.dim() == kernel.dim();
    let max_angle = angles.iter().fold(0.0f64, |m, a| m.max(*a));
    CoincidenceVerdict {
        dim_nullity: nullity.dim(),
        dim_kernel: kernel.dim(),
        coincide: same_dim && max_angle <= tol.angle,
        principal_angles: angles,
    }
}

pub fn coincide(geo: &PointGeometry, tol: &Tolerances) -> CoincidenceVerdict {
    compare(&nullity_space(geo, tol), &kernel_space(geo, tol), tol)
}

/// `Sʰᵢⱼₖ = Rʰᵢⱼₖ + Rʰⱼₖᵢ + Rʰₖᵢⱼ`
pub fn cyclic_sum(geo: &PointGeometry) -> TensorBlock {
    use Variance::{Lower as L, Upper as U};
    let r = geo.h_curvature();
    TensorBlock::from_fn("S", vec![U, L, L, L], geo.point(), |ix| {
        let (h, i, j, k) = (ix[0], ix[1], ix[2], ix[3]);
        r.get(&[h, i, j, k]) + r.get(&[h, j, k, i]) + r.get(&[h, k, i, j])
    })
}

pub fn cyclic_sum_check(geo: &PointGeometry, tol: &Tolerances) -> ConditionReport {
    let residual = cyclic_sum(geo).max_abs();
    let threshold = tol.cyclic_rel * geo.h_curvature().max_abs();
    ConditionReport::new(ConditionKind::Cyclic, residual, threshold, None)
}

fn rhat_zero_threshold(geo: &PointGeometry, tol: &Tolerances) -> f64 {
    tol.integrability_rel * geo.barthel_connection().max_abs().max(1.0)
}

pub fn integrability_check(geo: &PointGeometry, tol: &Tolerances) -> ConditionReport {
    let residual = geo.contracted_curvature().max_abs();
    ConditionReport::new(
        ConditionKind::Integrability,
        residual,
        rhat_zero_threshold(geo, tol),
        None,
    )
}

/// Model `Mʰⱼₖ = F(ℓⱼ δʰₖ − ℓₖ δʰⱼ)` of an isotropic contracted curvature
/// with `λ = 1`.
pub fn isotropy_model(geo: &PointGeometry) -> TensorBlock {
    use Variance::{Lower as L, Upper as U};
    let ell = geo.ell_form();
    let f = geo.finsler_value();
    TensorBlock::from_fn("M", vec![U, L, L], geo.point(), |ix| {
        let (h, j, k) = (ix[0], ix[1], ix[2]);
        let dk = if h == k { 1.0 } else { 0.0 };
        let dj = if h == j { 1.0 } else { 0.0 };
        f * (ell[j] * dk - ell[k] * dj)
    })
}

/// Least-squares fit `R̂ ≈ λ M`; residual is `max |R̂ − λ̂M| / max |R̂|`.
pub fn isotropy_check(geo: &PointGeometry, tol: &Tolerances) -> ConditionReport {
    let rhat = geo.contracted_curvature();
    let scale = rhat.max_abs();
    if scale <= rhat_zero_threshold(geo, tol) {
        return ConditionReport::new(ConditionKind::Isotropy, scale, tol.isotropy, Some(0.0));
    }
    let model = isotropy_model(geo);
    let dot: f64 = rhat.data().iter().zip(model.data()).map(|(a, b)| a * b).sum();
    let norm2: f64 = model.data().iter().map(|b| b * b).sum();
    let lambda = if norm2 > 0.0 { dot / norm2 } else { 0.0 };
    let misfit = rhat
        .data()
        .iter()
        .zip(model.data())
        .fold(0.0f64, |m, (a, b)| m.max((a - lambda * b).abs()));
    ConditionReport::new(
        ConditionKind::Isotropy,
        misfit / scale,
        tol.isotropy,
        Some(lambda),
    )
}

/// `max_{h,i,k} |Xʲ Rʰᵢⱼₖ|`
pub fn nullity_residual(geo: &PointGeometry, x: &[f64]) -> f64 {
    let a = nullity_matrix(geo);
    let v = nalgebra::DVector::from_column_slice(x);
    (a * v).amax()
}

/// `max_{h,j,k} |Zⁱ Rʰᵢⱼₖ|`
pub fn kernel_residual(geo: &PointGeometry, z: &[f64]) -> f64 {
    let a = kernel_matrix(geo);
    let v = nalgebra::DVector::from_column_slice(z);
    (a * v).amax()
}

/// Evaluates both sides of `R(h̄ⱼ, h̄ₖ)X̄ = T(X, [hⱼ, hₖ])` for every pair
/// `j < k`. `x` must lie in the nullity space.
pub fn nullity_obstruction_check(
    geo: &PointGeometry,
    x: &[f64],
    tol: &Tolerances,
) -> Result<ObstructionReport, DistributionError> {
    let n = geo.dim();
    if x.len() != n {
        return Err(DistributionError::Dimension {
            expected: n,
            got: x.len(),
        });
    }
    let r = geo.h_curvature();
    let x_scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let residual = nullity_residual(geo, x);
    let threshold = tol.identity_rel * r.max_abs().max(1.0) * x_scale;
    if residual > threshold {
        return Err(DistributionError::NotInNullity {
            residual,
            threshold,
        });
    }
    let mut pairs = Vec::new();
    let mut max_mismatch = 0.0f64;
    for j in 0..n {
        for k in j + 1..n {
            let lhs = PiVector(
                (0..n)
                    .map(|h| (0..n).map(|i| x[i] * r.get(&[h, i, j, k])).sum())
                    .collect(),
            );
            let bracket = geo.bracket_vertical_part(j, k);
            let rhs = geo.hv_torsion_apply(x, &bracket.vertical);
            max_mismatch = max_mismatch.max(lhs.max_abs_diff(&rhs));
            pairs.push(ObstructionPair { j, k, lhs, rhs });
        }
    }
    Ok(ObstructionReport {
        x: x.to_vec(),
        pairs,
        max_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finsler::FinslerFunction;

    const F: &str = "sqrt(x3*y1*sqrt(y2^2+y3^2))";
    const MINKOWSKI: &str = "(y1^4+y2^4+y3^4)^1/4";

    fn z1() -> PointGeometry {
        FinslerFunction::parse(F, 3)
            .unwrap()
            .at(vec![0.0, 0.0, 1.0], vec![1.0, 2.0, 2.0])
            .unwrap()
    }

    fn minkowski() -> PointGeometry {
        FinslerFunction::parse(MINKOWSKI, 3)
            .unwrap()
            .at(vec![0.4, -1.0, 3.0], vec![1.0, -0.7, 1.3])
            .unwrap()
    }

    #[test]
    fn counterexample_spaces_at_z1() {
        let geo = z1();
        let tol = Tolerances::default();
        let nul = nullity_space(&geo, &tol);
        let ker = kernel_space(&geo, &tol);
        assert_eq!(nul.dim(), 1);
        assert_eq!(ker.dim(), 1);
        let e1 = Subspace::span(3, &[vec![1.0, 0.0, 0.0]]);
        let k = Subspace::span(3, &[vec![1.0, -2.0, -2.0]]);
        assert!(nul.principal_angles(&e1)[0] < 1e-12);
        assert!(ker.principal_angles(&k)[0] < 1e-12);
        let v = coincide(&geo, &tol);
        assert!(!v.coincide);
        assert!((v.principal_angles[0] - (1.0f64 / 3.0).acos()).abs() < 1e-12);
        assert!((v.principal_angles[0] - 1.230959).abs() < 1e-6);
    }

    #[test]
    fn counterexample_conditions_at_z1() {
        let geo = z1();
        let tol = Tolerances::default();
        let s = cyclic_sum(&geo);
        assert!((s.get(&[1, 0, 1, 2]) + 1.0).abs() < 1e-10);
        let c = cyclic_sum_check(&geo, &tol);
        assert!(!c.passes);
        let i = integrability_check(&geo, &tol);
        assert!((i.residual - 2.0).abs() < 1e-10);
        assert!(!i.passes);
        let iso = isotropy_check(&geo, &tol);
        assert!(!iso.passes, "{iso:?}");
        assert!(iso.lambda.is_some());
    }

    #[test]
    fn obstruction_at_z1() {
        let geo = z1();
        let tol = Tolerances::default();
        let rep = nullity_obstruction_check(&geo, &[1.0, 0.0, 0.0], &tol).unwrap();
        let p23 = rep.pairs.iter().find(|p| (p.j, p.k) == (1, 2)).unwrap();
        for v in [&p23.lhs, &p23.rhs] {
            assert!(v.max_abs_diff(&PiVector(vec![0.0, -1.0, 1.0])) < 1e-10, "{v:?}");
        }
        assert!(rep.max_mismatch < 1e-10);
        let err = nullity_obstruction_check(&geo, &[0.0, 1.0, 0.0], &tol).unwrap_err();
        assert!(matches!(err, DistributionError::NotInNullity { .. }));
    }

    #[test]
    fn minkowski_is_trivially_coincident() {
        let geo = minkowski();
        let tol = Tolerances::default();
        assert_eq!(nullity_space(&geo, &tol).dim(), 3);
        assert_eq!(kernel_space(&geo, &tol).dim(), 3);
        let v = coincide(&geo, &tol);
        assert!(v.coincide);
        assert!(v.principal_angles.iter().all(|a| *a == 0.0));
        assert!(cyclic_sum_check(&geo, &tol).passes);
        assert!(integrability_check(&geo, &tol).passes);
        let iso = isotropy_check(&geo, &tol);
        assert!(iso.passes);
        assert_eq!(iso.lambda, Some(0.0));
        let rep = nullity_obstruction_check(&geo, &[0.3, 1.0, -2.0], &tol).unwrap();
        assert_eq!(rep.max_mismatch, 0.0);
    }

    #[test]
    fn empty_subspaces_coincide() {
        let tol = Tolerances::default();
        let v = compare(&Subspace::trivial(3), &Subspace::trivial(3), &tol);
        assert!(v.coincide);
        assert!(v.principal_angles.is_empty());
        let line = Subspace::span(3, &[vec![1.0, 0.0, 0.0]]);
        assert!(!compare(&Subspace::trivial(3), &line, &tol).coincide);
    }
}
