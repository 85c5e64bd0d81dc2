//! Cartan-connection data of a Finsler function at a point of `TM`.
//!
//! Everything is expressed in the adapted frame `{hᵢ = δᵢ, ∂̄ᵢ}` with
//! `δᵢ = ∂/∂xⁱ − Nᵐᵢ ∂/∂yᵐ`. Derived quantities are obtained by
//! differentiating through the pipeline: one order-4 jet of `F²` is
//! pushed through `g`, `g⁻¹`, `Gⁱ`, `Nⁱⱼ` and `Γⁱⱼₖ`, each stage one
//! order lower than its input, so `δₗΓⁱⱼₖ` comes out exact without any
//! hand-expanded formula.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::autodiff::{jet_of, seed, DiffError, ScalarField};
use crate::expr::{parse, EvalError, Expression, ParseError};
use crate::jet::{Jet, MAX_ORDER};
use crate::scalar::Scalar;
use crate::tensor::{PiVector, TensorBlock, Variance};

use Variance::{Lower as L, Upper as U};

/// Relative determinant threshold: `|det g| > DET_REL · (max |gᵢⱼ|)ⁿ`.
pub const DET_REL: f64 = 1e-10;

/// Sign of the hv-torsion `Tʰ = s · Cʰᵢₘ uⁱ wᵐ` (pinned by the reference
/// counterexample, where `T(h₁, [h₂, h₃]) = −(y₃∂̄₂ − y₂∂̄₃)/(2x₃²y₁)`).
pub const HV_TORSION_SIGN: f64 = 1.0;

/// Sign relating the vertical part of `[hⱼ, hₖ]` to `R̂ᵐⱼₖ`.
pub const BRACKET_SIGN: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("direction y is zero; the point is not in the slit tangent bundle")]
    ZeroDirection,
    #[error("F = {value} is not positive")]
    NonPositive { value: f64 },
    #[error("DegenerateMetric: det g = {det:e} (threshold {threshold:e})")]
    DegenerateMetric { det: f64, threshold: f64 },
    #[error("point has dimension {got}, function has dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("derivative order {order} exceeds the maximum {max}")]
    Order { order: usize, max: usize },
}

impl From<DiffError> for GeometryError {
    fn from(e: DiffError) -> Self {
        match e {
            DiffError::Eval(e) => GeometryError::Eval(e),
            DiffError::OrderExceeded { order, max } => GeometryError::Order { order, max },
            DiffError::IndexShape { got, expected } => GeometryError::Dimension {
                expected: expected / 2,
                got: got / 2,
            },
        }
    }
}

/// A point `z = (x, y)` of `TM`; `y` is the value of the fundamental
/// π-vector field `η̄` at `z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentPoint {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl TangentPoint {
    /// A point that has not been validated against any Finsler function.
    pub fn unchecked(x: Vec<f64>, y: Vec<f64>) -> Self {
        assert_eq!(x.len(), y.len(), "x and y must have the same length");
        TangentPoint { x, y }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }
}

/// A parsed Finsler function of declared dimension `n`.
#[derive(Debug, Clone)]
pub struct FinslerFunction {
    expr: Expression,
    source: String,
    dim: usize,
}

impl FinslerFunction {
    pub fn parse(source: &str, dim: usize) -> Result<Self, ParseError> {
        let expr = parse(source, dim)?;
        Ok(FinslerFunction {
            expr,
            source: source.to_owned(),
            dim,
        })
    }

    pub fn expression(&self) -> &Expression {
        &self.expr
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, x: &[f64], y: &[f64]) -> Result<f64, EvalError> {
        self.expr.evaluate(x, y)
    }

    /// Validates `(x, y)`: `y ≠ 0`, `F` defined and positive, `g` regular.
    pub fn tangent_point(&self, x: Vec<f64>, y: Vec<f64>) -> Result<TangentPoint, GeometryError> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(GeometryError::Dimension {
                expected: self.dim,
                got: x.len().max(y.len()),
            });
        }
        if y.iter().all(|&c| c == 0.0) {
            return Err(GeometryError::ZeroDirection);
        }
        let f = self.value(&x, &y)?;
        if f.is_nan() || f <= 0.0 {
            return Err(GeometryError::NonPositive { value: f });
        }
        let z = TangentPoint { x, y };
        let f_jet = jet_of(&self.expr, &z.x, &z.y, 2)?;
        let f2 = &f_jet * &f_jet;
        let n = self.dim;
        let g: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| 0.5 * f2.derivative(n + i).derivative(n + j).value())
                    .collect()
            })
            .collect();
        check_regular(&g)?;
        Ok(z)
    }

    /// Full Cartan-connection data at `(x, y)`.
    pub fn at(&self, x: Vec<f64>, y: Vec<f64>) -> Result<PointGeometry, GeometryError> {
        let z = self.tangent_point(x, y)?;
        self.geometry(&z)
    }

    pub fn geometry(&self, z: &TangentPoint) -> Result<PointGeometry, GeometryError> {
        Pipeline::run(&self.expr, z)
    }
}

impl ScalarField for FinslerFunction {
    fn eval<S: Scalar>(&self, x: &[S], y: &[S]) -> Result<S, EvalError> {
        self.expr.evaluate(x, y)
    }
}

fn check_regular(g: &[Vec<f64>]) -> Result<f64, GeometryError> {
    let n = g.len();
    let m = DMatrix::from_fn(n, n, |i, j| g[i][j]);
    let det = m.determinant();
    let scale = g.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
    let threshold = DET_REL * scale.powi(n as i32);
    if det.is_nan() || det.abs() <= threshold {
        return Err(GeometryError::DegenerateMetric { det, threshold });
    }
    Ok(det)
}

type J = Jet<f64>;

/// Gauss-Jordan inverse of a matrix of jets, pivoting on primal values.
fn invert(m: &[Vec<J>]) -> Option<Vec<Vec<J>>> {
    let n = m.len();
    let mut a: Vec<Vec<J>> = m.to_vec();
    let mut inv: Vec<Vec<J>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| J::from_f64(if i == j { 1.0 } else { 0.0 }))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&r, &s| {
            a[r][col]
                .value()
                .abs()
                .total_cmp(&a[s][col].value().abs())
        })?;
        if a[pivot][col].value() == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for c in 0..n {
            a[col][c] = a[col][c].try_div(&p).ok()?;
            inv[col][c] = inv[col][c].try_div(&p).ok()?;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                a[r][c] = &a[r][c] - &(&factor * &a[col][c]);
                inv[r][c] = &inv[r][c] - &(&factor * &inv[col][c]);
            }
        }
    }
    Some(inv)
}

fn sum<I: IntoIterator<Item = J>>(terms: I) -> J {
    terms
        .into_iter()
        .reduce(|a, b| a + b)
        .unwrap_or_else(|| J::from_f64(0.0))
}

struct Pipeline {
    n: usize,
    barthel: Vec<Vec<J>>,
}

impl Pipeline {
    /// `δⱼ f = ∂f/∂xʲ − Nᵐⱼ ∂f/∂yᵐ`, one order lower than `f` (and at most 1).
    fn delta(&self, f: &J, j: usize) -> J {
        let n = self.n;
        let vertical = sum((0..n).map(|m| &self.barthel[m][j] * &f.derivative(n + m)));
        &f.derivative(j) - &vertical
    }

    fn run(expr: &Expression, z: &TangentPoint) -> Result<PointGeometry, GeometryError> {
        let n = z.dim();
        let (xj, yj) = seed(z.x(), z.y(), MAX_ORDER);
        let f = expr.evaluate(&xj, &yj)?;
        let f_value = f.value();
        let f2 = &f * &f;

        // order 3
        let f2_y: Vec<J> = (0..n).map(|i| f2.derivative(n + i)).collect();
        let f2_x: Vec<J> = (0..n).map(|i| f2.derivative(i)).collect();
        // order 2
        let g: Vec<Vec<J>> = (0..n)
            .map(|i| (0..n).map(|j| f2_y[i].derivative(n + j).scale(0.5)).collect())
            .collect();
        let g_values: Vec<Vec<f64>> = g
            .iter()
            .map(|row| row.iter().map(Scalar::value).collect())
            .collect();
        let det_g = check_regular(&g_values)?;
        let g_inv = invert(&g).ok_or(GeometryError::DegenerateMetric {
            det: det_g,
            threshold: 0.0,
        })?;

        // Gⁱ = ¼ gⁱˡ (yᵐ ∂²F²/∂yˡ∂xᵐ − ∂F²/∂xˡ), order 2
        let spray: Vec<J> = (0..n)
            .map(|i| {
                sum((0..n).map(|l| {
                    let transport = sum((0..n).map(|m| &yj[m] * &f2_y[l].derivative(m)));
                    &g_inv[i][l] * &(&transport - &f2_x[l])
                }))
                .scale(0.25)
            })
            .collect();
        // Nⁱⱼ = ∂Gⁱ/∂yʲ, order 1
        let barthel: Vec<Vec<J>> = (0..n)
            .map(|i| (0..n).map(|j| spray[i].derivative(n + j)).collect())
            .collect();
        let pipe = Pipeline { n, barthel };

        // δₖ gᵢⱼ stored as delta_g[k][i][j], order 1
        let delta_g: Vec<Vec<Vec<J>>> = (0..n)
            .map(|k| {
                (0..n)
                    .map(|i| (0..n).map(|j| pipe.delta(&g[i][j], k)).collect())
                    .collect()
            })
            .collect();
        // Γⁱⱼₖ = ½ gⁱˡ (δⱼ gₗₖ + δₖ gⱼₗ − δₗ gⱼₖ), order 1
        let gamma: Vec<Vec<Vec<J>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| {
                                sum((0..n).map(|l| {
                                    let s = &(&delta_g[j][l][k] + &delta_g[k][j][l])
                                        - &delta_g[l][j][k];
                                    &g_inv[i][l] * &s
                                }))
                                .scale(0.5)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        // Cᵢⱼₖ = ½ ∂gᵢⱼ/∂yᵏ
        let cartan: Vec<f64> = (0..n * n * n)
            .map(|s| {
                let (i, j, k) = (s / (n * n), (s / n) % n, s % n);
                0.5 * g[i][j].derivative(n + k).value()
            })
            .collect();
        let c_low = |i: usize, j: usize, k: usize| cartan[(i * n + j) * n + k];
        let g_inv_v = |i: usize, j: usize| g_inv[i][j].value();

        // R̂ᵐⱼₖ = δₖNᵐⱼ − δⱼNᵐₖ, the Barthel-curvature route
        let rhat_direct: Vec<f64> = (0..n * n * n)
            .map(|s| {
                let (m, j, k) = (s / (n * n), (s / n) % n, s % n);
                (pipe.delta(&pipe.barthel[m][j], k) - pipe.delta(&pipe.barthel[m][k], j)).value()
            })
            .collect();
        let rd = |m: usize, j: usize, k: usize| rhat_direct[(m * n + j) * n + k];
        let c_mixed = |h: usize, i: usize, m: usize| -> f64 {
            (0..n).map(|l| g_inv_v(h, l) * c_low(l, i, m)).sum()
        };

        // δₖΓʰᵢⱼ
        let d_gamma: Vec<f64> = (0..n.pow(4))
            .map(|s| {
                let (h, i, j, k) = (s / (n * n * n), (s / (n * n)) % n, (s / n) % n, s % n);
                pipe.delta(&gamma[h][i][j], k).value()
            })
            .collect();
        let dg = |h: usize, i: usize, j: usize, k: usize| d_gamma[((h * n + i) * n + j) * n + k];
        let gv = |i: usize, j: usize, k: usize| gamma[i][j][k].value();

        let point = z.clone();
        let curvature = TensorBlock::from_fn("R", vec![U, L, L, L], &point, |ix| {
            let (h, i, j, k) = (ix[0], ix[1], ix[2], ix[3]);
            let quad: f64 = (0..n)
                .map(|m| gv(m, i, j) * gv(h, m, k) - gv(m, i, k) * gv(h, m, j))
                .sum();
            let torsion: f64 = (0..n).map(|m| c_mixed(h, i, m) * rd(m, j, k)).sum();
            dg(h, i, j, k) - dg(h, i, k, j) + quad + torsion
        });
        let y = z.y();
        let rhat = TensorBlock::from_fn("Rhat", vec![U, L, L], &point, |ix| {
            (0..n)
                .map(|i| y[i] * curvature.get(&[ix[0], i, ix[1], ix[2]]))
                .sum()
        });

        // [hⱼ, hₖ] as vector fields on TM: hⱼ = (eⱼ ; −N·ⱼ)
        let frame: Vec<Vec<J>> = (0..n)
            .map(|j| {
                (0..2 * n)
                    .map(|nu| {
                        if nu < n {
                            J::from_f64(if nu == j { 1.0 } else { 0.0 })
                        } else {
                            -pipe.barthel[nu - n][j].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let brackets: Vec<Vec<Vec<f64>>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        (0..2 * n)
                            .map(|nu| {
                                (0..2 * n)
                                    .map(|mu| {
                                        frame[j][mu].value() * frame[k][nu].derivative(mu).value()
                                            - frame[k][mu].value()
                                                * frame[j][nu].derivative(mu).value()
                                    })
                                    .sum()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();

        Ok(PointGeometry {
            f: f_value,
            det_g,
            g: TensorBlock::from_fn("g", vec![L, L], &point, |ix| g[ix[0]][ix[1]].value()),
            g_inv: TensorBlock::from_fn("g_inv", vec![U, U], &point, |ix| g_inv_v(ix[0], ix[1])),
            cartan: TensorBlock::from_fn("C", vec![L, L, L], &point, |ix| {
                c_low(ix[0], ix[1], ix[2])
            }),
            cartan_mixed: TensorBlock::from_fn("C_mixed", vec![U, L, L], &point, |ix| {
                c_mixed(ix[0], ix[1], ix[2])
            }),
            spray: TensorBlock::from_fn("G", vec![U], &point, |ix| spray[ix[0]].value()),
            barthel: TensorBlock::from_fn("N", vec![U, L], &point, |ix| {
                pipe.barthel[ix[0]][ix[1]].value()
            }),
            delta_g: TensorBlock::from_fn("delta_g", vec![L, L, L], &point, |ix| {
                delta_g[ix[0]][ix[1]][ix[2]].value()
            }),
            gamma: TensorBlock::from_fn("Gamma", vec![U, L, L], &point, |ix| {
                gv(ix[0], ix[1], ix[2])
            }),
            rhat_direct: TensorBlock::from_fn("Rhat_direct", vec![U, L, L], &point, |ix| {
                rd(ix[0], ix[1], ix[2])
            }),
            curvature,
            rhat,
            brackets,
            point,
        })
    }
}

/// Vertical part of `[hⱼ, hₖ]` in the `∂/∂yᵐ` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Bracket {
    pub vertical: Vec<f64>,
    /// `∂/∂xᵐ` components; identically zero for the adapted frame.
    pub horizontal_part: Vec<f64>,
    /// Whether the bracket is horizontal (vertical part below tolerance).
    pub horizontal: bool,
}

/// Everything the curvature analysis needs at one point.
#[derive(Debug, Clone)]
pub struct PointGeometry {
    point: TangentPoint,
    f: f64,
    det_g: f64,
    g: TensorBlock,
    g_inv: TensorBlock,
    cartan: TensorBlock,
    cartan_mixed: TensorBlock,
    spray: TensorBlock,
    barthel: TensorBlock,
    delta_g: TensorBlock,
    gamma: TensorBlock,
    curvature: TensorBlock,
    rhat: TensorBlock,
    rhat_direct: TensorBlock,
    brackets: Vec<Vec<Vec<f64>>>,
}

impl PointGeometry {
    pub fn point(&self) -> &TangentPoint {
        &self.point
    }

    pub fn dim(&self) -> usize {
        self.point.dim()
    }

    pub fn finsler_value(&self) -> f64 {
        self.f
    }

    pub fn det_g(&self) -> f64 {
        self.det_g
    }

    /// `gᵢⱼ = ½ ∂²F²/∂yⁱ∂yʲ`
    pub fn fundamental_tensor(&self) -> &TensorBlock {
        &self.g
    }

    pub fn inverse_metric(&self) -> &TensorBlock {
        &self.g_inv
    }

    /// `Cᵢⱼₖ = ¼ ∂³F²/∂yⁱ∂yʲ∂yᵏ`
    pub fn cartan_tensor(&self) -> &TensorBlock {
        &self.cartan
    }

    /// `Cʰᵢₘ = gʰˡ Cₗᵢₘ`
    pub fn cartan_mixed(&self) -> &TensorBlock {
        &self.cartan_mixed
    }

    pub fn spray(&self) -> &TensorBlock {
        &self.spray
    }

    /// `Nⁱⱼ = ∂Gⁱ/∂yʲ`
    pub fn barthel_connection(&self) -> &TensorBlock {
        &self.barthel
    }

    /// `δₖ gᵢⱼ`, indexed `[k, i, j]`.
    pub fn metric_horizontal_derivative(&self) -> &TensorBlock {
        &self.delta_g
    }

    /// `Γⁱⱼₖ`, the horizontal coefficients of the Cartan connection.
    pub fn cartan_horizontal_coeffs(&self) -> &TensorBlock {
        &self.gamma
    }

    /// `Rʰᵢⱼₖ`: `i` is the transported slot, `(j, k)` the horizontal pair.
    pub fn h_curvature(&self) -> &TensorBlock {
        &self.curvature
    }

    /// `R̂ʰⱼₖ = yⁱ Rʰᵢⱼₖ`
    pub fn contracted_curvature(&self) -> &TensorBlock {
        &self.rhat
    }

    /// `δₖNʰⱼ − δⱼNʰₖ`, which must agree with [`Self::contracted_curvature`].
    pub fn contracted_curvature_direct(&self) -> &TensorBlock {
        &self.rhat_direct
    }

    /// Scale-aware zero threshold for `R̂` and brackets.
    pub fn horizontal_tolerance(&self) -> f64 {
        1e-10 * self.barthel.max_abs().max(1.0)
    }

    /// `δᵢ f = ∂f/∂xⁱ − Nᵐᵢ ∂f/∂yᵐ` at this point.
    pub fn horizontal_derivative<F: ScalarField>(&self, f: &F, i: usize) -> Result<f64, DiffError> {
        let n = self.dim();
        let jet = jet_of(f, self.point.x(), self.point.y(), 1)?;
        let vertical: f64 = (0..n)
            .map(|m| self.barthel.get(&[m, i]) * jet.derivative(n + m).value())
            .sum();
        Ok(jet.derivative(i).value() - vertical)
    }

    pub fn bracket_vertical_part(&self, j: usize, k: usize) -> Bracket {
        let n = self.dim();
        let b = &self.brackets[j][k];
        let vertical = b[n..].to_vec();
        let tol = self.horizontal_tolerance();
        Bracket {
            horizontal: vertical.iter().all(|v| v.abs() <= tol),
            horizontal_part: b[..n].to_vec(),
            vertical,
        }
    }

    /// `T(u, w)ʰ = s · Cʰᵢₘ uⁱ wᵐ` for horizontal `u` and vertical `w`.
    pub fn hv_torsion_apply(&self, u: &[f64], w: &[f64]) -> PiVector {
        let n = self.dim();
        assert_eq!(u.len(), n);
        assert_eq!(w.len(), n);
        PiVector(
            (0..n)
                .map(|h| {
                    let mut acc = 0.0;
                    for (i, ui) in u.iter().enumerate() {
                        for (m, wm) in w.iter().enumerate() {
                            acc += self.cartan_mixed.get(&[h, i, m]) * ui * wm;
                        }
                    }
                    HV_TORSION_SIGN * acc
                })
                .collect(),
        )
    }

    /// `ℓ(v) = F⁻¹ gᵢⱼ vⁱ yʲ`
    pub fn ell(&self, v: &[f64]) -> f64 {
        self.ell_form().iter().zip(v).map(|(l, vi)| l * vi).sum()
    }

    /// Components `ℓⱼ = F⁻¹ gⱼₘ yᵐ`.
    pub fn ell_form(&self) -> Vec<f64> {
        let n = self.dim();
        let y = self.point.y();
        (0..n)
            .map(|j| (0..n).map(|m| self.g.get(&[j, m]) * y[m]).sum::<f64>() / self.f)
            .collect()
    }

    /// `max |δₖgᵢⱼ − Γᵐᵢₖ gₘⱼ − Γᵐⱼₖ gᵢₘ|`
    pub fn metric_compatibility_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut r = self.delta_g.get(&[k, i, j]);
                    for m in 0..n {
                        r -= self.gamma.get(&[m, i, k]) * self.g.get(&[m, j])
                            + self.gamma.get(&[m, j, k]) * self.g.get(&[i, m]);
                    }
                    worst = worst.max(r.abs());
                }
            }
        }
        worst
    }
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;

    const F: &str = "sqrt(x3*y1*sqrt(y2^2+y3^2))";

    fn z1() -> PointGeometry {
        FinslerFunction::parse(F, 3)
            .unwrap()
            .at(vec![0.0, 0.0, 1.0], vec![1.0, 2.0, 2.0])
            .unwrap()
    }

    #[test]
    fn metric_entries_at_z1() {
        let geo = z1();
        let g = geo.fundamental_tensor();
        assert!(g.get(&[0, 0]).abs() < 1e-14);
        assert!((g.get(&[0, 1]) - 1.0 / 8f64.sqrt()).abs() < 1e-14);
        assert!((g.get(&[0, 1]) - 0.3535534).abs() < 1e-7);
    }

    #[test]
    fn cartan_entry_at_z1() {
        let geo = z1();
        let c = geo.cartan_tensor().get(&[0, 1, 1]);
        let expected = 0.25 * 4.0 / 8f64.powf(1.5);
        assert!((c - expected).abs() < 1e-14, "{c}");
        assert!((c - 0.0441942).abs() < 1e-7);
    }

    #[test]
    fn spray_and_barthel_at_z1() {
        let geo = z1();
        let gs = geo.spray();
        for (i, want) in [0.0, 4.0, 0.0].iter().enumerate() {
            assert!((gs.get(&[i]) - want).abs() < 1e-12, "G{i}");
        }
        let nb = geo.barthel_connection();
        let want = [[0.0, 0.0, 0.0], [0.0, 2.0, 2.0], [0.0, -2.0, 2.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert!((nb.get(&[i, j]) - want[i][j]).abs() < 1e-10, "N{i}{j}");
            }
        }
    }

    #[test]
    fn curvature_at_z1() {
        let geo = z1();
        let r = geo.h_curvature();
        let mut want = [[[[0.0f64; 3]; 3]; 3]; 3];
        for (h, i, v) in [
            (0, 1, 0.125),
            (0, 2, -0.125),
            (1, 0, -1.0),
            (1, 2, -0.5),
            (2, 0, 1.0),
            (2, 1, 0.5),
        ] {
            want[h][i][1][2] = v;
            want[h][i][2][1] = -v;
        }
        for h in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        let got = r.get(&[h, i, j, k]);
                        assert!(
                            (got - want[h][i][j][k]).abs() < 1e-10,
                            "R^{h}_{i}{j}{k} = {got}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn contracted_curvature_and_bracket_at_z1() {
        let geo = z1();
        let rh = geo.contracted_curvature();
        assert!(rh.get(&[0, 1, 2]).abs() < 1e-10);
        assert!((rh.get(&[1, 1, 2]) + 2.0).abs() < 1e-10);
        assert!((rh.get(&[2, 1, 2]) - 2.0).abs() < 1e-10);
        assert!(rh.max_abs_diff(geo.contracted_curvature_direct()) < 1e-10);
        let b = geo.bracket_vertical_part(1, 2);
        for (got, want) in b.vertical.iter().zip([0.0, -2.0, 2.0]) {
            assert!((got - want).abs() < 1e-10);
        }
        assert!(!b.horizontal);
        assert!(b.horizontal_part.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn torsion_of_bracket_at_z1() {
        let geo = z1();
        let t = geo.hv_torsion_apply(&[1.0, 0.0, 0.0], &[0.0, -2.0, 2.0]);
        for (got, want) in t.components().iter().zip([0.0, -1.0, 1.0]) {
            assert!((got - want).abs() < 1e-10, "{t:?}");
        }
        let zero = geo.hv_torsion_apply(&[0.3, 1.0, -2.0], &[0.0, 0.0, 0.0]);
        assert_eq!(zero, PiVector::zeros(3));
    }

    #[test]
    fn ell_at_z1() {
        let geo = z1();
        let expected = 2f64.sqrt() / 8f64.powf(0.25);
        assert!((geo.ell(&[1.0, 0.0, 0.0]) - expected).abs() < 1e-14);
        assert!((geo.ell(&[1.0, 2.0, 2.0]) - geo.finsler_value()).abs() < 1e-14);
        assert_eq!(geo.ell(&[0.0, 0.0, 0.0]), 0.0);
    }

    #[test]
    fn euclidean_is_flat() {
        let f = FinslerFunction::parse("sqrt(y1^2+y2^2+y3^2)", 3).unwrap();
        let geo = f.at(vec![0.3, -1.0, 2.0], vec![0.5, 1.5, -0.7]).unwrap();
        let g = geo.fundamental_tensor();
        let gi = geo.inverse_metric();
        for i in 0..3 {
            for j in 0..3 {
                let d = if i == j { 1.0 } else { 0.0 };
                assert!((g.get(&[i, j]) - d).abs() < 1e-14);
                assert!((gi.get(&[i, j]) - d).abs() < 1e-14);
            }
        }
        assert!(geo.cartan_tensor().max_abs() < 1e-14);
        assert_eq!(geo.spray().max_abs(), 0.0);
        assert_eq!(geo.h_curvature().max_abs(), 0.0);
        let t = geo.hv_torsion_apply(&[1.0, 2.0, 3.0], &[-1.0, 0.5, 2.0]);
        assert!(t.components().iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn degenerate_metric_is_rejected() {
        let f = FinslerFunction::parse("y1", 2).unwrap();
        let err = f.at(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap_err();
        assert!(matches!(err, GeometryError::DegenerateMetric { .. }), "{err}");
    }

    #[test]
    fn invalid_points() {
        let f = FinslerFunction::parse(F, 3).unwrap();
        assert_eq!(
            f.at(vec![0.0; 3], vec![0.0; 3]).unwrap_err(),
            GeometryError::ZeroDirection
        );
        assert!(matches!(
            f.at(vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0]).unwrap_err(),
            GeometryError::NonPositive { .. }
        ));
        assert!(matches!(
            f.at(vec![0.0, 0.0, -1.0], vec![1.0, 1.0, 0.0]).unwrap_err(),
            GeometryError::Eval(EvalError::Domain { .. })
        ));
        assert!(matches!(
            f.at(vec![0.0; 2], vec![1.0; 2]).unwrap_err(),
            GeometryError::Dimension { .. }
        ));
    }
}
