#![allow(dead_code)]

use finsler_core::{FinslerFunction, PointGeometry, Preset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn preset(name: &str) -> FinslerFunction {
    Preset::from_name(name, None).unwrap().function().unwrap()
}

pub fn counterexample() -> FinslerFunction {
    preset("paper-counterexample")
}

pub fn minkowski() -> FinslerFunction {
    preset("locally-minkowski")
}

pub fn riemann(c: f64) -> FinslerFunction {
    Preset::from_name("riemann-constant-curvature", Some(c))
        .unwrap()
        .function()
        .unwrap()
}

/// `x₃, y₁ ∈ [0.5, 2]`, `y₂, y₃ ∈ [−2, 2]` with `y₂² + y₃² > 0.1`.
pub fn counterexample_point(r: &mut impl Rng) -> (Vec<f64>, Vec<f64>) {
    let x = vec![r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(0.5..2.0)];
    loop {
        let y = vec![r.gen_range(0.5..2.0), r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)];
        if y[1] * y[1] + y[2] * y[2] > 0.1 {
            return (x, y);
        }
    }
}

/// `y` components bounded away from zero, where the quartic metric is regular.
pub fn minkowski_point(r: &mut impl Rng) -> (Vec<f64>, Vec<f64>) {
    let x = (0..3).map(|_| r.gen_range(-2.0..2.0)).collect();
    let y = (0..3)
        .map(|_| {
            let s = if r.gen_bool(0.5) { 1.0 } else { -1.0 };
            s * r.gen_range(0.3..2.0)
        })
        .collect();
    (x, y)
}

pub fn riemann_point(r: &mut impl Rng) -> (Vec<f64>, Vec<f64>) {
    let x = (0..3).map(|_| r.gen_range(-1.0..1.0)).collect();
    loop {
        let y: Vec<f64> = (0..3).map(|_| r.gen_range(-2.0..2.0)).collect();
        if y.iter().map(|v| v * v).sum::<f64>() > 0.1 {
            return (x, y);
        }
    }
}

pub struct Case {
    pub name: &'static str,
    pub function: FinslerFunction,
    pub sample: fn(&mut ChaCha8Rng) -> (Vec<f64>, Vec<f64>),
}

pub fn all_presets() -> Vec<Case> {
    vec![
        Case {
            name: "paper-counterexample",
            function: counterexample(),
            sample: |r| counterexample_point(r),
        },
        Case {
            name: "locally-minkowski",
            function: minkowski(),
            sample: |r| minkowski_point(r),
        },
        Case {
            name: "riemann-constant-curvature",
            function: riemann(1.0),
            sample: |r| riemann_point(r),
        },
    ]
}

pub fn geometries(case: &Case, count: usize, seed: u64) -> Vec<PointGeometry> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let (x, y) = (case.sample)(&mut r);
            case.function.at(x, y).unwrap()
        })
        .collect()
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1e-300)
}

/// `Γⁱⱼₖ` of the conformally flat metric `e^{2φ} δ`, `φ = −ln(1 + c|x|²/4)`.
pub fn conformal_christoffel(c: f64, x: &[f64]) -> Vec<Vec<Vec<f64>>> {
    let s = 1.0 + 0.25 * c * x.iter().map(|v| v * v).sum::<f64>();
    let dphi: Vec<f64> = x.iter().map(|xi| -0.5 * c * xi / s).collect();
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    (0..3)
                        .map(|k| d(i, j) * dphi[k] + d(i, k) * dphi[j] - d(j, k) * dphi[i])
                        .collect()
                })
                .collect()
        })
        .collect()
}
