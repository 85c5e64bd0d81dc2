//! Fixtures shared by the benchmarks.

use finsler_core::{FinslerFunction, PointGeometry, Preset};

pub fn preset(name: &str) -> FinslerFunction {
    Preset::from_name(name, None)
        .expect("known preset")
        .function()
        .expect("preset parses")
}

/// `count` points of the counterexample's domain on a deterministic lattice.
pub fn counterexample_points(count: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
    (0..count)
        .map(|i| {
            let t = i as f64 / count.max(1) as f64;
            (
                vec![0.3 * t, -0.2, 0.5 + 1.5 * t],
                vec![0.5 + 1.5 * t, 2.0 - 3.0 * t, 1.0 + t],
            )
        })
        .collect()
}

pub fn counterexample_geometry() -> PointGeometry {
    preset("paper-counterexample")
        .at(vec![0.0, 0.0, 1.0], vec![1.0, 2.0, 2.0])
        .expect("regular point")
}
