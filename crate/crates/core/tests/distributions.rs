mod common;

use common::{all_presets, geometries};
use finsler_core::distributions::{
    coincide, cyclic_sum_check, integrability_check, isotropy_check, kernel_matrix,
    kernel_residual, kernel_space, nullity_matrix, nullity_obstruction_check, nullity_residual,
    nullity_space,
};
use finsler_core::{FinslerFunction, Subspace, Tolerances};
use nalgebra::DMatrix;

/// Nullspace by Gauss-Jordan elimination with partial pivoting.
fn rref_nullspace(a: &DMatrix<f64>, rel: f64) -> Subspace {
    let (rows, cols) = a.shape();
    let mut m = a.clone();
    let tol = rel * m.amax().max(1e-300);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let (best, val) = (row..rows)
            .map(|r| (r, m[(r, col)].abs()))
            .fold((row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= tol {
            continue;
        }
        m.swap_rows(row, best);
        let p = m[(row, col)];
        for c in 0..cols {
            m[(row, c)] /= p;
        }
        for r in 0..rows {
            if r != row {
                let factor = m[(r, col)];
                for c in 0..cols {
                    m[(r, c)] -= factor * m[(row, c)];
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<f64>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![0.0; cols];
            v[f] = 1.0;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[(r, f)];
            }
            v
        })
        .collect();
    Subspace::span(cols, &vectors)
}

fn same_subspace(a: &Subspace, b: &Subspace) -> bool {
    a.dim() == b.dim() && a.principal_angles(b).iter().all(|t| *t <= 1e-8)
}

#[test]
fn svd_nullspaces_match_elimination() {
    let tol = Tolerances::default();
    for case in all_presets() {
        for geo in geometries(&case, 50, 31) {
            let nul = nullity_space(&geo, &tol);
            let ker = kernel_space(&geo, &tol);
            assert!(same_subspace(&nul, &rref_nullspace(&nullity_matrix(&geo), 1e-8)), "{}", case.name);
            assert!(same_subspace(&ker, &rref_nullspace(&kernel_matrix(&geo), 1e-8)), "{}", case.name);
        }
    }
}

#[test]
fn basis_vectors_solve_their_systems() {
    let tol = Tolerances::default();
    for case in all_presets() {
        for geo in geometries(&case, 50, 32) {
            let nul = nullity_space(&geo, &tol);
            let ker = kernel_space(&geo, &tol);
            assert!(nul.orthonormality_error() <= 1e-12);
            assert!(ker.orthonormality_error() <= 1e-12);
            for v in nul.basis_vectors() {
                assert!(nullity_residual(&geo, &v) <= 10.0 * nul.tolerance());
            }
            for v in ker.basis_vectors() {
                assert!(kernel_residual(&geo, &v) <= 10.0 * ker.tolerance());
            }
        }
    }
}

#[test]
fn cyclic_condition_implies_coincidence() {
    let tol = Tolerances::default();
    let mut seen = 0;
    for case in all_presets() {
        for geo in geometries(&case, 50, 33) {
            if cyclic_sum_check(&geo, &tol).passes {
                seen += 1;
                assert!(coincide(&geo, &tol).coincide, "{}", case.name);
            }
        }
    }
    assert_eq!(seen, 100, "Minkowski and Riemannian points satisfy the cyclic identity");
}

#[test]
fn counterexample_spaces_everywhere() {
    let tol = Tolerances::default();
    let f = common::counterexample();
    let mut r = common::rng(34);
    for _ in 0..50 {
        let (x, y) = common::counterexample_point(&mut r);
        let geo = f.at(x, y.clone()).unwrap();
        let e1 = Subspace::span(3, &[vec![1.0, 0.0, 0.0]]);
        let k = Subspace::span(3, &[vec![1.0, -y[1] / y[0], -y[2] / y[0]]]);
        assert!(same_subspace(&nullity_space(&geo, &tol), &e1));
        assert!(same_subspace(&kernel_space(&geo, &tol), &k));
        let verdict = coincide(&geo, &tol);
        assert!(!verdict.coincide);
        let want = (1.0 / (1.0 + (y[1] * y[1] + y[2] * y[2]) / (y[0] * y[0])).sqrt()).acos();
        assert!((verdict.principal_angles[0] - want).abs() <= 1e-8);
        assert!(!cyclic_sum_check(&geo, &tol).passes);
        assert!(!integrability_check(&geo, &tol).passes);
        assert!(!isotropy_check(&geo, &tol).passes);
    }
}

#[test]
fn spaces_are_invariant_under_rescaling_f() {
    let tol = Tolerances::default();
    for case in all_presets() {
        let scaled = FinslerFunction::parse(&format!("3.7*({})", case.function.source()), 3).unwrap();
        let mut r = common::rng(35);
        for _ in 0..30 {
            let (x, y) = (case.sample)(&mut r);
            let a = case.function.at(x.clone(), y.clone()).unwrap();
            let b = scaled.at(x, y).unwrap();
            assert!(same_subspace(&nullity_space(&a, &tol), &nullity_space(&b, &tol)));
            assert!(same_subspace(&kernel_space(&a, &tol), &kernel_space(&b, &tol)));
        }
    }
}

#[test]
fn obstruction_identity_on_nullity_basis() {
    let tol = Tolerances::default();
    for case in all_presets() {
        for geo in geometries(&case, 50, 36) {
            let scale = geo.h_curvature().max_abs().max(1.0);
            for v in nullity_space(&geo, &tol).basis_vectors() {
                let rep = nullity_obstruction_check(&geo, &v, &tol).unwrap();
                assert!(rep.max_mismatch <= 1e-8 * scale, "{}: {}", case.name, rep.max_mismatch);
            }
        }
    }
}

#[test]
fn riemannian_conditions() {
    let tol = Tolerances::default();
    for c in [1.0, -0.5, 2.0] {
        let f = common::riemann(c);
        let mut r = common::rng(37);
        for _ in 0..20 {
            let (x, y) = common::riemann_point(&mut r);
            let geo = f.at(x, y).unwrap();
            let cyc = cyclic_sum_check(&geo, &tol);
            assert!(cyc.passes && cyc.residual <= 1e-9);
            assert!(!integrability_check(&geo, &tol).passes);
            let iso = isotropy_check(&geo, &tol);
            assert!(iso.passes, "{iso:?}");
            assert!((iso.lambda.unwrap() - c).abs() <= 1e-8);
            let v = coincide(&geo, &tol);
            assert_eq!((v.dim_nullity, v.dim_kernel), (0, 0));
            assert!(v.coincide);
        }
    }
}
