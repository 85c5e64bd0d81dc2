//! Orthonormal subspaces of ℝⁿ: SVD nullspaces and principal angles.

use nalgebra::{DMatrix, DVector, SVD};

/// Linear subspace of ℝⁿ held as an `n × r` column-orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: DMatrix<f64>,
    /// Absolute singular-value threshold used to decide the rank.
    tolerance: f64,
}

impl Subspace {
    /// `{0} ⊂ ℝⁿ`.
    pub fn trivial(n: usize) -> Self {
        Subspace {
            basis: DMatrix::zeros(n, 0),
            tolerance: 0.0,
        }
    }

    /// Wraps an already orthonormal basis (columns).
    pub fn from_orthonormal(basis: DMatrix<f64>, tolerance: f64) -> Self {
        Subspace { basis, tolerance }
    }

    /// Orthonormalizes the given spanning vectors (modified Gram-Schmidt,
    /// dropping vectors whose residual norm falls below `1e-12`).
    pub fn span(n: usize, vectors: &[Vec<f64>]) -> Self {
        let mut cols: Vec<DVector<f64>> = Vec::new();
        for v in vectors {
            assert_eq!(v.len(), n);
            let mut w = DVector::from_column_slice(v);
            for _ in 0..2 {
                for c in &cols {
                    let d = c.dot(&w);
                    w -= c * d;
                }
            }
            let norm = w.norm();
            if norm > 1e-12 {
                cols.push(w / norm);
            }
        }
        let basis = if cols.is_empty() {
            DMatrix::zeros(n, 0)
        } else {
            DMatrix::from_columns(&cols)
        };
        Subspace {
            basis,
            tolerance: 0.0,
        }
    }

    /// Right nullspace of `a` by singular-value thresholding: singular
    /// values `≤ rel · σ_max` (or `≤ rel` when `a = 0`) count as zero.
    pub fn nullspace(a: &DMatrix<f64>, rel: f64) -> Self {
        let n = a.ncols();
        if n == 0 {
            return Subspace::trivial(0);
        }
        // pad to at least square so V is the full n × n factor
        let rows = a.nrows().max(n);
        let padded = DMatrix::from_fn(rows, n, |i, j| if i < a.nrows() { a[(i, j)] } else { 0.0 });
        let svd = SVD::new(padded, false, true);
        let v_t = svd.v_t.expect("requested V");
        let sigma = &svd.singular_values;
        let sigma_max = sigma.iter().fold(0.0f64, |m, s| m.max(*s));
        let tolerance = rel * if sigma_max > 0.0 { sigma_max } else { 1.0 };

        let mut cols: Vec<DVector<f64>> = (0..sigma.len())
            .filter(|&r| sigma[r] <= tolerance)
            .map(|r| v_t.row(r).transpose())
            .collect();
        // deterministic orientation: first significant component positive
        for c in &mut cols {
            if let Some(lead) = c.iter().find(|v| v.abs() > 1e-12) {
                if *lead < 0.0 {
                    *c = -c.clone();
                }
            }
        }
        let basis = if cols.is_empty() {
            DMatrix::zeros(n, 0)
        } else {
            DMatrix::from_columns(&cols)
        };
        Subspace { basis, tolerance }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Basis vectors as plain vectors.
    pub fn basis_vectors(&self) -> Vec<Vec<f64>> {
        self.basis
            .column_iter()
            .map(|c| c.iter().copied().collect())
            .collect()
    }

    /// `max |BᵀB − I|`
    pub fn orthonormality_error(&self) -> f64 {
        let r = self.dim();
        let gram = self.basis.transpose() * &self.basis;
        let mut worst = 0.0f64;
        for i in 0..r {
            for j in 0..r {
                let d = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram[(i, j)] - d).abs());
            }
        }
        worst
    }

    /// Principal angles (radians, ascending) between `self` and `other`;
    /// there are `min(dim)` of them.
    ///
    /// Cosines come from `σ(UᵀV)` and sines from `σ((I − UUᵀ)V)`; small
    /// angles are taken from the sine and large ones from the cosine, which
    /// keeps near-zero angles accurate where `acos` alone would lose half
    /// the digits.
    pub fn principal_angles(&self, other: &Subspace) -> Vec<f64> {
        assert_eq!(self.ambient_dim(), other.ambient_dim(), "ambient dimensions differ");
        let (big, small) = if self.dim() >= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        let k = small.dim();
        if k == 0 {
            return Vec::new();
        }
        let u = &big.basis;
        let v = &small.basis;
        let cross = u.transpose() * v;
        let mut cosines: Vec<f64> = SVD::new(cross.clone(), false, false)
            .singular_values
            .iter()
            .map(|s| s.min(1.0))
            .collect();
        cosines.sort_by(|a, b| b.total_cmp(a));
        let residual = v - u * cross;
        let mut sines: Vec<f64> = SVD::new(residual, false, false)
            .singular_values
            .iter()
            .map(|s| s.min(1.0))
            .collect();
        sines.sort_by(|a, b| a.total_cmp(b));
        cosines
            .iter()
            .zip(&sines)
            .map(|(&c, &s)| {
                if s < std::f64::consts::FRAC_1_SQRT_2 {
                    s.asin()
                } else {
                    c.acos()
                }
            })
            .collect()
    }
}
