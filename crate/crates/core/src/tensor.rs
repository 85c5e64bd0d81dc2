use std::fmt;

use serde::{Deserialize, Serialize};

use crate::finsler::TangentPoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Upper,
    Lower,
}

/// Dense tensor components at a point, every axis of length `n`, stored
/// row-major in the order of `variance`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorBlock {
    name: &'static str,
    variance: Vec<Variance>,
    n: usize,
    data: Vec<f64>,
    point: TangentPoint,
}

impl TensorBlock {
    pub fn zeros(name: &'static str, variance: Vec<Variance>, point: &TangentPoint) -> Self {
        let n = point.dim();
        let len = n.pow(variance.len() as u32);
        TensorBlock {
            name,
            variance,
            n,
            data: vec![0.0; len],
            point: point.clone(),
        }
    }

    /// Fills every component from `f(multi_index)`.
    pub fn from_fn(
        name: &'static str,
        variance: Vec<Variance>,
        point: &TangentPoint,
        mut f: impl FnMut(&[usize]) -> f64,
    ) -> Self {
        let mut t = Self::zeros(name, variance, point);
        let rank = t.rank();
        let mut idx = vec![0usize; rank];
        for slot in 0..t.data.len() {
            let mut rem = slot;
            for a in (0..rank).rev() {
                idx[a] = rem % t.n;
                rem /= t.n;
            }
            t.data[slot] = f(&idx);
        }
        t
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn rank(&self) -> usize {
        self.variance.len()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn point(&self) -> &TangentPoint {
        &self.point
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.rank(), "index rank mismatch for {}", self.name);
        idx.iter().fold(0, |acc, &i| {
            assert!(i < self.n, "index {i} out of range for {}", self.name);
            acc * self.n + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: f64) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest componentwise difference to a tensor of the same shape.
    pub fn max_abs_diff(&self, other: &TensorBlock) -> f64 {
        assert_eq!(self.data.len(), other.data.len());
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn to_matrix(&self) -> Vec<Vec<f64>> {
        assert_eq!(self.rank(), 2);
        self.data.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn to_rank3(&self) -> Vec<Vec<Vec<f64>>> {
        assert_eq!(self.rank(), 3);
        self.data
            .chunks(self.n * self.n)
            .map(|m| m.chunks(self.n).map(<[f64]>::to_vec).collect())
            .collect()
    }

    pub fn to_rank4(&self) -> Vec<Vec<Vec<Vec<f64>>>> {
        assert_eq!(self.rank(), 4);
        let n = self.n;
        self.data
            .chunks(n * n * n)
            .map(|c| {
                c.chunks(n * n)
                    .map(|m| m.chunks(n).map(<[f64]>::to_vec).collect())
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for TensorBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: String = self
            .variance
            .iter()
            .map(|v| match v {
                Variance::Upper => '^',
                Variance::Lower => '_',
            })
            .collect();
        write!(f, "{}[{}]", self.name, labels)
    }
}

/// Components of a section of the pullback bundle in the fiber basis `∂̄ᵢ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PiVector(pub Vec<f64>);

impl PiVector {
    pub fn zeros(n: usize) -> Self {
        PiVector(vec![0.0; n])
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn max_abs_diff(&self, other: &PiVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}
