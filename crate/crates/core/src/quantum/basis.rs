use super::state::Amplitude;
use crate::error::{Error, Result};
use crate::tolerance;

/// A complete orthonormal set of `dim` vectors in a `dim`-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis {
    dim: usize,
    vectors: Vec<Vec<Amplitude>>,
}

impl OrthonormalBasis {
    pub fn new(vectors: Vec<Vec<Amplitude>>) -> Result<Self> {
        let dim = vectors.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("basis size {dim} is not a power of two")));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
        let basis = Self { dim, vectors };
        let deviation = basis.gram_deviation();
        if deviation > tolerance::ALGEBRAIC {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(basis)
    }

    /// `{|0⟩, …, |dim−1⟩}`.
    pub fn computational(dim: usize) -> Self {
        let vectors = (0..dim)
            .map(|i| (0..dim).map(|j| Amplitude::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect();
        Self { dim, vectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<Amplitude>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[Amplitude] {
        &self.vectors[i]
    }

    /// Max elementwise deviation of the Gram matrix from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, u) in self.vectors.iter().enumerate() {
            for (j, v) in self.vectors.iter().enumerate() {
                let dot: Amplitude = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - Amplitude::new(target, 0.0)).norm());
            }
        }
        worst
    }
}
