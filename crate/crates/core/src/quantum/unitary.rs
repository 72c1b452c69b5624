use num_complex::Complex64;

use super::state::{Amplitude, QubitLabel, Split, StateVector};
use crate::error::{Error, Result};
use crate::tolerance;

/// Square unitary matrix, row-major, with dimension a power of two.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    entries: Vec<Amplitude>,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl UnitaryMatrix {
    pub fn new(dim: usize, entries: Vec<Amplitude>) -> Result<Self> {
        if !dim.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("matrix dimension {dim} is not a power of two")));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        let m = Self { dim, entries };
        let deviation = m.unitarity_deviation();
        if deviation > tolerance::ALGEBRAIC {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(m)
    }

    pub(crate) fn from_rows_unchecked(dim: usize, entries: Vec<Amplitude>) -> Self {
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![ZERO; dim * dim];
        (0..dim).for_each(|i| entries[i * dim + i] = ONE);
        Self { dim, entries }
    }

    pub fn pauli_x() -> Self {
        Self::from_rows_unchecked(2, vec![ZERO, ONE, ONE, ZERO])
    }

    pub fn pauli_z() -> Self {
        Self::from_rows_unchecked(2, vec![ONE, ZERO, ZERO, -ONE])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    pub fn get(&self, row: usize, col: usize) -> Amplitude {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Amplitude] {
        &self.entries
    }

    pub fn dagger(&self) -> Self {
        let d = self.dim;
        let entries = (0..d * d).map(|k| self.entries[(k % d) * d + k / d].conj()).collect();
        Self { dim: d, entries }
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rhs.dim });
        }
        let d = self.dim;
        let mut entries = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += a * rhs.entries[k * d + j];
                }
            }
        }
        Ok(Self { dim: d, entries })
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (p, q) = (self.dim, rhs.dim);
        let d = p * q;
        let mut entries = vec![ZERO; d * d];
        for i in 0..p {
            for j in 0..p {
                let a = self.entries[i * p + j];
                for k in 0..q {
                    for l in 0..q {
                        entries[(i * q + k) * d + j * q + l] = a * rhs.entries[k * q + l];
                    }
                }
            }
        }
        Self { dim: d, entries }
    }

    pub fn scaled(mut self, factor: Amplitude) -> Self {
        self.entries.iter_mut().for_each(|e| *e *= factor);
        self
    }

    /// Max elementwise deviation of `U·U†` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let dot: Amplitude = (0..d).map(|k| self.entries[i * d + k] * self.entries[j * d + k].conj()).sum();
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }

    /// True when `self = e^{iφ}·other` for some phase, within `tol` elementwise.
    pub fn equals_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let Some(pivot) = (0..self.entries.len()).max_by(|&a, &b| other.entries[a].norm().total_cmp(&other.entries[b].norm())) else {
            return true;
        };
        if other.entries[pivot].norm() < tol {
            return self.entries.iter().all(|e| e.norm() < tol);
        }
        let ratio = self.entries[pivot] / other.entries[pivot];
        if (ratio.norm() - 1.0).abs() > tol {
            return false;
        }
        self.entries.iter().zip(&other.entries).all(|(a, b)| (a - ratio * b).norm() <= tol)
    }
}

/// Applies `u` to `targets` (first target = most significant bit of `u`'s index).
pub fn apply_unitary(state: &StateVector, targets: &[QubitLabel], u: &UnitaryMatrix) -> Result<StateVector> {
    let expected = 1usize << targets.len();
    if u.dim() != expected {
        return Err(Error::DimensionMismatch { expected, found: u.dim() });
    }
    let split = Split::new(state, targets)?;
    let d = split.sel_dim();
    let src = state.amps();
    let mut out = vec![ZERO; src.len()];
    let mut local = vec![ZERO; d];
    for r in 0..split.rest_dim() {
        for (s, slot) in local.iter_mut().enumerate() {
            *slot = src[split.join(s, r)];
        }
        for i in 0..d {
            out[split.join(i, r)] = (0..d).map(|j| u.get(i, j) * local[j]).sum();
        }
    }
    StateVector::new(state.labels().to_vec(), out)
}

/// Controlled-NOT: flips `target` on every basis state where `control` is 1.
pub fn apply_cnot(state: &StateVector, control: QubitLabel, target: QubitLabel) -> Result<StateVector> {
    if control == target {
        return Err(Error::InvalidParameter(format!("CNOT control and target are both {control}")));
    }
    let cm = state.mask(control)?;
    let tm = state.mask(target)?;
    let src = state.amps();
    let amps = (0..src.len()).map(|i| if i & cm != 0 { src[i ^ tm] } else { src[i] }).collect();
    StateVector::new(state.labels().to_vec(), amps)
}
