//! Projective measurement of a subset of qubits in an arbitrary orthonormal basis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::basis::OrthonormalBasis;
use super::state::{Amplitude, QubitLabel, Split, StateVector};
use crate::error::{Error, Result};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureMode {
    /// Every outcome with nonzero probability.
    Enumerate,
    /// One outcome drawn with a ChaCha8 generator seeded from the value.
    Sample(u64),
    /// The given basis-vector index.
    Forced(usize),
}

#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    /// Index of the basis vector the subsystem was projected onto.
    pub outcome: usize,
    pub probability: f64,
    /// Renormalized post-measurement state with the measured qubits removed.
    pub collapsed: StateVector,
}

/// Projects `qubits` onto each vector of `basis`.
///
/// Basis vector components are indexed big-endian over `qubits` in the order
/// given. Collapsed states keep the remaining qubits in register order.
pub fn measure_subsystem(
    state: &StateVector,
    qubits: &[QubitLabel],
    basis: &OrthonormalBasis,
    mode: MeasureMode,
) -> Result<Vec<MeasurementOutcome>> {
    let expected = 1usize << qubits.len();
    if basis.dim() != expected {
        return Err(Error::DimensionMismatch { expected, found: basis.dim() });
    }
    let split = Split::new(state, qubits)?;
    let rest_labels: Vec<QubitLabel> = state.labels().iter().copied().filter(|l| !qubits.contains(l)).collect();

    let project = |o: usize| -> Vec<Amplitude> {
        let v = basis.vector(o);
        (0..split.rest_dim())
            .map(|r| (0..split.sel_dim()).map(|s| v[s].conj() * state.amps()[split.join(s, r)]).sum())
            .collect()
    };
    let branch = |o: usize, amps: Vec<Amplitude>| -> MeasurementOutcome {
        let probability = amps.iter().map(|a| a.norm_sqr()).sum();
        MeasurementOutcome { outcome: o, probability, collapsed: StateVector::from_unnormalized(rest_labels.clone(), amps) }
    };

    match mode {
        MeasureMode::Forced(o) => {
            if o >= basis.dim() {
                return Err(Error::DimensionMismatch { expected: basis.dim(), found: o });
            }
            let amps = project(o);
            let probability: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
            if probability < tolerance::ZERO_PROBABILITY {
                return Err(Error::ZeroProbabilityOutcome { outcome: o, probability });
            }
            Ok(vec![branch(o, amps)])
        }
        MeasureMode::Enumerate => Ok((0..basis.dim())
            .map(|o| (o, project(o)))
            .filter(|(_, amps)| amps.iter().map(|a| a.norm_sqr()).sum::<f64>() > tolerance::ZERO_PROBABILITY)
            .map(|(o, amps)| branch(o, amps))
            .collect()),
        MeasureMode::Sample(seed) => {
            let all: Vec<(usize, Vec<Amplitude>, f64)> = (0..basis.dim())
                .map(|o| {
                    let amps = project(o);
                    let p = amps.iter().map(|a| a.norm_sqr()).sum();
                    (o, amps, p)
                })
                .filter(|(_, _, p)| *p > tolerance::ZERO_PROBABILITY)
                .collect();
            let total: f64 = all.iter().map(|(_, _, p)| p).sum();
            let mut draw = ChaCha8Rng::seed_from_u64(seed).random::<f64>() * total;
            let last = all.len() - 1;
            let (o, amps, _) = all
                .into_iter()
                .enumerate()
                .find_map(|(i, item)| {
                    if draw < item.2 || i == last {
                        Some(item)
                    } else {
                        draw -= item.2;
                        None
                    }
                })
                .expect("a normalized state has at least one outcome");
            Ok(vec![branch(o, amps)])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Amplitude {
        Amplitude::new(re, 0.0)
    }

    fn q(k: usize) -> QubitLabel {
        QubitLabel::q(k)
    }

    fn plus() -> StateVector {
        StateVector::new(vec![q(0)], vec![c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]).unwrap()
    }

    #[test]
    fn enumerate_plus_in_z() {
        let out = measure_subsystem(&plus(), &[q(0)], &OrthonormalBasis::computational(2), MeasureMode::Enumerate).unwrap();
        assert_eq!(out.len(), 2);
        for o in &out {
            assert!((o.probability - 0.5).abs() < 1e-15);
            assert_eq!(o.collapsed.num_qubits(), 0);
        }
    }

    #[test]
    fn forced_zero_probability() {
        let s = StateVector::zeros(vec![q(0)]).unwrap();
        let err = measure_subsystem(&s, &[q(0)], &OrthonormalBasis::computational(2), MeasureMode::Forced(1)).unwrap_err();
        assert!(matches!(err, Error::ZeroProbabilityOutcome { outcome: 1, .. }));
    }

    #[test]
    fn sample_is_deterministic() {
        let basis = OrthonormalBasis::computational(2);
        let a = measure_subsystem(&plus(), &[q(0)], &basis, MeasureMode::Sample(11)).unwrap();
        let b = measure_subsystem(&plus(), &[q(0)], &basis, MeasureMode::Sample(11)).unwrap();
        assert_eq!(a[0].outcome, b[0].outcome);
        let ones = (0..2000u64)
            .filter(|&s| measure_subsystem(&plus(), &[q(0)], &basis, MeasureMode::Sample(s)).unwrap()[0].outcome == 1)
            .count();
        assert!((ones as f64 / 2000.0 - 0.5).abs() < 0.05);
    }

    #[test]
    fn dimension_checked() {
        let err = measure_subsystem(&plus(), &[q(0)], &OrthonormalBasis::computational(4), MeasureMode::Enumerate).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn partial_measurement_keeps_rest_order() {
        // |0⟩_q0 |1⟩_q1 |+⟩_q2: measuring q1 leaves (q0, q2) = |0⟩|+⟩
        let s = StateVector::new(
            vec![q(0), q(1), q(2)],
            vec![c(0.0), c(0.0), c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2), c(0.0), c(0.0), c(0.0), c(0.0)],
        )
        .unwrap();
        let out = measure_subsystem(&s, &[q(1)], &OrthonormalBasis::computational(2), MeasureMode::Enumerate).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].outcome, 1);
        assert_eq!(out[0].collapsed.labels(), &[q(0), q(2)]);
        assert!((out[0].collapsed.amps()[0] - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((out[0].collapsed.amps()[1] - c(FRAC_1_SQRT_2)).norm() < 1e-15);
    }
}
