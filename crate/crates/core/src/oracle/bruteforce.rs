use crate::correction::{CorrectionOp, Pauli};
use crate::quantum::{apply_unitary, fidelity, StateVector};
use crate::tolerance;

/// First unsigned Pauli product in lexicographic order (`I < X < Z < XZ`,
/// first qubit most significant) that maps `actual` onto `target` up to
/// global phase.
pub fn derive_correction_bruteforce(actual: &StateVector, target: &StateVector) -> Option<CorrectionOp> {
    let m = actual.num_qubits();
    if target.num_qubits() != m {
        return None;
    }
    let targets = actual.labels().to_vec();
    let single: Vec<_> = Pauli::ALL.iter().map(|p| p.matrix()).collect();
    (0..1usize << (2 * m)).find_map(|code| {
        let paulis: Vec<Pauli> = (0..m).map(|k| Pauli::ALL[(code >> (2 * (m - 1 - k))) & 3]).collect();
        let mut state = actual.clone();
        for (q, p) in targets.iter().zip(&paulis) {
            if *p != Pauli::I {
                state = apply_unitary(&state, &[*q], &single[*p as usize]).ok()?;
            }
        }
        let f = fidelity(&state, target).ok()?;
        (f >= 1.0 - tolerance::ALGEBRAIC).then(|| CorrectionOp::unsigned(&paulis))
    })
}
