//! Measurement bases used by Alice (Bell) and Bob (amplitude, phase).

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::quantum::{Amplitude, OrthonormalBasis};
use crate::tolerance;

fn re(x: f64) -> Amplitude {
    Amplitude::new(x, 0.0)
}

/// φ⁺, φ⁻, ψ⁺, ψ⁻ over an (a_k, A_k) pair.
pub fn bell_basis() -> OrthonormalBasis {
    let h = FRAC_1_SQRT_2;
    OrthonormalBasis::new(vec![
        vec![re(h), re(0.0), re(0.0), re(h)],
        vec![re(h), re(0.0), re(0.0), re(-h)],
        vec![re(0.0), re(h), re(h), re(0.0)],
        vec![re(0.0), re(h), re(-h), re(0.0)],
    ])
    .expect("Bell basis is orthonormal")
}

/// `{β₀|0⟩ + β₁|1⟩, β₁|0⟩ − β₀|1⟩}`.
pub fn amplitude_basis(beta0: f64, beta1: f64) -> Result<OrthonormalBasis> {
    let norm_sqr = beta0 * beta0 + beta1 * beta1;
    if (norm_sqr - 1.0).abs() > tolerance::CONSERVATION {
        return Err(Error::NotNormalized { norm_sqr });
    }
    OrthonormalBasis::new(vec![vec![re(beta0), re(beta1)], vec![re(beta1), re(-beta0)]])
}

/// Phase-measurement basis for an ancilla, chosen by the amplitude outcome
/// (1-based) on the paired channel qubit.
///
/// Outcome 1: `(|0⟩ ± e^{−iθ}|1⟩)/√2`; outcome 2: `(e^{−iθ}|0⟩ ± |1⟩)/√2`.
pub fn phase_basis(theta: f64, amplitude_outcome: u8) -> Result<OrthonormalBasis> {
    let h = re(FRAC_1_SQRT_2);
    let w = Amplitude::from_polar(FRAC_1_SQRT_2, -theta);
    let vectors = match amplitude_outcome {
        1 => vec![vec![h, w], vec![h, -w]],
        2 => vec![vec![w, h], vec![w, -h]],
        other => return Err(Error::InvalidParameter(format!("amplitude outcome must be 1 or 2, got {other}"))),
    };
    OrthonormalBasis::new(vectors)
}

/// `2^n`-dimensional amplitude basis whose first vector is `Σ β_j |j⟩`.
///
/// The remaining vectors are the other columns of the Householder reflection
/// that maps `|0⟩` onto the first vector. For `n = 1` this reproduces
/// [`amplitude_basis`] exactly.
pub fn amplitude_basis_general(betas: &[f64]) -> Result<OrthonormalBasis> {
    let dim = betas.len();
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("{dim} coefficients do not span a qubit register")));
    }
    let norm_sqr: f64 = betas.iter().map(|b| b * b).sum();
    if (norm_sqr - 1.0).abs() > tolerance::CONSERVATION {
        return Err(Error::NotNormalized { norm_sqr });
    }
    // u = e₀ − β, H = I − 2uuᵀ/(uᵀu)
    let mut u: Vec<f64> = betas.iter().map(|b| -b).collect();
    u[0] += 1.0;
    let uu: f64 = u.iter().map(|x| x * x).sum();
    let vectors = (0..dim)
        .map(|col| {
            (0..dim)
                .map(|row| {
                    let id = if row == col { 1.0 } else { 0.0 };
                    if uu < tolerance::ZERO_PROBABILITY {
                        re(id)
                    } else {
                        re(id - 2.0 * u[row] * u[col] / uu)
                    }
                })
                .collect()
        })
        .collect();
    OrthonormalBasis::new(vectors)
}

/// `2^n`-dimensional phase basis for the ancilla block.
///
/// Vector `m` has components `e^{−iθ_{j⊕r}} (−1)^{popcount(j∧m)} / √2^n`,
/// where `r` is the zero-based amplitude outcome. For `n = 1` this reproduces
/// [`phase_basis`].
pub fn phase_basis_general(thetas: &[f64], amplitude_outcome: usize) -> Result<OrthonormalBasis> {
    let dim = thetas.len();
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("{dim} phases do not span a qubit register")));
    }
    if amplitude_outcome == 0 || amplitude_outcome > dim {
        return Err(Error::InvalidParameter(format!("amplitude outcome {amplitude_outcome} outside 1..={dim}")));
    }
    let r = amplitude_outcome - 1;
    let scale = (dim as f64).sqrt().recip();
    let vectors = (0..dim)
        .map(|m| {
            (0..dim)
                .map(|j| {
                    let sign = if (j & m).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                    Amplitude::from_polar(sign * scale, -thetas[j ^ r])
                })
                .collect()
        })
        .collect();
    OrthonormalBasis::new(vectors)
}
