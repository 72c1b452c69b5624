//! The shared (4n+1)-qubit channel.

use std::f64::consts::FRAC_1_SQRT_2;

use super::outcomes::ChannelSignConvention;
use crate::error::{Error, Result};
use crate::quantum::{Amplitude, QubitLabel, StateVector};

/// Register order `A_1, B_1, …, A_{2n}, B_{2n}, C`.
pub fn channel_register(n: usize) -> Vec<QubitLabel> {
    (1..=2 * n)
        .flat_map(|k| [QubitLabel::A(k), QubitLabel::B(k)])
        .chain(std::iter::once(QubitLabel::C()))
        .collect()
}

/// Two-qubit amplitudes of the pair state on the C = 1 branch.
pub fn minus_pair(conv: ChannelSignConvention) -> [f64; 4] {
    let h = FRAC_1_SQRT_2;
    match conv {
        ChannelSignConvention::Singlet => [0.0, h, -h, 0.0],
        ChannelSignConvention::PhiMinus => [h, 0.0, 0.0, -h],
    }
}

const PHI_PLUS: [f64; 4] = [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2];

/// Amplitudes of `⊗_{k=1}^{pairs} pair`.
fn pair_power(pair: &[f64; 4], pairs: usize) -> Vec<f64> {
    (0..pairs).fold(vec![1.0], |acc, _| acc.iter().flat_map(|x| pair.iter().map(move |y| x * y)).collect())
}

/// `(1/√2)[⊗|φ⁺⟩ |0⟩_C + ⊗|minus⟩ |1⟩_C]` over `2n` pairs.
pub fn build_channel(n: usize, conv: ChannelSignConvention) -> Result<StateVector> {
    if n == 0 {
        return Err(Error::InvalidParameter("channel needs n ≥ 1".into()));
    }
    let plus = pair_power(&PHI_PLUS, 2 * n);
    let minus = pair_power(&minus_pair(conv), 2 * n);
    let amps = plus
        .iter()
        .zip(&minus)
        .flat_map(|(p, m)| [Amplitude::new(p * FRAC_1_SQRT_2, 0.0), Amplitude::new(m * FRAC_1_SQRT_2, 0.0)])
        .collect();
    StateVector::new(channel_register(n), amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{extract_subsystem, measure_subsystem, MeasureMode, OrthonormalBasis};

    #[test]
    fn single_pair_channel_amplitudes() {
        // Frozen from a hand expansion of the n = 1 singlet channel.
        let s = build_channel(1, ChannelSignConvention::Singlet).unwrap();
        let w = 1.0 / (2.0 * 2f64.sqrt());
        let expected = [
            (0b00000, w),
            (0b00110, w),
            (0b11000, w),
            (0b11110, w),
            (0b01011, w),
            (0b01101, -w),
            (0b10011, -w),
            (0b10101, w),
        ];
        let mut seen = 0;
        for (i, a) in s.amps().iter().enumerate() {
            match expected.iter().find(|(idx, _)| *idx == i) {
                Some((_, v)) => {
                    assert!((a - Amplitude::new(*v, 0.0)).norm() < 1e-15, "index {i:05b}");
                    seen += 1;
                }
                None => assert!(a.norm() < 1e-15, "index {i:05b} should vanish"),
            }
        }
        assert_eq!(seen, 8);
    }

    #[test]
    fn normalized_and_balanced() {
        for n in 1..=3 {
            for conv in [ChannelSignConvention::Singlet, ChannelSignConvention::PhiMinus] {
                let s = build_channel(n, conv).unwrap();
                assert_eq!(s.num_qubits(), 4 * n + 1);
                assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
                let out =
                    measure_subsystem(&s, &[QubitLabel::C()], &OrthonormalBasis::computational(2), MeasureMode::Enumerate)
                        .unwrap();
                assert_eq!(out.len(), 2);
                for branch in &out {
                    assert!((branch.probability - 0.5).abs() < 1e-12);
                    // each pair factorizes out of the conditioned channel
                    let pair_state = if branch.outcome == 0 { PHI_PLUS } else { minus_pair(conv) };
                    for k in 1..=2 * n {
                        let pair = extract_subsystem(&branch.collapsed, &[QubitLabel::A(k), QubitLabel::B(k)]).unwrap();
                        let target =
                            StateVector::new(pair.labels().to_vec(), pair_state.iter().map(|x| Amplitude::new(*x, 0.0)).collect())
                                .unwrap();
                        assert!(pair.max_deviation_up_to_phase(&target).unwrap() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_zero() {
        assert!(build_channel(0, ChannelSignConvention::Singlet).is_err());
    }
}
