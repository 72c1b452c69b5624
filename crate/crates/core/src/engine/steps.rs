//! The six protocol steps as pure functions on the shared state.
//!
//! Each measuring step returns one [`Branch`] per selected outcome: all of
//! them in [`StepMode::Enumerate`], exactly one otherwise. Probabilities are
//! conditional on the incoming state.

use rand::RngCore;

use super::messages::Readout;
use crate::assets::{
    amplitude_basis, amplitude_basis_general, bell_basis, channel_register, phase_basis, phase_basis_general, AliceState,
    BellOutcome, BobKnownState, BobMode, CharlieBit,
};
use crate::error::{Error, Result};
use crate::quantum::{
    apply_cnot, measure_subsystem, tensor_product, MeasureMode, OrthonormalBasis, QubitLabel, StateVector,
};

pub enum StepMode<'a> {
    Enumerate,
    /// Each measurement draws its own seed from the generator.
    Sample(&'a mut dyn RngCore),
    /// Zero-based basis index for each measurement of the step, in order.
    Forced(&'a [usize]),
}

#[derive(Debug, Clone)]
pub struct Branch<O> {
    pub outcomes: O,
    pub probability: f64,
    pub state: StateVector,
}

/// Measures `groups` one after another, expanding or selecting outcomes per `mode`.
fn measure_sequence(
    state: &StateVector,
    groups: &[(Vec<QubitLabel>, OrthonormalBasis)],
    mode: &mut StepMode<'_>,
) -> Result<Vec<Branch<Vec<usize>>>> {
    if let StepMode::Forced(forced) = mode {
        if forced.len() != groups.len() {
            return Err(Error::DimensionMismatch { expected: groups.len(), found: forced.len() });
        }
    }
    let mut branches = vec![Branch { outcomes: Vec::new(), probability: 1.0, state: state.clone() }];
    for (i, (qubits, basis)) in groups.iter().enumerate() {
        let mut next = Vec::with_capacity(branches.len());
        for b in branches {
            let measure_mode = match mode {
                StepMode::Enumerate => MeasureMode::Enumerate,
                StepMode::Sample(rng) => MeasureMode::Sample(rng.next_u64()),
                StepMode::Forced(forced) => MeasureMode::Forced(forced[i]),
            };
            for m in measure_subsystem(&b.state, qubits, basis, measure_mode)? {
                let mut outcomes = b.outcomes.clone();
                outcomes.push(m.outcome);
                next.push(Branch { outcomes, probability: b.probability * m.probability, state: m.collapsed });
            }
        }
        branches = next;
    }
    Ok(branches)
}

/// `|χ⟩_{a_1…a_n} ⊗ |ψ⟩_CH`.
pub fn assemble_initial_state(alice: &AliceState, channel: &StateVector) -> Result<StateVector> {
    let n = alice.n();
    if channel.labels() != channel_register(n).as_slice() {
        return Err(Error::DimensionMismatch { expected: 4 * n + 1, found: channel.num_qubits() });
    }
    tensor_product(&alice.state(), channel)
}

/// Step 1: Alice measures each `(a_k, A_k)` in the Bell basis.
pub fn step1_alice_bell_measurement(
    state: &StateVector,
    n: usize,
    mut mode: StepMode<'_>,
) -> Result<Vec<Branch<Vec<BellOutcome>>>> {
    let groups: Vec<_> = (1..=n).map(|k| (vec![QubitLabel::a(k), QubitLabel::A(k)], bell_basis())).collect();
    Ok(measure_sequence(state, &groups, &mut mode)?
        .into_iter()
        .map(|b| Branch {
            outcomes: b.outcomes.iter().map(|i| BellOutcome::from_index(*i).expect("4-outcome basis")).collect(),
            probability: b.probability,
            state: b.state,
        })
        .collect())
}

/// Step 2: Bob appends `e_1 … e_n` in `|0⟩`.
pub fn step2_introduce_ancillas(state: &StateVector, n: usize) -> Result<StateVector> {
    let ancillas = StateVector::zeros((1..=n).map(QubitLabel::e).collect())?;
    tensor_product(state, &ancillas)
}

/// Step 3: `CNOT(B_{n+k} → e_k)` for `k = 1 … n`.
pub fn step3_bob_cnot(state: &StateVector, n: usize) -> Result<StateVector> {
    (1..=n).try_fold(state.clone(), |s, k| apply_cnot(&s, QubitLabel::B(n + k), QubitLabel::e(k)))
}

fn to_readouts(branches: Vec<Branch<Vec<usize>>>, arity: usize) -> Vec<Branch<Readout>> {
    branches
        .into_iter()
        .map(|b| Branch {
            outcomes: Readout::new(b.outcomes.iter().map(|o| o + 1).collect(), arity),
            probability: b.probability,
            state: b.state,
        })
        .collect()
}

/// Step 4: Bob measures `B_{n+1} … B_{2n}` in bases built from his β.
pub fn step4_amplitude_measurement(
    state: &StateVector,
    bob: &BobKnownState,
    mut mode: StepMode<'_>,
) -> Result<Vec<Branch<Readout>>> {
    let n = bob.n();
    let (groups, arity) = match bob.mode() {
        BobMode::Product(qubits) => {
            let groups = qubits
                .iter()
                .enumerate()
                .map(|(k, q)| Ok((vec![QubitLabel::B(n + k + 1)], amplitude_basis(q.beta0, q.beta1)?)))
                .collect::<Result<Vec<_>>>()?;
            (groups, 2)
        }
        BobMode::General { betas, .. } => {
            let block = (n + 1..=2 * n).map(QubitLabel::B).collect();
            (vec![(block, amplitude_basis_general(betas)?)], 1 << n)
        }
    };
    Ok(to_readouts(measure_sequence(state, &groups, &mut mode)?, arity))
}

/// Step 5: Bob measures `e_1 … e_n` in phase bases chosen by the step-4 readout.
pub fn step5_phase_measurement(
    state: &StateVector,
    bob: &BobKnownState,
    amplitude: &Readout,
    mut mode: StepMode<'_>,
) -> Result<Vec<Branch<Readout>>> {
    let n = bob.n();
    let (groups, arity) = match bob.mode() {
        BobMode::Product(qubits) => {
            if amplitude.values.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: amplitude.values.len() });
            }
            let groups = qubits
                .iter()
                .zip(&amplitude.values)
                .enumerate()
                .map(|(k, (q, r))| {
                    let r = u8::try_from(*r).map_err(|_| Error::InvalidParameter(format!("amplitude outcome {r}")))?;
                    Ok((vec![QubitLabel::e(k + 1)], phase_basis(q.theta, r)?))
                })
                .collect::<Result<Vec<_>>>()?;
            (groups, 2)
        }
        BobMode::General { thetas, .. } => {
            let [r] = amplitude.values.as_slice() else {
                return Err(Error::DimensionMismatch { expected: 1, found: amplitude.values.len() });
            };
            let block = (1..=n).map(QubitLabel::e).collect();
            (vec![(block, phase_basis_general(thetas, *r)?)], 1 << n)
        }
    };
    Ok(to_readouts(measure_sequence(state, &groups, &mut mode)?, arity))
}

/// Step 6: Charlie measures `C` in the computational basis.
pub fn step6_charlie_measurement(state: &StateVector, mut mode: StepMode<'_>) -> Result<Vec<Branch<CharlieBit>>> {
    let groups = [(vec![QubitLabel::C()], OrthonormalBasis::computational(2))];
    Ok(measure_sequence(state, &groups, &mut mode)?
        .into_iter()
        .map(|b| Branch {
            outcomes: if b.outcomes[0] == 0 { CharlieBit::Zero } else { CharlieBit::One },
            probability: b.probability,
            state: b.state,
        })
        .collect())
}

/// `B_1 … B_n`: where Alice's state ends up.
pub fn teleport_register(n: usize) -> Vec<QubitLabel> {
    (1..=n).map(QubitLabel::B).collect()
}

/// `A_{n+1} … A_{2n}`: where Bob's state ends up.
pub fn rsp_register(n: usize) -> Vec<QubitLabel> {
    (n + 1..=2 * n).map(QubitLabel::A).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assets::{build_channel, ChannelSignConvention, QubitParams};
    use crate::quantum::{extract_subsystem, Amplitude};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Amplitude {
        Amplitude::new(re, im)
    }

    fn alice(a0: Amplitude, a1: Amplitude) -> AliceState {
        AliceState::new(vec![a0, a1]).unwrap()
    }

    fn initial(a: &AliceState) -> StateVector {
        assemble_initial_state(a, &build_channel(a.n(), ChannelSignConvention::Singlet).unwrap()).unwrap()
    }

    fn project_c(state: &StateVector, bit: usize) -> StateVector {
        step6_charlie_measurement(state, StepMode::Forced(&[bit])).unwrap().remove(0).state
    }

    #[test]
    fn initial_state_layout() {
        let a = alice(c(1.0, 0.0), c(0.0, 0.0));
        let s = initial(&a);
        assert_eq!(s.num_qubits(), 6);
        assert!(s.amps()[32..].iter().all(|x| x.norm() == 0.0));
        // a1 = 1 half, singlet branch |10101⟩ carries α₁·(+1)/(2√2)
        let a = alice(c(0.6, 0.0), c(0.0, 0.8));
        let s = initial(&a);
        let w = 1.0 / (2.0 * 2f64.sqrt());
        assert!((s.amps()[0b110101] - c(0.0, 0.8 * w)).norm() < 1e-15);
        assert!((s.amps()[0b101101] - c(0.0, -0.8 * w)).norm() < 1e-15);
        assert!(assemble_initial_state(&a, &build_channel(2, ChannelSignConvention::Singlet).unwrap()).is_err());
    }

    #[test]
    fn bell_statistics_uniform() {
        let a = alice(c(0.6, 0.0), c(0.0, 0.8));
        let branches = step1_alice_bell_measurement(&initial(&a), 1, StepMode::Enumerate).unwrap();
        assert_eq!(branches.len(), 4);
        for b in &branches {
            assert!((b.probability - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn phi_plus_branch_carries_alphas() {
        let a = alice(c(0.6, 0.0), c(0.0, 0.8));
        let after = step1_alice_bell_measurement(&initial(&a), 1, StepMode::Forced(&[0])).unwrap().remove(0);
        assert_eq!(after.outcomes, vec![BellOutcome::PhiPlus]);
        let c0 = project_c(&after.state, 0);
        let b1 = extract_subsystem(&c0, &[QubitLabel::B(1)]).unwrap();
        assert!(b1.max_deviation_up_to_phase(&a.state()).unwrap() < 1e-12);
        // C = 1 branch: coefficients reversed (up to signs)
        let c1 = project_c(&after.state, 1);
        let b1 = extract_subsystem(&c1, &[QubitLabel::B(1)]).unwrap();
        assert!((b1.amps()[0].norm() - 0.8).abs() < 1e-12 && (b1.amps()[1].norm() - 0.6).abs() < 1e-12);
    }

    #[test]
    fn ancillas_and_cnot() {
        let a = alice(c(0.6, 0.0), c(0.8, 0.0));
        let after = step1_alice_bell_measurement(&initial(&a), 1, StepMode::Forced(&[0])).unwrap().remove(0).state;
        let with_e = step2_introduce_ancillas(&after, 1).unwrap();
        assert_eq!(with_e.num_qubits(), after.num_qubits() + 1);
        assert_eq!(with_e.labels().last(), Some(&QubitLabel::e(1)));
        for (i, x) in after.amps().iter().enumerate() {
            assert_eq!(with_e.amps()[2 * i], *x);
            assert_eq!(with_e.amps()[2 * i + 1], c(0.0, 0.0));
        }
        let ghz = step3_bob_cnot(&with_e, 1).unwrap();
        // condition on C and B1 to isolate (A2, B2, e1)
        let c0 = project_c(&ghz, 0);
        let trio = extract_subsystem(&c0, &[QubitLabel::A(2), QubitLabel::B(2), QubitLabel::e(1)]).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!((trio.amps()[0] - c(h, 0.0)).norm() < 1e-12 && (trio.amps()[7] - c(h, 0.0)).norm() < 1e-12);
        let c1 = project_c(&ghz, 1);
        let trio = extract_subsystem(&c1, &[QubitLabel::A(2), QubitLabel::B(2), QubitLabel::e(1)]).unwrap();
        // (|011⟩ − |100⟩)/√2 after phase normalization
        assert!((trio.amps()[0b011] - c(h, 0.0)).norm() < 1e-12);
        assert!((trio.amps()[0b100] - c(-h, 0.0)).norm() < 1e-12);
    }

    fn through_step3(a: &AliceState) -> StateVector {
        let s = step1_alice_bell_measurement(&initial(a), a.n(), StepMode::Forced(&vec![0; a.n()])).unwrap().remove(0).state;
        step3_bob_cnot(&step2_introduce_ancillas(&s, a.n()).unwrap(), a.n()).unwrap()
    }

    #[test]
    fn amplitude_then_phase_measurement() {
        let a = alice(c(0.6, 0.0), c(0.8, 0.0));
        let (b0, b1, theta) = (0.6, 0.8, 0.7);
        let bob = BobKnownState::product(vec![QubitParams::new(b0, b1, theta).unwrap()]).unwrap();
        let s = through_step3(&a);
        let amp = step4_amplitude_measurement(&s, &bob, StepMode::Enumerate).unwrap();
        assert_eq!(amp.len(), 2);
        assert!((amp.iter().map(|b| b.probability).sum::<f64>() - 1.0).abs() < 1e-12);

        let first = &amp[0];
        assert_eq!(first.outcomes.values, vec![1]);
        let c0 = project_c(&first.state, 0);
        let pair = extract_subsystem(&c0, &[QubitLabel::A(2), QubitLabel::e(1)]).unwrap();
        assert!((pair.amps()[0] - c(b0, 0.0)).norm() < 1e-12 && (pair.amps()[3] - c(b1, 0.0)).norm() < 1e-12);

        let ph = step5_phase_measurement(&first.state, &bob, &first.outcomes, StepMode::Enumerate).unwrap();
        assert_eq!(ph.len(), 2);
        for b in &ph {
            assert!((b.probability - 0.5).abs() < 1e-12);
        }
        let c0 = project_c(&ph[0].state, 0);
        let a2 = extract_subsystem(&c0, &[QubitLabel::A(2)]).unwrap();
        assert!(a2.max_deviation_up_to_phase(&bob.state()).unwrap() < 1e-12);
    }

    #[test]
    fn phase_step_theta_zero() {
        let a = alice(c(1.0, 0.0), c(0.0, 0.0));
        let bob = BobKnownState::product(vec![QubitParams::new(0.6, 0.8, 0.0).unwrap()]).unwrap();
        let s = through_step3(&a);
        let amp = step4_amplitude_measurement(&s, &bob, StepMode::Forced(&[0])).unwrap().remove(0);
        let ph = step5_phase_measurement(&amp.state, &bob, &amp.outcomes, StepMode::Forced(&[0])).unwrap().remove(0);
        let a2 = extract_subsystem(&project_c(&ph.state, 0), &[QubitLabel::A(2)]).unwrap();
        assert!((a2.amps()[0] - c(0.6, 0.0)).norm() < 1e-12 && (a2.amps()[1] - c(0.8, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn degenerate_bob_amplitude() {
        let a = alice(c(1.0, 0.0), c(0.0, 0.0));
        let bob = BobKnownState::product(vec![QubitParams::new(1.0, 0.0, 0.0).unwrap()]).unwrap();
        let s = through_step3(&a);
        let amp = step4_amplitude_measurement(&s, &bob, StepMode::Forced(&[0])).unwrap().remove(0);
        let pair = extract_subsystem(&project_c(&amp.state, 0), &[QubitLabel::A(2), QubitLabel::e(1)]).unwrap();
        assert!((pair.amps()[0] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn charlie_balanced() {
        let ch = build_channel(1, ChannelSignConvention::Singlet).unwrap();
        let out = step6_charlie_measurement(&ch, StepMode::Enumerate).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|b| (b.probability - 0.5).abs() < 1e-12));
    }

    #[test]
    fn forced_length_checked() {
        let a = alice(c(1.0, 0.0), c(0.0, 0.0));
        assert!(step1_alice_bell_measurement(&initial(&a), 1, StepMode::Forced(&[0, 0])).is_err());
    }
}
