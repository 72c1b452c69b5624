//! Drives the three parties through one complete run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::messages::{ClassicalMessage, MessageBus, PartyId};
use super::parties::{Alice, Bob, Charlie};
use super::policy::{zero_based, OutcomePolicy};
use super::steps::{
    assemble_initial_state, rsp_register, step1_alice_bell_measurement, step2_introduce_ancillas, step3_bob_cnot,
    step4_amplitude_measurement, step5_phase_measurement, step6_charlie_measurement, teleport_register, Branch,
    StepMode,
};
use super::transcript::{ProtocolTranscript, StepId, TranscriptBuilder};
use crate::assets::{build_channel, AliceState, BobKnownState, ChannelSignConvention};
use crate::error::{Error, Result};
use crate::oracle::{derive_rsp_table, MAX_ENUMERATION_N};
use crate::quantum::{extract_subsystem, fidelity, StateVector};

/// Transcript plus the final registers, before and after correction.
#[derive(Debug, Clone)]
pub struct ProtocolRun {
    pub transcript: ProtocolTranscript,
    /// `B_1 … B_n` after Bob's correction.
    pub teleported: StateVector,
    /// `A_{n+1} … A_{2n}` after Alice's correction.
    pub prepared: StateVector,
    pub teleported_uncorrected: StateVector,
    pub prepared_uncorrected: StateVector,
}

fn mode<'a>(forced: Option<&'a [usize]>, rng: &'a mut ChaCha8Rng) -> StepMode<'a> {
    match forced {
        Some(f) => StepMode::Forced(f),
        None => StepMode::Sample(rng),
    }
}

fn single<O>(mut branches: Vec<Branch<O>>) -> Branch<O> {
    debug_assert_eq!(branches.len(), 1);
    branches.remove(0)
}

struct Parties {
    alice: Alice,
    bob: Bob,
    charlie: Charlie,
    bus: MessageBus,
}

impl Parties {
    fn post(&mut self, messages: Vec<ClassicalMessage>) -> Result<()> {
        messages.into_iter().for_each(|m| self.bus.send(m));
        while let Some(msg) = self.bus.deliver() {
            match msg.recipient {
                PartyId::Alice => self.alice.receive(msg)?,
                PartyId::Bob => self.bob.receive(msg)?,
                PartyId::Charlie => return Err(Error::Protocol("charlie receives no messages".into())),
            }
        }
        Ok(())
    }
}

pub fn run_protocol(
    alice: &AliceState,
    bob: &BobKnownState,
    conv: ChannelSignConvention,
    policy: &OutcomePolicy,
) -> Result<ProtocolTranscript> {
    run_protocol_detailed(alice, bob, conv, policy).map(|r| r.transcript)
}

pub fn run_protocol_detailed(
    alice: &AliceState,
    bob: &BobKnownState,
    conv: ChannelSignConvention,
    policy: &OutcomePolicy,
) -> Result<ProtocolRun> {
    let n = alice.n();
    if bob.n() != n {
        return Err(Error::InvalidParameter(format!("Alice has {n} qubits but Bob has {}", bob.n())));
    }
    if n > MAX_ENUMERATION_N {
        return Err(Error::ResourceBound { n, max: MAX_ENUMERATION_N });
    }
    let forced_bell: Option<Vec<usize>> =
        policy.forced.bell.as_ref().map(|b| b.iter().map(|o| o.index()).collect());
    let forced_amp = policy.forced.amplitude.as_deref().map(zero_based).transpose()?;
    let forced_phase = policy.forced.phase.as_deref().map(zero_based).transpose()?;
    let forced_charlie = policy.forced.charlie.map(|c| [c.value() as usize]);

    let rsp_table = derive_rsp_table(bob, conv)?;
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let mut parties = Parties { alice: Alice::new(), bob: Bob::new(), charlie: Charlie::default(), bus: MessageBus::default() };
    let mut transcript = TranscriptBuilder::new(n, conv, if bob.is_product() { "product" } else { "general" });

    let state = assemble_initial_state(alice, &build_channel(n, conv)?)?;

    let bell = single(step1_alice_bell_measurement(&state, n, mode(forced_bell.as_deref(), &mut rng))?);
    let msg = parties.alice.finish_bell_measurement(bell.outcomes.clone())?;
    transcript.record(
        StepId::BellMeasurement,
        bell.outcomes.iter().map(|o| o.to_string()).collect(),
        bell.probability,
        vec![msg.clone()],
    )?;
    parties.post(vec![msg])?;

    parties.bob.add_ancillas()?;
    let state = step2_introduce_ancillas(&bell.state, n)?;
    transcript.record(StepId::IntroduceAncillas, vec![], 1.0, vec![])?;

    parties.bob.entangle_ancillas()?;
    let state = step3_bob_cnot(&state, n)?;
    transcript.record(StepId::Cnot, vec![], 1.0, vec![])?;

    let amp = single(step4_amplitude_measurement(&state, bob, mode(forced_amp.as_deref(), &mut rng))?);
    let msg = parties.bob.finish_amplitude_measurement(amp.outcomes.clone())?;
    transcript.record(
        StepId::AmplitudeMeasurement,
        amp.outcomes.values.iter().map(usize::to_string).collect(),
        amp.probability,
        vec![msg.clone()],
    )?;
    parties.post(vec![msg])?;

    let phase = single(step5_phase_measurement(&amp.state, bob, &amp.outcomes, mode(forced_phase.as_deref(), &mut rng))?);
    let msg = parties.bob.finish_phase_measurement(phase.outcomes.clone())?;
    transcript.record(
        StepId::PhaseMeasurement,
        phase.outcomes.values.iter().map(usize::to_string).collect(),
        phase.probability,
        vec![msg.clone()],
    )?;
    parties.post(vec![msg])?;

    let charlie = single(step6_charlie_measurement(&phase.state, mode(forced_charlie.as_ref().map(|c| c.as_slice()), &mut rng))?);
    let msgs = parties.charlie.announce(charlie.outcomes)?;
    transcript.record(StepId::CharlieMeasurement, vec![charlie.outcomes.to_string()], charlie.probability, msgs.clone())?;
    parties.post(msgs)?;

    let final_state = charlie.state;
    let teleport_targets = teleport_register(n);
    let rsp_targets = rsp_register(n);

    let teleport_op = parties.bob.teleport_correction()?;
    let rsp_op = match parties.alice.rsp_correction(&rsp_table) {
        Ok(op) => Some(op),
        Err(Error::UncorrectableBranch(_)) => None,
        Err(e) => return Err(e),
    };

    let teleported_uncorrected = extract_subsystem(&final_state, &teleport_targets)?;
    let prepared_uncorrected = extract_subsystem(&final_state, &rsp_targets)?;
    let mut corrected = teleport_op.apply(&final_state, &teleport_targets)?;
    if let Some(op) = &rsp_op {
        corrected = op.apply(&corrected, &rsp_targets)?;
    }
    let teleported = extract_subsystem(&corrected, &teleport_targets)?;
    let prepared = extract_subsystem(&corrected, &rsp_targets)?;
    let teleport_fidelity = fidelity(&teleported, &alice.state())?;
    let rsp_fidelity = fidelity(&prepared, &bob.state())?;

    let transcript = transcript.finish(
        teleport_op.to_string(),
        rsp_op.map(|op| op.to_string()),
        teleport_fidelity,
        rsp_fidelity,
    )?;
    Ok(ProtocolRun { transcript, teleported, prepared, teleported_uncorrected, prepared_uncorrected })
}
