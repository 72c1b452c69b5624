//! The six-step protocol: party state machines, classical messages and
//! corrections over the shared simulated state.

mod messages;
mod parties;
mod policy;
mod run;
mod steps;
mod transcript;

pub use messages::{ClassicalMessage, MessageBus, PartyId, Payload, Readout};
pub use parties::{Alice, AlicePhase, Bob, BobPhase, Charlie};
pub use policy::{ForcedOutcomes, OutcomePolicy};
pub use run::{run_protocol, run_protocol_detailed, ProtocolRun};
pub use steps::{
    assemble_initial_state, rsp_register, step1_alice_bell_measurement, step2_introduce_ancillas, step3_bob_cnot,
    step4_amplitude_measurement, step5_phase_measurement, step6_charlie_measurement, teleport_register, Branch,
    StepMode,
};
pub use transcript::{ProtocolTranscript, StepId, StepRecord, TranscriptBuilder};
