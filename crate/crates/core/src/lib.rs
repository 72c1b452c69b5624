//! Simulator and brute-force verifier for controlled bidirectional hybrid
//! teleportation and remote state preparation over a `4n + 1` qubit channel.

pub mod assets;
pub mod correction;
pub mod efficiency;
pub mod engine;
pub mod error;
pub mod json;
pub mod oracle;
pub mod quantum;
pub mod tolerance;

pub use assets::{AliceState, BellOutcome, BobKnownState, ChannelSignConvention, CharlieBit, QubitParams};
pub use correction::{select_teleport_correction, CorrectionOp, Pauli, SignedPauli};
pub use efficiency::{efficiency, efficiency_with_transcript, EfficiencyReport};
pub use engine::{run_protocol, run_protocol_detailed, OutcomePolicy, ProtocolRun, ProtocolTranscript};
pub use error::{Error, Result};
pub use quantum::{Amplitude, QubitLabel, StateVector};
