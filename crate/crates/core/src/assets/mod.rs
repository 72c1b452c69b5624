//! Inputs, channel and measurement bases of the protocol.

mod bases;
mod channel;
mod inputs;
mod outcomes;

pub use bases::{amplitude_basis, amplitude_basis_general, bell_basis, phase_basis, phase_basis_general};
pub use channel::{build_channel, channel_register, minus_pair};
pub use inputs::{AliceFile, AliceState, BobFile, BobKnownState, BobMode, BobModeFile, InputFile, QubitParams};
pub use outcomes::{BellOutcome, ChannelSignConvention, CharlieBit};
