//! Party state machines. Each party only acts in its own phase order and
//! only decides corrections from messages it has actually received.

use super::messages::{ClassicalMessage, Payload, PartyId, Readout};
use crate::assets::{BellOutcome, CharlieBit};
use crate::correction::{select_teleport_correction, CorrectionOp};
use crate::error::{Error, Result};
use crate::oracle::{select_rsp_correction, RspTable};

fn out_of_order(party: PartyId, action: &str, phase: impl std::fmt::Debug) -> Error {
    Error::Protocol(format!("{party} cannot {action} while {phase:?}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlicePhase {
    Holding,
    BellMeasured,
    Corrected,
}

#[derive(Debug)]
pub struct Alice {
    phase: AlicePhase,
    amplitude: Option<Readout>,
    phase_readout: Option<Readout>,
    charlie: Option<CharlieBit>,
}

impl Alice {
    pub fn new() -> Self {
        Self { phase: AlicePhase::Holding, amplitude: None, phase_readout: None, charlie: None }
    }

    pub fn phase(&self) -> AlicePhase {
        self.phase
    }

    /// Records her Bell outcomes and produces the message for Bob.
    pub fn finish_bell_measurement(&mut self, outcomes: Vec<BellOutcome>) -> Result<ClassicalMessage> {
        if self.phase != AlicePhase::Holding {
            return Err(out_of_order(PartyId::Alice, "measure", self.phase));
        }
        self.phase = AlicePhase::BellMeasured;
        ClassicalMessage::new(PartyId::Alice, PartyId::Bob, Payload::BellOutcomes { outcomes })
    }

    pub fn receive(&mut self, msg: ClassicalMessage) -> Result<()> {
        if msg.recipient != PartyId::Alice {
            return Err(Error::Protocol(format!("message for {} delivered to alice", msg.recipient)));
        }
        match msg.payload {
            Payload::AmplitudeOutcomes { readout } => self.amplitude = Some(readout),
            Payload::PhaseOutcomes { readout } => self.phase_readout = Some(readout),
            Payload::CharlieAnnouncement { bit } => self.charlie = Some(bit),
            other => return Err(Error::Protocol(format!("alice cannot accept {other:?}"))),
        }
        Ok(())
    }

    /// Looks up her recovery operator for `A_{n+1} … A_{2n}`.
    pub fn rsp_correction(&mut self, table: &RspTable) -> Result<CorrectionOp> {
        if self.phase != AlicePhase::BellMeasured {
            return Err(out_of_order(PartyId::Alice, "correct", self.phase));
        }
        let (Some(amp), Some(ph), Some(c)) = (&self.amplitude, &self.phase_readout, self.charlie) else {
            return Err(Error::Protocol("alice is missing Bob's readouts or Charlie's announcement".into()));
        };
        self.phase = AlicePhase::Corrected;
        select_rsp_correction(amp, ph, c, table)
    }
}

impl Default for Alice {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BobPhase {
    Holding,
    AncillasAdded,
    Entangled,
    AmplitudeMeasured,
    PhaseMeasured,
    Corrected,
}

#[derive(Debug)]
pub struct Bob {
    phase: BobPhase,
    bell: Option<Vec<BellOutcome>>,
    charlie: Option<CharlieBit>,
}

impl Bob {
    pub fn new() -> Self {
        Self { phase: BobPhase::Holding, bell: None, charlie: None }
    }

    pub fn phase(&self) -> BobPhase {
        self.phase
    }

    fn advance(&mut self, from: BobPhase, to: BobPhase, action: &str) -> Result<()> {
        if self.phase != from {
            return Err(out_of_order(PartyId::Bob, action, self.phase));
        }
        self.phase = to;
        Ok(())
    }

    pub fn add_ancillas(&mut self) -> Result<()> {
        self.advance(BobPhase::Holding, BobPhase::AncillasAdded, "add ancillas")
    }

    pub fn entangle_ancillas(&mut self) -> Result<()> {
        self.advance(BobPhase::AncillasAdded, BobPhase::Entangled, "apply CNOTs")
    }

    pub fn finish_amplitude_measurement(&mut self, readout: Readout) -> Result<ClassicalMessage> {
        self.advance(BobPhase::Entangled, BobPhase::AmplitudeMeasured, "measure amplitudes")?;
        ClassicalMessage::new(PartyId::Bob, PartyId::Alice, Payload::AmplitudeOutcomes { readout })
    }

    pub fn finish_phase_measurement(&mut self, readout: Readout) -> Result<ClassicalMessage> {
        self.advance(BobPhase::AmplitudeMeasured, BobPhase::PhaseMeasured, "measure phases")?;
        ClassicalMessage::new(PartyId::Bob, PartyId::Alice, Payload::PhaseOutcomes { readout })
    }

    pub fn receive(&mut self, msg: ClassicalMessage) -> Result<()> {
        if msg.recipient != PartyId::Bob {
            return Err(Error::Protocol(format!("message for {} delivered to bob", msg.recipient)));
        }
        match msg.payload {
            Payload::BellOutcomes { outcomes } => self.bell = Some(outcomes),
            Payload::CharlieAnnouncement { bit } => self.charlie = Some(bit),
            other => return Err(Error::Protocol(format!("bob cannot accept {other:?}"))),
        }
        Ok(())
    }

    /// Table lookup for `B_1 … B_n` from Alice's and Charlie's announcements.
    pub fn teleport_correction(&mut self) -> Result<CorrectionOp> {
        let (Some(bell), Some(c)) = (&self.bell, self.charlie) else {
            return Err(Error::Protocol("bob is missing Alice's outcomes or Charlie's announcement".into()));
        };
        let op = select_teleport_correction(bell, c);
        self.advance(BobPhase::PhaseMeasured, BobPhase::Corrected, "correct")?;
        Ok(op)
    }
}

impl Default for Bob {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Default)]
pub struct Charlie {
    announced: Option<CharlieBit>,
}

impl Charlie {
    pub fn announce(&mut self, bit: CharlieBit) -> Result<Vec<ClassicalMessage>> {
        if self.announced.is_some() {
            return Err(Error::Protocol("charlie measures exactly once".into()));
        }
        self.announced = Some(bit);
        ClassicalMessage::broadcast(PartyId::Charlie, Payload::CharlieAnnouncement { bit })
    }
}
