use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::assets::{BellOutcome, CharlieBit};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PartyId {
    Alice,
    Bob,
    Charlie,
}

impl fmt::Display for PartyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PartyId::Alice => "alice",
            PartyId::Bob => "bob",
            PartyId::Charlie => "charlie",
        })
    }
}

/// 1-based outcomes of Bob's amplitude or phase measurements.
///
/// Product mode measures qubit by qubit (`n` values, arity 2); general mode
/// measures the whole block once (a single value, arity `2^n`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Readout {
    pub values: Vec<usize>,
    pub arity: usize,
}

impl Readout {
    pub fn new(values: Vec<usize>, arity: usize) -> Self {
        Self { values, arity }
    }

    /// Classical bits needed to announce the readout.
    pub fn bits(&self) -> usize {
        self.values.len() * self.arity.trailing_zeros() as usize
    }

    pub fn all_ones(&self) -> bool {
        self.values.iter().all(|v| *v == 1)
    }
}

impl fmt::Display for Readout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    BellOutcomes { outcomes: Vec<BellOutcome> },
    AmplitudeOutcomes { readout: Readout },
    PhaseOutcomes { readout: Readout },
    CharlieAnnouncement { bit: CharlieBit },
}

impl Payload {
    pub fn bits(&self) -> usize {
        match self {
            Payload::BellOutcomes { outcomes } => 2 * outcomes.len(),
            Payload::AmplitudeOutcomes { readout } | Payload::PhaseOutcomes { readout } => readout.bits(),
            Payload::CharlieAnnouncement { .. } => 1,
        }
    }

    /// The only sender each payload may come from.
    fn sender(&self) -> PartyId {
        match self {
            Payload::BellOutcomes { .. } => PartyId::Alice,
            Payload::AmplitudeOutcomes { .. } | Payload::PhaseOutcomes { .. } => PartyId::Bob,
            Payload::CharlieAnnouncement { .. } => PartyId::Charlie,
        }
    }

    fn allowed_recipients(&self) -> &'static [PartyId] {
        match self {
            Payload::BellOutcomes { .. } => &[PartyId::Bob],
            Payload::AmplitudeOutcomes { .. } | Payload::PhaseOutcomes { .. } => &[PartyId::Alice],
            Payload::CharlieAnnouncement { .. } => &[PartyId::Alice, PartyId::Bob],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalMessage {
    pub sender: PartyId,
    pub recipient: PartyId,
    pub payload: Payload,
}

impl ClassicalMessage {
    pub fn new(sender: PartyId, recipient: PartyId, payload: Payload) -> Result<Self> {
        if payload.sender() != sender || !payload.allowed_recipients().contains(&recipient) {
            return Err(Error::Protocol(format!("{sender} may not send {payload:?} to {recipient}")));
        }
        Ok(Self { sender, recipient, payload })
    }

    /// One message per allowed recipient.
    pub fn broadcast(sender: PartyId, payload: Payload) -> Result<Vec<Self>> {
        payload.allowed_recipients().iter().map(|r| Self::new(sender, *r, payload.clone())).collect()
    }

    pub fn bits(&self) -> usize {
        self.payload.bits()
    }
}

/// In-process FIFO between the parties; keeps a log of everything sent.
#[derive(Debug, Default)]
pub struct MessageBus {
    queue: VecDeque<ClassicalMessage>,
    log: Vec<ClassicalMessage>,
}

impl MessageBus {
    pub fn send(&mut self, msg: ClassicalMessage) {
        self.log.push(msg.clone());
        self.queue.push_back(msg);
    }

    pub fn deliver(&mut self) -> Option<ClassicalMessage> {
        self.queue.pop_front()
    }

    pub fn log(&self) -> &[ClassicalMessage] {
        &self.log
    }

    pub fn total_bits(&self) -> usize {
        self.log.iter().map(ClassicalMessage::bits).sum()
    }
}
