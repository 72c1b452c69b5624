use serde::Serialize;

use super::messages::{ClassicalMessage, PartyId};
use crate::assets::ChannelSignConvention;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepId {
    BellMeasurement = 1,
    IntroduceAncillas = 2,
    Cnot = 3,
    AmplitudeMeasurement = 4,
    PhaseMeasurement = 5,
    CharlieMeasurement = 6,
}

impl StepId {
    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn party(self) -> PartyId {
        match self {
            StepId::BellMeasurement => PartyId::Alice,
            StepId::CharlieMeasurement => PartyId::Charlie,
            _ => PartyId::Bob,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StepRecord {
    pub step: u8,
    pub name: StepId,
    pub party: PartyId,
    pub outcomes: Vec<String>,
    pub probability: f64,
    pub messages: Vec<ClassicalMessage>,
}

/// Result of one protocol run. Only [`TranscriptBuilder`] makes these, and it
/// refuses steps out of order.
#[derive(Debug, Clone, Serialize)]
pub struct ProtocolTranscript {
    n: usize,
    convention: ChannelSignConvention,
    bob_mode: &'static str,
    steps: Vec<StepRecord>,
    joint_probability: f64,
    teleport_correction: String,
    rsp_correction: Option<String>,
    teleport_fidelity: f64,
    rsp_fidelity: f64,
    classical_bits: usize,
}

impl ProtocolTranscript {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn convention(&self) -> ChannelSignConvention {
        self.convention
    }
    pub fn steps(&self) -> &[StepRecord] {
        &self.steps
    }
    pub fn joint_probability(&self) -> f64 {
        self.joint_probability
    }
    pub fn teleport_correction(&self) -> &str {
        &self.teleport_correction
    }
    /// `None` when the branch has no signed-Pauli recovery.
    pub fn rsp_correction(&self) -> Option<&str> {
        self.rsp_correction.as_deref()
    }
    pub fn teleport_fidelity(&self) -> f64 {
        self.teleport_fidelity
    }
    pub fn rsp_fidelity(&self) -> f64 {
        self.rsp_fidelity
    }
    /// Bits actually carried by classical messages in this run.
    pub fn classical_bits(&self) -> usize {
        self.classical_bits
    }
}

#[derive(Debug)]
pub struct TranscriptBuilder {
    n: usize,
    convention: ChannelSignConvention,
    bob_mode: &'static str,
    steps: Vec<StepRecord>,
}

impl TranscriptBuilder {
    pub fn new(n: usize, convention: ChannelSignConvention, bob_mode: &'static str) -> Self {
        Self { n, convention, bob_mode, steps: Vec::with_capacity(6) }
    }

    pub fn record(
        &mut self,
        step: StepId,
        outcomes: Vec<String>,
        probability: f64,
        messages: Vec<ClassicalMessage>,
    ) -> Result<()> {
        let expected = self.steps.len() as u8 + 1;
        if step.number() != expected {
            return Err(Error::Protocol(format!("step {} recorded where step {expected} was due", step.number())));
        }
        self.steps.push(StepRecord { step: step.number(), name: step, party: step.party(), outcomes, probability, messages });
        Ok(())
    }

    pub fn finish(
        self,
        teleport_correction: String,
        rsp_correction: Option<String>,
        teleport_fidelity: f64,
        rsp_fidelity: f64,
    ) -> Result<ProtocolTranscript> {
        if self.steps.len() != 6 {
            return Err(Error::Protocol(format!("transcript has {} of 6 steps", self.steps.len())));
        }
        let joint_probability = self.steps.iter().map(|s| s.probability).product();
        let classical_bits = self.steps.iter().flat_map(|s| &s.messages).map(ClassicalMessage::bits).sum();
        Ok(ProtocolTranscript {
            n: self.n,
            convention: self.convention,
            bob_mode: self.bob_mode,
            steps: self.steps,
            joint_probability,
            teleport_correction,
            rsp_correction,
            teleport_fidelity,
            rsp_fidelity,
            classical_bits,
        })
    }
}
