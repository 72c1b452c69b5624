//! Exhaustive branch enumeration.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::bruteforce::derive_correction_bruteforce;
use super::table::MAX_ENUMERATION_N;
use crate::assets::{build_channel, AliceState, BellOutcome, BobKnownState, ChannelSignConvention, CharlieBit};
use crate::correction::{select_teleport_correction, CorrectionOp};
use crate::engine::{
    assemble_initial_state, rsp_register, step1_alice_bell_measurement, step2_introduce_ancillas, step3_bob_cnot,
    step4_amplitude_measurement, step5_phase_measurement, step6_charlie_measurement, teleport_register, Branch,
    StepMode,
};
use crate::error::{Error, Result};
use crate::quantum::{extract_subsystem, fidelity, StateVector};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BranchKey {
    pub bell: Vec<BellOutcome>,
    /// 1-based.
    pub amplitude: Vec<usize>,
    /// 1-based.
    pub phase: Vec<usize>,
    pub charlie: CharlieBit,
}

impl fmt::Display for BranchKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let bell: Vec<&str> = self.bell.iter().map(|b| b.label()).collect();
        write!(f, "bell={};amp={};phase={};c={}", bell.join(","), join(&self.amplitude), join(&self.phase), self.charlie)
    }
}

/// One complete branch before any correction.
#[derive(Debug, Clone)]
pub struct Leaf {
    pub key: BranchKey,
    /// Joint probability of the whole outcome assignment.
    pub probability: f64,
    /// `B_1 … B_n`, phase-normalized.
    pub teleported: StateVector,
    /// `A_{n+1} … A_{2n}`, phase-normalized.
    pub prepared: StateVector,
}

/// Expands steps 2–6 below a fixed step-1 branch.
pub(crate) fn leaves_after_bell(bell: Branch<Vec<BellOutcome>>, bob: &BobKnownState) -> Result<Vec<Leaf>> {
    let n = bob.n();
    let state = step3_bob_cnot(&step2_introduce_ancillas(&bell.state, n)?, n)?;
    let mut leaves = Vec::new();
    for amp in step4_amplitude_measurement(&state, bob, StepMode::Enumerate)? {
        for phase in step5_phase_measurement(&amp.state, bob, &amp.outcomes, StepMode::Enumerate)? {
            for charlie in step6_charlie_measurement(&phase.state, StepMode::Enumerate)? {
                leaves.push(Leaf {
                    key: BranchKey {
                        bell: bell.outcomes.clone(),
                        amplitude: amp.outcomes.values.clone(),
                        phase: phase.outcomes.values.clone(),
                        charlie: charlie.outcomes,
                    },
                    probability: bell.probability * amp.probability * phase.probability * charlie.probability,
                    teleported: extract_subsystem(&charlie.state, &teleport_register(n))?,
                    prepared: extract_subsystem(&charlie.state, &rsp_register(n))?,
                });
            }
        }
    }
    Ok(leaves)
}

fn check_sizes(alice: &AliceState, bob: &BobKnownState) -> Result<usize> {
    let n = alice.n();
    if bob.n() != n {
        return Err(Error::InvalidParameter(format!("Alice has {n} qubits but Bob has {}", bob.n())));
    }
    if n > MAX_ENUMERATION_N {
        return Err(Error::ResourceBound { n, max: MAX_ENUMERATION_N });
    }
    Ok(n)
}

/// Every nonzero-probability leaf, sorted by key.
pub fn enumerate_leaves(alice: &AliceState, bob: &BobKnownState, conv: ChannelSignConvention) -> Result<Vec<Leaf>> {
    let n = check_sizes(alice, bob)?;
    let initial = assemble_initial_state(alice, &build_channel(n, conv)?)?;
    let bells = step1_alice_bell_measurement(&initial, n, StepMode::Enumerate)?;
    let nested: Vec<Vec<Leaf>> = bells.into_par_iter().map(|b| leaves_after_bell(b, bob)).collect::<Result<_>>()?;
    let mut leaves: Vec<Leaf> = nested.into_iter().flatten().collect();
    leaves.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(leaves)
}

/// The single leaf for a fully specified outcome assignment.
pub fn forced_leaf(alice: &AliceState, bob: &BobKnownState, conv: ChannelSignConvention, key: &BranchKey) -> Result<Leaf> {
    let n = check_sizes(alice, bob)?;
    let initial = assemble_initial_state(alice, &build_channel(n, conv)?)?;
    let bell_idx: Vec<usize> = key.bell.iter().map(|b| b.index()).collect();
    let bell = step1_alice_bell_measurement(&initial, n, StepMode::Forced(&bell_idx))?.remove(0);
    let state = step3_bob_cnot(&step2_introduce_ancillas(&bell.state, n)?, n)?;
    let zero_based = |v: &[usize]| -> Result<Vec<usize>> {
        v.iter().map(|x| x.checked_sub(1).ok_or_else(|| Error::InvalidParameter("outcomes are 1-based".into()))).collect()
    };
    let amp_idx = zero_based(&key.amplitude)?;
    let amp = step4_amplitude_measurement(&state, bob, StepMode::Forced(&amp_idx))?.remove(0);
    let phase_idx = zero_based(&key.phase)?;
    let phase = step5_phase_measurement(&amp.state, bob, &amp.outcomes, StepMode::Forced(&phase_idx))?.remove(0);
    let charlie = step6_charlie_measurement(&phase.state, StepMode::Forced(&[key.charlie.value() as usize]))?.remove(0);
    Ok(Leaf {
        key: key.clone(),
        probability: bell.probability * amp.probability * phase.probability * charlie.probability,
        teleported: extract_subsystem(&charlie.state, &teleport_register(n))?,
        prepared: extract_subsystem(&charlie.state, &rsp_register(n))?,
    })
}

fn corrected_fidelity(state: &StateVector, op: Option<&CorrectionOp>, target: &StateVector) -> Result<f64> {
    match op {
        Some(op) => fidelity(&op.apply(state, state.labels())?, target),
        None => fidelity(state, target),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchReport {
    pub key: BranchKey,
    pub probability: f64,
    /// Oracle-derived recovery for Bob's register.
    pub teleport_correction: Option<CorrectionOp>,
    /// Oracle-derived recovery for Alice's register.
    pub rsp_correction: Option<CorrectionOp>,
    /// What the lookup table prescribes for Bob.
    pub table_teleport_correction: CorrectionOp,
    pub teleport_fidelity: f64,
    pub rsp_fidelity: f64,
    pub table_teleport_fidelity: f64,
}

fn report(leaf: &Leaf, alice_state: &StateVector, bob_state: &StateVector) -> Result<BranchReport> {
    let teleport = derive_correction_bruteforce(&leaf.teleported, alice_state);
    let rsp = derive_correction_bruteforce(&leaf.prepared, bob_state);
    let table = select_teleport_correction(&leaf.key.bell, leaf.key.charlie);
    Ok(BranchReport {
        key: leaf.key.clone(),
        probability: leaf.probability,
        teleport_fidelity: corrected_fidelity(&leaf.teleported, teleport.as_ref(), alice_state)?,
        rsp_fidelity: corrected_fidelity(&leaf.prepared, rsp.as_ref(), bob_state)?,
        table_teleport_fidelity: corrected_fidelity(&leaf.teleported, Some(&table), alice_state)?,
        teleport_correction: teleport,
        rsp_correction: rsp,
        table_teleport_correction: table,
    })
}

/// Per-branch oracle verdicts over the whole outcome tree.
pub fn enumerate_all_branches(
    alice: &AliceState,
    bob: &BobKnownState,
    conv: ChannelSignConvention,
) -> Result<Vec<BranchReport>> {
    let leaves = enumerate_leaves(alice, bob, conv)?;
    let (a, b) = (alice.state(), bob.state());
    leaves.par_iter().map(|leaf| report(leaf, &a, &b)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerationSummary {
    pub branches: usize,
    pub total_probability: f64,
    pub min_teleport_fidelity: f64,
    pub max_teleport_fidelity: f64,
    pub min_rsp_fidelity: f64,
    pub max_rsp_fidelity: f64,
    pub min_table_teleport_fidelity: f64,
    pub uncorrectable_teleport: usize,
    pub uncorrectable_rsp: usize,
}

impl EnumerationSummary {
    pub fn from_reports(reports: &[BranchReport]) -> Self {
        let min = |f: fn(&BranchReport) -> f64| reports.iter().map(f).fold(f64::INFINITY, f64::min);
        let max = |f: fn(&BranchReport) -> f64| reports.iter().map(f).fold(f64::NEG_INFINITY, f64::max);
        Self {
            branches: reports.len(),
            total_probability: reports.iter().map(|r| r.probability).sum(),
            min_teleport_fidelity: min(|r| r.teleport_fidelity),
            max_teleport_fidelity: max(|r| r.teleport_fidelity),
            min_rsp_fidelity: min(|r| r.rsp_fidelity),
            max_rsp_fidelity: max(|r| r.rsp_fidelity),
            min_table_teleport_fidelity: min(|r| r.table_teleport_fidelity),
            uncorrectable_teleport: reports.iter().filter(|r| r.teleport_correction.is_none()).count(),
            uncorrectable_rsp: reports.iter().filter(|r| r.rsp_correction.is_none()).count(),
        }
    }

    /// Every branch restored in both directions within `tol`.
    pub fn all_restored(&self, tol: f64) -> bool {
        self.min_teleport_fidelity >= 1.0 - tol && self.min_rsp_fidelity >= 1.0 - tol
    }
}

/// Mean teleport fidelity when Bob ignores Charlie and always corrects as if
/// the announced bit were `guess`.
pub fn controller_guess_fidelity(
    alice: &AliceState,
    bob: &BobKnownState,
    conv: ChannelSignConvention,
    guess: CharlieBit,
) -> Result<f64> {
    let target = alice.state();
    enumerate_leaves(alice, bob, conv)?
        .iter()
        .map(|leaf| {
            let op = select_teleport_correction(&leaf.key.bell, guess);
            Ok(leaf.probability * corrected_fidelity(&leaf.teleported, Some(&op), &target)?)
        })
        .sum()
}
