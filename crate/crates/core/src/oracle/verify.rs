use serde::Serialize;

use super::bruteforce::derive_correction_bruteforce;
use super::enumerate::{forced_leaf, BranchKey};
use crate::assets::{AliceState, BellOutcome, BobKnownState, ChannelSignConvention, CharlieBit, QubitParams};
use crate::correction::{table1_entry, CorrectionOp};
use crate::error::Result;
use crate::quantum::{fidelity, Amplitude};
use crate::tolerance;

#[derive(Debug, Clone, Serialize)]
pub struct Table1Check {
    pub bell: BellOutcome,
    pub charlie: CharlieBit,
    pub table_op: CorrectionOp,
    pub oracle_op: Option<CorrectionOp>,
    pub fidelity: f64,
    pub oracle_matches: bool,
    pub pass: bool,
}

/// Generic single-qubit input with no real-valued symmetry.
pub fn table1_probe_alice() -> AliceState {
    AliceState::new(vec![Amplitude::new(0.36, 0.48), Amplitude::new(-0.64, 0.48)]).expect("normalized probe")
}

fn table1_probe_bob() -> BobKnownState {
    BobKnownState::product(vec![QubitParams::new(0.6, 0.8, 0.7).expect("normalized probe")]).expect("probe")
}

/// Forces every single-pair (Bell, Charlie) row and checks the listed
/// operator against both the target state and the oracle.
pub fn verify_table1(conv: ChannelSignConvention) -> Result<Vec<Table1Check>> {
    let alice = table1_probe_alice();
    let bob = table1_probe_bob();
    let target = alice.state();
    let mut rows = Vec::with_capacity(8);
    for charlie in CharlieBit::ALL {
        for bell in BellOutcome::ALL {
            let key = BranchKey { bell: vec![bell], amplitude: vec![1], phase: vec![1], charlie };
            let leaf = forced_leaf(&alice, &bob, conv, &key)?;
            let table_op = CorrectionOp::new(vec![table1_entry(bell, charlie)]);
            let corrected = table_op.apply(&leaf.teleported, leaf.teleported.labels())?;
            let f = fidelity(&corrected, &target)?;
            let oracle_op = derive_correction_bruteforce(&leaf.teleported, &target);
            let oracle_matches = oracle_op.as_ref().is_some_and(|op| op.equivalent(&table_op));
            let pass = oracle_matches && f >= 1.0 - tolerance::ALGEBRAIC;
            rows.push(Table1Check { bell, charlie, table_op, oracle_op, fidelity: f, oracle_matches, pass });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct ShowcaseReport {
    pub n: usize,
    pub probability: f64,
    pub teleport_deviation: f64,
    pub rsp_deviation: f64,
    pub max_deviation: f64,
    pub pass: bool,
}

/// The all-φ⁺, all-first-outcome, C = 0 branch.
pub fn showcase_key(bob: &BobKnownState) -> BranchKey {
    let n = bob.n();
    let width = if bob.is_product() { n } else { 1 };
    BranchKey {
        bell: vec![BellOutcome::PhiPlus; n],
        amplitude: vec![1; width],
        phase: vec![1; width],
        charlie: CharlieBit::Zero,
    }
}

/// Checks that the showcased branch transfers both states with no correction.
pub fn reproduce_showcase(
    alice: &AliceState,
    bob: &BobKnownState,
    conv: ChannelSignConvention,
) -> Result<ShowcaseReport> {
    let leaf = forced_leaf(alice, bob, conv, &showcase_key(bob))?;
    let teleport_deviation = leaf.teleported.max_deviation_up_to_phase(&alice.state())?;
    let rsp_deviation = leaf.prepared.max_deviation_up_to_phase(&bob.state())?;
    let max_deviation = teleport_deviation.max(rsp_deviation);
    Ok(ShowcaseReport {
        n: alice.n(),
        probability: leaf.probability,
        teleport_deviation,
        rsp_deviation,
        max_deviation,
        pass: max_deviation <= tolerance::ALGEBRAIC,
    })
}
