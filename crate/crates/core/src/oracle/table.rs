//! Correction tables for both directions, with provenance.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::bruteforce::derive_correction_bruteforce;
use super::enumerate::leaves_after_bell;
use crate::assets::{build_channel, AliceState, BellOutcome, BobKnownState, ChannelSignConvention, CharlieBit};
use crate::correction::{table1_entry, CorrectionOp};
use crate::engine::{assemble_initial_state, step1_alice_bell_measurement, Readout, StepMode};
use crate::error::{Error, Result};
use crate::quantum::Amplitude;

/// Largest `n` the oracle will enumerate.
pub const MAX_ENUMERATION_N: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Derived,
    Published,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Teleport,
    Rsp,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TeleportKey {
    pub bell: Vec<BellOutcome>,
    pub charlie: CharlieBit,
}

impl fmt::Display for TeleportKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bell: Vec<&str> = self.bell.iter().map(|b| b.label()).collect();
        write!(f, "bell={};c={}", bell.join(","), self.charlie)
    }
}

/// 1-based amplitude and phase readouts plus Charlie's bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RspKey {
    pub amplitude: Vec<usize>,
    pub phase: Vec<usize>,
    pub charlie: CharlieBit,
}

impl RspKey {
    pub fn new(amplitude: Vec<usize>, phase: Vec<usize>, charlie: CharlieBit) -> Self {
        Self { amplitude, phase, charlie }
    }
}

fn join(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for RspKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "amp={};phase={};c={}", join(&self.amplitude), join(&self.phase), self.charlie)
    }
}

/// Outcome key → correction. `None` marks a branch no signed Pauli product restores.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionTable<K> {
    pub direction: Direction,
    pub provenance: Provenance,
    pub entries: BTreeMap<K, Option<CorrectionOp>>,
}

pub type RspTable = CorrectionTable<RspKey>;
pub type TeleportTable = CorrectionTable<TeleportKey>;

impl<K: Ord> CorrectionTable<K> {
    pub fn get(&self, key: &K) -> Option<&Option<CorrectionOp>> {
        self.entries.get(key)
    }

    pub fn uncorrectable(&self) -> impl Iterator<Item = &K> {
        self.entries.iter().filter(|(_, v)| v.is_none()).map(|(k, _)| k)
    }
}

struct Entries<'a, K>(&'a BTreeMap<K, Option<CorrectionOp>>);

impl<K: fmt::Display> Serialize for Entries<'_, K> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(&k.to_string(), &v.as_ref().map(|op| op.to_string()))?;
        }
        map.end()
    }
}

impl<K: fmt::Display> Serialize for CorrectionTable<K> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("direction", &self.direction)?;
        map.serialize_entry("provenance", &self.provenance)?;
        map.serialize_entry("entries", &Entries(&self.entries))?;
        map.end()
    }
}

/// The eight single-pair rows as published.
pub fn published_table() -> TeleportTable {
    let entries = CharlieBit::ALL
        .into_iter()
        .flat_map(|c| BellOutcome::ALL.into_iter().map(move |b| (b, c)))
        .map(|(b, c)| (TeleportKey { bell: vec![b], charlie: c }, Some(CorrectionOp::new(vec![table1_entry(b, c)]))))
        .collect();
    CorrectionTable { direction: Direction::Teleport, provenance: Provenance::Published, entries }
}

/// Alice's recovery operator for every reachable (amplitude, phase, Charlie) key.
///
/// The prepared register does not depend on Alice's input or Bell outcome, so
/// the table is derived on the all-φ⁺ branch of a `|0…0⟩` Alice.
pub fn derive_rsp_table(bob: &BobKnownState, conv: ChannelSignConvention) -> Result<RspTable> {
    let n = bob.n();
    if n > MAX_ENUMERATION_N {
        return Err(Error::ResourceBound { n, max: MAX_ENUMERATION_N });
    }
    let mut alphas = vec![Amplitude::new(0.0, 0.0); 1 << n];
    alphas[0] = Amplitude::new(1.0, 0.0);
    let alice = AliceState::new(alphas)?;
    let initial = assemble_initial_state(&alice, &build_channel(n, conv)?)?;
    let forced = vec![0; n];
    let bell = step1_alice_bell_measurement(&initial, n, StepMode::Forced(&forced))?.remove(0);
    let target = bob.state();
    let entries = leaves_after_bell(bell, bob)?
        .into_iter()
        .map(|leaf| {
            let key = RspKey::new(leaf.key.amplitude.clone(), leaf.key.phase.clone(), leaf.key.charlie);
            (key, derive_correction_bruteforce(&leaf.prepared, &target))
        })
        .collect();
    Ok(CorrectionTable { direction: Direction::Rsp, provenance: Provenance::Derived, entries })
}

/// Alice's table lookup.
pub fn select_rsp_correction(
    amplitude: &Readout,
    phase: &Readout,
    charlie: CharlieBit,
    table: &RspTable,
) -> Result<CorrectionOp> {
    let key = RspKey::new(amplitude.values.clone(), phase.values.clone(), charlie);
    match table.get(&key) {
        Some(Some(op)) => Ok(op.clone()),
        Some(None) => Err(Error::UncorrectableBranch(key.to_string())),
        None => Err(Error::Protocol(format!("correction table has no entry for {key}"))),
    }
}
