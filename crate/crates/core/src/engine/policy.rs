use crate::assets::{BellOutcome, CharlieBit};
use crate::error::{Error, Result};

/// Outcomes to force, step by step. Unforced steps are sampled.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ForcedOutcomes {
    pub bell: Option<Vec<BellOutcome>>,
    /// 1-based step-4 outcomes.
    pub amplitude: Option<Vec<usize>>,
    /// 1-based step-5 outcomes.
    pub phase: Option<Vec<usize>>,
    pub charlie: Option<CharlieBit>,
}

/// How measurement outcomes are chosen during a run.
///
/// Sampling uses a ChaCha8 generator seeded with `seed`; forced steps ignore it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OutcomePolicy {
    pub seed: u64,
    pub forced: ForcedOutcomes,
}

impl OutcomePolicy {
    pub fn sample(seed: u64) -> Self {
        Self { seed, forced: ForcedOutcomes::default() }
    }

    /// Every step forced.
    pub fn forced(bell: Vec<BellOutcome>, amplitude: Vec<usize>, phase: Vec<usize>, charlie: CharlieBit) -> Self {
        Self {
            seed: 0,
            forced: ForcedOutcomes {
                bell: Some(bell),
                amplitude: Some(amplitude),
                phase: Some(phase),
                charlie: Some(charlie),
            },
        }
    }

    pub fn is_fully_forced(&self) -> bool {
        let f = &self.forced;
        f.bell.is_some() && f.amplitude.is_some() && f.phase.is_some() && f.charlie.is_some()
    }
}

/// 1-based outcomes to zero-based basis indices.
pub(crate) fn zero_based(values: &[usize]) -> Result<Vec<usize>> {
    values
        .iter()
        .map(|v| v.checked_sub(1).ok_or_else(|| Error::InvalidParameter("outcomes are 1-based".into())))
        .collect()
}
