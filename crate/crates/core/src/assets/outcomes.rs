use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outcome of a Bell-pair measurement, in `bell_basis` vector order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BellOutcome {
    #[serde(rename = "phi+")]
    PhiPlus,
    #[serde(rename = "phi-")]
    PhiMinus,
    #[serde(rename = "psi+")]
    PsiPlus,
    #[serde(rename = "psi-")]
    PsiMinus,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [Self::PhiPlus, Self::PhiMinus, Self::PsiPlus, Self::PsiMinus];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::PhiPlus => "phi+",
            Self::PhiMinus => "phi-",
            Self::PsiPlus => "psi+",
            Self::PsiMinus => "psi-",
        }
    }
}

impl fmt::Display for BellOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for BellOutcome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|o| o.label() == s.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown Bell outcome {s:?} (expected phi+, phi-, psi+, psi-)")))
    }
}

/// Charlie's computational-basis result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum CharlieBit {
    Zero,
    One,
}

impl CharlieBit {
    pub const ALL: [CharlieBit; 2] = [Self::Zero, Self::One];

    pub fn value(self) -> u8 {
        self as u8
    }
}

impl From<CharlieBit> for u8 {
    fn from(b: CharlieBit) -> u8 {
        b.value()
    }
}

impl TryFrom<u8> for CharlieBit {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            0 => Ok(Self::Zero),
            1 => Ok(Self::One),
            _ => Err(Error::InvalidParameter(format!("Charlie bit must be 0 or 1, got {v}"))),
        }
    }
}

impl fmt::Display for CharlieBit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Which two-qubit state pairs the channel's C = 1 branch.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelSignConvention {
    /// (|01⟩ − |10⟩)/√2
    #[default]
    Singlet,
    /// (|00⟩ − |11⟩)/√2
    PhiMinus,
}

impl fmt::Display for ChannelSignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Singlet => "singlet",
            Self::PhiMinus => "phiminus",
        })
    }
}

impl FromStr for ChannelSignConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "singlet" => Ok(Self::Singlet),
            "phiminus" => Ok(Self::PhiMinus),
            _ => Err(Error::InvalidParameter(format!("unknown convention {s:?} (expected singlet or phiminus)"))),
        }
    }
}
