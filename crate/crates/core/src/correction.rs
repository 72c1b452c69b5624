//! Signed Pauli-product recovery operators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::assets::{BellOutcome, CharlieBit};
use crate::error::{Error, Result};
use crate::quantum::{apply_unitary, Amplitude, QubitLabel, StateVector, UnitaryMatrix};

/// Unsigned single-qubit factor. `XZ` is the matrix product `X·Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Z,
    XZ,
}

impl Pauli {
    /// Search order used by the correction oracle.
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Z, Pauli::XZ];

    pub fn matrix(self) -> UnitaryMatrix {
        match self {
            Pauli::I => UnitaryMatrix::identity(2),
            Pauli::X => UnitaryMatrix::pauli_x(),
            Pauli::Z => UnitaryMatrix::pauli_z(),
            Pauli::XZ => UnitaryMatrix::pauli_x().matmul(&UnitaryMatrix::pauli_z()).expect("2x2"),
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Z => "Z",
            Pauli::XZ => "XZ",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedPauli {
    pub negative: bool,
    pub pauli: Pauli,
}

impl SignedPauli {
    pub const fn plus(pauli: Pauli) -> Self {
        Self { negative: false, pauli }
    }

    pub const fn minus(pauli: Pauli) -> Self {
        Self { negative: true, pauli }
    }

    pub fn matrix(self) -> UnitaryMatrix {
        let m = self.pauli.matrix();
        if self.negative {
            m.scaled(Amplitude::new(-1.0, 0.0))
        } else {
            m
        }
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        f.write_str(self.pauli.symbol())
    }
}

impl FromStr for SignedPauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let pauli = Pauli::ALL
            .into_iter()
            .find(|p| p.symbol() == body)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown Pauli factor {s:?}")))?;
        Ok(Self { negative, pauli })
    }
}

/// Tensor product of signed single-qubit factors, one per target qubit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CorrectionOp {
    factors: Vec<SignedPauli>,
}

impl CorrectionOp {
    pub fn new(factors: Vec<SignedPauli>) -> Self {
        Self { factors }
    }

    pub fn identity(m: usize) -> Self {
        Self::new(vec![SignedPauli::plus(Pauli::I); m])
    }

    pub fn unsigned(paulis: &[Pauli]) -> Self {
        Self::new(paulis.iter().copied().map(SignedPauli::plus).collect())
    }

    pub fn factors(&self) -> &[SignedPauli] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Full `2^m × 2^m` matrix, signs included.
    pub fn matrix(&self) -> UnitaryMatrix {
        self.factors.iter().fold(UnitaryMatrix::identity(1), |acc, f| acc.kron(&f.matrix()))
    }

    /// Applies factor `k` to `targets[k]`.
    pub fn apply(&self, state: &StateVector, targets: &[QubitLabel]) -> Result<StateVector> {
        if targets.len() != self.factors.len() {
            return Err(Error::DimensionMismatch { expected: self.factors.len(), found: targets.len() });
        }
        self.factors.iter().zip(targets).try_fold(state.clone(), |s, (f, t)| apply_unitary(&s, &[*t], &f.matrix()))
    }

    /// Equal as operators up to a global phase.
    pub fn equivalent(&self, other: &CorrectionOp) -> bool {
        self.len() == other.len() && self.factors.iter().zip(&other.factors).all(|(a, b)| a.pauli == b.pauli)
    }
}

impl fmt::Display for CorrectionOp {
    /// Single factors print bare (`-XZ`); in products, negative factors are
    /// parenthesized (`(-XZ)⊗I`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [only] = self.factors.as_slice() {
            return write!(f, "{only}");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("⊗")?;
            }
            if factor.negative {
                write!(f, "({factor})")?;
            } else {
                write!(f, "{factor}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for CorrectionOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let factors = s.split('⊗').map(str::parse).collect::<Result<Vec<_>>>()?;
        if factors.is_empty() {
            return Err(Error::InvalidParameter("empty correction".into()));
        }
        Ok(Self::new(factors))
    }
}

impl Serialize for CorrectionOp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CorrectionOp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Bob's recovery operator for one Bell pair given Charlie's bit.
pub fn table1_entry(bell: BellOutcome, charlie: CharlieBit) -> SignedPauli {
    use BellOutcome::*;
    use CharlieBit::*;
    match (bell, charlie) {
        (PhiPlus, Zero) => SignedPauli::plus(Pauli::I),
        (PhiMinus, Zero) => SignedPauli::plus(Pauli::Z),
        (PsiPlus, Zero) => SignedPauli::plus(Pauli::X),
        (PsiMinus, Zero) => SignedPauli::minus(Pauli::XZ),
        (PhiPlus, One) => SignedPauli::minus(Pauli::XZ),
        (PhiMinus, One) => SignedPauli::plus(Pauli::X),
        (PsiPlus, One) => SignedPauli::minus(Pauli::Z),
        (PsiMinus, One) => SignedPauli::minus(Pauli::I),
    }
}

/// Tensor product of per-pair table entries, ordered to act on `B_1 … B_n`.
pub fn select_teleport_correction(bell_outcomes: &[BellOutcome], charlie: CharlieBit) -> CorrectionOp {
    CorrectionOp::new(bell_outcomes.iter().map(|b| table1_entry(*b, charlie)).collect())
}
