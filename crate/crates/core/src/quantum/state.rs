//! Dense statevector over an ordered, labelled qubit register.
//!
//! Amplitudes are indexed big-endian: the first qubit of the register is the
//! most significant bit of the basis-state index.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance;

pub type Amplitude = Complex64;

/// Which party-group a qubit belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    /// Alice's input qubits `a_k`.
    AliceInput,
    /// Alice's channel qubits `A_k`.
    AliceChannel,
    /// Bob's channel qubits `B_k`.
    BobChannel,
    /// Bob's ancillas `e_k`.
    Ancilla,
    /// Charlie's control qubit.
    Charlie,
    /// Bob's known input register `b_k` (only used when his state is shown standalone).
    BobInput,
    /// Anonymous qubits, e.g. states read from a file.
    Generic,
}

impl Role {
    fn prefix(self) -> &'static str {
        match self {
            Role::AliceInput => "a",
            Role::AliceChannel => "A",
            Role::BobChannel => "B",
            Role::Ancilla => "e",
            Role::Charlie => "C",
            Role::BobInput => "b",
            Role::Generic => "q",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitLabel {
    pub role: Role,
    pub index: usize,
}

impl QubitLabel {
    pub const fn new(role: Role, index: usize) -> Self {
        Self { role, index }
    }
    pub const fn a(k: usize) -> Self {
        Self::new(Role::AliceInput, k)
    }
    #[allow(non_snake_case)]
    pub const fn A(k: usize) -> Self {
        Self::new(Role::AliceChannel, k)
    }
    #[allow(non_snake_case)]
    pub const fn B(k: usize) -> Self {
        Self::new(Role::BobChannel, k)
    }
    pub const fn e(k: usize) -> Self {
        Self::new(Role::Ancilla, k)
    }
    pub const fn b(k: usize) -> Self {
        Self::new(Role::BobInput, k)
    }
    #[allow(non_snake_case)]
    pub const fn C() -> Self {
        Self::new(Role::Charlie, 0)
    }
    pub const fn q(k: usize) -> Self {
        Self::new(Role::Generic, k)
    }
}

impl fmt::Display for QubitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.role {
            Role::Charlie => f.write_str("C"),
            role => write!(f, "{}{}", role.prefix(), self.index),
        }
    }
}

/// Labels `q0..q{m-1}`.
pub fn generic_register(m: usize) -> Vec<QubitLabel> {
    (0..m).map(QubitLabel::q).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    labels: Vec<QubitLabel>,
    amps: Vec<Amplitude>,
}

impl StateVector {
    /// Builds a state, checking register uniqueness, length, finiteness and
    /// normalization (within the conservation tolerance).
    pub fn new(labels: Vec<QubitLabel>, amps: Vec<Amplitude>) -> Result<Self> {
        Self::with_tolerance(labels, amps, tolerance::CONSERVATION)
    }

    /// Like [`StateVector::new`] but accepts a looser normalization bound and
    /// renormalizes exactly afterwards.
    pub fn with_tolerance(labels: Vec<QubitLabel>, mut amps: Vec<Amplitude>, tol: f64) -> Result<Self> {
        check_register(&labels)?;
        let dim = 1usize << labels.len();
        if amps.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: amps.len() });
        }
        if let Some(index) = amps.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm_sqr });
        }
        if norm_sqr != 1.0 {
            let scale = norm_sqr.sqrt().recip();
            amps.iter_mut().for_each(|a| *a *= scale);
        }
        Ok(Self { labels, amps })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub(crate) fn from_unnormalized(labels: Vec<QubitLabel>, mut amps: Vec<Amplitude>) -> Self {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        debug_assert!(norm > 0.0);
        amps.iter_mut().for_each(|a| *a /= norm);
        Self { labels, amps }
    }

    /// Computational basis state `|index⟩`.
    pub fn basis_state(labels: Vec<QubitLabel>, index: usize) -> Result<Self> {
        check_register(&labels)?;
        let dim = 1usize << labels.len();
        if index >= dim {
            return Err(Error::DimensionMismatch { expected: dim, found: index });
        }
        let mut amps = vec![Amplitude::new(0.0, 0.0); dim];
        amps[index] = Amplitude::new(1.0, 0.0);
        Ok(Self { labels, amps })
    }

    /// `|0…0⟩` over the given register.
    pub fn zeros(labels: Vec<QubitLabel>) -> Result<Self> {
        Self::basis_state(labels, 0)
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[QubitLabel] {
        &self.labels
    }

    pub fn amps(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Same amplitudes over a different register of equal size.
    pub fn relabel(mut self, labels: Vec<QubitLabel>) -> Result<Self> {
        check_register(&labels)?;
        if labels.len() != self.labels.len() {
            return Err(Error::DimensionMismatch { expected: self.labels.len(), found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn position(&self, label: QubitLabel) -> Result<usize> {
        self.labels.iter().position(|l| *l == label).ok_or(Error::UnknownQubit(label))
    }

    /// Bit mask of `label` within a basis-state index.
    pub(crate) fn mask(&self, label: QubitLabel) -> Result<usize> {
        let pos = self.position(label)?;
        Ok(1usize << (self.num_qubits() - 1 - pos))
    }

    /// `⟨self|other⟩`, amplitudes only.
    pub fn inner(&self, other: &StateVector) -> Result<Amplitude> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::DimensionMismatch { expected: self.num_qubits(), found: other.num_qubits() });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    /// Copy rotated so that the first amplitude with modulus above the zero
    /// cutoff is real and positive.
    pub fn phase_normalized(&self) -> StateVector {
        let mut out = self.clone();
        if let Some(first) = out.amps.iter().find(|a| a.norm() > tolerance::ZERO_PROBABILITY.sqrt()) {
            let phase = first.conj() / first.norm();
            out.amps.iter_mut().for_each(|a| *a *= phase);
        }
        out
    }

    /// Largest elementwise deviation after removing global phase from both.
    pub fn max_deviation_up_to_phase(&self, other: &StateVector) -> Result<f64> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::DimensionMismatch { expected: self.num_qubits(), found: other.num_qubits() });
        }
        let a = self.phase_normalized();
        let b = other.phase_normalized();
        Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max))
    }
}

fn check_register(labels: &[QubitLabel]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::DuplicateQubit(*l));
        }
    }
    Ok(())
}

/// `a ⊗ b`; the result register is `a`'s labels followed by `b`'s.
pub fn tensor_product(a: &StateVector, b: &StateVector) -> Result<StateVector> {
    let mut labels = a.labels.clone();
    labels.extend_from_slice(&b.labels);
    check_register(&labels)?;
    let mut amps = Vec::with_capacity(a.dim() * b.dim());
    for x in &a.amps {
        amps.extend(b.amps.iter().map(|y| x * y));
    }
    Ok(StateVector { labels, amps })
}

/// `|⟨a|b⟩|²`. Labels are ignored; only the qubit counts must agree.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}

/// Splits basis indices into (selected subsystem index, rest index) given the
/// register positions of the selected qubits, in selection order.
pub(crate) struct Split {
    sel_bits: Vec<usize>,
    rest_bits: Vec<usize>,
}

impl Split {
    pub(crate) fn new(state: &StateVector, qubits: &[QubitLabel]) -> Result<Self> {
        check_register(qubits)?;
        let m = state.num_qubits();
        let mut sel_bits = Vec::with_capacity(qubits.len());
        for q in qubits {
            sel_bits.push(m - 1 - state.position(*q)?);
        }
        let rest_bits = (0..m)
            .map(|pos| m - 1 - pos)
            .filter(|bit| !sel_bits.contains(bit))
            .collect();
        Ok(Self { sel_bits, rest_bits })
    }

    pub(crate) fn sel_dim(&self) -> usize {
        1 << self.sel_bits.len()
    }

    pub(crate) fn rest_dim(&self) -> usize {
        1 << self.rest_bits.len()
    }

    /// Full register index for subsystem index `sel` and remainder index `rest`.
    pub(crate) fn join(&self, sel: usize, rest: usize) -> usize {
        scatter(sel, &self.sel_bits) | scatter(rest, &self.rest_bits)
    }
}

/// Places bit `i` of `value` (counting from the most significant of
/// `bits.len()`) onto register bit `bits[i]`.
fn scatter(value: usize, bits: &[usize]) -> usize {
    let k = bits.len();
    bits.iter()
        .enumerate()
        .filter(|(i, _)| value >> (k - 1 - i) & 1 == 1)
        .fold(0, |acc, (_, bit)| acc | 1 << bit)
}

/// Extracts the pure state of `qubits` when the register factorizes as
/// `(qubits) ⊗ (rest)`. The returned state is phase-normalized.
pub fn extract_subsystem(state: &StateVector, qubits: &[QubitLabel]) -> Result<StateVector> {
    let split = Split::new(state, qubits)?;
    let (sd, rd) = (split.sel_dim(), split.rest_dim());
    let column = |r: usize| -> Vec<Amplitude> { (0..sd).map(|s| state.amps[split.join(s, r)]).collect() };

    let best = (0..rd)
        .max_by(|&x, &y| {
            let nx: f64 = column(x).iter().map(|a| a.norm_sqr()).sum();
            let ny: f64 = column(y).iter().map(|a| a.norm_sqr()).sum();
            nx.total_cmp(&ny)
        })
        .unwrap_or(0);
    let mut psi = column(best);
    let norm = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    psi.iter_mut().for_each(|a| *a /= norm);

    let mut residual = 0.0;
    for r in 0..rd {
        let col = column(r);
        let overlap: Amplitude = psi.iter().zip(&col).map(|(p, c)| p.conj() * c).sum();
        residual += psi.iter().zip(&col).map(|(p, c)| (c - p * overlap).norm_sqr()).sum::<f64>();
    }
    let residual = residual.sqrt();
    if residual > tolerance::ALGEBRAIC {
        return Err(Error::NotSeparable { residual });
    }
    Ok(StateVector { labels: qubits.to_vec(), amps: psi }.phase_normalized())
}

/// On-disk representation: `{"num_qubits": m, "amps": [[re, im], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub num_qubits: usize,
    pub amps: Vec<[f64; 2]>,
}

impl From<&StateVector> for StateFile {
    fn from(s: &StateVector) -> Self {
        Self { num_qubits: s.num_qubits(), amps: s.amps.iter().map(|a| [a.re, a.im]).collect() }
    }
}

impl StateFile {
    /// Validates and converts into a state over a generic `q0..` register.
    pub fn into_state(self) -> Result<StateVector> {
        let amps = self.amps.into_iter().map(|[re, im]| Amplitude::new(re, im)).collect();
        StateVector::with_tolerance(generic_register(self.num_qubits), amps, tolerance::FILE_NORMALIZATION)
    }
}

impl StateVector {
    pub fn to_json(&self) -> String {
        crate::json::to_canonical_string(&StateFile::from(self))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(text)?;
        file.into_state()
    }
}
