//! Alice's unknown state and Bob's known state.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{tensor_product, Amplitude, QubitLabel, StateVector};
use crate::tolerance;

/// Alice's `n`-qubit state `Σ α_i |i⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct AliceState {
    n: usize,
    alphas: Vec<Amplitude>,
}

impl AliceState {
    pub fn new(alphas: Vec<Amplitude>) -> Result<Self> {
        Self::with_tolerance(alphas, tolerance::CONSERVATION)
    }

    fn with_tolerance(alphas: Vec<Amplitude>, tol: f64) -> Result<Self> {
        let dim = alphas.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("Alice needs 2^n coefficients with n ≥ 1, got {dim}")));
        }
        let labels = (1..=dim.trailing_zeros() as usize).map(QubitLabel::a).collect();
        let state = StateVector::with_tolerance(labels, alphas, tol)?;
        Ok(Self { n: state.num_qubits(), alphas: state.amps().to_vec() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphas(&self) -> &[Amplitude] {
        &self.alphas
    }

    /// The literal state over `a_1 … a_n`.
    pub fn state(&self) -> StateVector {
        let labels = (1..=self.n).map(QubitLabel::a).collect();
        StateVector::new(labels, self.alphas.clone()).expect("validated on construction")
    }

    /// Normalized complex Gaussian vector, deterministic in `seed`.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw: Vec<Amplitude> = (0..1usize << n)
            .map(|_| Amplitude::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        Self::new(raw.into_iter().map(|a| a / norm).collect())
    }
}

/// Per-qubit parameters `(β₀, β₁, θ)`: the qubit is `β₀|0⟩ + β₁e^{iθ}|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitParams {
    pub beta0: f64,
    pub beta1: f64,
    pub theta: f64,
}

impl QubitParams {
    pub fn new(beta0: f64, beta1: f64, theta: f64) -> Result<Self> {
        Self::checked(beta0, beta1, theta, tolerance::CONSERVATION)
    }

    fn checked(beta0: f64, beta1: f64, theta: f64, tol: f64) -> Result<Self> {
        if !(beta0.is_finite() && beta1.is_finite() && theta.is_finite()) {
            return Err(Error::InvalidParameter("qubit parameters must be finite".into()));
        }
        if beta0 < 0.0 || beta1 < 0.0 {
            return Err(Error::InvalidParameter(format!("β must be non-negative, got ({beta0}, {beta1})")));
        }
        let norm_sqr = beta0 * beta0 + beta1 * beta1;
        if (norm_sqr - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm_sqr });
        }
        let norm = norm_sqr.sqrt();
        Ok(Self { beta0: beta0 / norm, beta1: beta1 / norm, theta })
    }

    fn state(&self, label: QubitLabel) -> StateVector {
        let amps = vec![Amplitude::new(self.beta0, 0.0), Amplitude::from_polar(self.beta1, self.theta)];
        StateVector::new(vec![label], amps).expect("validated on construction")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BobMode {
    /// Product of independently parameterized qubits; qubit 1 is most significant.
    Product(Vec<QubitParams>),
    /// Arbitrary `Σ β_j e^{iθ_j} |j⟩` with `θ₀ = 0`.
    General { betas: Vec<f64>, thetas: Vec<f64> },
}

/// Bob's known `n`-qubit state.
#[derive(Debug, Clone, PartialEq)]
pub struct BobKnownState {
    n: usize,
    mode: BobMode,
}

impl BobKnownState {
    pub fn product(qubits: Vec<QubitParams>) -> Result<Self> {
        if qubits.is_empty() {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        Ok(Self { n: qubits.len(), mode: BobMode::Product(qubits) })
    }

    pub fn general(betas: Vec<f64>, thetas: Vec<f64>) -> Result<Self> {
        Self::general_with_tolerance(betas, thetas, tolerance::CONSERVATION)
    }

    fn general_with_tolerance(mut betas: Vec<f64>, thetas: Vec<f64>, tol: f64) -> Result<Self> {
        let dim = betas.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidParameter(format!("Bob needs 2^n magnitudes with n ≥ 1, got {dim}")));
        }
        if thetas.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: thetas.len() });
        }
        if betas.iter().chain(&thetas).any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("Bob's parameters must be finite".into()));
        }
        if betas.iter().any(|b| *b < 0.0) {
            return Err(Error::InvalidParameter("β must be non-negative".into()));
        }
        if thetas[0] != 0.0 {
            return Err(Error::InvalidParameter(format!("θ₀ must be 0, got {}", thetas[0])));
        }
        let norm_sqr: f64 = betas.iter().map(|b| b * b).sum();
        if (norm_sqr - 1.0).abs() > tol {
            return Err(Error::NotNormalized { norm_sqr });
        }
        let norm = norm_sqr.sqrt();
        betas.iter_mut().for_each(|b| *b /= norm);
        Ok(Self { n: dim.trailing_zeros() as usize, mode: BobMode::General { betas, thetas } })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> &BobMode {
        &self.mode
    }

    pub fn is_product(&self) -> bool {
        matches!(self.mode, BobMode::Product(_))
    }

    /// The literal state over `b_1 … b_n`.
    pub fn state(&self) -> StateVector {
        match &self.mode {
            BobMode::Product(qubits) => {
                let mut iter = qubits.iter().enumerate().map(|(k, q)| q.state(QubitLabel::b(k + 1)));
                let first = iter.next().expect("at least one qubit");
                iter.fold(first, |acc, s| tensor_product(&acc, &s).expect("distinct labels"))
            }
            BobMode::General { betas, thetas } => {
                let labels = (1..=self.n).map(QubitLabel::b).collect();
                let amps = betas.iter().zip(thetas).map(|(b, t)| Amplitude::from_polar(*b, *t)).collect();
                StateVector::new(labels, amps).expect("validated on construction")
            }
        }
    }

    /// Per-qubit `(cos ξ, sin ξ, θ)` with `ξ ∈ [0, π/2]`, `θ ∈ [0, 2π)`.
    pub fn random_product(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qubits = (0..n)
            .map(|_| {
                let xi: f64 = rng.random_range(0.0..=FRAC_PI_2);
                let theta: f64 = rng.random_range(0.0..(2.0 * PI));
                QubitParams::new(xi.cos(), xi.sin(), theta)
            })
            .collect::<Result<_>>()?;
        Self::product(qubits)
    }

    /// Gaussian magnitudes and uniform phases (θ₀ = 0).
    pub fn random_general(n: usize, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = 1usize << n;
        let raw: Vec<f64> = (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal).abs()).collect();
        let norm = raw.iter().map(|b| b * b).sum::<f64>().sqrt();
        let mut thetas: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..(2.0 * PI))).collect();
        thetas[0] = 0.0;
        Self::general(raw.into_iter().map(|b| b / norm).collect(), thetas)
    }
}

// ---- JSON input files ----

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AliceFile {
    pub n: usize,
    pub alphas: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum BobModeFile {
    Product { qubits: Vec<QubitParams> },
    General { betas: Vec<f64>, thetas: Vec<f64> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BobFile {
    pub n: usize,
    #[serde(flatten)]
    pub mode: BobModeFile,
}

/// `{"alice": {...}, "bob": {...}}`; either key may be absent.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct InputFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alice: Option<AliceFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bob: Option<BobFile>,
}

impl TryFrom<AliceFile> for AliceState {
    type Error = Error;

    fn try_from(f: AliceFile) -> Result<Self> {
        let alphas: Vec<Amplitude> = f.alphas.iter().map(|[re, im]| Amplitude::new(*re, *im)).collect();
        let expected = 1usize.checked_shl(f.n as u32).unwrap_or(0);
        if alphas.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: alphas.len() });
        }
        AliceState::with_tolerance(alphas, tolerance::FILE_NORMALIZATION)
    }
}

impl From<&AliceState> for AliceFile {
    fn from(a: &AliceState) -> Self {
        Self { n: a.n, alphas: a.alphas.iter().map(|c| [c.re, c.im]).collect() }
    }
}

impl TryFrom<BobFile> for BobKnownState {
    type Error = Error;

    fn try_from(f: BobFile) -> Result<Self> {
        let state = match f.mode {
            BobModeFile::Product { qubits } => {
                let qubits = qubits
                    .into_iter()
                    .map(|q| QubitParams::checked(q.beta0, q.beta1, q.theta, tolerance::FILE_NORMALIZATION))
                    .collect::<Result<Vec<_>>>()?;
                BobKnownState::product(qubits)?
            }
            BobModeFile::General { betas, thetas } => {
                BobKnownState::general_with_tolerance(betas, thetas, tolerance::FILE_NORMALIZATION)?
            }
        };
        if state.n != f.n {
            return Err(Error::DimensionMismatch { expected: f.n, found: state.n });
        }
        Ok(state)
    }
}

impl From<&BobKnownState> for BobFile {
    fn from(b: &BobKnownState) -> Self {
        let mode = match &b.mode {
            BobMode::Product(qubits) => BobModeFile::Product { qubits: qubits.clone() },
            BobMode::General { betas, thetas } => BobModeFile::General { betas: betas.clone(), thetas: thetas.clone() },
        };
        Self { n: b.n, mode }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AliceDoc {
    Wrapped { alice: AliceFile },
    Bare(AliceFile),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BobDoc {
    Wrapped { bob: BobFile },
    Bare(BobFile),
}

impl AliceState {
    /// Accepts either a bare Alice object or a combined input document.
    pub fn from_json(text: &str) -> Result<Self> {
        let file = match serde_json::from_str::<AliceDoc>(text)? {
            AliceDoc::Wrapped { alice } | AliceDoc::Bare(alice) => alice,
        };
        file.try_into()
    }
}

impl BobKnownState {
    /// Accepts either a bare Bob object or a combined input document.
    pub fn from_json(text: &str) -> Result<Self> {
        let file = match serde_json::from_str::<BobDoc>(text)? {
            BobDoc::Wrapped { bob } | BobDoc::Bare(bob) => bob,
        };
        file.try_into()
    }
}
