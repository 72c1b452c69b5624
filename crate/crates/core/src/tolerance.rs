//! Numerical tolerances shared by the simulator, the engine and the oracle.

/// Conservation laws: normalization, probability completeness.
pub const CONSERVATION: f64 = 1e-12;

/// Algebraic identities: unitarity, orthonormality, fidelity = 1, separability.
pub const ALGEBRAIC: f64 = 1e-10;

/// Outcomes below this probability are treated as impossible.
pub const ZERO_PROBABILITY: f64 = 1e-14;

/// Normalization slack accepted when reading JSON input files.
pub const FILE_NORMALIZATION: f64 = 1e-9;
