//! Dense statevector engine.

mod basis;
mod measure;
mod state;
mod unitary;

pub use basis::OrthonormalBasis;
pub use measure::{measure_subsystem, MeasureMode, MeasurementOutcome};
pub use state::{
    extract_subsystem, fidelity, generic_register, tensor_product, Amplitude, QubitLabel, Role, StateFile, StateVector,
};
pub use unitary::{apply_cnot, apply_unitary, UnitaryMatrix};
