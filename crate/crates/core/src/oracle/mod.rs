//! Brute-force verification independent of the engine's lookup tables.

mod bruteforce;
mod enumerate;
mod table;
mod verify;

pub use bruteforce::derive_correction_bruteforce;
pub use enumerate::{
    controller_guess_fidelity, enumerate_all_branches, enumerate_leaves, forced_leaf, BranchKey, BranchReport,
    EnumerationSummary, Leaf,
};
pub use table::{
    derive_rsp_table, published_table, select_rsp_correction, CorrectionTable, Direction, Provenance, RspKey, RspTable,
    TeleportKey, TeleportTable, MAX_ENUMERATION_N,
};
pub use verify::{reproduce_showcase, showcase_key, table1_probe_alice, verify_table1, ShowcaseReport, Table1Check};
