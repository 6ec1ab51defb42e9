//! Constraint-synthesis library for IEEE 754 floating-point arithmetic:
//! a rank-1 constraint system builder over the BN254 scalar field with
//! witness generation, nondeterministic hints, LogUp-style lookup tables,
//! and gadgets for bounded integers and binary32/binary64 floats.
//!
//! There is no prover here. Circuits are built, witnesses are generated
//! eagerly, and `finalize` judges satisfiability directly — a checker for
//! circuit construction, not a proof system.

pub mod cs;
pub mod field;
pub mod gadgets;
pub mod lookup;

pub use cs::{dump_witness, export_stats, ConstraintSystem, Lc, Mode, Report, Stats, Tamper, Variable};
pub use field::Fr;
pub use gadgets::float::{FloatParams, FloatVar};
pub use gadgets::int::Tables;
pub use lookup::TableId;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("variable {index} is not allocated in this system")]
    UnallocatedVariable { index: u32 },
    #[error("hint `{0}` is not registered")]
    UnknownHint(String),
    #[error("hint `{hint}` arity mismatch: expected {expected} outputs, got {got}")]
    HintArity {
        hint: String,
        expected: usize,
        got: usize,
    },
    #[error("hint `{hint}` failed: {msg}")]
    HintFailed { hint: String, msg: String },
    #[error("lookup table `{table}` has width {expected}, query has width {got}")]
    WidthMismatch {
        table: String,
        expected: usize,
        got: usize,
    },
    #[error("unknown lookup table id {0}")]
    UnknownTable(usize),
    #[error("system is finalized and immutable")]
    Finalized,
    #[error("bit width {bits} exceeds what the field can represent soundly")]
    BitWidthTooLarge { bits: u32 },
}
