//! Error types shared by the core modules.

use crate::ring::AxiomViolation;

#[derive(Debug, thiserror::Error)]
pub enum RingError {
    #[error("ring order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("resulting order {order} exceeds the limit {limit}")]
    OrderTooLarge { order: u64, limit: u64 },
    #[error("malformed tables: expected {expected} entries, add has {add}, mul has {mul}")]
    MalformedTables {
        expected: usize,
        add: usize,
        mul: usize,
    },
    #[error("element index {index} out of range for ring of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("axiom violation: {0}")]
    Axiom(AxiomViolation),
    #[error("element {0} is not a unit")]
    NotAUnit(usize),
    #[error("multiplier (element {index}) is not central in the base ring")]
    NonCentralMultiplier { index: usize },
    #[error("modulus polynomial must be monic of degree at least 1")]
    NonMonicModulus,
    #[error("ideal is improper: it contains the identity")]
    ImproperIdeal,
    #[error("subset is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("matrix arity must be at least 1, got {0}")]
    BadArity(usize),
    #[error("export refused: order {order} exceeds the export limit {limit}")]
    ExportTooLarge { order: usize, limit: usize },
    #[error("no built-in field of order {0} (supported: 2, 3, 4, 5, 7, 8, 9)")]
    UnsupportedField(usize),
    #[error("construction cross-check failed: {0}")]
    ConstructionMismatch(String),
}
