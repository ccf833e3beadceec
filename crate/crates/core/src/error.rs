use thiserror::Error;

/// Errors raised while building groups, algebras and twisted systems.
///
/// Failed verification is never an error: suites report violations as data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at position {position}: expected {}, found {found}", expected.join(" | "))]
    Parse {
        position: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCap { order: u128, cap: usize },

    #[error("unknown action `{0}`")]
    UnknownAction(String),

    #[error("action is not an automorphism of the kernel factor: {0}")]
    NotAnAutomorphism(String),

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not normal: {g}·{k}·{g}⁻¹ leaves the subgroup")]
    NotNormal { g: String, k: String },

    #[error("group is not abelian")]
    NotAbelian,

    #[error("invalid section: {0}")]
    InvalidSection(String),

    #[error("element belongs to a different algebra or system")]
    Mismatch,

    #[error("system is not split: omega({x},{y}) is not the unit")]
    NotSplit { x: usize, y: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eigenvalue solver did not converge (dimension {dimension})")]
    NonConvergence { dimension: usize },

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
