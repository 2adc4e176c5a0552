use thiserror::Error;

/// Errors surfaced by the kernel.
///
/// Violated *theorem conclusions* are not errors: those are kernel defects
/// and panic via internal assertions. Errors cover bad inputs, violated
/// preconditions and exceeded bounds.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group order {order} exceeds the configured bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("subgroup is not normal in the chosen overgroup")]
    NotNormal,
    #[error("expected a group of prime-power order, found order {order}")]
    NotPGroup { order: usize },
    #[error("expected an abelian subgroup")]
    NotAbelian,
    #[error("an odd prime is required here, got 2")]
    EvenPrime,
    #[error("not a p-subgroup of the ambient group")]
    NotPSubgroup,
    #[error("subgroup is not a Sylow p-subgroup of the required overgroup")]
    SylowMismatch,
    #[error("intersection is empty")]
    EmptyIntersection,
    #[error("hypothesis failed: {clause}")]
    Hypothesis { clause: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn hypothesis(clause: impl Into<String>) -> Self {
        Error::Hypothesis { clause: clause.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
