use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group axiom violated: {0}")]
    AxiomViolation(String),
    #[error("group order {0} exceeds the supported maximum of {max}", max = crate::groups::MAX_ORDER)]
    OrderTooLarge(usize),
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("{k} does not divide the group order {order}")]
    NonDivisorOrder { k: usize, order: usize },
    #[error("element index {elem} out of range for a group of order {order}")]
    ElementOutOfRange { elem: usize, order: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("element {0} is not a central involution")]
    NotACentralInvolution(usize),
    #[error("complex conjugation (element {0}) lies in the subgroup")]
    RhoInSubgroup(usize),
    #[error("not a CM type: {0}")]
    NotACMType(String),
    #[error("CM types live on different coset spaces")]
    SpaceMismatch,
    #[error("element {0} does not conjugate the subgroup onto the target")]
    NotAConjugation(usize),
    #[error("g = {0} is outside the supported range (g must not be 1, 2, 3, 4 or 6)")]
    UnsupportedG(usize),
    #[error("factors must share the same group and complex conjugation")]
    FactorMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
