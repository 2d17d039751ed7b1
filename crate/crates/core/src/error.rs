use crate::integer::Nat;

/// Errors reported by the solver and its supporting machinery.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(Nat),
    #[error("{0} is not a quadratic residue mod {1}")]
    NonResidue(Nat, Nat),
    #[error("power-of-two modulus 2^{0} exceeds the supported bound 2^6")]
    TwoPowerTooLarge(u32),
    #[error("factorization effort exhausted, unfactored part {0}")]
    FactorEffortExceeded(Nat),
}

pub type Result<T> = std::result::Result<T, Error>;
