//! Matrices over small finite commutative rings.
//!
//! Rings are built at runtime from a specification string (see [`parse`]),
//! elements are `u32` indices whose base-`p` digits are `F_p`-coordinates.

pub mod centralizer;
pub mod checks;
pub mod group;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod regular;
pub mod ring;

use thiserror::Error;

pub use group::{Flavor, GroupElement, LieFlavor};
pub use parse::{format_matrix, make_ring, parse_elem, parse_matrix};
pub use ring::{Elem, Ring, RingAuto};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("ring of size {0} exceeds the supported limit")]
    TooLarge(u64),
    #[error("factors of a product must share the characteristic")]
    MixedCharacteristic,
    #[error("matrix is not invertible over the ring")]
    NotInvertible,
    #[error("determinant is not 1")]
    NotSpecial,
    #[error("{0} requires the ring to be a field")]
    NeedsField(&'static str),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("enumeration needs {needed} candidates, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("unsupported: {0}")]
    Unsupported(String),
}
