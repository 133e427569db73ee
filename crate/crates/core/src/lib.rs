//! Exact computations around Springer isomorphisms: root systems and their
//! primes, integer lattices, the D4 unipotent Lie algebra, matrix groups over
//! finite commutative rings and explicit type-A Springer maps.
//!
//! Generic code is written against [`scalar::Arith`]; the aliases below are
//! the concrete scalar types used throughout.

#![allow(clippy::needless_range_loop)]

pub mod d4cheval;
pub mod intlinalg;
pub mod linalg;
pub mod matrings;
pub mod primes;
pub mod report;
pub mod rootdata;
pub mod scalar;
pub mod springer;
pub mod suites;

/// Exact rationals.
pub type Q = num_rational::BigRational;
pub type F3 = scalar::Fp<3>;
pub type F5 = scalar::Fp<5>;
pub type F7 = scalar::Fp<7>;
