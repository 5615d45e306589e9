//! Finite-bound partition equinumerosity.
//!
//! For n, k, d, m ≥ 1 the classes A(n,k,d,m) and B(n,k,d,m) (see
//! [`classes`]) have the same size. This crate checks that three ways:
//! by enumerating both classes, by an explicit weight-preserving bijection
//! between them ([`bijection`]), and by comparing the product formulas whose
//! coefficients count them ([`qseries`]).

pub mod bijection;
pub mod classes;
pub mod error;
pub mod partition;
pub mod qseries;

pub use bijection::{phi, phi_inverse, verify_bijection, BijectionCheck, BijectionTrace, Direction};
pub use classes::{
    count_a, count_b, enumerate_a, enumerate_b, enumerate_partitions, is_in_a, is_in_b, Budget,
    ClassParams,
};
pub use error::{Error, Result};
pub use partition::Partition;
pub use qseries::TruncatedSeries;
