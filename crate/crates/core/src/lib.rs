//! Cyclic presentations of groups: redundancy classification, star graphs,
//! and detection of special presentations.

pub mod acceptance;
pub mod error;
pub mod fixtures;
pub mod freeword;
pub mod presentation;
pub mod search;
pub mod special;
pub mod stargraph;

pub use error::{Error, Result};
pub use freeword::{AlternationClass, Letter, RootDecomposition, SignClass, Word};
pub use presentation::{
    CyclicPresentation, PeriodDecomposition, RedundancyKind, RedundancyReport, Truncation,
};

/// Greatest common divisor with `gcd(a, 0) = a`.
pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
