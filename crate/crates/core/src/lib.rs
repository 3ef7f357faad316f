//! Exact computations of Hilbert–Kunz multiplicities in prime characteristic.
//!
//! The crate is organized bottom-up: prime-field and polynomial arithmetic
//! ([`field`], [`monomial`], [`poly`]), a Buchberger engine with length
//! counting ([`groebner`]), finite-q sampling and extrapolation
//! ([`estimator`]), and closed forms with their enumeration oracles
//! ([`stirling`], [`segre`], [`quotient`]).

pub mod error;
pub mod estimator;
pub mod field;
pub mod groebner;
pub mod monomial;
pub mod poly;
pub mod quotient;
pub mod rational;
pub mod segre;
pub mod stirling;

pub use error::{HkError, Result};
