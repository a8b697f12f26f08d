//! Exact sumset bounds for sets with distinct consecutive differences.
//!
//! Everything here works over exact rationals so that equality of
//! differences is decidable. The crate is `no_std` and only needs `alloc`;
//! file formats, persistence and the command line live in `sumset-cli`.
//!
//! Module map:
//!
//! - [`rational`], [`sets`]: numbers, canonical sorted sets, hypothesis predicates.
//! - [`sumset`]: sumsets, pair and quadruple decoding, block-partition census.
//! - [`sigma`]: existence and construction of gap bijections via max-flow.
//! - [`ruzsa`]: Sidon sets, Eulerian listings and the tightness construction.
//! - [`bounds`]: exact integer verification of the sumset lower bounds.
//! - [`search`]: minimal `|A+A|` over convex integer sets.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
mod error;
mod flow;
pub mod rational;
pub mod ruzsa;
pub mod search;
pub mod sets;
pub mod sigma;
pub mod sumset;

pub use crate::error::{Error, Result};
pub use crate::rational::Rational;
pub use crate::sets::{DiffSeq, PointMap, SortedSet};
pub use crate::sigma::SigmaMap;
