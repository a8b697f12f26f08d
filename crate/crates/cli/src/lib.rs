//! File formats, persistence and the `sumset` command line for
//! [`sumset_core`].
//!
//! - [`format`]: set files (JSON arrays of `"p/q"` strings) and point maps.
//! - [`json`]: the JSON shapes emitted on standard output.
//! - [`store`]: append-only JSON-lines store of search records.
//! - [`cli`]: argument parsing and dispatch.

pub mod cli;
mod error;
pub mod format;
pub mod json;
pub mod store;

pub use crate::cli::run;
pub use crate::error::{CliError, Result};
