//! File formats, verification suites and command-line plumbing on top of
//! `bq-core`.

pub mod cli;
pub mod compute;
pub mod error;
pub mod formats;
pub mod suite;

pub use error::{BqError, Result};
