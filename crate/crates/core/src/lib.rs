//! Positive Berezin-type quantization on finite groups.
//!
//! Haar measure on `G` is counting measure, the Plancherel weight of an
//! irrep `ξ` is `d_ξ/|G|`, and phase space `X = Ĝ × G` carries
//! `μ(ξ, x) = d_ξ/|G|`.

#![no_std]
extern crate alloc;

pub mod bargmann;
pub mod berezin;
pub mod dual;
pub mod error;
pub mod extract;
pub mod fourier;
pub mod group;
pub mod linalg;
pub mod pseudodiff;
pub mod random;
pub mod report;
pub mod weyl;

pub use error::{Error, Result};
