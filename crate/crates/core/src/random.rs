//! Seeded random inputs for the property checks.
//!
//! Every generator is a ChaCha8 stream keyed by `(seed, stream)`; suites
//! use the check index as the stream so each check is reproducible on its
//! own.

use num_complex::Complex64;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dual::UnitaryDual;
use crate::fourier::{GroupFunction, Orientation, SymbolField};
use crate::linalg::CMatrix;

/// The generator used throughout.
pub type Generator = ChaCha8Rng;

/// ChaCha8 keyed by `seed`, stream `stream`.
pub fn rng(seed: u64, stream: u64) -> Generator {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Real and imaginary parts uniform in `[-1, 1)`.
pub fn complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn function<R: Rng + ?Sized>(rng: &mut R, n: usize) -> GroupFunction {
    GroupFunction::from_fn(n, |_| complex(rng))
}

/// A random function rescaled to unit norm.
pub fn unit_function<R: Rng + ?Sized>(rng: &mut R, n: usize) -> GroupFunction {
    loop {
        let u = function(rng, n);
        let norm = u.norm();
        if norm > 1e-3 {
            return u.scale(Complex64::new(1.0 / norm, 0.0));
        }
    }
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex(rng))
}

pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let m = matrix(rng, n, n);
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

pub fn symbol<R: Rng + ?Sized>(rng: &mut R, dual: &UnitaryDual, orientation: Orientation) -> SymbolField {
    SymbolField::from_fn(dual, orientation, |xi, _| matrix(rng, dual.dim(xi), dual.dim(xi)))
}

/// Blocks `M·M*`, so every block is positive semidefinite.
pub fn positive_symbol<R: Rng + ?Sized>(rng: &mut R, dual: &UnitaryDual) -> SymbolField {
    SymbolField::from_fn(dual, Orientation::DualFirst, |xi, _| {
        let m = matrix(rng, dual.dim(xi), dual.dim(xi));
        &m * m.adjoint()
    })
}

/// Blocks with `F(X)* = F(X)`.
pub fn self_adjoint_symbol<R: Rng + ?Sized>(rng: &mut R, dual: &UnitaryDual) -> SymbolField {
    SymbolField::from_fn(dual, Orientation::DualFirst, |xi, _| hermitian(rng, dual.dim(xi)))
}

/// Uniform real in `[lo, hi)`.
pub fn scale<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}
