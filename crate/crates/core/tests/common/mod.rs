#![allow(dead_code)]

use bq_core::dual::{build_dual, UnitaryDual};
use bq_core::group::{build_group, FiniteGroup, GroupSpec};

pub fn setup(spec: &str) -> (FiniteGroup, UnitaryDual) {
    let g = build_group(&spec.parse::<GroupSpec>().unwrap(), 64).unwrap();
    let d = build_dual(&g).unwrap();
    (g, d)
}

/// Small groups cheap enough for per-case property tests.
pub const SMALL: &[&str] = &["Z1", "Z2", "Z4", "Z2xZ2", "S3", "D4", "Q8", "Z6"];

pub fn pick(i: usize) -> (FiniteGroup, UnitaryDual) {
    setup(SMALL[i % SMALL.len()])
}
