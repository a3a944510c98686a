//! Numeric decomposition of the right regular representation, used as an
//! oracle independent of the irrep catalogs.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dual::{character_distance, Irrep, UnitaryDual, CHARACTER_MATCH_TOL};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{self, CMatrix};
use crate::random;

/// Fresh seeds tried before giving up.
pub const EXTRACTION_ATTEMPTS: u64 = 8;
/// Eigenvalues closer than this (relative to the spectral scale) are one cluster.
pub const CLUSTER_GAP: f64 = 1e-7;

/// Splits `R(x)u(y) = u(yx)` into irreducible blocks using seeded random
/// Hermitian matrices averaged over the group, then keeps one block per
/// character.
pub fn extract_irreps_numeric(g: &FiniteGroup, seed: u64) -> Result<UnitaryDual> {
    for attempt in 0..EXTRACTION_ATTEMPTS {
        let mut rng = random::rng(seed, attempt);
        if let Some(irreps) = try_extract(g, &mut rng) {
            return Ok(UnitaryDual::new(g.order(), irreps));
        }
    }
    Err(Error::ExtractionFailed(EXTRACTION_ATTEMPTS as usize))
}

/// `V^* R(x) V` for every `x`, where the columns of `V` span an invariant subspace.
fn restrict(g: &FiniteGroup, v: &CMatrix) -> Vec<CMatrix> {
    let n = g.order();
    g.elements()
        .map(|x| {
            let shifted = CMatrix::from_fn(n, v.ncols(), |y, c| v[(g.mul(y, x), c)]);
            v.adjoint() * shifted
        })
        .collect()
}

fn try_extract(g: &FiniteGroup, rng: &mut rand_chacha::ChaCha8Rng) -> Option<Vec<Irrep>> {
    let n = g.order();
    let mut found: Vec<(Vec<CMatrix>, Vec<Complex64>)> = Vec::new();
    let mut pending = alloc::vec![linalg::identity(n)];
    let complete =
        |found: &[(Vec<CMatrix>, Vec<Complex64>)]| found.iter().map(|(m, _)| m[0].nrows().pow(2)).sum::<usize>() == n;

    while let Some(v) = pending.pop() {
        if complete(&found) {
            break;
        }
        let reps = restrict(g, &v);
        let chi: Vec<Complex64> = reps.iter().map(linalg::trace).collect();
        let norm = chi.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
        if (norm - 1.0).abs() < 1e-6 {
            if !found.iter().any(|(_, c)| character_distance(c, &chi) < CHARACTER_MATCH_TOL) {
                found.push((reps, chi));
            }
            continue;
        }
        let m = v.ncols();
        let h = random::hermitian(rng, m);
        let mut avg = linalg::zeros(m, m);
        for r in &reps {
            avg += r * &h * r.adjoint();
        }
        avg /= Complex64::new(n as f64, 0.0);
        let (values, vectors) = linalg::hermitian_eigen(&avg);
        let scale = values.iter().fold(1.0f64, |a, v| a.max(v.abs()));
        let mut start = 0;
        let mut clusters = Vec::new();
        for i in 1..=m {
            if i == m || values[i] - values[i - 1] > CLUSTER_GAP * scale {
                clusters.push(start..i);
                start = i;
            }
        }
        if clusters.len() == 1 {
            return None;
        }
        for c in clusters {
            pending.push(&v * vectors.columns(c.start, c.len()));
        }
    }
    if !complete(&found) {
        return None;
    }
    let mut irreps: Vec<Irrep> = found.into_iter().map(|(mats, _)| Irrep::new("", mats)).collect();
    // Trivial irrep first, then by dimension.
    let is_trivial = |r: &Irrep| r.dim == 1 && r.matrices.iter().all(|m| (m[(0, 0)] - linalg::ONE).norm() < 1e-8);
    irreps.sort_by_key(|r| (r.dim, !is_trivial(r)));
    for (i, r) in irreps.iter_mut().enumerate() {
        r.label = format!("numeric{i}");
    }
    Some(irreps)
}
