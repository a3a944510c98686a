//! The Bargmann transform `𝔚_ω`, its adjoint, the reproducing projection
//! `𝔓_ω` and Toeplitz operators on phase space.
//!
//! Phase-space fields are flattened to vectors of length `|G|²` in the order
//! `ξ` outer, `x` middle, block entries row-major inner, each coordinate
//! scaled by `√μ(ξ,x)`. The pairing then becomes the standard inner product,
//! so adjoints and Hermiticity below are plain matrix properties.

use alloc::vec::Vec;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::berezin::{berezin_weak, coherent_state};
use crate::dual::UnitaryDual;
use crate::error::{Error, Result};
use crate::fourier::{GroupFunction, Orientation, SymbolField};
use crate::group::FiniteGroup;
use crate::linalg::{self, CMatrix, ZERO};
use crate::weyl::fourier_wigner;

/// A dual-first field viewed as a vector of `B^{2,2}(X)`.
pub type PhaseSpaceVector = SymbolField;

/// Relative tolerance for accepting a window as unit.
pub const UNIT_WINDOW_TOL: f64 = 1e-10;
/// Eigenvalues of `𝔓_ω` above this count towards its rank.
pub const RANK_THRESHOLD: f64 = 0.5;

/// What to do with a window that is not of unit norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WindowMode {
    /// Reject it with [`Error::WindowNotUnit`].
    #[default]
    RequireUnit,
    /// Rescale it to unit norm.
    Normalize,
}

/// Returns the window to use under `mode`; a zero window is always an error.
pub fn prepare_window(omega: &GroupFunction, mode: WindowMode) -> Result<GroupFunction> {
    let norm = omega.norm();
    if norm == 0.0 {
        return Err(Error::ZeroWindow);
    }
    match mode {
        WindowMode::RequireUnit if (norm - 1.0).abs() > UNIT_WINDOW_TOL => Err(Error::WindowNotUnit(norm)),
        WindowMode::RequireUnit => Ok(omega.clone()),
        WindowMode::Normalize => Ok(omega.scale(Complex64::new(1.0 / norm, 0.0))),
    }
}

/// Start of each `ξ` section in the flattened vector.
fn offsets(dims: &[usize], n: usize) -> Vec<usize> {
    let mut acc = 0;
    dims.iter()
        .map(|d| {
            let o = acc;
            acc += n * d * d;
            o
        })
        .collect()
}

/// Length of the flattened vector, `Σ_ξ |G|·d_ξ² = |G|²`.
pub fn phase_space_dim(dual: &UnitaryDual) -> usize {
    dual.group_order() * dual.dimension_sum()
}

#[inline]
fn coord(offsets: &[usize], dims: &[usize], xi: usize, x: usize, a: usize, b: usize) -> usize {
    let d = dims[xi];
    offsets[xi] + x * d * d + a * d + b
}

pub fn flatten(f: &PhaseSpaceVector) -> Result<DVector<Complex64>> {
    f.require(Orientation::DualFirst)?;
    let n = f.group_order();
    let mut v = DVector::from_element(n * f.dims().iter().map(|d| d * d).sum::<usize>(), ZERO);
    let offs = offsets(f.dims(), n);
    for (xi, x, block) in f.iter() {
        let s = f.weight(xi).sqrt();
        let d = f.dims()[xi];
        for a in 0..d {
            for b in 0..d {
                v[coord(&offs, f.dims(), xi, x, a, b)] = block[(a, b)] * s;
            }
        }
    }
    Ok(v)
}

pub fn unflatten(dual: &UnitaryDual, v: &DVector<Complex64>) -> Result<PhaseSpaceVector> {
    if v.len() != phase_space_dim(dual) {
        return Err(Error::ShapeMismatch(alloc::format!(
            "vector of length {}, phase space has dimension {}",
            v.len(),
            phase_space_dim(dual)
        )));
    }
    let dims = dual.dims();
    let offs = offsets(&dims, dual.group_order());
    Ok(SymbolField::from_fn(dual, Orientation::DualFirst, |xi, x| {
        let d = dims[xi];
        let s = 1.0 / dual.weight(xi).sqrt();
        CMatrix::from_fn(d, d, |a, b| v[coord(&offs, &dims, xi, x, a, b)] * s)
    }))
}

/// `𝔚_ω(u)(X) = 𝔚_{u,ω}(X)`
pub fn bargmann(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    u: &GroupFunction,
) -> Result<PhaseSpaceVector> {
    fourier_wigner(g, dual, u, omega)
}

/// `[𝔚_ω†(F)](z) = Σ_X μ(X)·Tr[F(X)·Ω(X)(z)]`
pub fn bargmann_adjoint(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    f: &PhaseSpaceVector,
) -> Result<GroupFunction> {
    f.require(Orientation::DualFirst)?;
    f.check_dual(dual)?;
    omega.check_len(g.order())?;
    let mut out = alloc::vec![ZERO; g.order()];
    for (xi, x, block) in f.iter() {
        let w = f.weight(xi);
        for (z, slot) in out.iter_mut().enumerate() {
            let c = omega.at(g.div(z, x));
            if c != ZERO {
                *slot += linalg::trace_of_product(block, dual.rep(xi, z)) * c * w;
            }
        }
    }
    Ok(GroupFunction::new(out))
}

/// `p_ω(Y,X) = Σ_z Ω(Y)(z) ⊗ Ω(X)(z)*`, with the `Y` factor first.
pub fn reproducing_kernel(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    y: (usize, usize),
    x: (usize, usize),
) -> Result<CMatrix> {
    let sy = coherent_state(g, dual, omega, y.0, y.1)?;
    let sx = coherent_state(g, dual, omega, x.0, x.1)?;
    let (de, dx) = (dual.dim(y.0), dual.dim(x.0));
    let mut acc = linalg::zeros(de * dx, de * dx);
    for (a, b) in sy.values.values.iter().zip(&sx.values.values) {
        acc += linalg::kron(a, &b.adjoint());
    }
    Ok(acc)
}

/// All coherent states, indexed `[ξ][x][z]`.
fn all_states(g: &FiniteGroup, dual: &UnitaryDual, omega: &GroupFunction) -> Result<Vec<Vec<Vec<CMatrix>>>> {
    (0..dual.len())
        .map(|xi| g.elements().map(|x| Ok(coherent_state(g, dual, omega, xi, x)?.values.values)).collect())
        .collect()
}

/// `[𝔓_ω F](X) = Σ_Y μ(Y)·TR_η{p_ω(Y,X)·[F(Y) ⊗ 1_ξ]}`, evaluated from the
/// reproducing kernel.
pub fn bargmann_projection(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    f: &PhaseSpaceVector,
) -> Result<PhaseSpaceVector> {
    f.require(Orientation::DualFirst)?;
    f.check_dual(dual)?;
    omega.check_len(g.order())?;
    let states = all_states(g, dual, omega)?;
    let n = g.order();
    let mut out = SymbolField::zeros(dual, Orientation::DualFirst);
    for xi in 0..dual.len() {
        let dx = dual.dim(xi);
        for x in 0..n {
            let mut acc = linalg::zeros(dx, dx);
            for (eta, y, fy) in f.iter() {
                let de = dual.dim(eta);
                let mut p = linalg::zeros(de * dx, de * dx);
                for (sy, sx) in states[eta][y].iter().zip(&states[xi][x]) {
                    p += linalg::kron(sy, &sx.adjoint());
                }
                // TR_η{p·(F⊗1)}[a,b] = Σ_{i,k} p[(i,a),(k,b)]·F[k,i]
                let mu = f.weight(eta);
                for a in 0..dx {
                    for b in 0..dx {
                        let mut s = ZERO;
                        for i in 0..de {
                            for k in 0..de {
                                s += p[(i * dx + a, k * dx + b)] * fy[(k, i)];
                            }
                        }
                        acc[(a, b)] += s * mu;
                    }
                }
            }
            *out.at_mut(xi, x) = acc;
        }
    }
    Ok(out)
}

/// The matrix of `𝔓_ω` on the flattened space, assembled from the
/// reproducing kernel entries.
pub fn projection_matrix(g: &FiniteGroup, dual: &UnitaryDual, omega: &GroupFunction) -> Result<CMatrix> {
    omega.check_len(g.order())?;
    let states = all_states(g, dual, omega)?;
    let n = g.order();
    let dims = dual.dims();
    let offs = offsets(&dims, n);
    let size = phase_space_dim(dual);
    let mut m = linalg::zeros(size, size);
    for xi in 0..dual.len() {
        let dx = dims[xi];
        for x in 0..n {
            for eta in 0..dual.len() {
                let de = dims[eta];
                let scale = (dual.weight(xi) * dual.weight(eta)).sqrt();
                for y in 0..n {
                    // entry (X,a,b),(Y,k,i) = √(μ(X)μ(Y))·Σ_z Ω_Y(z)[i,k]·conj(Ω_X(z)[b,a])
                    for a in 0..dx {
                        for b in 0..dx {
                            let row = coord(&offs, &dims, xi, x, a, b);
                            for k in 0..de {
                                for i in 0..de {
                                    let mut s = ZERO;
                                    for (sy, sx) in states[eta][y].iter().zip(&states[xi][x]) {
                                        s += sy[(i, k)] * sx[(b, a)].conj();
                                    }
                                    m[(row, coord(&offs, &dims, eta, y, k, i))] = s * scale;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(m)
}

/// The `|G|² × |G|` matrix of `𝔚_ω` on the flattened space.
pub fn bargmann_matrix(g: &FiniteGroup, dual: &UnitaryDual, omega: &GroupFunction) -> Result<CMatrix> {
    let n = g.order();
    let mut m = linalg::zeros(phase_space_dim(dual), n);
    for q in 0..n {
        let col = flatten(&bargmann(g, dual, omega, &GroupFunction::delta(n, q))?)?;
        m.set_column(q, &col);
    }
    Ok(m)
}

/// The `|G| × |G|²` matrix of `𝔚_ω†`, built by applying
/// [`bargmann_adjoint`] to the flattened basis vectors.
pub fn bargmann_adjoint_matrix(g: &FiniteGroup, dual: &UnitaryDual, omega: &GroupFunction) -> Result<CMatrix> {
    let size = phase_space_dim(dual);
    let mut m = linalg::zeros(g.order(), size);
    for c in 0..size {
        let mut e = DVector::from_element(size, ZERO);
        e[c] = linalg::ONE;
        let u = bargmann_adjoint(g, dual, omega, &unflatten(dual, &e)?)?;
        m.set_column(c, &DVector::from_column_slice(u.values()));
    }
    Ok(m)
}

/// `(Diag_R(F)Φ)(X) = Φ(X)·F(X)`
pub fn diag_right(f: &SymbolField, phi: &PhaseSpaceVector) -> Result<PhaseSpaceVector> {
    f.require(Orientation::DualFirst)?;
    phi.require(Orientation::DualFirst)?;
    phi.pointwise(f)
}

/// The matrix of `Diag_R(F)` on the flattened space.
pub fn diag_right_matrix(f: &SymbolField) -> Result<CMatrix> {
    f.require(Orientation::DualFirst)?;
    let n = f.group_order();
    let dims = f.dims();
    let offs = offsets(dims, n);
    let size = n * dims.iter().map(|d| d * d).sum::<usize>();
    let mut m = linalg::zeros(size, size);
    // (ΦF)[a,b] = Σ_c Φ[a,c]·F[c,b]
    for (xi, x, block) in f.iter() {
        let d = dims[xi];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    m[(coord(&offs, dims, xi, x, a, b), coord(&offs, dims, xi, x, a, c))] = block[(c, b)];
                }
            }
        }
    }
    Ok(m)
}

/// `Tp_ω(F) = 𝔓_ω ∘ Diag_R(F) ∘ 𝔓_ω` on the flattened space.
pub fn toeplitz(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    f: &SymbolField,
    mode: WindowMode,
) -> Result<CMatrix> {
    let omega = prepare_window(omega, mode)?;
    f.check_dual(dual)?;
    toeplitz_from_projection(&projection_matrix(g, dual, &omega)?, f)
}

/// `Tp_ω(F)` given an already assembled [`projection_matrix`].
pub fn toeplitz_from_projection(p: &CMatrix, f: &SymbolField) -> Result<CMatrix> {
    let d = diag_right_matrix(f)?;
    if d.shape() != p.shape() {
        return Err(Error::ShapeMismatch("projection and symbol over different phase spaces".into()));
    }
    Ok(linalg::matmul(&linalg::matmul_sparse_right(p, &d), p))
}

/// `𝔚_ω ∘ Ber_ω(F) ∘ 𝔚_ω†` on the flattened space.
pub fn toeplitz_conjugation(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    f: &SymbolField,
    mode: WindowMode,
) -> Result<CMatrix> {
    let omega = prepare_window(omega, mode)?;
    let ber = berezin_weak(g, dual, &omega, f)?;
    let w = bargmann_matrix(g, dual, &omega)?;
    let w_adj = bargmann_adjoint_matrix(g, dual, &omega)?;
    Ok(linalg::matmul(&linalg::matmul(&w, ber.matrix()), &w_adj))
}

/// Eigenvalues of the flattened `𝔓_ω` (ascending) and the number above
/// [`RANK_THRESHOLD`].
pub fn projection_spectrum(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    mode: WindowMode,
) -> Result<(Vec<f64>, usize)> {
    let omega = prepare_window(omega, mode)?;
    let values = linalg::hermitian_eigenvalues(&projection_matrix(g, dual, &omega)?);
    let rank = values.iter().filter(|&&v| v > RANK_THRESHOLD).count();
    Ok((values, rank))
}
