//! Coherent states, the positive projections `Pr_ω(X)` and the Berezin
//! operator `Ber_ω(F)`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dual::UnitaryDual;
use crate::error::Result;
use crate::fourier::{pairing, GroupFunction, Orientation, SymbolField};
use crate::group::FiniteGroup;
use crate::linalg::{self, CMatrix, ZERO};
use crate::pseudodiff::TwoVariableFunction;
use crate::weyl::{fourier_wigner, LiftedOperator, MatrixValuedFunction};

/// A `|G|×|G|` matrix acting by `(T·u)(y) = Σ_z T[y,z]·u(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct L2Operator {
    matrix: CMatrix,
}

impl L2Operator {
    pub fn new(matrix: CMatrix) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn apply(&self, u: &GroupFunction) -> Result<GroupFunction> {
        u.check_len(self.matrix.ncols())?;
        let n = self.matrix.nrows();
        Ok(GroupFunction::from_fn(n, |y| (0..n).map(|z| self.matrix[(y, z)] * u.at(z)).sum()))
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.matrix.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        linalg::trace(&self.matrix)
    }

    pub fn schatten_norm(&self, p: f64) -> Result<f64> {
        linalg::schatten_norm(&self.matrix, p)
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        linalg::min_eigenvalue(&self.matrix)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        linalg::max_abs_diff(&self.matrix, &other.matrix)
    }
}

/// `Ω(X)` for `X = (ξ, x)`: `[Ω(X)](z) = ω(z·x⁻¹)·ξ(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentState {
    pub xi: usize,
    pub x: usize,
    pub values: MatrixValuedFunction,
}

pub fn coherent_state(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    xi: usize,
    x: usize,
) -> Result<CoherentState> {
    dual.check_index(xi)?;
    g.check_index(x)?;
    omega.check_len(g.order())?;
    let values = g.elements().map(|z| dual.rep(xi, z) * omega.at(g.div(z, x))).collect();
    Ok(CoherentState { xi, x, values: MatrixValuedFunction::new(xi, dual.dim(xi), values)? })
}

/// `[Pr_ω(X)Φ](q) = Ω(X)(q)·Σ_y Ω(X)(y)*·Φ(y)` on `C^{|G|·d_ξ}`.
pub fn projector(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    xi: usize,
    x: usize,
) -> Result<LiftedOperator> {
    let state = coherent_state(g, dual, omega, xi, x)?;
    let (n, d) = (g.order(), dual.dim(xi));
    let mut m = linalg::zeros(n * d, n * d);
    for q in 0..n {
        for y in 0..n {
            let block = &state.values.values[q] * state.values.values[y].adjoint();
            m.view_mut((q * d, y * d), (d, d)).copy_from(&block);
        }
    }
    Ok(LiftedOperator { xi, dim: d, matrix: m })
}

fn check_symbol(dual: &UnitaryDual, omega: &GroupFunction, f: &SymbolField) -> Result<()> {
    omega.check_len(dual.group_order())?;
    f.require(Orientation::DualFirst)?;
    f.check_dual(dual)
}

/// `Ber_ω(F)` from the weak form: `B[q',q] = ⟨Ber δ_q, δ_q'⟩ =
/// Σ_X μ(X)·Tr[F(X)·𝔚_{δ_q',ω}(X)*·𝔚_{δ_q,ω}(X)]`.
pub fn berezin_weak(g: &FiniteGroup, dual: &UnitaryDual, omega: &GroupFunction, f: &SymbolField) -> Result<L2Operator> {
    check_symbol(dual, omega, f)?;
    let n = g.order();
    let transforms: Vec<SymbolField> =
        (0..n).map(|q| fourier_wigner(g, dual, &GroupFunction::delta(n, q), omega)).collect::<Result<_>>()?;
    let mut m = linalg::zeros(n, n);
    for q in 0..n {
        for qp in 0..n {
            let mut acc = ZERO;
            for (xi, x, fb) in f.iter() {
                let prod = transforms[qp].at(xi, x).adjoint() * transforms[q].at(xi, x);
                acc += linalg::trace_of_product(fb, &prod) * f.weight(xi);
            }
            m[(qp, q)] = acc;
        }
    }
    Ok(L2Operator::new(m))
}

/// `⟨Ber_ω(F)u, v⟩ = ⟨F, 𝔚_{u,ω}^*·𝔚_{v,ω}⟩_(X)`
pub fn berezin_form(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    f: &SymbolField,
    u: &GroupFunction,
    v: &GroupFunction,
) -> Result<Complex64> {
    check_symbol(dual, omega, f)?;
    let wu = fourier_wigner(g, dual, u, omega)?;
    let wv = fourier_wigner(g, dual, v, omega)?;
    pairing(f, &wu.star().pointwise(&wv)?)
}

/// The kernel of `Ber_ω(F)` in the convention `(Ber u)(y) = Σ_z K(z,y)·u(z)`:
/// `K(z,y) = Σ_x Σ_η weight(η)·ω(y·x⁻¹)·conj(ω(z·x⁻¹))·Tr[F(η,x)·η(z·y⁻¹)*]`.
/// Returns the kernel and the operator it defines.
pub fn berezin_kernel(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    f: &SymbolField,
) -> Result<(TwoVariableFunction, L2Operator)> {
    check_symbol(dual, omega, f)?;
    let n = g.order();
    // t[x][h] = Σ_η weight(η)·Tr[F(η,x)·η(h)*]
    let t: Vec<Vec<Complex64>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|h| {
                    (0..dual.len()).map(|eta| linalg::hs_inner(f.at(eta, x), dual.rep(eta, h)) * dual.weight(eta)).sum()
                })
                .collect()
        })
        .collect();
    let kernel = TwoVariableFunction::from_fn(n, |z, y| {
        let h = g.div(z, y);
        (0..n).map(|x| omega.at(g.div(y, x)) * omega.at(g.div(z, x)).conj() * t[x][h]).sum()
    });
    let op = L2Operator::new(kernel.table.transpose());
    Ok((kernel, op))
}
