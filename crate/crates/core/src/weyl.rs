//! Weyl operators on `L²(G) ⊗ H_ξ`, the `B(H_ξ)`-valued module inner
//! product, and the Fourier–Wigner and Wigner transforms.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dual::UnitaryDual;
use crate::error::{Error, Result};
use crate::fourier::{GroupFunction, Orientation, SymbolField};
use crate::group::FiniteGroup;
use crate::linalg::{self, CMatrix, ZERO};

/// A map `G → B(H_ξ)` for one fixed irrep `ξ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixValuedFunction {
    pub xi: usize,
    pub dim: usize,
    pub values: Vec<CMatrix>,
}

impl MatrixValuedFunction {
    pub fn new(xi: usize, dim: usize, values: Vec<CMatrix>) -> Result<Self> {
        if let Some(m) = values.iter().find(|m| m.shape() != (dim, dim)) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} value in a function with values of dim {dim}",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(Self { xi, dim, values })
    }

    /// `(u ⊗ A)(x) = u(x)·A`
    pub fn tensor(xi: usize, u: &GroupFunction, a: &CMatrix) -> Self {
        Self { xi, dim: a.nrows(), values: u.values().iter().map(|&c| a * c).collect() }
    }

    /// `(A·a)(x) = A·a(x)`
    pub fn left_mul(&self, a: &CMatrix) -> Self {
        Self { xi: self.xi, dim: self.dim, values: self.values.iter().map(|v| a * v).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `Σ_z ‖a(z)‖²_op`
    pub fn op_norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| linalg::operator_norm(v).powi(2)).sum()
    }

    /// `Tr ⟨a|a⟩ = Σ_z ‖a(z)‖²_HS`
    pub fn hs_norm_sqr(&self) -> f64 {
        self.values.iter().map(linalg::hs_norm_sqr).sum()
    }

    /// Column `j` of every value, stacked `q`-major into a vector of `C^{|G|·d}`.
    fn column(&self, j: usize) -> nalgebra::DVector<Complex64> {
        let d = self.dim;
        nalgebra::DVector::from_fn(self.values.len() * d, |r, _| self.values[r / d][(r % d, j)])
    }
}

/// `⟨a|b⟩_ξ = Σ_x a(x)·b(x)*`
pub fn module_inner(a: &MatrixValuedFunction, b: &MatrixValuedFunction) -> Result<CMatrix> {
    if a.xi != b.xi || a.dim != b.dim || a.len() != b.len() {
        return Err(Error::ShapeMismatch("module inner product of functions over different spaces".into()));
    }
    let mut acc = linalg::zeros(a.dim, a.dim);
    for (x, y) in a.values.iter().zip(&b.values) {
        acc += x * y.adjoint();
    }
    Ok(acc)
}

/// An operator on `L²(G; H_ξ) ≅ C^{|G|·d_ξ}`, basis `δ_q ⊗ e_i` at index `q·d + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedOperator {
    pub xi: usize,
    pub dim: usize,
    pub matrix: CMatrix,
}

impl LiftedOperator {
    pub fn adjoint(&self) -> Self {
        Self { xi: self.xi, dim: self.dim, matrix: self.matrix.adjoint() }
    }

    /// Applies the operator column by column to a matrix-valued function,
    /// i.e. to `a` read as a map `H_ξ → L²(G; H_ξ)`.
    pub fn apply(&self, a: &MatrixValuedFunction) -> Result<MatrixValuedFunction> {
        let d = self.dim;
        if a.dim != d || a.len() * d != self.matrix.nrows() {
            return Err(Error::ShapeMismatch("lifted operator applied to a function of the wrong shape".into()));
        }
        let mut values = alloc::vec![linalg::zeros(d, d); a.len()];
        for j in 0..d {
            let col = &self.matrix * a.column(j);
            for (r, z) in col.iter().enumerate() {
                values[r / d][(r % d, j)] = *z;
            }
        }
        MatrixValuedFunction::new(a.xi, d, values)
    }
}

/// `[W(ξ,x)Ψ](q) = ξ(q)·Ψ(q·x⁻¹)`
pub fn weyl_operator(g: &FiniteGroup, dual: &UnitaryDual, xi: usize, x: usize) -> Result<LiftedOperator> {
    dual.check_index(xi)?;
    g.check_index(x)?;
    let (n, d) = (g.order(), dual.dim(xi));
    let mut m = linalg::zeros(n * d, n * d);
    for q in 0..n {
        let src = g.div(q, x);
        let rep = dual.rep(xi, q);
        for i in 0..d {
            for j in 0..d {
                m[(q * d + i, src * d + j)] = rep[(i, j)];
            }
        }
    }
    Ok(LiftedOperator { xi, dim: d, matrix: m })
}

/// `[W(ξ,x)*Ψ](q) = ξ(q·x)*·Ψ(q·x)`, assembled directly from that formula.
pub fn weyl_adjoint(g: &FiniteGroup, dual: &UnitaryDual, xi: usize, x: usize) -> Result<LiftedOperator> {
    dual.check_index(xi)?;
    g.check_index(x)?;
    let (n, d) = (g.order(), dual.dim(xi));
    let mut m = linalg::zeros(n * d, n * d);
    for q in 0..n {
        let qx = g.mul(q, x);
        let rep = dual.rep(xi, qx);
        for i in 0..d {
            for j in 0..d {
                m[(q * d + i, qx * d + j)] = rep[(j, i)].conj();
            }
        }
    }
    Ok(LiftedOperator { xi, dim: d, matrix: m })
}

/// `[W(ξ,x)*u](y) = u(y·x)·ξ(y·x)*`: the image of `u ∈ L²(G)` under the
/// adjoint Weyl operator, read as a matrix-valued function.
pub fn weyl_adjoint_lift(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    xi: usize,
    x: usize,
    u: &GroupFunction,
) -> Result<MatrixValuedFunction> {
    dual.check_index(xi)?;
    g.check_index(x)?;
    u.check_len(g.order())?;
    let values = g
        .elements()
        .map(|y| {
            let yx = g.mul(y, x);
            dual.rep(xi, yx).adjoint() * u.at(yx)
        })
        .collect();
    MatrixValuedFunction::new(xi, dual.dim(xi), values)
}

/// `𝔚_{u,v}(ξ,x) = Σ_z u(z)·conj(v(z·x⁻¹))·ξ(z)*`, dual-first.
pub fn fourier_wigner(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    u: &GroupFunction,
    v: &GroupFunction,
) -> Result<SymbolField> {
    let n = g.order();
    u.check_len(n)?;
    v.check_len(n)?;
    let adjoints: Vec<Vec<CMatrix>> =
        (0..dual.len()).map(|xi| (0..n).map(|z| dual.rep(xi, z).adjoint()).collect()).collect();
    Ok(SymbolField::from_fn(dual, Orientation::DualFirst, |xi, x| {
        let d = dual.dim(xi);
        let mut acc = linalg::zeros(d, d);
        for (z, adj) in adjoints[xi].iter().enumerate() {
            let c = u.at(z) * v.at(g.div(z, x)).conj();
            if c != ZERO {
                acc += adj * c;
            }
        }
        acc
    }))
}

/// The Fourier–Wigner transform as `⟨W(ξ,x)*(u⊗1) | v⊗1⟩_ξ`, going
/// through the materialized adjoint Weyl operators. Slow; kept as an
/// independent check of [`fourier_wigner`].
pub fn fourier_wigner_via_weyl(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    u: &GroupFunction,
    v: &GroupFunction,
) -> Result<SymbolField> {
    let n = g.order();
    u.check_len(n)?;
    v.check_len(n)?;
    let mut blocks = Vec::with_capacity(dual.len() * n);
    for xi in 0..dual.len() {
        let one = linalg::identity(dual.dim(xi));
        let lifted_u = MatrixValuedFunction::tensor(xi, u, &one);
        let lifted_v = MatrixValuedFunction::tensor(xi, v, &one);
        for x in 0..n {
            let w_star = weyl_operator(g, dual, xi, x)?.adjoint();
            blocks.push(module_inner(&w_star.apply(&lifted_u)?, &lifted_v)?);
        }
    }
    SymbolField::new(Orientation::DualFirst, n, dual.dims(), blocks)
}

/// `𝔙_{u,v}(x,ξ) = conj(u(x))·Σ_y v(x·y⁻¹)·ξ(y)*`, group-first.
pub fn wigner(g: &FiniteGroup, dual: &UnitaryDual, u: &GroupFunction, v: &GroupFunction) -> Result<SymbolField> {
    let n = g.order();
    u.check_len(n)?;
    v.check_len(n)?;
    Ok(SymbolField::from_fn(dual, Orientation::GroupFirst, |xi, x| {
        let d = dual.dim(xi);
        let mut acc = linalg::zeros(d, d);
        let ux = u.at(x).conj();
        if ux == ZERO {
            return acc;
        }
        for y in 0..n {
            let c = v.at(g.div(x, y));
            if c != ZERO {
                acc += dual.rep(xi, y).adjoint() * c;
            }
        }
        acc * ux
    }))
}
