//! Functions on `G`, operator fields on `Ĝ` and on phase space, the
//! Fourier transform and the `B^{p,p}` norms.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dual::UnitaryDual;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, ZERO};

/// A complex function on the group, indexed by element.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(alloc::vec![ZERO; n])
    }

    pub fn constant(n: usize, c: Complex64) -> Self {
        Self::new(alloc::vec![c; n])
    }

    /// Indicator `δ_x`.
    pub fn delta(n: usize, x: usize) -> Self {
        let mut f = Self::zeros(n);
        f.values[x] = linalg::ONE;
        f
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        Self::new((0..n).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    #[inline]
    pub fn at(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `⟨u, v⟩ = Σ_x u(x)·conj(v(x))`
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.values.iter().map(|z| z.conj()).collect())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.values.iter().map(|z| z * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    pub fn pointwise(&self, other: &Self) -> Self {
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.values.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "function of length {} on a group of order {n}",
                self.values.len()
            )));
        }
        Ok(())
    }
}

/// One `d_ξ × d_ξ` block per irrep: an element of `B²(Ĝ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualField {
    pub blocks: Vec<CMatrix>,
}

impl DualField {
    /// `⟨φ, ψ⟩ = Σ_ξ weight(ξ)·Tr[φ(ξ)·ψ(ξ)*]`
    pub fn inner(&self, other: &Self, dual: &UnitaryDual) -> Complex64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .enumerate()
            .map(|(xi, (a, b))| linalg::hs_inner(a, b) * dual.weight(xi))
            .sum()
    }

    pub fn norm_sqr(&self, dual: &UnitaryDual) -> f64 {
        self.inner(self, dual).re
    }
}

/// Which factor of phase space comes first in the indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `F(ξ, x)` on `Ĝ × G`.
    DualFirst,
    /// `a(x, ξ)` on `G × Ĝ`.
    GroupFirst,
}

impl Orientation {
    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::DualFirst => "dual-first",
            Orientation::GroupFirst => "group-first",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::DualFirst => Orientation::GroupFirst,
            Orientation::GroupFirst => Orientation::DualFirst,
        }
    }
}

/// An operator field on phase space: one `d_ξ × d_ξ` block per `(ξ, x)`.
///
/// Blocks are always addressed as `(ξ, x)`; the orientation records whether
/// the field is read as `F(ξ, x)` or `a(x, ξ)`, and operations check it.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolField {
    orientation: Orientation,
    order: usize,
    dims: Vec<usize>,
    blocks: Vec<CMatrix>,
}

impl SymbolField {
    /// `blocks` in `(ξ, x)` order, `ξ` outer.
    pub fn new(orientation: Orientation, order: usize, dims: Vec<usize>, blocks: Vec<CMatrix>) -> Result<Self> {
        if blocks.len() != dims.len() * order {
            return Err(Error::ShapeMismatch(format!(
                "{} blocks for {} irreps and {order} elements",
                blocks.len(),
                dims.len()
            )));
        }
        for (i, b) in blocks.iter().enumerate() {
            let d = dims[i / order.max(1)];
            if b.shape() != (d, d) {
                return Err(Error::ShapeMismatch(format!(
                    "block ({}, {}) is {}x{}, expected {d}x{d}",
                    i / order,
                    i % order,
                    b.nrows(),
                    b.ncols()
                )));
            }
        }
        Ok(Self { orientation, order, dims, blocks })
    }

    pub fn from_fn(dual: &UnitaryDual, orientation: Orientation, mut f: impl FnMut(usize, usize) -> CMatrix) -> Self {
        let n = dual.group_order();
        let mut blocks = Vec::with_capacity(dual.len() * n);
        for xi in 0..dual.len() {
            for x in 0..n {
                let b = f(xi, x);
                debug_assert_eq!(b.shape(), (dual.dim(xi), dual.dim(xi)));
                blocks.push(b);
            }
        }
        Self { orientation, order: n, dims: dual.dims(), blocks }
    }

    pub fn zeros(dual: &UnitaryDual, orientation: Orientation) -> Self {
        Self::from_fn(dual, orientation, |xi, _| linalg::zeros(dual.dim(xi), dual.dim(xi)))
    }

    /// The constant field `𝟏(ξ, x) = 1_ξ`.
    pub fn one(dual: &UnitaryDual, orientation: Orientation) -> Self {
        Self::from_fn(dual, orientation, |xi, _| linalg::identity(dual.dim(xi)))
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_irreps(&self) -> usize {
        self.dims.len()
    }

    /// Plancherel weight `d_ξ/|G|`, which is also `μ(ξ, x)`.
    pub fn weight(&self, xi: usize) -> f64 {
        self.dims[xi] as f64 / self.order as f64
    }

    #[inline]
    pub fn at(&self, xi: usize, x: usize) -> &CMatrix {
        &self.blocks[xi * self.order + x]
    }

    #[inline]
    pub fn at_mut(&mut self, xi: usize, x: usize) -> &mut CMatrix {
        &mut self.blocks[xi * self.order + x]
    }

    /// Blocks in `(ξ, x)` order.
    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    /// Iterates `(ξ, x, block)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &CMatrix)> + '_ {
        let n = self.order;
        self.blocks.iter().enumerate().map(move |(i, b)| (i / n, i % n, b))
    }

    /// Reads the same data in the other orientation: `F_•(x, ξ) = F(ξ, x)`.
    pub fn reoriented(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn flipped(self) -> Self {
        let o = self.orientation.flipped();
        self.reoriented(o)
    }

    pub fn require(&self, orientation: Orientation) -> Result<()> {
        if self.orientation != orientation {
            return Err(Error::Orientation { expected: orientation.as_str(), found: self.orientation.as_str() });
        }
        Ok(())
    }

    /// Checks that the field lives over the given dual.
    pub fn check_dual(&self, dual: &UnitaryDual) -> Result<()> {
        if self.order != dual.group_order() || self.dims != dual.dims() {
            return Err(Error::ShapeMismatch(format!(
                "symbol field over order {} with dims {:?}, dual has order {} and dims {:?}",
                self.order,
                self.dims,
                dual.group_order(),
                dual.dims()
            )));
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.order != other.order || self.dims != other.dims {
            return Err(Error::ShapeMismatch("symbol fields over different duals".into()));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            orientation: self.orientation,
            order: self.order,
            dims: self.dims.clone(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect(),
        })
    }

    fn map(&self, f: impl Fn(&CMatrix) -> CMatrix) -> Self {
        Self {
            orientation: self.orientation,
            order: self.order,
            dims: self.dims.clone(),
            blocks: self.blocks.iter().map(f).collect(),
        }
    }

    /// `F^⋆(X) = F(X)*`
    pub fn star(&self) -> Self {
        self.map(|b| b.adjoint())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|b| b * c)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    /// Pointwise block product `(F·H)(X) = F(X)·H(X)`.
    pub fn pointwise(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self.blocks.iter().zip(&other.blocks).map(|(a, b)| linalg::max_abs_diff(a, b)).fold(0.0, f64::max))
    }

    /// `Σ μ·Tr[F·H*]`, whatever the orientation.
    pub(crate) fn weighted_inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_shape(other)?;
        Ok(self.iter().zip(&other.blocks).map(|((xi, _, a), b)| linalg::hs_inner(a, b) * self.weight(xi)).sum())
    }

    /// `(Σ_x Σ_ξ weight(ξ)·‖F‖_p^p)^{1/p}`, whatever the orientation.
    pub(crate) fn mixed_norm(&self, p: f64) -> Result<f64> {
        linalg::check_exponent(p)?;
        if p.is_infinite() {
            return Ok(self.blocks.iter().map(linalg::operator_norm).fold(0.0, f64::max));
        }
        let mut acc = 0.0;
        for (xi, _, b) in self.iter() {
            let s = if p == 2.0 { linalg::hs_norm_sqr(b) } else { linalg::schatten_norm(b, p)?.powf(p) };
            acc += self.weight(xi) * s;
        }
        Ok(acc.powf(1.0 / p))
    }
}

/// `(𝔉u)(ξ) = Σ_x u(x)·ξ(x)*`
pub fn fourier(dual: &UnitaryDual, u: &GroupFunction) -> Result<DualField> {
    u.check_len(dual.group_order())?;
    let blocks = (0..dual.len())
        .map(|xi| {
            let d = dual.dim(xi);
            let mut acc = linalg::zeros(d, d);
            for (x, &ux) in u.values().iter().enumerate() {
                if ux != ZERO {
                    acc += dual.rep(xi, x).adjoint() * ux;
                }
            }
            acc
        })
        .collect();
    Ok(DualField { blocks })
}

/// `u(x) = Σ_ξ weight(ξ)·Tr[φ(ξ)·ξ(x)]`
pub fn inverse_fourier(dual: &UnitaryDual, phi: &DualField) -> Result<GroupFunction> {
    check_dual_field(dual, phi)?;
    let n = dual.group_order();
    Ok(GroupFunction::from_fn(n, |x| {
        (0..dual.len()).map(|xi| linalg::trace_of_product(&phi.blocks[xi], dual.rep(xi, x)) * dual.weight(xi)).sum()
    }))
}

pub(crate) fn check_dual_field(dual: &UnitaryDual, phi: &DualField) -> Result<()> {
    if phi.blocks.len() != dual.len() {
        return Err(Error::ShapeMismatch(format!("{} blocks for {} irreps", phi.blocks.len(), dual.len())));
    }
    for (xi, b) in phi.blocks.iter().enumerate() {
        let d = dual.dim(xi);
        if b.shape() != (d, d) {
            return Err(Error::ShapeMismatch(format!("block {xi} is not {d}x{d}")));
        }
    }
    Ok(())
}

/// The `B^{p,p}(X)` norm of a dual-first field; `p = ∞` gives the largest
/// block operator norm.
pub fn bpp_norm(f: &SymbolField, p: f64) -> Result<f64> {
    f.require(Orientation::DualFirst)?;
    f.mixed_norm(p)
}

/// `⟨F, H⟩_(X) = Σ_X μ(X)·Tr[F(X)·H(X)*]` on dual-first fields.
pub fn pairing(f: &SymbolField, h: &SymbolField) -> Result<Complex64> {
    f.require(Orientation::DualFirst)?;
    h.require(Orientation::DualFirst)?;
    f.weighted_inner(h)
}

/// The same pairing on the group-first space `G × Ĝ`.
pub fn pairing_group_first(a: &SymbolField, b: &SymbolField) -> Result<Complex64> {
    a.require(Orientation::GroupFirst)?;
    b.require(Orientation::GroupFirst)?;
    a.weighted_inner(b)
}

/// The 2-norm on the group-first space.
pub fn group_first_norm(a: &SymbolField) -> Result<f64> {
    a.require(Orientation::GroupFirst)?;
    a.mixed_norm(2.0)
}

/// `𝐓𝐫(F) = Σ_X μ(X)·Tr[F(X)]`
pub fn big_trace(f: &SymbolField) -> Result<Complex64> {
    f.require(Orientation::DualFirst)?;
    Ok(f.iter().map(|(xi, _, b)| linalg::trace(b) * f.weight(xi)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::build_dual;
    use crate::group::{build_group, GroupSpec};
    use crate::linalg::ONE;

    fn dual_of(spec: GroupSpec) -> UnitaryDual {
        build_dual(&build_group(&spec, 64).unwrap()).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn fourier_on_z2() {
        let d = dual_of(GroupSpec::Cyclic(2));
        let e = fourier(&d, &GroupFunction::delta(2, 0)).unwrap();
        assert_eq!(e.blocks[0][(0, 0)], ONE);
        assert_eq!(e.blocks[1][(0, 0)], ONE);
        let g = fourier(&d, &GroupFunction::delta(2, 1)).unwrap();
        assert_eq!(g.blocks[1][(0, 0)], c(-1.0));
        let back = inverse_fourier(&d, &e).unwrap();
        assert_eq!(back, GroupFunction::delta(2, 0));
    }

    #[test]
    fn constant_function_concentrates_on_trivial_character() {
        for n in 1..8 {
            let d = dual_of(GroupSpec::Cyclic(n));
            let f = fourier(&d, &GroupFunction::constant(n, ONE)).unwrap();
            assert!((f.blocks[0][(0, 0)] - c(n as f64)).norm() < 1e-12);
            for b in &f.blocks[1..] {
                assert!(b[(0, 0)].norm() < 1e-12);
            }
        }
    }

    #[test]
    fn one_on_z2() {
        let d = dual_of(GroupSpec::Cyclic(2));
        let one = SymbolField::one(&d, Orientation::DualFirst);
        assert_eq!(bpp_norm(&one, f64::INFINITY).unwrap(), 1.0);
        assert!((bpp_norm(&one, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((pairing(&one, &one).unwrap() - c(2.0)).norm() < 1e-15);
        assert!((big_trace(&one).unwrap() - c(2.0)).norm() < 1e-15);
    }

    #[test]
    fn big_trace_of_one_is_the_order() {
        let d = dual_of(GroupSpec::Symmetric(3));
        let one = SymbolField::one(&d, Orientation::DualFirst);
        assert!((big_trace(&one).unwrap() - c(6.0)).norm() < 1e-14);
    }

    #[test]
    fn orientation_is_checked() {
        let d = dual_of(GroupSpec::Cyclic(3));
        let a = SymbolField::one(&d, Orientation::GroupFirst);
        assert!(matches!(bpp_norm(&a, 2.0), Err(Error::Orientation { .. })));
        assert!(matches!(big_trace(&a), Err(Error::Orientation { .. })));
        assert!(bpp_norm(&a.clone().flipped(), 2.0).is_ok());
        assert_eq!(a.clone().flipped().flipped(), a);
    }

    #[test]
    fn shape_errors() {
        let d = dual_of(GroupSpec::Cyclic(3));
        assert!(matches!(fourier(&d, &GroupFunction::zeros(2)), Err(Error::ShapeMismatch(_))));
        assert!(SymbolField::new(Orientation::DualFirst, 3, alloc::vec![1, 1, 1], alloc::vec![]).is_err());
        assert!(matches!(bpp_norm(&SymbolField::one(&d, Orientation::DualFirst), 0.5), Err(Error::InvalidExponent(_))));
    }
}
