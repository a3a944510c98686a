//! Pseudo-differential quantization `Op`, the change of variables `γ`,
//! the partial Fourier transform, and Berezin symbols.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::berezin::{berezin_kernel, L2Operator};
use crate::dual::UnitaryDual;
use crate::error::{Error, Result};
use crate::fourier::{pairing_group_first, GroupFunction, Orientation, SymbolField};
use crate::group::FiniteGroup;
use crate::linalg::{self, CMatrix, ZERO};
use crate::weyl::wigner;

/// Tolerance for identifying a product of characters with a listed character.
pub const CHARACTER_PRODUCT_TOL: f64 = 1e-9;

/// A complex table `g(x, y)` on `G × G`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoVariableFunction {
    pub table: CMatrix,
}

impl TwoVariableFunction {
    pub fn new(table: CMatrix) -> Result<Self> {
        if !table.is_square() {
            return Err(Error::ShapeMismatch(format!("{}x{} table", table.nrows(), table.ncols())));
        }
        Ok(Self { table })
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self { table: CMatrix::from_fn(n, n, f) }
    }

    /// `(u ⊗ v)(x, y) = u(x)·v(y)`
    pub fn tensor(u: &GroupFunction, v: &GroupFunction) -> Self {
        Self::from_fn(u.len(), |x, y| u.at(x) * v.at(y))
    }

    pub fn order(&self) -> usize {
        self.table.nrows()
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize) -> Complex64 {
        self.table[(x, y)]
    }

    pub fn norm(&self) -> f64 {
        linalg::hs_norm_sqr(&self.table).sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        linalg::max_abs_diff(&self.table, &other.table)
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if self.order() != n {
            return Err(Error::ShapeMismatch(format!("table of size {} on a group of order {n}", self.order())));
        }
        Ok(())
    }
}

/// `γ(k)(x, y) = k(x, x·y⁻¹)`
pub fn gamma_change(g: &FiniteGroup, k: &TwoVariableFunction) -> Result<TwoVariableFunction> {
    k.check_order(g.order())?;
    Ok(TwoVariableFunction::from_fn(g.order(), |x, y| k.at(x, g.div(x, y))))
}

/// `γ⁻¹(k)(x, w) = k(x, w⁻¹·x)`
pub fn gamma_inverse(g: &FiniteGroup, k: &TwoVariableFunction) -> Result<TwoVariableFunction> {
    k.check_order(g.order())?;
    Ok(TwoVariableFunction::from_fn(g.order(), |x, w| k.at(x, g.mul(g.inv(w), x))))
}

/// `((id⊗𝔉)k)(x, ξ) = Σ_y k(x, y)·ξ(y)*`, group-first.
pub fn partial_fourier(dual: &UnitaryDual, k: &TwoVariableFunction) -> Result<SymbolField> {
    let n = dual.group_order();
    k.check_order(n)?;
    Ok(SymbolField::from_fn(dual, Orientation::GroupFirst, |xi, x| {
        let d = dual.dim(xi);
        let mut acc = linalg::zeros(d, d);
        for y in 0..n {
            let c = k.at(x, y);
            if c != ZERO {
                acc += dual.rep(xi, y).adjoint() * c;
            }
        }
        acc
    }))
}

/// `k(x, y) = Σ_ξ weight(ξ)·Tr[a(x, ξ)·ξ(y)]`
pub fn inverse_partial_fourier(dual: &UnitaryDual, a: &SymbolField) -> Result<TwoVariableFunction> {
    a.require(Orientation::GroupFirst)?;
    a.check_dual(dual)?;
    Ok(TwoVariableFunction::from_fn(dual.group_order(), |x, y| {
        (0..dual.len()).map(|xi| linalg::trace_of_product(a.at(xi, x), dual.rep(xi, y)) * dual.weight(xi)).sum()
    }))
}

/// How [`op_quantize_with`] evaluates `Op(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpRoute {
    /// `Ker = [(id⊗𝔉)∘γ]⁻¹ a`, acting by `(Op(a)u)(y) = Σ_x Ker(x,y)·u(x)`.
    Kernel,
    /// `[Op(a)u](x) = Σ_y Σ_ξ weight(ξ)·Tr[ξ(x⁻¹y)·a(y,ξ)]·u(y)`.
    Direct,
    /// `⟨Op(a)δ_q, δ_q'⟩ = ⟨a, 𝔙_{δ_q, δ_q'}⟩` on `G × Ĝ`.
    Weak,
}

/// The kernel `Ker(x, y)` of `Op(a)`.
pub fn op_kernel(g: &FiniteGroup, dual: &UnitaryDual, a: &SymbolField) -> Result<TwoVariableFunction> {
    gamma_inverse(g, &inverse_partial_fourier(dual, a)?)
}

/// `Op(a)` through its kernel.
pub fn op_quantize(g: &FiniteGroup, dual: &UnitaryDual, a: &SymbolField) -> Result<L2Operator> {
    op_quantize_with(g, dual, a, OpRoute::Kernel)
}

pub fn op_quantize_with(g: &FiniteGroup, dual: &UnitaryDual, a: &SymbolField, route: OpRoute) -> Result<L2Operator> {
    a.require(Orientation::GroupFirst)?;
    a.check_dual(dual)?;
    let n = g.order();
    let matrix = match route {
        OpRoute::Kernel => op_kernel(g, dual, a)?.table.transpose(),
        OpRoute::Direct => CMatrix::from_fn(n, n, |x, y| {
            let s = g.mul(g.inv(x), y);
            (0..dual.len()).map(|xi| linalg::trace_of_product(dual.rep(xi, s), a.at(xi, y)) * dual.weight(xi)).sum()
        }),
        OpRoute::Weak => {
            let mut m = linalg::zeros(n, n);
            for q in 0..n {
                let dq = GroupFunction::delta(n, q);
                for qp in 0..n {
                    let v = wigner(g, dual, &dq, &GroupFunction::delta(n, qp))?;
                    m[(qp, q)] = pairing_group_first(a, &v)?;
                }
            }
            m
        }
    };
    Ok(L2Operator::new(matrix))
}

/// `a^F_ω = [(id⊗𝔉)∘γ] K^F_ω`, the symbol with `Op(a^F_ω) = Ber_ω(F)`.
pub fn symbol_from_berezin(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    f: &SymbolField,
) -> Result<SymbolField> {
    let (kernel, _) = berezin_kernel(g, dual, omega, f)?;
    partial_fourier(dual, &gamma_change(g, &kernel)?)
}

/// The same symbol as one iterated sum:
/// `a(q,ξ) = Σ_s Σ_x Σ_η weight(η)·ω(q·s⁻¹·x⁻¹)·conj(ω(q·x⁻¹))·Tr[F(η,x)·η(q·s·q⁻¹)*]·ξ(s)*`.
pub fn symbol_from_berezin_explicit(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    f: &SymbolField,
) -> Result<SymbolField> {
    let n = g.order();
    omega.check_len(n)?;
    f.require(Orientation::DualFirst)?;
    f.check_dual(dual)?;
    // inner(q, s): the braces, a scalar function of (q, s)
    let mut inner = CMatrix::from_element(n, n, ZERO);
    for q in 0..n {
        for s in 0..n {
            let conj_by_q = g.div(g.mul(q, s), q);
            let mut acc = ZERO;
            for x in 0..n {
                let c = omega.at(g.div(g.div(q, s), x)) * omega.at(g.div(q, x)).conj();
                if c == ZERO {
                    continue;
                }
                let t: Complex64 = (0..dual.len())
                    .map(|eta| linalg::hs_inner(f.at(eta, x), dual.rep(eta, conj_by_q)) * dual.weight(eta))
                    .sum();
                acc += c * t;
            }
            inner[(q, s)] = acc;
        }
    }
    Ok(SymbolField::from_fn(dual, Orientation::GroupFirst, |xi, q| {
        let d = dual.dim(xi);
        let mut acc = linalg::zeros(d, d);
        for s in 0..n {
            acc += dual.rep(xi, s).adjoint() * inner[(q, s)];
        }
        acc
    }))
}

/// Multiplication table of the character group of an abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterGroup {
    /// `product[a][b] = c` when `χ_a·χ_b = χ_c`.
    pub product: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
    pub identity: usize,
}

/// Builds the character group by matching pointwise products of characters
/// against the listed ones.
pub fn character_group(dual: &UnitaryDual) -> Result<CharacterGroup> {
    if !dual.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let chars = dual.characters();
    let find = |chi: &[Complex64]| {
        chars
            .iter()
            .position(|c| crate::dual::character_distance(c, chi) < CHARACTER_PRODUCT_TOL)
            .ok_or_else(|| Error::InvalidDual("character products are not closed".into()))
    };
    let k = chars.len();
    let mut product = alloc::vec![alloc::vec![0; k]; k];
    for a in 0..k {
        for b in 0..k {
            let p: Vec<Complex64> = chars[a].iter().zip(&chars[b]).map(|(x, y)| x * y).collect();
            product[a][b] = find(&p)?;
        }
    }
    let identity = find(&alloc::vec![linalg::ONE; dual.group_order()])?;
    let inverse = (0..k)
        .map(|a| {
            let conj: Vec<Complex64> = chars[a].iter().map(|z| z.conj()).collect();
            find(&conj)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterGroup { product, inverse, identity })
}

/// Convolution on `G × Ĝ` for an abelian group, both fields group-first:
/// `(A∗B)(q,ξ) = Σ_x Σ_η weight(η)·A(x,η)·B(x⁻¹·q, η⁻¹·ξ)`.
pub fn phase_space_convolution(
    g: &FiniteGroup,
    chars: &CharacterGroup,
    a: &SymbolField,
    b: &SymbolField,
) -> Result<SymbolField> {
    a.require(Orientation::GroupFirst)?;
    b.require(Orientation::GroupFirst)?;
    let n = g.order();
    let k = chars.product.len();
    if a.group_order() != n || b.group_order() != n || a.num_irreps() != k || b.num_irreps() != k {
        return Err(Error::ShapeMismatch("convolution of fields over different phase spaces".into()));
    }
    let w = 1.0 / n as f64;
    let mut blocks = Vec::with_capacity(k * n);
    for xi in 0..k {
        for q in 0..n {
            let mut acc = ZERO;
            for x in 0..n {
                let shifted = g.mul(g.inv(x), q);
                for eta in 0..k {
                    let rest = chars.product[chars.inverse[eta]][xi];
                    acc += a.at(eta, x)[(0, 0)] * b.at(rest, shifted)[(0, 0)] * w;
                }
            }
            blocks.push(CMatrix::from_element(1, 1, acc));
        }
    }
    SymbolField::new(Orientation::GroupFirst, n, alloc::vec![1; k], blocks)
}

/// `F̌(η, x) = F(η⁻¹, x)` on an abelian group.
pub fn reflect_dual(chars: &CharacterGroup, f: &SymbolField) -> Result<SymbolField> {
    let n = f.group_order();
    let blocks = (0..f.num_irreps())
        .flat_map(|eta| (0..n).map(move |x| (eta, x)))
        .map(|(eta, x)| f.at(chars.inverse[eta], x).clone())
        .collect();
    SymbolField::new(f.orientation(), n, f.dims().to_vec(), blocks)
}

/// `a^F_ω` on an abelian group as the phase-space convolution
/// `F̌_• ∗ 𝔙_{ω,ω}`, where `F_•(q,ξ) = F(ξ,q)`.
pub fn abelian_convolution_symbol(
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    f: &SymbolField,
) -> Result<SymbolField> {
    f.require(Orientation::DualFirst)?;
    f.check_dual(dual)?;
    let chars = character_group(dual)?;
    let reflected = reflect_dual(&chars, f)?.reoriented(Orientation::GroupFirst);
    let v = wigner(g, dual, omega, omega)?;
    phase_space_convolution(g, &chars, &reflected, &v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berezin::berezin_weak;
    use crate::dual::build_dual;
    use crate::fourier::group_first_norm;
    use crate::group::GroupSpec;
    use crate::random;

    fn setup(s: &str) -> (FiniteGroup, UnitaryDual) {
        let g = crate::group::build_group(&s.parse::<GroupSpec>().unwrap(), 64).unwrap();
        let d = build_dual(&g).unwrap();
        (g, d)
    }

    #[test]
    fn gamma_round_trip_and_z2_entries() {
        let (g, _) = setup("S3");
        let mut r = random::rng(1, 0);
        let k = TwoVariableFunction::from_fn(6, |_, _| random::complex(&mut r));
        assert_eq!(gamma_inverse(&g, &gamma_change(&g, &k).unwrap()).unwrap(), k);
        assert_eq!(gamma_change(&g, &gamma_inverse(&g, &k).unwrap()).unwrap(), k);
        assert!((gamma_change(&g, &k).unwrap().norm() - k.norm()).abs() < 1e-12);

        let (z2, _) = setup("Z2");
        let k = TwoVariableFunction::from_fn(2, |x, y| Complex64::new((2 * x + y) as f64, 0.0));
        let gk = gamma_change(&z2, &k).unwrap();
        assert_eq!(gk.at(0, 1), k.at(0, 1));
        assert_eq!(gk.at(1, 1), k.at(1, 0));
    }

    #[test]
    fn partial_fourier_round_trip() {
        let (_, d) = setup("D4");
        let mut r = random::rng(2, 0);
        let k = TwoVariableFunction::from_fn(8, |_, _| random::complex(&mut r));
        let a = partial_fourier(&d, &k).unwrap();
        assert!(inverse_partial_fourier(&d, &a).unwrap().max_abs_diff(&k) < 1e-12);
        assert!((group_first_norm(&a).unwrap() - k.norm()).abs() < 1e-12);
    }

    #[test]
    fn op_of_one_is_identity() {
        let (g, d) = setup("S3");
        let one = SymbolField::one(&d, Orientation::GroupFirst);
        for route in [OpRoute::Kernel, OpRoute::Direct, OpRoute::Weak] {
            let op = op_quantize_with(&g, &d, &one, route).unwrap();
            assert!(linalg::max_abs_diff(op.matrix(), &linalg::identity(6)) < 1e-12);
        }
        assert!(matches!(op_quantize(&g, &d, &one.flipped()), Err(Error::Orientation { .. })));
    }

    #[test]
    fn op_routes_agree() {
        let (g, d) = setup("S3");
        let a = random::symbol(&mut random::rng(3, 0), &d, Orientation::GroupFirst);
        let k = op_quantize_with(&g, &d, &a, OpRoute::Kernel).unwrap();
        let dr = op_quantize_with(&g, &d, &a, OpRoute::Direct).unwrap();
        let w = op_quantize_with(&g, &d, &a, OpRoute::Weak).unwrap();
        assert!(linalg::max_abs_diff(k.matrix(), dr.matrix()) < 1e-10);
        assert!(linalg::max_abs_diff(k.matrix(), w.matrix()) < 1e-10);
        let hs = linalg::hs_norm_sqr(k.matrix()).sqrt();
        assert!((hs - group_first_norm(&a).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn berezin_symbol_routes() {
        for s in ["Z4", "D4"] {
            let (g, d) = setup(s);
            let mut r = random::rng(4, 0);
            let omega = random::function(&mut r, g.order());
            let f = random::symbol(&mut r, &d, Orientation::DualFirst);
            let a = symbol_from_berezin(&g, &d, &omega, &f).unwrap();
            let explicit = symbol_from_berezin_explicit(&g, &d, &omega, &f).unwrap();
            assert!(a.max_abs_diff(&explicit).unwrap() < 1e-10, "{s}");
            let ber = berezin_weak(&g, &d, &omega, &f).unwrap();
            let op = op_quantize(&g, &d, &a).unwrap();
            assert!(linalg::max_abs_diff(op.matrix(), ber.matrix()) < 1e-9, "{s}");
        }
    }

    #[test]
    fn abelian_convolution_matches() {
        for s in ["Z2", "Z4", "Z2xZ2", "Z5"] {
            let (g, d) = setup(s);
            let mut r = random::rng(5, 0);
            let omega = random::function(&mut r, g.order());
            let f = random::symbol(&mut r, &d, Orientation::DualFirst);
            let conv = abelian_convolution_symbol(&g, &d, &omega, &f).unwrap();
            let a = symbol_from_berezin(&g, &d, &omega, &f).unwrap();
            assert!(conv.max_abs_diff(&a).unwrap() < 1e-10, "{s}");
        }
        let (g, d) = setup("S3");
        let f = SymbolField::one(&d, Orientation::DualFirst);
        let err = abelian_convolution_symbol(&g, &d, &GroupFunction::delta(6, 0), &f);
        assert_eq!(err, Err(Error::NotAbelian));
    }

    #[test]
    fn character_group_of_z2xz2() {
        let (_, d) = setup("Z2xZ2");
        let cg = character_group(&d).unwrap();
        assert_eq!(cg.identity, 0);
        for a in 0..4 {
            assert_eq!(cg.product[a][cg.inverse[a]], cg.identity);
            assert_eq!(cg.inverse[a], a);
        }
    }
}
