//! The unitary dual of a finite group: one unitary matrix representative
//! per irrep class, with Plancherel weights `d_ξ/|G|`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{heisenberg_index, permutations, FiniteGroup, GroupSpec};
use crate::linalg::{self, root_of_unity, CMatrix, ONE, ZERO};
use crate::report::ValidationReport;

/// Entrywise tolerance for homomorphism and unitarity checks.
pub const MATRIX_TOL: f64 = 1e-10;
/// Tolerance for character and Schur orthogonality sums.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;
/// Two irreps are considered equivalent when their characters agree this closely.
pub const CHARACTER_MATCH_TOL: f64 = 1e-8;

/// A unitary irreducible representation, stored as one matrix per element.
#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    pub label: String,
    pub dim: usize,
    pub matrices: Vec<CMatrix>,
}

impl Irrep {
    pub fn new(label: impl Into<String>, matrices: Vec<CMatrix>) -> Self {
        let dim = matrices.first().map_or(0, |m| m.nrows());
        Self { label: label.into(), dim, matrices }
    }

    #[inline]
    pub fn at(&self, x: usize) -> &CMatrix {
        &self.matrices[x]
    }

    pub fn character(&self) -> Vec<Complex64> {
        self.matrices.iter().map(linalg::trace).collect()
    }
}

/// Irreps `ξ` together with the Plancherel masses `m̂({ξ}) = d_ξ/|G|`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryDual {
    order: usize,
    irreps: Vec<Irrep>,
    weights: Vec<f64>,
}

impl UnitaryDual {
    /// Wraps a list of irreps for a group of the given order; weights are
    /// set to `d_ξ/|G|`. No validation happens here.
    pub fn new(order: usize, irreps: Vec<Irrep>) -> Self {
        let weights = irreps.iter().map(|r| r.dim as f64 / order as f64).collect();
        Self { order, irreps, weights }
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn irrep(&self, xi: usize) -> &Irrep {
        &self.irreps[xi]
    }

    pub fn dim(&self, xi: usize) -> usize {
        self.irreps[xi].dim
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.dim).collect()
    }

    pub fn weight(&self, xi: usize) -> f64 {
        self.weights[xi]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `ξ(x)`
    #[inline]
    pub fn rep(&self, xi: usize, x: usize) -> &CMatrix {
        &self.irreps[xi].matrices[x]
    }

    /// `ξ(x)^*`
    pub fn rep_adjoint(&self, xi: usize, x: usize) -> CMatrix {
        self.rep(xi, x).adjoint()
    }

    pub fn characters(&self) -> Vec<Vec<Complex64>> {
        self.irreps.iter().map(Irrep::character).collect()
    }

    /// `Σ_ξ d_ξ²`, which equals `|G|` for a complete dual.
    pub fn dimension_sum(&self) -> usize {
        self.irreps.iter().map(|r| r.dim * r.dim).sum()
    }

    pub fn is_abelian(&self) -> bool {
        self.irreps.iter().all(|r| r.dim == 1)
    }

    pub(crate) fn check_index(&self, xi: usize) -> Result<()> {
        if xi >= self.irreps.len() {
            return Err(Error::IndexOutOfRange { index: xi, len: self.irreps.len() });
        }
        Ok(())
    }
}

/// Builds the dual of a catalog group, or of any abelian group.
///
/// Catalog irreps are given by generator images and propagated over the
/// Cayley table; products get Kronecker products of factor irreps.
pub fn build_dual(g: &FiniteGroup) -> Result<UnitaryDual> {
    let irreps = match g.spec() {
        Some(spec) => catalog_irreps(g, spec)?,
        None if g.is_abelian() => abelian_characters(g),
        None => return Err(Error::NoCatalog(g.name().into())),
    };
    Ok(UnitaryDual::new(g.order(), irreps))
}

fn catalog_irreps(g: &FiniteGroup, spec: &GroupSpec) -> Result<Vec<Irrep>> {
    let scalar = |z: Complex64| CMatrix::from_element(1, 1, z);
    let real = |v: f64| Complex64::new(v, 0.0);
    Ok(match spec {
        GroupSpec::Cyclic(n) => {
            let n = *n as u64;
            (0..n)
                .map(|k| {
                    let mats = (0..n).map(|j| scalar(root_of_unity(-((k * j) as i64), n))).collect();
                    Irrep::new(format!("chi{k}"), mats)
                })
                .collect()
        }
        GroupSpec::Dihedral(n) => {
            let n = *n;
            let (r, s) = (1 % n, n);
            let mut out = Vec::new();
            let mut one_dim = vec![("trivial", 1.0, 1.0), ("sign", 1.0, -1.0)];
            if n % 2 == 0 {
                one_dim.push(("alt", -1.0, 1.0));
                one_dim.push(("alt-sign", -1.0, -1.0));
            }
            for (label, rv, sv) in one_dim {
                out.push(from_generators(g, label, &[(r, scalar(real(rv))), (s, scalar(real(sv)))]));
            }
            for h in 1..=(n - 1) / 2 {
                let w = root_of_unity(h as i64, n as u64);
                let rot = CMatrix::from_row_slice(2, 2, &[w, ZERO, ZERO, w.conj()]);
                let flip = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
                out.push(from_generators(g, &format!("rho{h}"), &[(r, rot), (s, flip)]));
            }
            out
        }
        GroupSpec::Symmetric(n) => symmetric_irreps(g, *n),
        GroupSpec::Quaternion8 => {
            let (i, j) = (2, 4);
            let mut out = Vec::new();
            for (label, a, b) in
                [("trivial", 1.0, 1.0), ("chi_i", 1.0, -1.0), ("chi_j", -1.0, 1.0), ("chi_k", -1.0, -1.0)]
            {
                out.push(from_generators(g, label, &[(i, scalar(real(a))), (j, scalar(real(b)))]));
            }
            let im = Complex64::new(0.0, 1.0);
            let qi = CMatrix::from_row_slice(2, 2, &[im, ZERO, ZERO, -im]);
            let qj = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, -ONE, ZERO]);
            out.push(from_generators(g, "quaternion", &[(i, qi), (j, qj)]));
            out
        }
        GroupSpec::Heisenberg(p) => {
            let p = *p;
            let (a, b) = (heisenberg_index(1, 0, 0, p), heisenberg_index(0, 1, 0, p));
            let mut out = Vec::new();
            for t in 0..p {
                for s in 0..p {
                    let za = scalar(root_of_unity(s as i64, p as u64));
                    let zb = scalar(root_of_unity(t as i64, p as u64));
                    out.push(from_generators(g, &format!("chi{s}{t}"), &[(a, za), (b, zb)]));
                }
            }
            for h in 1..p {
                let clock =
                    CMatrix::from_fn(p, p, |r, c| if r == c { root_of_unity((h * r) as i64, p as u64) } else { ZERO });
                let shift = CMatrix::from_fn(p, p, |r, c| if r == (c + 1) % p { ONE } else { ZERO });
                out.push(from_generators(g, &format!("schroedinger{h}"), &[(a, clock), (b, shift)]));
            }
            out
        }
        GroupSpec::Product(a, b) => {
            // Rebuild the factors with an unbounded cap: the product already fits.
            let ga = crate::group::build_group(a, usize::MAX)?;
            let gb = crate::group::build_group(b, usize::MAX)?;
            let da = catalog_irreps(&ga, a)?;
            let db = catalog_irreps(&gb, b)?;
            let k = gb.order();
            let mut out = Vec::with_capacity(da.len() * db.len());
            for xa in &da {
                for xb in &db {
                    let mats = (0..g.order()).map(|x| linalg::kron(xa.at(x / k), xb.at(x % k))).collect();
                    out.push(Irrep::new(format!("{}*{}", xa.label, xb.label), mats));
                }
            }
            out
        }
    })
}

/// Extends generator images to every element by breadth-first search on the
/// Cayley table: `ρ(g·t) = ρ(g)ρ(t)`.
fn from_generators(g: &FiniteGroup, label: &str, gens: &[(usize, CMatrix)]) -> Irrep {
    let d = gens.first().map_or(1, |(_, m)| m.nrows());
    let mut mats: Vec<Option<CMatrix>> = vec![None; g.order()];
    mats[0] = Some(linalg::identity(d));
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (t, image) in gens {
            let y = g.mul(x, *t);
            if mats[y].is_none() {
                let m = mats[x].as_ref().expect("visited") * image;
                mats[y] = Some(m);
                queue.push_back(y);
            }
        }
    }
    let mats = mats.into_iter().map(|m| m.expect("generators must generate the group")).collect();
    Irrep::new(label, mats)
}

/// Young's orthogonal form for every partition of `n`.
fn symmetric_irreps(g: &FiniteGroup, n: usize) -> Vec<Irrep> {
    let perms = permutations(n);
    let transposition = |i: usize| {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(i, i + 1);
        perms.iter().position(|q| *q == p).expect("transposition is a permutation")
    };
    let mut out = Vec::new();
    for shape in partitions(n) {
        let tableaux = standard_tableaux(&shape);
        let d = tableaux.len();
        let mut gens = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut m = linalg::zeros(d, d);
            for (a, t) in tableaux.iter().enumerate() {
                let (ri, ci) = t[i];
                let (rj, cj) = t[i + 1];
                if ri == rj {
                    m[(a, a)] = ONE;
                } else if ci == cj {
                    m[(a, a)] = -ONE;
                } else {
                    let axial = (cj as f64 - rj as f64) - (ci as f64 - ri as f64);
                    let mut swapped = t.clone();
                    swapped.swap(i, i + 1);
                    let b = tableaux.iter().position(|u| *u == swapped).expect("swap stays standard");
                    m[(a, a)] = Complex64::new(1.0 / axial, 0.0);
                    m[(b, a)] = Complex64::new((1.0 - 1.0 / (axial * axial)).sqrt(), 0.0);
                }
            }
            gens.push((transposition(i), m));
        }
        let label = format!("young{shape:?}");
        if gens.is_empty() {
            out.push(Irrep::new(label, vec![linalg::identity(1); g.order()]));
        } else {
            out.push(from_generators(g, &label, &gens));
        }
    }
    out
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Standard tableaux of a shape, each as the (row, column) cell of every number.
fn standard_tableaux(shape: &[usize]) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        shape: &[usize],
        filled: &mut Vec<usize>,
        cells: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if filled.iter().zip(shape).all(|(f, s)| f == s) {
            out.push(cells.clone());
            return;
        }
        for row in 0..shape.len() {
            let col = filled[row];
            let fits = col < shape[row] && (row == 0 || filled[row - 1] > col);
            if fits {
                filled[row] += 1;
                cells.push((row, col));
                rec(shape, filled, cells, out);
                cells.pop();
                filled[row] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(shape, &mut vec![0; shape.len()], &mut Vec::new(), &mut out);
    out
}

/// All characters of an abelian group, built by extending characters of a
/// growing subgroup `H` one element `g` at a time: if `g^k` is the first
/// power landing in `H`, each character of `H` has exactly `k` extensions,
/// one per `k`-th root of `χ(g^k)`.
fn abelian_characters(g: &FiniteGroup) -> Vec<Irrep> {
    let n = g.order();
    let mut members = vec![0usize];
    let mut in_h = vec![false; n];
    in_h[0] = true;
    // chars[c][x] defined for x in H
    let mut chars: Vec<Vec<Complex64>> = vec![vec![ONE; n]];
    while members.len() < n {
        let gen = (0..n).find(|&x| !in_h[x]).expect("H is a proper subgroup");
        let mut powers = vec![0usize, gen];
        while !in_h[*powers.last().expect("non-empty")] {
            let next = g.mul(*powers.last().expect("non-empty"), gen);
            powers.push(next);
        }
        let k = powers.len() - 1;
        let landing = powers[k];
        let mut new_members = Vec::with_capacity(members.len() * k);
        for &pj in &powers[..k] {
            for &h in &members {
                new_members.push(g.mul(h, pj));
            }
        }
        let mut new_chars = Vec::with_capacity(chars.len() * k);
        for chi in &chars {
            let base = chi[landing].im.atan2(chi[landing].re);
            for m in 0..k {
                let angle = (base + 2.0 * core::f64::consts::PI * m as f64) / k as f64;
                let lambda = Complex64::new(angle.cos(), angle.sin());
                let mut ext = vec![ZERO; n];
                for j in 0..k {
                    let lj = lambda.powu(j as u32);
                    for &h in &members {
                        ext[g.mul(h, powers[j])] = chi[h] * lj;
                    }
                }
                new_chars.push(ext);
            }
        }
        for &x in &new_members {
            in_h[x] = true;
        }
        members = new_members;
        chars = new_chars;
    }
    chars
        .into_iter()
        .enumerate()
        .map(|(i, chi)| {
            let mats = chi.into_iter().map(|z| CMatrix::from_element(1, 1, z)).collect();
            Irrep::new(format!("chi{i}"), mats)
        })
        .collect()
}

/// Checks everything the Plancherel theorem needs at finite scale and
/// reports the worst residual of each check.
pub fn validate_dual(g: &FiniteGroup, dual: &UnitaryDual) -> ValidationReport {
    let n = g.order();
    let mut report = ValidationReport::new();

    let shape_problem = if dual.group_order() != n {
        Some(format!("dual built for order {}, group has {n}", dual.group_order()))
    } else {
        dual.irreps().iter().enumerate().find_map(|(i, r)| {
            if r.dim == 0 || r.matrices.len() != n {
                Some(format!("irrep {i}: {} matrices of dim {}", r.matrices.len(), r.dim))
            } else {
                r.matrices
                    .iter()
                    .position(|m| m.shape() != (r.dim, r.dim))
                    .map(|x| format!("irrep {i}: matrix at {x} has wrong shape"))
            }
        })
    };
    let shapes_ok = shape_problem.is_none();
    report.exact("shapes", shape_problem);
    if !shapes_ok {
        return report;
    }

    let mut identity = 0.0f64;
    let mut homomorphism = 0.0f64;
    let mut unitarity = 0.0f64;
    let mut irreducibility = 0.0f64;
    let mut schur = 0.0f64;
    for r in dual.irreps() {
        let d = r.dim;
        let id = linalg::identity(d);
        identity = identity.max(linalg::max_abs_diff(r.at(0), &id));
        for x in 0..n {
            unitarity = unitarity.max(linalg::max_abs_diff(&(r.at(x) * r.at(x).adjoint()), &id));
            for y in 0..n {
                let prod = r.at(x) * r.at(y);
                homomorphism = homomorphism.max(linalg::max_abs_diff(r.at(g.mul(x, y)), &prod));
            }
        }
        let chi = r.character();
        let norm: f64 = chi.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
        irreducibility = irreducibility.max((norm - 1.0).abs());
        // Σ_x ξ(x)_{ij} conj(ξ(x)_{kl}) = (|G|/d) δ_ik δ_jl
        let scale = n as f64 / d as f64;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let s: Complex64 = (0..n).map(|x| r.at(x)[(i, j)] * r.at(x)[(k, l)].conj()).sum();
                        let expected = if i == k && j == l { scale } else { 0.0 };
                        schur = schur.max((s - Complex64::new(expected, 0.0)).norm());
                    }
                }
            }
        }
    }
    report.residual("identity", identity, MATRIX_TOL);
    report.residual("homomorphism", homomorphism, MATRIX_TOL);
    report.residual("unitarity", unitarity, MATRIX_TOL);
    report.residual("irreducibility", irreducibility, ORTHOGONALITY_TOL);
    report.residual("schur-orthogonality", schur, ORTHOGONALITY_TOL);

    let chars = dual.characters();
    let mut inequivalence = 0.0f64;
    for a in 0..chars.len() {
        for b in a + 1..chars.len() {
            let ip: Complex64 = chars[a].iter().zip(&chars[b]).map(|(u, v)| u * v.conj()).sum();
            inequivalence = inequivalence.max(ip.norm() / n as f64);
        }
    }
    report.residual("inequivalence", inequivalence, ORTHOGONALITY_TOL);

    let sum = dual.dimension_sum();
    report.exact("completeness", (sum != n).then(|| format!("sum of squared dims {sum} != |G| = {n}")));

    let weights =
        dual.irreps().iter().zip(dual.weights()).map(|(r, w)| (w - r.dim as f64 / n as f64).abs()).fold(0.0, f64::max);
    report.residual("plancherel-weights", weights, 1e-15);
    report
}

/// Matches two character lists up to reordering. Returns the largest
/// entrywise difference over the matching, or `None` if some character has
/// no partner within [`CHARACTER_MATCH_TOL`].
pub fn match_characters(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for chi in a {
        let (idx, diff) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, psi)| (j, character_distance(chi, psi)))
            .min_by(|x, y| x.1.total_cmp(&y.1))?;
        if diff > CHARACTER_MATCH_TOL {
            return None;
        }
        used[idx] = true;
        worst = worst.max(diff);
    }
    Some(worst)
}

pub(crate) fn character_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
