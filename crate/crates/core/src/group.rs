//! Finite groups given by Cayley tables, plus the built-in catalog.
//!
//! Element `0` is always the identity. The Haar measure is the counting
//! measure, so `L²(G)` is plain `C^{|G|}`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// Default cap on the order of groups built from the catalog.
pub const DEFAULT_ORDER_BOUND: usize = 64;

/// A finite group with counting Haar measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    /// Row-major Cayley table: `mul[x * order + y] = x·y`.
    mul: Vec<usize>,
    inv: Vec<usize>,
    spec: Option<GroupSpec>,
}

impl FiniteGroup {
    /// Builds a group from a Cayley table and rejects it unless every
    /// group axiom holds with identity at index 0.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let g = Self::from_table_unchecked(name, table)?;
        let report = validate_group(&g);
        if let Some(bad) = report.entries.iter().find(|e| !e.passed) {
            return Err(Error::InvalidGroup(format!(
                "{} fails: {}",
                bad.name,
                bad.witness.clone().unwrap_or_default()
            )));
        }
        Ok(g)
    }

    /// Builds a group from a table checking only its shape and entry range.
    /// Use [`validate_group`] to inspect the axioms.
    pub fn from_table_unchecked(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (x, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!("row {x} has length {}, expected {order}", row.len())));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::InvalidGroup(format!("entry {v} in row {x} out of range")));
                }
                mul.push(v);
            }
        }
        Ok(Self::from_flat(name.into(), order, mul, None))
    }

    fn from_flat(name: String, order: usize, mul: Vec<usize>, spec: Option<GroupSpec>) -> Self {
        // Right inverse search; a missing inverse falls back to x itself and
        // is then caught by validate_group.
        let inv = (0..order).map(|x| (0..order).find(|&y| mul[x * order + y] == 0).unwrap_or(x)).collect();
        Self { name, order, mul, inv, spec }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub const fn identity(&self) -> usize {
        0
    }

    /// The catalog spec this group was built from, if any.
    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// `x·y⁻¹`
    #[inline]
    pub fn div(&self, x: usize, y: usize) -> usize {
        self.mul(x, self.inv(y))
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }

    /// Cayley table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        commutativity_witness(self).is_none()
    }

    /// Overwrites one Cayley table entry. Only useful to build corrupted
    /// tables for validator tests.
    pub fn with_entry(mut self, x: usize, y: usize, value: usize) -> Self {
        self.mul[x * self.order + y] = value;
        let (name, order, mul) = (self.name, self.order, self.mul);
        Self::from_flat(name, order, mul, None)
    }

    pub(crate) fn check_index(&self, x: usize) -> Result<()> {
        if x >= self.order {
            return Err(Error::IndexOutOfRange { index: x, len: self.order });
        }
        Ok(())
    }
}

/// First pair `(x, y)` with `x·y ≠ y·x`, if any.
pub fn commutativity_witness(g: &FiniteGroup) -> Option<(usize, usize)> {
    for x in g.elements() {
        for y in x + 1..g.order() {
            if g.mul(x, y) != g.mul(y, x) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Exhaustive check of the group axioms on the Cayley table.
pub fn validate_group(g: &FiniteGroup) -> ValidationReport {
    let n = g.order();
    let mut report = ValidationReport::new();

    let identity = g
        .elements()
        .find(|&x| g.mul(0, x) != x || g.mul(x, 0) != x)
        .map(|x| format!("x={x}: e·x={}, x·e={}", g.mul(0, x), g.mul(x, 0)));
    report.exact("identity", identity);

    let inverses = g
        .elements()
        .find(|&x| g.mul(x, g.inv(x)) != 0 || g.mul(g.inv(x), x) != 0)
        .map(|x| format!("x={x} has no two-sided inverse"));
    report.exact("inverses", inverses);

    let mut latin = None;
    'rows: for x in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for y in 0..n {
            let r = g.mul(x, y);
            let c = g.mul(y, x);
            if row_seen[r] {
                latin = Some(format!("row {x} repeats {r}"));
                break 'rows;
            }
            if col_seen[c] {
                latin = Some(format!("column {x} repeats {c}"));
                break 'rows;
            }
            row_seen[r] = true;
            col_seen[c] = true;
        }
    }
    report.exact("latin-square", latin);

    let mut assoc = None;
    'outer: for x in 0..n {
        for y in 0..n {
            let xy = g.mul(x, y);
            for z in 0..n {
                if g.mul(xy, z) != g.mul(x, g.mul(y, z)) {
                    assoc = Some(format!("(x,y,z)=({x},{y},{z})"));
                    break 'outer;
                }
            }
        }
    }
    report.exact("associativity", assoc);
    report
}

/// Componentwise product; element `(i, j)` gets index `i·|h| + j`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, bound: usize) -> Result<FiniteGroup> {
    let (m, k) = (g.order(), h.order());
    let order = m * k;
    if order > bound {
        return Err(Error::OrderBound { order, bound });
    }
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            let (a1, a2) = (a / k, a % k);
            let (b1, b2) = (b / k, b % k);
            mul.push(g.mul(a1, b1) * k + h.mul(a2, b2));
        }
    }
    let spec = match (g.spec(), h.spec()) {
        (Some(s), Some(t)) => Some(GroupSpec::Product(Box::new(s.clone()), Box::new(t.clone()))),
        _ => None,
    };
    let name = match &spec {
        Some(s) => s.to_string(),
        None => format!("product({},{})", g.name(), h.name()),
    };
    Ok(FiniteGroup::from_flat(name, order, mul, spec))
}

/// Catalog entry describing a built-in group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Symmetries of the regular n-gon, order 2n.
    Dihedral(usize),
    /// Permutations of n ≤ 4 letters.
    Symmetric(usize),
    Quaternion8,
    /// Upper unitriangular 3×3 matrices over Z_p, p prime.
    Heisenberg(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    /// Order of the group, or an error if the parameters are outside the catalog.
    pub fn order(&self) -> Result<usize> {
        Ok(match self {
            GroupSpec::Cyclic(n) => {
                if *n == 0 {
                    return Err(Error::InvalidParameter("cyclic(n) needs n >= 1".into()));
                }
                *n
            }
            GroupSpec::Dihedral(n) => {
                if *n == 0 {
                    return Err(Error::InvalidParameter("dihedral(n) needs n >= 1".into()));
                }
                2 * n
            }
            GroupSpec::Symmetric(n) => {
                if !(1..=4).contains(n) {
                    return Err(Error::InvalidParameter("symmetric(n) needs 1 <= n <= 4".into()));
                }
                (1..=*n).product()
            }
            GroupSpec::Quaternion8 => 8,
            GroupSpec::Heisenberg(p) => {
                if !is_prime(*p) {
                    return Err(Error::InvalidParameter(format!("heisenberg(p) needs p prime, got {p}")));
                }
                p * p * p
            }
            GroupSpec::Product(a, b) => a.order()?.saturating_mul(b.order()?),
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric({n})"),
            GroupSpec::Quaternion8 => write!(f, "quaternion8"),
            GroupSpec::Heisenberg(p) => write!(f, "heisenberg({p})"),
            GroupSpec::Product(a, b) => write!(f, "product({a},{b})"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts the canonical form (`cyclic(4)`, `product(cyclic(2),symmetric(3))`)
    /// and the short aliases `Z4`, `C4`, `D4`, `S3`, `Q8`, `H3`, joined by `x`
    /// for products (`Z2xZ2`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let malformed = || Error::MalformedSpec(s.into());
        if s.is_empty() {
            return Err(malformed());
        }
        if let Some(open) = s.find('(') {
            if !s.ends_with(')') {
                return Err(malformed());
            }
            let family = s[..open].trim().to_ascii_lowercase();
            let inner = &s[open + 1..s.len() - 1];
            let int = || inner.trim().parse::<usize>().map_err(|_| malformed());
            return match family.as_str() {
                "cyclic" => Ok(GroupSpec::Cyclic(int()?)),
                "dihedral" => Ok(GroupSpec::Dihedral(int()?)),
                "symmetric" => Ok(GroupSpec::Symmetric(int()?)),
                "heisenberg" => Ok(GroupSpec::Heisenberg(int()?)),
                "quaternion" if inner.trim() == "8" => Ok(GroupSpec::Quaternion8),
                "product" => {
                    let split = top_level_comma(inner).ok_or_else(malformed)?;
                    Ok(GroupSpec::product(inner[..split].parse()?, inner[split + 1..].parse()?))
                }
                other => Err(Error::UnknownFamily(other.into())),
            };
        }
        // Alias products: split on the last top-level 'x' or '×'.
        for sep in ['×', 'x'] {
            if let Some(pos) = s.rfind(sep) {
                if pos > 0 {
                    let (a, b) = (&s[..pos], &s[pos + sep.len_utf8()..]);
                    return Ok(GroupSpec::product(a.parse()?, b.parse()?));
                }
            }
        }
        let lower = s.to_ascii_lowercase();
        if lower == "quaternion8" || lower == "q8" {
            return Ok(GroupSpec::Quaternion8);
        }
        let mut chars = s.chars();
        let head = chars.next().map(|c| c.to_ascii_uppercase());
        let n = chars.as_str().parse::<usize>().map_err(|_| Error::UnknownFamily(s.into()))?;
        match head {
            Some('Z' | 'C') => Ok(GroupSpec::Cyclic(n)),
            Some('D') => Ok(GroupSpec::Dihedral(n)),
            Some('S') => Ok(GroupSpec::Symmetric(n)),
            Some('H') => Ok(GroupSpec::Heisenberg(n)),
            _ => Err(Error::UnknownFamily(s.into())),
        }
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The groups every verification run covers by default.
pub fn default_battery() -> Vec<GroupSpec> {
    vec![
        GroupSpec::Cyclic(4),
        GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(2)),
        GroupSpec::Dihedral(4),
        GroupSpec::Quaternion8,
        GroupSpec::Symmetric(3),
        GroupSpec::Symmetric(4),
        GroupSpec::Heisenberg(3),
    ]
}

/// Builds a catalog group. Fails if the spec is out of range or its order
/// exceeds `bound`.
pub fn build_group(spec: &GroupSpec, bound: usize) -> Result<FiniteGroup> {
    let order = spec.order()?;
    if order > bound {
        return Err(Error::OrderBound { order, bound });
    }
    let name = spec.to_string();
    let flat = |mul: Vec<usize>| FiniteGroup::from_flat(name.clone(), order, mul, Some(spec.clone()));
    Ok(match spec {
        GroupSpec::Cyclic(n) => flat(table_from(*n, |a, b| (a + b) % n)),
        GroupSpec::Dihedral(n) => {
            let n = *n;
            flat(table_from(2 * n, |a, b| {
                let (ka, ea) = (a % n, a / n);
                let (kb, eb) = (b % n, b / n);
                let k = if ea == 0 { ka + kb } else { ka + n - kb } % n;
                k + n * ((ea + eb) % 2)
            }))
        }
        GroupSpec::Symmetric(n) => {
            let perms = permutations(*n);
            flat(table_from(perms.len(), |a, b| {
                let composed: Vec<usize> = perms[b].iter().map(|&i| perms[a][i]).collect();
                perms.iter().position(|p| *p == composed).expect("closed under composition")
            }))
        }
        GroupSpec::Quaternion8 => flat(table_from(8, quaternion_mul)),
        GroupSpec::Heisenberg(p) => {
            let p = *p;
            flat(table_from(p * p * p, |x, y| {
                let (a, b, c) = heisenberg_coords(x, p);
                let (a2, b2, c2) = heisenberg_coords(y, p);
                heisenberg_index((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p, p)
            }))
        }
        GroupSpec::Product(a, b) => {
            let g = build_group(a, bound)?;
            let h = build_group(b, bound)?;
            direct_product(&g, &h, bound)?
        }
    })
}

fn table_from(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mul.push(f(a, b));
        }
    }
    mul
}

/// Permutations of `0..n` in lexicographic order (identity first).
/// Composition is `(a·b)(i) = a(b(i))`.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Q8 elements in order `1, -1, i, -i, j, -j, k, -k`: index = 2·unit + negative.
fn quaternion_mul(a: usize, b: usize) -> usize {
    let (ua, sa) = (a / 2, a % 2);
    let (ub, sb) = (b / 2, b % 2);
    // unit product table over {1, i, j, k}: (unit, sign flip)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let (u, s) = UNIT[ua][ub];
    2 * u + (sa + sb + s) % 2
}

pub(crate) fn heisenberg_coords(x: usize, p: usize) -> (usize, usize, usize) {
    (x % p, (x / p) % p, x / (p * p))
}

pub(crate) fn heisenberg_index(a: usize, b: usize, c: usize, p: usize) -> usize {
    a + p * b + p * p * c
}
