//! JSON and CSV interchange. Complex numbers are `[re, im]` pairs; matrices
//! are row-major arrays of rows. Output is byte-stable for identical inputs.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use bq_core::dual::{validate_dual, Irrep, UnitaryDual};
use bq_core::fourier::{GroupFunction, Orientation, SymbolField};
use bq_core::group::{validate_group, FiniteGroup};
use bq_core::linalg::CMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{BqError, Result};

pub type JsonComplex = [f64; 2];
pub type JsonMatrix = Vec<Vec<JsonComplex>>;

pub fn complex_to_json(z: Complex64) -> JsonComplex {
    [z.re, z.im]
}

pub fn complex_from_json(z: JsonComplex) -> Complex64 {
    Complex64::new(z[0], z[1])
}

pub fn matrix_to_json(m: &CMatrix) -> JsonMatrix {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| complex_to_json(m[(i, j)])).collect()).collect()
}

pub fn matrix_from_json(rows: &JsonMatrix) -> Result<CMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(BqError::Format("ragged matrix rows".into()));
    }
    Ok(CMatrix::from_fn(r, c, |i, j| complex_from_json(rows[i][j])))
}

pub fn function_to_json(u: &GroupFunction) -> Vec<JsonComplex> {
    u.values().iter().copied().map(complex_to_json).collect()
}

pub fn function_from_json(values: &[JsonComplex]) -> GroupFunction {
    GroupFunction::new(values.iter().copied().map(complex_from_json).collect())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupJson {
    pub name: String,
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
}

impl GroupJson {
    pub fn from_group(g: &FiniteGroup) -> Self {
        Self { name: g.name().into(), order: g.order(), mul: g.table() }
    }

    /// Builds the group and runs the full axiom check.
    pub fn into_group(self) -> Result<FiniteGroup> {
        if self.mul.len() != self.order {
            return Err(BqError::Format(format!("order {} but {} table rows", self.order, self.mul.len())));
        }
        let g = FiniteGroup::from_table_unchecked(self.name, self.mul)?;
        let report = validate_group(&g);
        if let Some(bad) = report.entries.iter().find(|e| !e.passed) {
            return Err(BqError::Format(format!(
                "group axiom `{}` fails: {}",
                bad.name,
                bad.witness.clone().unwrap_or_default()
            )));
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IrrepJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub dim: usize,
    pub matrices: Vec<JsonMatrix>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DualJson {
    pub irreps: Vec<IrrepJson>,
}

impl DualJson {
    pub fn from_dual(dual: &UnitaryDual) -> Self {
        let irreps = dual
            .irreps()
            .iter()
            .map(|r| IrrepJson {
                label: Some(r.label.clone()),
                dim: r.dim,
                matrices: r.matrices.iter().map(matrix_to_json).collect(),
            })
            .collect();
        Self { irreps }
    }

    /// Rebuilds the dual and re-runs every representation check against `g`.
    pub fn into_dual(self, g: &FiniteGroup) -> Result<UnitaryDual> {
        let mut irreps = Vec::with_capacity(self.irreps.len());
        for (i, r) in self.irreps.into_iter().enumerate() {
            let matrices = r.matrices.iter().map(matrix_from_json).collect::<Result<Vec<_>>>()?;
            if matrices.len() != g.order() || matrices.iter().any(|m| m.shape() != (r.dim, r.dim)) {
                return Err(BqError::Format(format!("irrep {i}: expected {} matrices of size {}", g.order(), r.dim)));
            }
            irreps.push(Irrep::new(r.label.unwrap_or_else(|| format!("irrep{i}")), matrices));
        }
        let dual = UnitaryDual::new(g.order(), irreps);
        let report = validate_dual(g, &dual);
        if let Some(bad) = report.entries.iter().find(|e| !e.passed) {
            let detail =
                bad.witness.clone().or_else(|| bad.max_residual.map(|r| format!("residual {r:e}"))).unwrap_or_default();
            return Err(BqError::Format(format!("dual check `{}` fails: {detail}", bad.name)));
        }
        Ok(dual)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolJson {
    pub orientation: String,
    /// Keyed by `"<xi>,<x>"`.
    pub blocks: BTreeMap<String, JsonMatrix>,
}

impl SymbolJson {
    pub fn from_symbol(f: &SymbolField) -> Self {
        let blocks = f.iter().map(|(xi, x, b)| (format!("{xi},{x}"), matrix_to_json(b))).collect();
        Self { orientation: f.orientation().as_str().into(), blocks }
    }

    /// Rebuilds the field over `dual`; every `(ξ, x)` block must be present.
    pub fn into_symbol(self, dual: &UnitaryDual) -> Result<SymbolField> {
        let orientation = match self.orientation.as_str() {
            "dual-first" => Orientation::DualFirst,
            "group-first" => Orientation::GroupFirst,
            other => return Err(BqError::Format(format!("unknown orientation `{other}`"))),
        };
        let n = dual.group_order();
        let expected = dual.len() * n;
        if self.blocks.len() != expected {
            return Err(BqError::Format(format!("expected {expected} blocks, found {}", self.blocks.len())));
        }
        let mut blocks = Vec::with_capacity(expected);
        for xi in 0..dual.len() {
            for x in 0..n {
                let key = format!("{xi},{x}");
                let rows = self.blocks.get(&key).ok_or_else(|| BqError::Format(format!("missing block `{key}`")))?;
                blocks.push(matrix_from_json(rows)?);
            }
        }
        Ok(SymbolField::new(orientation, n, dual.dims(), blocks)?)
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Single-line JSON, for large numeric artifacts.
pub fn to_json_compact<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    write_text(path, &to_json_string(value)?)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| BqError::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| BqError::io(path, e))
}

/// One eigenvalue per line with a header.
pub fn spectrum_csv(values: &[f64]) -> String {
    let mut s = String::from("index,eigenvalue\n");
    for (i, v) in values.iter().enumerate() {
        s.push_str(&format!("{i},{v:e}\n"));
    }
    s
}
