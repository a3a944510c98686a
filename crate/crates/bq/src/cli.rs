//! Group and input resolution shared by the CLI and tests.

use std::path::Path;

use bq_core::dual::{build_dual, UnitaryDual};
use bq_core::extract::extract_irreps_numeric;
use bq_core::fourier::{GroupFunction, Orientation, SymbolField};
use bq_core::group::{build_group, FiniteGroup, GroupSpec, DEFAULT_ORDER_BOUND};
use bq_core::random::{self, Generator};
use bq_core::Error;

use crate::error::{BqError, Result};
use crate::formats::{function_from_json, read_json, DualJson, GroupJson, JsonComplex, SymbolJson};

pub const ORDER_BOUND_VAR: &str = "BQ_ORDER_BOUND";

/// Order cap from `BQ_ORDER_BOUND`, or the default.
pub fn order_bound() -> Result<usize> {
    match std::env::var(ORDER_BOUND_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| BqError::Usage {
            name: ORDER_BOUND_VAR,
            reason: format!("expected a positive integer, got `{v}`"),
        }),
        Err(_) => Ok(DEFAULT_ORDER_BOUND),
    }
}

/// Resolves a catalog spec (`S3`, `product(cyclic(2),cyclic(2))`) or a
/// `file:<path>` group table.
pub fn load_group(spec: &str, bound: usize) -> Result<FiniteGroup> {
    if let Some(path) = spec.strip_prefix("file:") {
        let g = read_json::<GroupJson>(Path::new(path))?.into_group()?;
        if g.order() > bound {
            return Err(Error::OrderBound { order: g.order(), bound }.into());
        }
        return Ok(g);
    }
    Ok(build_group(&spec.parse::<GroupSpec>()?, bound)?)
}

/// The dual from a file if given, else the catalog, else numeric extraction.
pub fn load_dual(g: &FiniteGroup, dual_file: Option<&Path>, seed: u64) -> Result<UnitaryDual> {
    if let Some(path) = dual_file {
        return read_json::<DualJson>(path)?.into_dual(g);
    }
    match build_dual(g) {
        Err(Error::NoCatalog(_)) => Ok(extract_irreps_numeric(g, seed)?),
        other => Ok(other?),
    }
}

/// `delta-e`, `random` (unit norm) or `file:<path>` (array of `[re, im]`).
pub fn load_window(spec: &str, g: &FiniteGroup, rng: &mut Generator) -> Result<GroupFunction> {
    let omega = match spec {
        "delta-e" => GroupFunction::delta(g.order(), g.identity()),
        "random" => random::unit_function(rng, g.order()),
        _ => match spec.strip_prefix("file:") {
            Some(path) => function_from_json(&read_json::<Vec<JsonComplex>>(Path::new(path))?),
            None => return Err(BqError::Usage { name: "--omega", reason: format!("unknown window `{spec}`") }),
        },
    };
    if omega.len() != g.order() {
        return Err(BqError::Format(format!("window has {} values, group order is {}", omega.len(), g.order())));
    }
    Ok(omega)
}

/// `one`, `random` or `file:<path>`; file symbols keep their stored orientation.
pub fn load_symbol(
    spec: &str,
    dual: &UnitaryDual,
    orientation: Orientation,
    rng: &mut Generator,
) -> Result<SymbolField> {
    match spec {
        "one" => Ok(SymbolField::one(dual, orientation)),
        "random" => Ok(random::symbol(rng, dual, orientation)),
        _ => match spec.strip_prefix("file:") {
            Some(path) => read_json::<SymbolJson>(Path::new(path))?.into_symbol(dual),
            None => Err(BqError::Usage { name: "--symbol", reason: format!("unknown symbol `{spec}`") }),
        },
    }
}

/// Catalog entries shown by `list-groups`.
pub fn catalog() -> Vec<GroupSpec> {
    use GroupSpec::*;
    vec![
        Cyclic(1),
        Cyclic(2),
        Cyclic(3),
        Cyclic(4),
        Cyclic(5),
        Cyclic(6),
        Cyclic(8),
        GroupSpec::product(Cyclic(2), Cyclic(2)),
        GroupSpec::product(Cyclic(2), Cyclic(4)),
        GroupSpec::product(Cyclic(3), Cyclic(3)),
        Dihedral(3),
        Dihedral(4),
        Dihedral(5),
        Dihedral(6),
        Quaternion8,
        Symmetric(3),
        Symmetric(4),
        Heisenberg(3),
        GroupSpec::product(Cyclic(2), Symmetric(3)),
    ]
}

/// One line per catalog group: name, order, sorted irrep dimensions.
pub fn list_groups(bound: usize) -> Result<String> {
    let mut out = String::new();
    for spec in catalog() {
        let order = spec.order()?;
        let spec = spec.to_string();
        if order > bound {
            out.push_str(&format!("{spec:<34} order {order:>3}  (exceeds order bound {bound})\n"));
            continue;
        }
        let g = build_group(&spec.parse()?, bound)?;
        let mut dims = build_dual(&g)?.dims();
        dims.sort_unstable();
        let list = dims.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        out.push_str(&format!("{spec:<34} order {order:>3}  dims {{{list}}}  [{}]\n", multiplicities(&dims)));
    }
    Ok(out)
}

fn multiplicities(sorted: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&d| d == sorted[i]).count();
        parts.push(format!("{}x{}", sorted[i], j));
        i += j;
    }
    parts.join(" ")
}
