//! Artifact computation for the `compute` subcommand.

use std::fmt;
use std::str::FromStr;

use bq_core::bargmann::{prepare_window, projection_matrix, toeplitz_from_projection, WindowMode, RANK_THRESHOLD};
use bq_core::berezin::berezin_kernel;
use bq_core::dual::UnitaryDual;
use bq_core::fourier::{GroupFunction, Orientation, SymbolField};
use bq_core::group::FiniteGroup;
use bq_core::linalg::{self, CMatrix};
use bq_core::pseudodiff::{op_kernel, op_quantize, symbol_from_berezin};
use serde::Serialize;

use crate::error::{BqError, Result};
use crate::formats::{
    complex_to_json, function_to_json, matrix_to_json, spectrum_csv, to_json_compact, JsonComplex, JsonMatrix,
    SymbolJson,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum What {
    Berezin,
    Op,
    Symbol,
    Projection,
    Toeplitz,
}

impl What {
    pub const ALL: [What; 5] = [What::Berezin, What::Op, What::Symbol, What::Projection, What::Toeplitz];

    pub fn as_str(self) -> &'static str {
        match self {
            What::Berezin => "berezin",
            What::Op => "op",
            What::Symbol => "symbol",
            What::Projection => "projection",
            What::Toeplitz => "toeplitz",
        }
    }

    /// Orientation the `--symbol` input is read in.
    pub fn symbol_orientation(self) -> Orientation {
        match self {
            What::Op => Orientation::GroupFirst,
            _ => Orientation::DualFirst,
        }
    }
}

impl fmt::Display for What {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for What {
    type Err = BqError;

    fn from_str(s: &str) -> Result<Self> {
        What::ALL
            .into_iter()
            .find(|w| w.as_str() == s)
            .ok_or_else(|| BqError::Usage { name: "--what", reason: format!("unknown object `{s}`") })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    /// Spectrum only; available for `projection` and `toeplitz`.
    Csv,
}

impl FromStr for Format {
    type Err = BqError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(BqError::Usage { name: "--format", reason: format!("unknown format `{s}`") }),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Artifact {
    pub what: &'static str,
    pub group: String,
    pub order: usize,
    pub window: Vec<JsonComplex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<JsonMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<JsonMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol: Option<SymbolJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<JsonComplex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
}

impl Artifact {
    pub fn render(&self, format: Format) -> Result<String> {
        match (format, &self.spectrum) {
            (Format::Json, _) => to_json_compact(self),
            (Format::Csv, Some(values)) => Ok(spectrum_csv(values)),
            (Format::Csv, None) => Err(BqError::Usage {
                name: "--format",
                reason: format!("csv export is only available for spectra, not `{}`", self.what),
            }),
        }
    }
}

/// Computes `what` for window `omega` and symbol `f` (already in
/// [`What::symbol_orientation`]).
pub fn compute(
    what: What,
    g: &FiniteGroup,
    dual: &UnitaryDual,
    omega: &GroupFunction,
    f: &SymbolField,
    mode: WindowMode,
) -> Result<Artifact> {
    let mut out = Artifact {
        what: what.as_str(),
        group: g.name().into(),
        order: g.order(),
        window: function_to_json(omega),
        matrix: None,
        kernel: None,
        symbol: None,
        trace: None,
        spectrum: None,
        rank: None,
    };
    let f = f.clone().reoriented(what.symbol_orientation());
    match what {
        What::Berezin => {
            let (k, op) = berezin_kernel(g, dual, omega, &f)?;
            out.trace = Some(complex_to_json(op.trace()));
            out.matrix = Some(matrix_to_json(op.matrix()));
            out.kernel = Some(matrix_to_json(&k.table));
        }
        What::Op => {
            let op = op_quantize(g, dual, &f)?;
            out.trace = Some(complex_to_json(op.trace()));
            out.matrix = Some(matrix_to_json(op.matrix()));
            out.kernel = Some(matrix_to_json(&op_kernel(g, dual, &f)?.table));
        }
        What::Symbol => out.symbol = Some(SymbolJson::from_symbol(&symbol_from_berezin(g, dual, omega, &f)?)),
        What::Projection | What::Toeplitz => {
            let omega = prepare_window(omega, mode)?;
            out.window = function_to_json(&omega);
            let p = projection_matrix(g, dual, &omega)?;
            let m = if what == What::Projection { p } else { toeplitz_from_projection(&p, &f)? };
            let hermitian: CMatrix = (&m + m.adjoint()) * num_complex::Complex64::new(0.5, 0.0);
            let values = linalg::hermitian_eigenvalues(&hermitian);
            if what == What::Projection {
                out.rank = Some(values.iter().filter(|&&v| v > RANK_THRESHOLD).count());
            }
            out.trace = Some(complex_to_json(linalg::trace(&m)));
            out.spectrum = Some(values);
            out.matrix = Some(matrix_to_json(&m));
        }
    }
    Ok(out)
}
