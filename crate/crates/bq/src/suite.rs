//! Seeded verification suites over one group.
//!
//! Each check draws its inputs from `random::rng(seed, stream)` where the
//! stream is a hash of the check name, so a check sees the same inputs
//! whether it runs alone or inside `all`.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use bq_core::bargmann::{
    bargmann, bargmann_adjoint, bargmann_adjoint_matrix, bargmann_matrix, bargmann_projection, diag_right_matrix,
    projection_matrix, projection_spectrum, toeplitz_conjugation, toeplitz_from_projection, WindowMode,
};
use bq_core::berezin::{berezin_form, berezin_kernel, berezin_weak, coherent_state, projector};
use bq_core::dual::{match_characters, validate_dual, UnitaryDual};
use bq_core::extract::extract_irreps_numeric;
use bq_core::fourier::{
    big_trace, bpp_norm, fourier, group_first_norm, inverse_fourier, pairing, pairing_group_first, Orientation,
    SymbolField,
};
use bq_core::group::FiniteGroup;
use bq_core::linalg::{self, CMatrix};
use bq_core::pseudodiff::{
    abelian_convolution_symbol, gamma_change, gamma_inverse, inverse_partial_fourier, op_quantize, op_quantize_with,
    partial_fourier, symbol_from_berezin, symbol_from_berezin_explicit, OpRoute, TwoVariableFunction,
};
use bq_core::random::{self, Generator};
use bq_core::weyl::{
    fourier_wigner, fourier_wigner_via_weyl, module_inner, weyl_adjoint, weyl_adjoint_lift, weyl_operator, wigner,
    MatrixValuedFunction,
};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{BqError, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Plancherel,
    Weyl,
    Wigner,
    Coherent,
    Berezin,
    Pseudodiff,
    Bargmann,
    Toeplitz,
    All,
}

impl Suite {
    pub const COMPONENTS: [Suite; 8] = [
        Suite::Plancherel,
        Suite::Weyl,
        Suite::Wigner,
        Suite::Coherent,
        Suite::Berezin,
        Suite::Pseudodiff,
        Suite::Bargmann,
        Suite::Toeplitz,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Plancherel => "plancherel",
            Suite::Weyl => "weyl",
            Suite::Wigner => "wigner",
            Suite::Coherent => "coherent",
            Suite::Berezin => "berezin",
            Suite::Pseudodiff => "pseudodiff",
            Suite::Bargmann => "bargmann",
            Suite::Toeplitz => "toeplitz",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = BqError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::COMPONENTS
            .into_iter()
            .chain([Suite::All])
            .find(|c| c.as_str() == s)
            .ok_or_else(|| BqError::UnknownSuite(s.into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The identity or proposition the check exercises.
    pub anchor: String,
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Outcome of one suite on one group. Everything except `wall_time` is a
/// function of `(suite, group, tolerance, seed)`.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub group: String,
    pub seed: u64,
    pub tolerance: f64,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// Deterministic text rendering.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ =
            writeln!(s, "suite {} | group {} | seed {} | tol {:e}", self.suite, self.group, self.seed, self.tolerance);
        for c in &self.checks {
            let residual = c.max_residual.map_or_else(|| "-".to_string(), |r| format!("{r:.3e}"));
            let _ = write!(
                s,
                "  {} {:<28} residual {:>10}  tol {:.1e}  [{}]",
                c.status.label(),
                c.name,
                residual,
                c.tolerance,
                c.anchor
            );
            if let Some(note) = &c.note {
                let _ = write!(s, "  ({note})");
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "overall {}: {} passed, {} failed, {} skipped",
            if self.passed { "PASS" } else { "FAIL" },
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        );
        s
    }
}

/// Runs `suite` on `g` with the given dual.
///
/// `tol` is the base absolute tolerance; checks that are numerically
/// harder (eigen- and singular-value based, or built from long sums) use a
/// fixed multiple of it.
pub fn run_suite(g: &FiniteGroup, dual: &UnitaryDual, suite: Suite, tol: f64, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut ctx = Ctx { g, dual, tol, seed, checks: Vec::new() };
    let parts: Vec<Suite> = if suite == Suite::All { Suite::COMPONENTS.to_vec() } else { vec![suite] };
    for part in parts {
        match part {
            Suite::Plancherel => plancherel(&mut ctx),
            Suite::Weyl => weyl(&mut ctx),
            Suite::Wigner => wigner_suite(&mut ctx),
            Suite::Coherent => coherent(&mut ctx),
            Suite::Berezin => berezin(&mut ctx),
            Suite::Pseudodiff => pseudodiff(&mut ctx),
            Suite::Bargmann => bargmann_suite(&mut ctx),
            Suite::Toeplitz => toeplitz_suite(&mut ctx),
            Suite::All => unreachable!(),
        }
    }
    let passed = ctx.checks.iter().all(|c| c.status != Status::Fail);
    SuiteReport {
        suite: suite.as_str().into(),
        group: g.name().into(),
        seed,
        tolerance: tol,
        passed,
        checks: ctx.checks,
        wall_time: start.elapsed(),
    }
}

struct Ctx<'a> {
    g: &'a FiniteGroup,
    dual: &'a UnitaryDual,
    tol: f64,
    seed: u64,
    checks: Vec<CheckRecord>,
}

/// FNV-1a, used to derive a per-check stream from the check name.
fn stream_of(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Largest value, propagating NaN; 0 for an empty sequence.
fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |m, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) })
}

fn try_worst(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut m = 0.0;
    for v in values {
        m = worst([m, v?]);
    }
    Ok(m)
}

fn excess(value: f64, bound: f64) -> f64 {
    if value.is_nan() {
        f64::NAN
    } else {
        (value - bound).max(0.0)
    }
}

fn index(r: &mut Generator, len: usize) -> usize {
    ((random::scale(r, 0.0, 1.0) * len as f64) as usize).min(len - 1)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl Ctx<'_> {
    fn run(&mut self, name: &str, anchor: &str, factor: f64, f: impl FnOnce(&Self, &mut Generator) -> Result<f64>) {
        let mut rng = random::rng(self.seed, stream_of(name));
        let tolerance = self.tol * factor;
        let (max_residual, status, note) = match f(self, &mut rng) {
            Ok(r) if r <= tolerance => (Some(r), Status::Pass, None),
            Ok(r) => (Some(r), Status::Fail, None),
            Err(e) => (None, Status::Fail, Some(e.to_string())),
        };
        self.checks.push(CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            max_residual,
            tolerance,
            status,
            note,
        });
    }

    /// Two checks sharing one computation; inputs come from the first name's stream.
    fn run_pair(
        &mut self,
        names: (&str, &str),
        anchor: &str,
        factor: f64,
        f: impl FnOnce(&Self, &mut Generator) -> Result<(f64, f64)>,
    ) {
        let mut rng = random::rng(self.seed, stream_of(names.0));
        let outcome = f(self, &mut rng);
        for (i, name) in [names.0, names.1].into_iter().enumerate() {
            let single = match &outcome {
                Ok((a, b)) => Ok(if i == 0 { *a } else { *b }),
                Err(e) => Err(BqError::Format(e.to_string())),
            };
            self.run(name, anchor, factor, |_, _| single);
        }
    }

    fn skip(&mut self, name: &str, anchor: &str, factor: f64, reason: &str) {
        self.checks.push(CheckRecord {
            name: name.into(),
            anchor: anchor.into(),
            max_residual: None,
            tolerance: self.tol * factor,
            status: Status::Skipped,
            note: Some(reason.into()),
        });
    }

    fn n(&self) -> usize {
        self.g.order()
    }

    fn points(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n();
        (0..self.dual.len()).flat_map(move |xi| (0..n).map(move |x| (xi, x)))
    }
}

fn plancherel(c: &mut Ctx) {
    c.run("dual-integrity", "Schur orthogonality and completeness", 10.0, |c, _| {
        let report = validate_dual(c.g, c.dual);
        Ok(worst(report.entries.iter().map(|e| match (e.passed, e.max_residual) {
            (_, Some(r)) => r,
            (true, None) => 0.0,
            (false, None) => f64::INFINITY,
        })))
    });
    c.run("catalog-vs-numeric", "unitary dual of a finite group", 100.0, |c, _| {
        let numeric = extract_irreps_numeric(c.g, c.seed)?;
        Ok(match_characters(&c.dual.characters(), &numeric.characters()).unwrap_or(f64::INFINITY))
    });
    c.run("plancherel-unitarity", "Plancherel theorem", 1.0, |c, r| {
        try_worst((0..20).map(|_| {
            let u = random::function(r, c.n());
            let norm = u.norm_sqr();
            Ok((norm - fourier(c.dual, &u)?.norm_sqr(c.dual)).abs() / norm)
        }))
    });
    c.run("fourier-inversion", "Fourier inversion", 1.0, |c, r| {
        try_worst((0..20).map(|_| {
            let u = random::function(r, c.n());
            Ok(inverse_fourier(c.dual, &fourier(c.dual, &u)?)?.max_abs_diff(&u))
        }))
    });
}

fn weyl(c: &mut Ctx) {
    c.run("weyl-unitarity", "Weyl system", 1.0, |c, _| {
        try_worst(c.points().map(|(xi, x)| {
            let w = weyl_operator(c.g, c.dual, xi, x)?.matrix;
            let id = linalg::identity(w.nrows());
            Ok(linalg::max_abs_diff(&(&w * w.adjoint()), &id).max(linalg::max_abs_diff(&(w.adjoint() * &w), &id)))
        }))
    });
    c.run("weyl-adjoint-formula", "Weyl system", 1.0, |c, _| {
        try_worst(c.points().map(|(xi, x)| {
            let w = weyl_operator(c.g, c.dual, xi, x)?.matrix;
            Ok(linalg::max_abs_diff(&weyl_adjoint(c.g, c.dual, xi, x)?.matrix, &w.adjoint()))
        }))
    });
    c.run("manageable-isometry", "manageable operators", 1.0, |c, r| {
        let mut m = 0.0;
        for _ in 0..5 {
            let u = random::function(r, c.n());
            for (xi, x) in c.points() {
                let lifted = weyl_adjoint_lift(c.g, c.dual, xi, x, &u)?;
                m = worst([m, (lifted.op_norm_sqr() - u.norm_sqr()).abs() / u.norm_sqr()]);
            }
        }
        Ok(m)
    });
    c.run("module-inner-product", "Hilbert module inner product", 1.0, |c, r| {
        let n = c.n();
        try_worst((0..c.dual.len()).map(|xi| {
            let k = c.dual.dim(xi);
            let mut mk = || MatrixValuedFunction::new(xi, k, (0..n).map(|_| random::matrix(r, k, k)).collect());
            let (a, b) = (mk()?, mk()?);
            let m = random::matrix(r, k, k);
            let ab = module_inner(&a, &b)?;
            let linear = linalg::max_abs_diff(&module_inner(&a.left_mul(&m), &b)?, &(&m * &ab));
            let hermitian = linalg::max_abs_diff(&ab.adjoint(), &module_inner(&b, &a)?);
            let positive = excess(-linalg::min_eigenvalue(&module_inner(&a, &a)?), 0.0);
            let cauchy = excess(linalg::operator_norm(&ab), (a.op_norm_sqr() * b.op_norm_sqr()).sqrt());
            Ok(worst([linear, hermitian, positive, cauchy]))
        }))
    });
}

fn wigner_suite(c: &mut Ctx) {
    c.run("fourier-wigner-unitarity", "Fourier-Wigner unitarity", 1.0, |c, r| {
        let n = c.n();
        try_worst((0..20).map(|_| {
            let [u, v, u2, v2] = [0; 4].map(|_| random::function(r, n));
            let lhs = pairing(&fourier_wigner(c.g, c.dual, &u, &v)?, &fourier_wigner(c.g, c.dual, &u2, &v2)?)?;
            Ok((lhs - u.inner(&u2) * v2.inner(&v)).norm())
        }))
    });
    c.run("fourier-wigner-contraction", "Fourier-Wigner contraction", 1.0, |c, r| {
        let n = c.n();
        try_worst((0..20).map(|_| {
            let (u, v) = (random::unit_function(r, n), random::unit_function(r, n));
            let w = fourier_wigner(c.g, c.dual, &u, &v)?;
            try_worst([2.0, 4.0, f64::INFINITY].map(|p| Ok(excess(bpp_norm(&w, p)?, 1.0))))
        }))
    });
    c.run("fourier-wigner-weyl-route", "Fourier-Wigner via the Weyl system", 1.0, |c, r| {
        let n = c.n();
        try_worst((0..5).map(|_| {
            let (u, v) = (random::function(r, n), random::function(r, n));
            Ok(fourier_wigner(c.g, c.dual, &u, &v)?.max_abs_diff(&fourier_wigner_via_weyl(c.g, c.dual, &u, &v)?)?)
        }))
    });
    c.run("wigner-factorization", "Wigner transform", 1.0, |c, r| {
        let n = c.n();
        try_worst((0..5).map(|_| {
            let (u, v) = (random::function(r, n), random::function(r, n));
            let direct = wigner(c.g, c.dual, &u, &v)?;
            let composed = partial_fourier(c.dual, &gamma_change(c.g, &TwoVariableFunction::tensor(&u.conj(), &v))?)?;
            let norm = (group_first_norm(&direct)? - u.norm() * v.norm()).abs();
            Ok(direct.max_abs_diff(&composed)?.max(norm))
        }))
    });
}

fn coherent(c: &mut Ctx) {
    let projector_check = |c: &mut Ctx, name: &str, factor: f64, f: fn(&CMatrix, f64) -> f64| {
        c.run(name, "coherent-state projections", factor, |c, r| {
            let mut m = 0.0;
            for _ in 0..5 {
                let omega = random::function(r, c.n());
                for (xi, x) in c.points() {
                    m = worst([m, f(&projector(c.g, c.dual, &omega, xi, x)?.matrix, omega.norm_sqr())]);
                }
            }
            Ok(m)
        });
    };
    projector_check(c, "projector-self-adjoint", 0.01, |p, _| linalg::max_abs_diff(p, &p.adjoint()));
    projector_check(c, "projector-positive", 1.0, |p, _| excess(-linalg::min_eigenvalue(p), 0.0));
    projector_check(c, "projector-square", 1.0, |p, nn| linalg::max_abs_diff(&(p * p), &(p * real(nn))));
    projector_check(c, "projector-norm", 10.0, |p, nn| (linalg::operator_norm(p) - nn).abs());
    c.run("coherent-state-norm", "coherent states", 1.0, |c, r| {
        let omega = random::function(r, c.n());
        try_worst(c.points().map(|(xi, x)| {
            let s = coherent_state(c.g, c.dual, &omega, xi, x)?.values;
            let id = linalg::identity(c.dual.dim(xi)) * real(omega.norm_sqr());
            Ok(linalg::max_abs_diff(&module_inner(&s, &s)?, &id))
        }))
    });
    c.run("projector-action", "coherent-state projections", 1.0, |c, r| {
        let n = c.n();
        try_worst((0..5).map(|_| {
            let omega = random::function(r, n);
            let (u, v) = (random::function(r, n), random::function(r, n));
            let xi = index(r, c.dual.len());
            let x = index(r, n);
            let one = linalg::identity(c.dual.dim(xi));
            let (ul, vl) = (MatrixValuedFunction::tensor(xi, &u, &one), MatrixValuedFunction::tensor(xi, &v, &one));
            let state = coherent_state(c.g, c.dual, &omega, xi, x)?.values;
            let lhs = module_inner(&projector(c.g, c.dual, &omega, xi, x)?.apply(&ul)?, &vl)?;
            let rhs = module_inner(&state, &vl)? * module_inner(&ul, &state)?;
            Ok(linalg::max_abs_diff(&lhs, &rhs))
        }))
    });
}

fn berezin(c: &mut Ctx) {
    c.run("berezin-identity", "overcompleteness", 1.0, |c, r| {
        let one = SymbolField::one(c.dual, Orientation::DualFirst);
        let id = linalg::identity(c.n());
        try_worst((0..5).map(|_| {
            let omega = random::unit_function(r, c.n());
            Ok(linalg::max_abs_diff(berezin_weak(c.g, c.dual, &omega, &one)?.matrix(), &id))
        }))
    });
    c.run("berezin-trace", "Berezin trace formula", 10.0, |c, r| {
        try_worst((0..20).map(|_| {
            let omega = random::function(r, c.n());
            let f = random::symbol(r, c.dual, Orientation::DualFirst);
            let expected = big_trace(&f)? * omega.norm_sqr();
            let got = berezin_weak(c.g, c.dual, &omega, &f)?.trace();
            Ok((got - expected).norm() / expected.norm())
        }))
    });
    c.run("berezin-positivity", "positivity of Berezin quantization", 1.0, |c, r| {
        try_worst((0..10).map(|_| {
            let omega = random::function(r, c.n());
            let f = random::positive_symbol(r, c.dual);
            Ok(excess(-berezin_weak(c.g, c.dual, &omega, &f)?.min_eigenvalue(), 0.0))
        }))
    });
    c.run("berezin-trace-norm", "positivity of Berezin quantization", 10.0, |c, r| {
        try_worst((0..10).map(|_| {
            let omega = random::function(r, c.n());
            let f = random::positive_symbol(r, c.dual);
            let b = berezin_weak(c.g, c.dual, &omega, &f)?;
            Ok((b.schatten_norm(1.0)? - big_trace(&f)?.re * omega.norm_sqr()).abs())
        }))
    });
    c.run("berezin-norm-bound", "Schatten bounds for Berezin operators", 10.0, |c, r| {
        try_worst((0..20).map(|_| {
            let omega = random::function(r, c.n());
            let f = random::symbol(r, c.dual, Orientation::DualFirst);
            let b = berezin_weak(c.g, c.dual, &omega, &f)?;
            try_worst([1.0, 2.0, f64::INFINITY].map(|s| {
                let bound = 4f64.powf(1.0 / s) * bpp_norm(&f, s)? * omega.norm_sqr();
                Ok(excess(b.schatten_norm(s)?, bound))
            }))
        }))
    });
    c.run("berezin-weak-vs-kernel", "Berezin kernel", 1.0, |c, r| {
        try_worst((0..20).map(|_| {
            let omega = random::function(r, c.n());
            let f = random::symbol(r, c.dual, Orientation::DualFirst);
            let (_, k) = berezin_kernel(c.g, c.dual, &omega, &f)?;
            Ok(k.max_abs_diff(&berezin_weak(c.g, c.dual, &omega, &f)?))
        }))
    });
    c.run("berezin-form", "Berezin operator (weak form)", 1.0, |c, r| {
        let n = c.n();
        try_worst((0..5).map(|_| {
            let omega = random::function(r, n);
            let f = random::symbol(r, c.dual, Orientation::DualFirst);
            let (u, v) = (random::function(r, n), random::function(r, n));
            let b = berezin_weak(c.g, c.dual, &omega, &f)?;
            let lhs = berezin_form(c.g, c.dual, &omega, &f, &u, &v)?;
            Ok((lhs - b.apply(&u)?.inner(&v)).norm())
        }))
    });
    c.run("berezin-adjoint", "Berezin operator (weak form)", 1.0, |c, r| {
        try_worst((0..5).map(|_| {
            let omega = random::function(r, c.n());
            let f = random::symbol(r, c.dual, Orientation::DualFirst);
            let b = berezin_weak(c.g, c.dual, &omega, &f)?;
            Ok(b.adjoint().max_abs_diff(&berezin_weak(c.g, c.dual, &omega, &f.star())?))
        }))
    });
}

fn pseudodiff(c: &mut Ctx) {
    c.run("gamma-partial-fourier", "kernels and symbols", 1.0, |c, r| {
        let n = c.n();
        try_worst((0..5).map(|_| {
            let k = TwoVariableFunction::from_fn(n, |_, _| random::complex(r));
            let gamma = gamma_inverse(c.g, &gamma_change(c.g, &k)?)?.max_abs_diff(&k);
            let pf = inverse_partial_fourier(c.dual, &partial_fourier(c.dual, &k)?)?.max_abs_diff(&k);
            Ok(gamma.max(pf))
        }))
    });
    c.run("op-routes", "pseudo-differential quantization", 1.0, |c, r| {
        try_worst((0..20).map(|_| {
            let a = random::symbol(r, c.dual, Orientation::GroupFirst);
            let [k, d, w] =
                [OpRoute::Kernel, OpRoute::Direct, OpRoute::Weak].map(|route| op_quantize_with(c.g, c.dual, &a, route));
            let (k, d, w) = (k?, d?, w?);
            Ok(worst([k.max_abs_diff(&d), k.max_abs_diff(&w), d.max_abs_diff(&w)]))
        }))
    });
    c.run("op-duality", "pseudo-differential quantization", 1.0, |c, r| {
        let n = c.n();
        try_worst((0..10).map(|_| {
            let a = random::symbol(r, c.dual, Orientation::GroupFirst);
            let (u, v) = (random::function(r, n), random::function(r, n));
            let lhs = op_quantize(c.g, c.dual, &a)?.apply(&u)?.inner(&v);
            Ok((lhs - pairing_group_first(&a, &wigner(c.g, c.dual, &u, &v)?)?).norm())
        }))
    });
    c.run("berezin-symbol-bridge", "Berezin operators as pseudo-differential operators", 10.0, |c, r| {
        try_worst((0..10).map(|_| {
            let omega = random::function(r, c.n());
            let f = random::symbol(r, c.dual, Orientation::DualFirst);
            let a = symbol_from_berezin(c.g, c.dual, &omega, &f)?;
            Ok(op_quantize(c.g, c.dual, &a)?.max_abs_diff(&berezin_weak(c.g, c.dual, &omega, &f)?))
        }))
    });
    c.run("berezin-symbol-explicit", "Berezin operators as pseudo-differential operators", 1.0, |c, r| {
        try_worst((0..5).map(|_| {
            let omega = random::function(r, c.n());
            let f = random::symbol(r, c.dual, Orientation::DualFirst);
            let a = symbol_from_berezin(c.g, c.dual, &omega, &f)?;
            Ok(symbol_from_berezin_explicit(c.g, c.dual, &omega, &f)?.max_abs_diff(&a)?)
        }))
    });
    let name = "abelian-convolution-symbol";
    let anchor = "Berezin symbol as a phase-space convolution";
    if c.dual.is_abelian() {
        c.run(name, anchor, 1.0, |c, r| {
            try_worst((0..10).map(|_| {
                let omega = random::function(r, c.n());
                let f = random::symbol(r, c.dual, Orientation::DualFirst);
                let a = symbol_from_berezin(c.g, c.dual, &omega, &f)?;
                Ok(abelian_convolution_symbol(c.g, c.dual, &omega, &f)?.max_abs_diff(&a)?)
            }))
        });
    } else {
        c.skip(name, anchor, 1.0, "requires an abelian group");
    }
}

fn bargmann_suite(c: &mut Ctx) {
    c.run("bargmann-adjoint", "Bargmann transform", 1.0, |c, r| {
        let omega = random::unit_function(r, c.n());
        try_worst((0..20).map(|_| {
            let u = random::function(r, c.n());
            let f = random::symbol(r, c.dual, Orientation::DualFirst);
            let lhs = pairing(&bargmann(c.g, c.dual, &omega, &u)?, &f)?;
            Ok((lhs - u.inner(&bargmann_adjoint(c.g, c.dual, &omega, &f)?)).norm())
        }))
    });
    c.run("bargmann-inversion", "Bargmann inversion formula", 1.0, |c, r| {
        let omega = random::unit_function(r, c.n());
        try_worst((0..20).map(|_| {
            let u = random::function(r, c.n());
            Ok(bargmann_adjoint(c.g, c.dual, &omega, &bargmann(c.g, c.dual, &omega, &u)?)?.max_abs_diff(&u))
        }))
    });
    c.run("bargmann-isometry", "Bargmann transform", 1.0, |c, r| {
        let omega = random::unit_function(r, c.n());
        let w = bargmann_matrix(c.g, c.dual, &omega)?;
        let w_adj = bargmann_adjoint_matrix(c.g, c.dual, &omega)?;
        Ok(linalg::max_abs_diff(&linalg::matmul(&w_adj, &w), &linalg::identity(c.n()))
            .max(linalg::max_abs_diff(&w_adj, &w.adjoint())))
    });
    c.run("projection-idempotent", "Bargmann projection", 1.0, |c, r| {
        let p = projection_matrix(c.g, c.dual, &random::unit_function(r, c.n()))?;
        Ok(linalg::max_abs_diff(&linalg::matmul(&p, &p), &p))
    });
    c.run("projection-self-adjoint", "Bargmann projection", 1.0, |c, r| {
        let p = projection_matrix(c.g, c.dual, &random::unit_function(r, c.n()))?;
        Ok(linalg::max_abs_diff(&p, &p.adjoint()))
    });
    c.run("reproducing-formula", "reproducing kernel", 1.0, |c, r| {
        let omega = random::unit_function(r, c.n());
        try_worst((0..10).map(|_| {
            let wu = bargmann(c.g, c.dual, &omega, &random::function(r, c.n()))?;
            Ok(bargmann_projection(c.g, c.dual, &omega, &wu)?.max_abs_diff(&wu)?)
        }))
    });
    c.run("projection-routes", "reproducing kernel", 1.0, |c, r| {
        let omega = random::unit_function(r, c.n());
        try_worst((0..10).map(|_| {
            let f = random::symbol(r, c.dual, Orientation::DualFirst);
            let kernel = bargmann_projection(c.g, c.dual, &omega, &f)?;
            let composed = bargmann(c.g, c.dual, &omega, &bargmann_adjoint(c.g, c.dual, &omega, &f)?)?;
            Ok(kernel.max_abs_diff(&composed)?)
        }))
    });
    c.run("projection-rank", "Bargmann projection", 100.0, |c, r| {
        let omega = random::unit_function(r, c.n());
        let (values, rank) = projection_spectrum(c.g, c.dual, &omega, WindowMode::RequireUnit)?;
        let spread = worst(values.iter().map(|v| v.abs().min((v - 1.0).abs())));
        Ok(if rank == c.n() { spread } else { f64::INFINITY })
    });
}

fn toeplitz_suite(c: &mut Ctx) {
    let anchor = "Toeplitz form of Berezin operators";
    c.run_pair(("toeplitz-conjugation", "toeplitz-trace"), anchor, 10.0, |c, r| {
        let omega = random::unit_function(r, c.n());
        let p = projection_matrix(c.g, c.dual, &omega)?;
        let (mut conj, mut trace) = (0.0, 0.0);
        for _ in 0..10 {
            let f = random::symbol(r, c.dual, Orientation::DualFirst);
            let tp = toeplitz_from_projection(&p, &f)?;
            let via_ber = toeplitz_conjugation(c.g, c.dual, &omega, &f, WindowMode::RequireUnit)?;
            conj = worst([conj, linalg::max_abs_diff(&tp, &via_ber)]);
            let ber_trace = berezin_weak(c.g, c.dual, &omega, &f)?.trace();
            trace = worst([trace, (linalg::trace(&tp) - ber_trace).norm()]);
        }
        Ok((conj, trace))
    });
    c.run("toeplitz-positivity", anchor, 10.0, |c, r| {
        let omega = random::unit_function(r, c.n());
        let p = projection_matrix(c.g, c.dual, &omega)?;
        let f = random::positive_symbol(r, c.dual);
        Ok(excess(-linalg::min_eigenvalue(&toeplitz_from_projection(&p, &f)?), 0.0))
    });
    c.run("diag-right-bound", "right multiplication operators", 10.0, |c, r| {
        let f = random::symbol(r, c.dual, Orientation::DualFirst);
        Ok(excess(linalg::operator_norm(&diag_right_matrix(&f)?), bpp_norm(&f, f64::INFINITY)?))
    });
}
