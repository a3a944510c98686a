//! Acceptance battery: every criterion runs on the default groups with seed 7
//! and prints one PASS/FAIL line.

use std::process::Command;

use bq_core::bargmann::{
    bargmann, bargmann_adjoint, bargmann_projection, projection_matrix, toeplitz_conjugation, toeplitz_from_projection,
    WindowMode,
};
use bq_core::berezin::{berezin_kernel, berezin_weak, projector};
use bq_core::dual::{build_dual, match_characters, UnitaryDual};
use bq_core::extract::extract_irreps_numeric;
use bq_core::fourier::{big_trace, bpp_norm, pairing, GroupFunction, Orientation, SymbolField};
use bq_core::group::{build_group, default_battery, FiniteGroup};
use bq_core::linalg::{self, CMatrix};
use bq_core::pseudodiff::{op_quantize, op_quantize_with, symbol_from_berezin, OpRoute};
use bq_core::random::{self, Generator};
use bq_core::weyl::{fourier_wigner, wigner};
use num_complex::Complex64;

const SEED: u64 = 7;

struct Case {
    g: FiniteGroup,
    d: UnitaryDual,
}

fn battery() -> Vec<Case> {
    default_battery()
        .iter()
        .map(|s| {
            let g = build_group(s, 64).unwrap();
            let d = build_dual(&g).unwrap();
            Case { g, d }
        })
        .collect()
}

fn rng(case: usize, stream: u64) -> Generator {
    random::rng(SEED + 1000 * case as u64, stream)
}

/// Worst residual of one sub-check across the battery.
struct Part {
    label: &'static str,
    worst: f64,
    tol: f64,
}

impl Part {
    fn new(label: &'static str, tol: f64) -> Self {
        Self { label, worst: 0.0, tol }
    }

    fn see(&mut self, r: f64) {
        if r.is_nan() || r > self.worst {
            self.worst = if r.is_nan() { f64::NAN } else { r };
        }
    }

    fn ok(&self) -> bool {
        self.worst <= self.tol
    }
}

/// One printed line and its verdict.
struct Outcome {
    line: String,
    pass: bool,
}

fn report(criterion: &str, title: &str, parts: &[Part]) -> Outcome {
    let pass = parts.iter().all(Part::ok);
    let detail: Vec<String> = parts
        .iter()
        .map(|p| format!("{} {:.2e} (tol {:.0e}){}", p.label, p.worst, p.tol, if p.ok() { "" } else { " FAIL" }))
        .collect();
    let line =
        format!("criterion {criterion} [{title}]: {} | {}", if pass { "PASS" } else { "FAIL" }, detail.join("; "));
    Outcome { line, pass }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `Σ_x u(x)·ξ(x)*`, written out independently of the library transform.
fn fourier_oracle(d: &UnitaryDual, u: &GroupFunction) -> Vec<CMatrix> {
    (0..d.len())
        .map(|xi| {
            let k = d.dim(xi);
            (0..u.len()).fold(CMatrix::zeros(k, k), |acc, x| acc + d.rep(xi, x).adjoint() * u.at(x))
        })
        .collect()
}

fn criterion_01_plancherel() -> Outcome {
    let mut part = Part::new("relative residual", 1e-10);
    for (i, c) in battery().iter().enumerate() {
        let mut r = rng(i, 1);
        for _ in 0..20 {
            let u = random::function(&mut r, c.g.order());
            let blocks = fourier_oracle(&c.d, &u);
            let rhs: f64 = blocks.iter().enumerate().map(|(xi, b)| c.d.weight(xi) * linalg::hs_norm_sqr(b)).sum();
            part.see((u.norm_sqr() - rhs).abs() / u.norm_sqr());
        }
    }
    report("1", "Plancherel unitarity", &[part])
}

fn criterion_02_fourier_wigner() -> Outcome {
    let mut unitary = Part::new("polarized unitarity", 1e-10);
    let mut contraction = Part::new("contraction p=2,4,inf", 1e-10);
    for (i, c) in battery().iter().enumerate() {
        let n = c.g.order();
        let mut r = rng(i, 2);
        for _ in 0..20 {
            let [u, v, u2, v2] = [0; 4].map(|_| random::function(&mut r, n));
            let a = fourier_wigner(&c.g, &c.d, &u, &v).unwrap();
            let b = fourier_wigner(&c.g, &c.d, &u2, &v2).unwrap();
            unitary.see((pairing(&a, &b).unwrap() - u.inner(&u2) * v2.inner(&v)).norm());
            for p in [2.0, 4.0, f64::INFINITY] {
                let bound = u.norm() * v.norm();
                contraction.see((bpp_norm(&a, p).unwrap() - bound).max(0.0) / bound);
            }
        }
    }
    report("2", "Fourier-Wigner unitarity and contraction", &[unitary, contraction])
}

fn criterion_03_projection_algebra() -> Outcome {
    let mut sa = Part::new("self-adjoint", 1e-12);
    let mut psd = Part::new("PSD deficit", 1e-10);
    let mut square = Part::new("Pr^2 = |w|^2 Pr", 1e-10);
    let mut norm = Part::new("opnorm = |w|^2", 1e-9);
    for (i, c) in battery().iter().enumerate() {
        let mut r = rng(i, 3);
        for _ in 0..5 {
            let omega = random::function(&mut r, c.g.order());
            let nn = omega.norm_sqr();
            for xi in 0..c.d.len() {
                for x in c.g.elements() {
                    let p = projector(&c.g, &c.d, &omega, xi, x).unwrap().matrix;
                    sa.see(linalg::max_abs_diff(&p, &p.adjoint()));
                    psd.see((-linalg::min_eigenvalue(&p)).max(0.0));
                    square.see(linalg::max_abs_diff(&(&p * &p), &(&p * real(nn))));
                    norm.see((linalg::operator_norm(&p) - nn).abs());
                }
            }
        }
    }
    report("3", "projection algebra", &[sa, psd, square, norm])
}

fn criterion_04_overcompleteness() -> Outcome {
    let mut part = Part::new("max |Ber(1) - I|", 1e-10);
    for (i, c) in battery().iter().enumerate() {
        let mut r = rng(i, 4);
        let one = SymbolField::one(&c.d, Orientation::DualFirst);
        for _ in 0..5 {
            let omega = random::unit_function(&mut r, c.g.order());
            let b = berezin_weak(&c.g, &c.d, &omega, &one).unwrap();
            part.see(linalg::max_abs_diff(b.matrix(), &linalg::identity(c.g.order())));
        }
    }
    report("4", "overcompleteness", &[part])
}

fn criterion_05_trace_positivity_bounds() -> Outcome {
    let mut trace = Part::new("(a) trace formula, relative", 1e-9);
    let mut psd = Part::new("(b) PSD deficit", 1e-10);
    let mut trace_norm = Part::new("(b) trace-norm equality", 1e-9);
    let mut bound = Part::new("(c) Schatten bound excess", 1e-9);
    for (i, c) in battery().iter().enumerate() {
        let n = c.g.order();
        let mut r = rng(i, 5);
        for _ in 0..20 {
            let omega = random::function(&mut r, n);
            let f = random::symbol(&mut r, &c.d, Orientation::DualFirst);
            let b = berezin_weak(&c.g, &c.d, &omega, &f).unwrap();
            // 𝐓𝐫(F) = Σ_ξ Σ_x (d_ξ/|G|)·Tr F(ξ,x)
            let tr: Complex64 = f.iter().map(|(xi, _, blk)| linalg::trace(blk) * c.d.weight(xi)).sum();
            let expected = tr * omega.norm_sqr();
            trace.see((b.trace() - expected).norm() / expected.norm());
            for s in [1.0, 2.0, f64::INFINITY] {
                let rhs = 4f64.powf(1.0 / s) * bpp_norm(&f, s).unwrap() * omega.norm_sqr();
                bound.see((b.schatten_norm(s).unwrap() - rhs).max(0.0));
            }
        }
        for _ in 0..10 {
            let omega = random::function(&mut r, n);
            let f = random::positive_symbol(&mut r, &c.d);
            let b = berezin_weak(&c.g, &c.d, &omega, &f).unwrap();
            psd.see((-b.min_eigenvalue()).max(0.0));
            let expected = big_trace(&f).unwrap().re * omega.norm_sqr();
            trace_norm.see((b.schatten_norm(1.0).unwrap() - expected).abs());
        }
    }
    report("5", "trace, positivity and Schatten bounds", &[trace, psd, trace_norm, bound])
}

fn criterion_06_route_agreement() -> Outcome {
    let mut weak_kernel = Part::new("weak vs kernel", 1e-10);
    let mut routes = Part::new("Op routes pairwise", 1e-10);
    for (i, c) in battery().iter().enumerate() {
        let mut r = rng(i, 6);
        for _ in 0..20 {
            let omega = random::function(&mut r, c.g.order());
            let f = random::symbol(&mut r, &c.d, Orientation::DualFirst);
            let (_, k) = berezin_kernel(&c.g, &c.d, &omega, &f).unwrap();
            weak_kernel.see(k.max_abs_diff(&berezin_weak(&c.g, &c.d, &omega, &f).unwrap()));
            let a = random::symbol(&mut r, &c.d, Orientation::GroupFirst);
            let ops: Vec<_> = [OpRoute::Kernel, OpRoute::Direct, OpRoute::Weak]
                .into_iter()
                .map(|route| op_quantize_with(&c.g, &c.d, &a, route).unwrap())
                .collect();
            for (x, y) in [(0, 1), (0, 2), (1, 2)] {
                routes.see(ops[x].max_abs_diff(&ops[y]));
            }
        }
    }
    report("6", "weak/kernel/direct agreement", &[weak_kernel, routes])
}

fn criterion_07a_berezin_symbol_bridge() -> Outcome {
    let mut part = Part::new("Op(a) vs Ber", 1e-9);
    for (i, c) in battery().iter().enumerate() {
        let mut r = rng(i, 7);
        for _ in 0..10 {
            let omega = random::function(&mut r, c.g.order());
            let f = random::symbol(&mut r, &c.d, Orientation::DualFirst);
            let a = symbol_from_berezin(&c.g, &c.d, &omega, &f).unwrap();
            let ber = berezin_weak(&c.g, &c.d, &omega, &f).unwrap();
            part.see(op_quantize(&c.g, &c.d, &a).unwrap().max_abs_diff(&ber));
        }
    }
    report("7a", "Berezin-pseudodifferential bridge", &[part])
}

/// Index of the character equal to `conj(χ_eta)·χ_xi`.
fn character_quotient(chars: &[Vec<Complex64>], eta: usize, xi: usize) -> usize {
    let target: Vec<Complex64> = chars[eta].iter().zip(&chars[xi]).map(|(a, b)| a.conj() * b).collect();
    chars
        .iter()
        .position(|chi| chi.iter().zip(&target).all(|(a, b)| (a - b).norm() < 1e-9))
        .expect("characters of an abelian group are closed under products")
}

fn criterion_07b_abelian_convolution() -> Outcome {
    // a^F_ω(q,ξ) against (F_• ∗ 𝔙_{ω̄,ω̄})(q,ξ) with F_•(x,η) = F(η,x) and
    // (A∗B)(q,ξ) = Σ_x Σ_η |G|⁻¹·A(x,η)·B(x⁻¹q, η⁻¹ξ).
    let mut part = Part::new("a vs F*V(conj w, conj w)", 1e-10);
    let mut abelian = 0;
    for (i, c) in battery().iter().enumerate() {
        if !c.d.is_abelian() {
            continue;
        }
        abelian += 1;
        let n = c.g.order();
        let chars = c.d.characters();
        let mut r = rng(i, 8);
        for _ in 0..10 {
            let omega = random::function(&mut r, n);
            let f = random::symbol(&mut r, &c.d, Orientation::DualFirst);
            let a = symbol_from_berezin(&c.g, &c.d, &omega, &f).unwrap();
            let v = wigner(&c.g, &c.d, &omega.conj(), &omega.conj()).unwrap();
            for xi in 0..c.d.len() {
                for q in 0..n {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for x in 0..n {
                        for eta in 0..c.d.len() {
                            let rest = character_quotient(&chars, eta, xi);
                            acc += f.at(eta, x)[(0, 0)] * v.at(rest, c.g.mul(c.g.inv(x), q))[(0, 0)];
                        }
                    }
                    part.see((a.at(xi, q)[(0, 0)] - acc / n as f64).norm());
                }
            }
        }
    }
    let mut out = report("7b", "Berezin symbol as abelian phase-space convolution", &[part]);
    out.line.push_str(&format!(" | {abelian} abelian groups, non-abelian groups skipped"));
    out
}

fn criterion_08_bargmann_calculus() -> Outcome {
    let mut adjoint = Part::new("adjoint relation", 1e-10);
    let mut inversion = Part::new("inversion", 1e-10);
    let mut idem = Part::new("P idempotent", 1e-10);
    let mut sa = Part::new("P self-adjoint", 1e-10);
    let mut repro = Part::new("reproducing formula", 1e-10);
    let mut routes = Part::new("kernel vs composition", 1e-10);
    for (i, c) in battery().iter().enumerate() {
        let n = c.g.order();
        let mut r = rng(i, 9);
        let omega = random::unit_function(&mut r, n);
        for _ in 0..20 {
            let u = random::function(&mut r, n);
            let f = random::symbol(&mut r, &c.d, Orientation::DualFirst);
            let wu = bargmann(&c.g, &c.d, &omega, &u).unwrap();
            let wf = bargmann_adjoint(&c.g, &c.d, &omega, &f).unwrap();
            adjoint.see((pairing(&wu, &f).unwrap() - u.inner(&wf)).norm());
            // u(q) = Σ_X μ(X)·Tr[(𝔚u)(X)·Ω(X)(q)], assembled by the adjoint
            inversion.see(bargmann_adjoint(&c.g, &c.d, &omega, &wu).unwrap().max_abs_diff(&u));
            repro.see(bargmann_projection(&c.g, &c.d, &omega, &wu).unwrap().max_abs_diff(&wu).unwrap());
            let kernel = bargmann_projection(&c.g, &c.d, &omega, &f).unwrap();
            routes.see(kernel.max_abs_diff(&bargmann(&c.g, &c.d, &omega, &wf).unwrap()).unwrap());
        }
        let p = projection_matrix(&c.g, &c.d, &omega).unwrap();
        idem.see(linalg::max_abs_diff(&linalg::matmul(&p, &p), &p));
        sa.see(linalg::max_abs_diff(&p, &p.adjoint()));
    }
    report("8", "Bargmann calculus", &[adjoint, inversion, idem, sa, repro, routes])
}

fn criterion_09_toeplitz() -> Outcome {
    let mut form = Part::new("PDP vs W Ber W*", 1e-9);
    let mut trace = Part::new("Tr Tp vs Tr Ber", 1e-9);
    for (i, c) in battery().iter().enumerate() {
        let mut r = rng(i, 10);
        let omega = random::unit_function(&mut r, c.g.order());
        let p = projection_matrix(&c.g, &c.d, &omega).unwrap();
        for _ in 0..10 {
            let f = random::symbol(&mut r, &c.d, Orientation::DualFirst);
            let tp = toeplitz_from_projection(&p, &f).unwrap();
            let conj = toeplitz_conjugation(&c.g, &c.d, &omega, &f, WindowMode::RequireUnit).unwrap();
            form.see(linalg::max_abs_diff(&tp, &conj));
            let ber = berezin_weak(&c.g, &c.d, &omega, &f).unwrap();
            trace.see((linalg::trace(&tp) - ber.trace()).norm());
        }
    }
    report("9", "Toeplitz form", &[form, trace])
}

fn criterion_10_dual_integrity() -> Outcome {
    let mut chars = Part::new("catalog vs numeric characters", 1e-8);
    let mut schur = Part::new("Schur orthogonality", 1e-9);
    let mut complete = Part::new("completeness", 1e-9);
    for c in battery() {
        let n = c.g.order();
        let numeric = extract_irreps_numeric(&c.g, SEED).unwrap();
        chars.see(match_characters(&c.d.characters(), &numeric.characters()).unwrap_or(f64::INFINITY));
        // Σ_x ξ(x)_{ab}·conj(η(x)_{cd}) = (|G|/d_ξ)·δ_{ξη}δ_{ac}δ_{bd}
        for xi in 0..c.d.len() {
            for eta in 0..c.d.len() {
                let (dx, de) = (c.d.dim(xi), c.d.dim(eta));
                for idx in 0..dx * dx * de * de {
                    let (a, b, cc, dd) = (idx / (dx * de * de), (idx / (de * de)) % dx, (idx / de) % de, idx % de);
                    let s: Complex64 = (0..n).map(|x| c.d.rep(xi, x)[(a, b)] * c.d.rep(eta, x)[(cc, dd)].conj()).sum();
                    let expected = if xi == eta && a == cc && b == dd { n as f64 / dx as f64 } else { 0.0 };
                    schur.see((s - expected).norm() / n as f64);
                }
            }
        }
        // Σ_ξ d_ξ·χ_ξ(x) = |G|·δ_{x,e}
        for x in 0..n {
            let s: Complex64 = (0..c.d.len()).map(|xi| linalg::trace(c.d.rep(xi, x)) * c.d.dim(xi) as f64).sum();
            let expected = if x == c.g.identity() { n as f64 } else { 0.0 };
            complete.see((s - expected).norm() / n as f64);
        }
    }
    report("10", "dual-object integrity", &[chars, schur, complete])
}

fn verify_s3(json: &std::path::Path) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_bq"))
        .args(["verify", "--group", "S3", "--suite", "all", "--seed", "7", "--json"])
        .arg(json)
        .output()
        .unwrap();
    assert!(out.status.success(), "verify exited with {:?}", out.status);
    out.stdout
}

fn criterion_11_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let (out_a, out_b) = (verify_s3(&a), verify_s3(&b));
    let (json_a, json_b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let mut part = Part::new("differing bodies", 0.0);
    part.see(f64::from(u8::from(out_a != out_b)) + f64::from(u8::from(json_a != json_b)));
    report("11", "determinism of report bodies", &[part])
}

fn main() {
    let criteria: [fn() -> Outcome; 12] = [
        criterion_01_plancherel,
        criterion_02_fourier_wigner,
        criterion_03_projection_algebra,
        criterion_04_overcompleteness,
        criterion_05_trace_positivity_bounds,
        criterion_06_route_agreement,
        criterion_07a_berezin_symbol_bridge,
        criterion_07b_abelian_convolution,
        criterion_08_bargmann_calculus,
        criterion_09_toeplitz,
        criterion_10_dual_integrity,
        criterion_11_determinism,
    ];
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|c| s.spawn(c)).collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    for o in &outcomes {
        println!("{}", o.line);
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
