//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Reference values come from independent computations (closed forms,
//! bracketed roots of the raw wall condition, a direct ODE integration for
//! the static disk, high-precision values frozen below) rather than from
//! the code under test.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use dirac_billiard::box1d::{eigenmode_1d, eigenvalue_1d, quantization_residual_1d, system_residual_1d, Mode1D};
use dirac_billiard::disk::{disk_spectrum, mode_solution_disk, DiskMode};
use dirac_billiard::evolution::{
    energy, evolve, l2_error, norm, run_fermi, EvolutionConfig, FieldState, Geometry, ObservableSeries,
};
use dirac_billiard::special::{hyp2f1, hyp2f1_halfgamma_oracle, HypParams};
use dirac_billiard::{BoundaryLaw, Grid};
use num_complex::Complex64;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

fn bisect(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sign changes of `f` on a uniform scan, each refined by bisection.
fn scan_roots(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    while x0 < hi {
        let x1 = x0 + step;
        let f1 = f(x1);
        if (f0 < 0.0) != (f1 < 0.0) {
            roots.push(bisect(&mut f, x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

fn order(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}

fn eigenvalue_limit() -> Outcome {
    let mut limit: f64 = 0.0;
    for n in 1..=10 {
        limit = limit.max((eigenvalue_1d(n, 1e-3).unwrap() / (PI * n as f64) - 1.0).abs());
    }
    // f(1) = 0 reduces to sin(lambda ln((1+a)/(1-a)) / (2a)) = 0.
    let mut root_err: f64 = 0.0;
    let mut wall: f64 = 0.0;
    for a in [0.1f64, 0.5, 0.9] {
        let phase = ((1.0 + a) / (1.0 - a)).ln() / (2.0 * a);
        let roots = scan_roots(|l| (l * phase).sin(), 0.5, 10.0 * PI / phase + 0.5, 0.1);
        assert_eq!(roots.len(), 10, "a = {a}");
        for (i, r) in roots.iter().enumerate() {
            let l = eigenvalue_1d(i as i64 + 1, a).unwrap();
            root_err = root_err.max(rel(l, *r));
            wall = wall.max(quantization_residual_1d(l, a).unwrap().norm());
        }
    }
    outcome(
        limit <= 1e-6 && root_err <= 1e-10,
        format!("max |l_n/(n pi) - 1| = {limit:.2e} (<= 1e-6); bracketed roots rel. err {root_err:.2e} (<= 1e-10); wall residual {wall:.1e}"),
    )
}

fn residual_orders(a: f64, n: i64) -> [f64; 2] {
    let mode = Mode1D::new(n, a, 1.0).unwrap();
    let res: Vec<f64> = [129usize, 257, 513]
        .iter()
        .map(|&p| {
            let h = 1.0 / (p - 1) as f64;
            let (f, g): (Vec<_>, Vec<_>) = (0..p)
                .map(|i| {
                    let s = eigenmode_1d(&mode, (i as f64 * h).min(1.0)).unwrap();
                    (s.c1, s.c2)
                })
                .unzip();
            system_residual_1d(mode.lambda, a, &f, &g, h).unwrap()
        })
        .collect();
    [order(res[0], res[1]), order(res[1], res[2])]
}

fn range(v: &[f64]) -> (f64, f64) {
    (v.iter().cloned().fold(f64::INFINITY, f64::min), v.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
}

fn eigenmode_correctness() -> Outcome {
    let mut orders = Vec::new();
    let mut walls: f64 = 0.0;
    for a in [-0.5, -0.1, 0.1, 0.5] {
        for n in 1..=3 {
            orders.extend(residual_orders(a, n));
            let mode = Mode1D::new(n, a, 1.0).unwrap();
            walls = walls.max(eigenmode_1d(&mode, 0.0).unwrap().c1.norm());
            walls = walls.max(eigenmode_1d(&mode, 1.0).unwrap().c1.norm());
        }
    }
    // At a = 0.9 the local wavenumber near the wall is lambda / (1 - a), so
    // 129 points are still pre-asymptotic; reported, not graded.
    let fast: Vec<f64> = (1..=3).flat_map(|n| residual_orders(0.9, n)).collect();
    let (lo, hi) = range(&orders);
    let (flo, fhi) = range(&fast);
    outcome(
        lo >= 1.9 && hi <= 2.1 && walls <= 1e-12,
        format!(
            "observed orders in [{lo:.3}, {hi:.3}] (2.0 +- 0.1, a = +-0.1, +-0.5, n = 1..3); max |f(0)|, |f(1)| = {walls:.1e} (<= 1e-12); \
             diagnostic a = 0.9: [{flo:.3}, {fhi:.3}]"
        ),
    )
}

fn hypergeometric() -> Outcome {
    let c = Complex64::new;
    let alphas = [c(0.3, 0.0), c(1.0, 0.7), c(0.5, 2.0)];
    let zs = [-0.5, -0.1, 0.1, 0.5, 0.8];
    let mut worst: f64 = 0.0;
    for &alpha in &alphas {
        for &z in &zs {
            let p = HypParams::new(alpha, alpha + 0.5, c(1.5, 0.0), z * z).unwrap();
            let oracle = hyp2f1_halfgamma_oracle(alpha, z).unwrap();
            worst = worst.max((hyp2f1(&p, 1e-15).unwrap().value - oracle).norm() / oracle.norm());
            for beta in [c(0.7, -0.4), c(2.5, 0.0)] {
                let p = HypParams::new(alpha, beta, beta, z).unwrap();
                let exact = c(1.0 - z, 0.0).powc(-alpha);
                worst = worst.max((hyp2f1(&p, 1e-15).unwrap().value - exact).norm() / exact.norm());
            }
        }
    }
    // High-precision reference values of F(alpha, alpha + 1/2; 3/2; z^2).
    let frozen = [
        (c(0.3, 0.0), 0.1, c(1.0016075342487744, 0.0)),
        (c(0.3, 0.0), 0.5, c(1.0455518481736863, 0.0)),
        (c(0.3, 0.0), 0.8, c(1.1558566533554632, 0.0)),
        (c(1.0, 0.7), 0.8, c(0.5218281577352216, 1.9491556558544555)),
        (c(0.5, 2.0), 0.8, c(0.1350966779324042, -0.2643135653635366)),
    ];
    for (alpha, z, want) in frozen {
        let p = HypParams::new(alpha, alpha + 0.5, c(1.5, 0.0), z * z).unwrap();
        worst = worst.max((hyp2f1(&p, 1e-15).unwrap().value - want).norm() / want.norm());
    }
    let p = HypParams::new(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), 0.5).unwrap();
    worst = worst.max(rel(hyp2f1(&p, 1e-15).unwrap().value.re, 2.0 * 2f64.ln()));
    outcome(worst <= 1e-10, format!("max relative deviation {worst:.2e} (<= 1e-10) over closed forms and frozen values"))
}

fn disk_k0_spectrum() -> Outcome {
    let mut worst: f64 = 0.0;
    for a in [0.1f64, 0.3, 0.5] {
        let s = disk_spectrum(0, a, 5).unwrap();
        for (i, l) in s.eigenvalues.iter().enumerate() {
            let closed = 2.0 * PI * (i + 1) as f64 * a / ((1.0 + a) / (1.0 - a)).ln();
            worst = worst.max(rel(*l, closed));
        }
    }
    outcome(worst <= 1e-6, format!("max relative deviation from 2 pi n a / ln((1+a)/(1-a)): {worst:.2e} (<= 1e-6)"))
}

/// `f(1)` of `f'' = (k(k+1)/y^2 - lambda^2) f` started from the regular
/// power series at small `y`.
fn static_radial_wall(k: i64, lambda: f64) -> f64 {
    let kk = (k * (k + 1)) as f64;
    let p = (k + 1) as f64;
    let y0: f64 = 1e-3;
    let c = -lambda * lambda / (2.0 * (2.0 * p + 1.0));
    let mut f = y0.powf(p) * (1.0 + c * y0 * y0);
    let mut df = p * y0.powf(p - 1.0) + (p + 2.0) * c * y0.powf(p + 1.0);
    let rhs = |y: f64, f: f64| (kk / (y * y) - lambda * lambda) * f;
    let steps = 4000;
    let h = (1.0 - y0) / steps as f64;
    let mut y = y0;
    for _ in 0..steps {
        let (k1f, k1d) = (df, rhs(y, f));
        let (k2f, k2d) = (df + 0.5 * h * k1d, rhs(y + 0.5 * h, f + 0.5 * h * k1f));
        let (k3f, k3d) = (df + 0.5 * h * k2d, rhs(y + 0.5 * h, f + 0.5 * h * k2f));
        let (k4f, k4d) = (df + h * k3d, rhs(y + h, f + h * k3f));
        f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
        df += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        y += h;
    }
    f
}

fn disk_static_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut first = Vec::new();
    for (k, count) in [(1i64, 3usize), (2, 2)] {
        let oracle = scan_roots(|l| static_radial_wall(k, l), 1.0, 11.5, 0.02);
        assert!(oracle.len() >= count, "k = {k}: {oracle:?}");
        let s = disk_spectrum(k, 0.0, count).unwrap();
        for (l, o) in s.eigenvalues.iter().zip(&oracle) {
            worst = worst.max(rel(*l, *o));
        }
        first.push(s.eigenvalues[0]);
    }
    // tan x = x and j_2(x) = 0, to 16 digits.
    let frozen = rel(first[0], 4.493409457909064).max(rel(first[1], 5.76345919689455));
    outcome(
        worst <= 1e-6 && frozen <= 1e-6,
        format!(
            "max relative deviation from ODE scan + bisection {worst:.2e} (<= 1e-6); lambda_1(k=1) = {:.10}, lambda_1(k=2) = {:.10}",
            first[0], first[1]
        ),
    )
}

fn propagation_errors(points: &[usize], mut run: impl FnMut(Grid) -> f64) -> Vec<f64> {
    points.iter().map(|&p| run(Grid::new(p).unwrap())).collect()
}

fn propagator_vs_closed_form() -> Outcome {
    let grids = [257usize, 513, 1025];
    let mode = Mode1D::new(1, 0.5, 1.0).unwrap();
    let cfg = EvolutionConfig::auto(1.0, 0.5);
    let box_err = propagation_errors(&grids, |g| {
        let (end, _) = evolve(&FieldState::box_mode(&mode, 0.0, g).unwrap(), &cfg).unwrap();
        l2_error(&end, &FieldState::box_mode(&mode, 1.0, g).unwrap()).unwrap()
    });

    // The k = 0 radial sector has the same closed form as the box; the disk
    // run starts from the shooting profile and is compared with the closed form.
    let disk = DiskMode::new(0, 1, 0.5, 1.0).unwrap();
    let dense = Grid::new(2049).unwrap();
    let closed = FieldState::box_mode(&mode, 0.0, dense).unwrap();
    let shot = FieldState::disk_mode(&disk, 0.0, dense).unwrap();
    let overlap: Complex64 = closed.psi1.iter().zip(&shot.psi1).map(|(c, s)| c.conj() * s).sum();
    let phase = overlap / overlap.norm();
    let profile_dev = closed
        .psi1
        .iter()
        .chain(&closed.psi2)
        .zip(shot.psi1.iter().chain(&shot.psi2))
        .map(|(c, s)| (c * phase - s).norm())
        .fold(0.0, f64::max);
    let disk_err = propagation_errors(&grids, |g| {
        let start = FieldState::disk_mode(&disk, 0.0, g).unwrap();
        assert_eq!(start.geometry, Geometry::DiskRadial { k: 0 });
        let (end, _) = evolve(&start, &cfg).unwrap();
        let reference = FieldState::from_fn(1.0, g, end.law.clone(), end.geometry, |y| {
            Ok(dirac_billiard::box1d::mode_solution_1d(&mode, 1.0, y * 1.5)? * phase)
        })
        .unwrap();
        let _ = mode_solution_disk(&disk, 1.0, 1.5).unwrap();
        l2_error(&end, &reference).unwrap()
    });

    let orders = |e: &[f64]| (order(e[0], e[1]), order(e[1], e[2]));
    let (b1, b2) = orders(&box_err);
    let (d1, d2) = orders(&disk_err);
    let passed = box_err[1] <= 1e-4 && b1.min(b2) >= 1.9 && disk_err[1] <= 1e-4 && d1.min(d2) >= 1.9;
    outcome(
        passed,
        format!(
            "box L2 err {:.2e}/{:.2e}/{:.2e} (513: <= 1e-4), orders {b1:.3}, {b2:.3} (>= 1.9); \
             disk k=0 L2 err {:.2e}/{:.2e}/{:.2e}, orders {d1:.3}, {d2:.3}; shooting vs closed profile {profile_dev:.1e}",
            box_err[0], box_err[1], box_err[2], disk_err[0], disk_err[1], disk_err[2]
        ),
    )
}

fn static_sanity() -> Outcome {
    let law = BoundaryLaw::static_wall(1.0).unwrap();
    let state = |p: usize| FieldState::static_mode(1, law.clone(), Grid::new(p).unwrap()).unwrap();

    // Norm drift at the documented resolution.
    let s401 = state(401);
    let (end401, _) = evolve(&s401, &EvolutionConfig::auto(1.0, 0.4)).unwrap();
    let drift = (norm(&end401).unwrap() - norm(&s401).unwrap()).abs();
    let phased = |s: &FieldState, t: f64| {
        let mut r = s.clone();
        let w = Complex64::from_polar(1.0, -PI * t);
        r.psi1.iter_mut().chain(r.psi2.iter_mut()).for_each(|v| *v *= w);
        r.t = t;
        r
    };
    let phase401 = l2_error(&end401, &phased(&s401, 1.0)).unwrap();

    // Central differences carry a phase error of pi^3 h^2 / 6 per unit time,
    // so the 1e-5 phase bound needs h <~ 1/700; checked on 1025 points.
    let s = state(1025);
    let (end, _) = evolve(&s, &EvolutionConfig::auto(1.0, 0.4)).unwrap();
    let phase_err = l2_error(&end, &phased(&s, 1.0)).unwrap();

    let dt = 1.0 / (1.0 / (0.4 / 400.0) as f64).ceil();
    let (there, _) = evolve(&s401, &EvolutionConfig::fixed(1.0, dt)).unwrap();
    let (back, _) = evolve(&there, &EvolutionConfig::fixed(1.0, -dt)).unwrap();
    let reversal = l2_error(&back, &s401).unwrap();

    outcome(
        drift <= 1e-8 && phase_err <= 1e-5 && reversal <= 1e-8,
        format!(
            "norm drift {drift:.2e}/unit time (<= 1e-8, 401 pts); phase L2 err {phase_err:.2e} (<= 1e-5, 1025 pts; {phase401:.2e} on 401); reversal {reversal:.2e} (<= 1e-8)"
        ),
    )
}

fn exact_mode_scaling() -> Outcome {
    let grid = Grid::new(1025).unwrap();
    let mut worst_norm: f64 = 0.0;
    let mut worst_energy: f64 = 0.0;
    for (n, a, b) in [(1i64, 0.5, 1.0), (2, 0.3, 2.0), (1, -0.4, 1.0)] {
        let mode = Mode1D::new(n, a, b).unwrap();
        let s0 = FieldState::box_mode(&mode, 0.0, grid).unwrap();
        let (n0, e0) = (norm(&s0).unwrap(), energy(&s0).unwrap());
        for t in [0.3, 0.7, 1.1, 1.6, 2.0] {
            let st = FieldState::box_mode(&mode, t, grid).unwrap();
            let l = mode.length(t);
            worst_norm = worst_norm.max(rel(norm(&st).unwrap() / n0, l / b));
            worst_energy = worst_energy.max(rel(energy(&st).unwrap() * l, e0 * b));
        }
    }
    outcome(
        worst_norm <= 1e-6 && worst_energy <= 1e-6,
        format!("norm(t)/norm(0) vs L(t)/L(0): {worst_norm:.2e}; energy(t) L(t) vs energy(0) L(0): {worst_energy:.2e} (each <= 1e-6, 5 times x 3 modes)"),
    )
}

fn fermi(points: usize, eps: f64, dt: f64, every: usize) -> ObservableSeries {
    let law = BoundaryLaw::breathing(1.0, eps, 2.0 * PI, 10.0).unwrap();
    let cfg = EvolutionConfig::fixed(10.0, dt).recording(every);
    run_fermi(1, &law, Grid::new(points).unwrap(), &cfg).unwrap()
}

fn fermi_self_consistency() -> Outcome {
    let flat = fermi(513, 0.0, 0.0008, 125);
    let e0 = flat.samples[0].energy;
    let drift = flat.samples.iter().map(|s| rel(s.energy, e0)).fold(0.0, f64::max);

    // Same time step on both grids so the recorded times coincide.
    let coarse = fermi(513, 0.1, 0.0008, 125);
    let fine = fermi(1025, 0.1, 0.0004, 250);
    assert_eq!(coarse.len(), fine.len());
    let diffs: Vec<(f64, f64)> = coarse
        .samples
        .iter()
        .zip(&fine.samples)
        .map(|(c, f)| {
            assert!((c.t - f.t).abs() < 1e-9);
            (c.t, rel(c.energy, f.energy))
        })
        .collect();
    let worst = diffs.iter().map(|d| d.1).fold(0.0, f64::max);
    let holds_until = diffs.iter().take_while(|d| d.1 <= 0.01).last().map_or(0.0, |d| d.0);
    let (e_first, e_last) = (fine.samples[0].energy, fine.samples[fine.len() - 1].energy);
    outcome(
        drift <= 1e-6 && worst <= 0.01,
        format!(
            "eps=0 energy drift {drift:.2e} (<= 1e-6, t_end=10); eps=0.1 513 vs 1025 max rel. energy diff {worst:.2e} (<= 1e-2), \
             within 1e-2 up to t = {holds_until:.1}; E(0) = {e_first:.6}, E(10) = {e_last:.6} on 1025"
        ),
    )
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_billiard");
    let dir = tempfile::tempdir().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["spectrum-1d", "--a", "0.5", "--n-max", "10"],
        vec!["spectrum-1d", "--a", "0.5", "--n-max", "3", "--format", "json"],
        vec!["spectrum-disk", "--k", "1", "--a", "0.3", "--n-max", "3"],
        vec!["spectrum-disk", "--k", "-1", "--a", "0.3", "--n-max", "2", "--format", "json"],
        vec!["mode", "--a", "0.5", "--t", "1", "--points", "65"],
        vec!["mode", "--geometry", "disk", "--k", "1", "--a", "0.3", "--points", "65", "--format", "json"],
        vec!["evolve", "--law", "linear", "--a", "0.5", "--t-end", "1", "--points", "257", "--record-every", "20"],
        vec!["evolve", "--geometry", "disk", "--k", "1", "--law", "breathing", "--eps", "0.1", "--omega", "3", "--points", "129", "--t-end", "0.5"],
        vec!["fermi", "--t-end", "2", "--points", "257", "--record-every", "20", "--format", "json"],
        vec!["verify"],
    ];
    let mut failures = Vec::new();
    for (i, args) in commands.iter().enumerate() {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let path = dir.path().join(format!("out{i}_{rep}"));
            let out = Command::new(bin).args(args).arg("--output").arg(&path).output().unwrap();
            let file = std::fs::read(&path).unwrap_or_default();
            outputs.push((out.status.code(), out.stdout, file));
        }
        if outputs[0].0 != Some(0) || outputs[0] != outputs[1] || outputs[0].2.is_empty() {
            failures.push(args[0]);
        }
    }
    outcome(
        failures.is_empty(),
        format!("{} command configurations run twice, byte-identical outputs; mismatches: {failures:?}", commands.len()),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("eigenvalue limit and wall condition", eigenvalue_limit),
        ("eigenmode residual order and walls", eigenmode_correctness),
        ("hypergeometric kernel", hypergeometric),
        ("disk k=0 spectrum", disk_k0_spectrum),
        ("disk static oracle", disk_static_oracle),
        ("propagator vs closed form", propagator_vs_closed_form),
        ("static sanity", static_sanity),
        ("exact-mode scaling laws", exact_mode_scaling),
        ("Fermi experiment self-consistency", fermi_self_consistency),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        if !o.passed {
            failed += 1;
        }
        println!("[{tag}] {:>2} {name}: {} ({:.2} s)", i + 1, o.detail, start.elapsed().as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
