//! Self-checks run by `billiard verify`. Each check is deterministic and
//! reports its measured value next to the bound it must meet.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::box1d::{eigenmode_1d, eigenvalue_1d, quantization_residual_1d, Mode1D};
use crate::disk::{disk_eigenvalue_k0_closed, disk_spectrum};
use crate::error::Result;
use crate::evolution::{evolve, l2_error, norm, EvolutionConfig, FieldState};
use crate::law::{BoundaryLaw, Grid};
use crate::special::{hyp2f1, hyp2f1_halfgamma_oracle, HypParams};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub required: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.measured <= self.required
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: measured {:.3e}, required <= {:.1e}", self.name, self.measured, self.required)
    }
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

fn eigenvalue_limit() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for n in 1..=10 {
        worst = worst.max(rel(eigenvalue_1d(n, 1e-3)?, PI * n as f64));
    }
    Ok(worst)
}

fn quantization() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for a in [0.1, 0.5, 0.9] {
        for n in 1..=5 {
            worst = worst.max(quantization_residual_1d(eigenvalue_1d(n, a)?, a)?.norm());
        }
    }
    Ok(worst)
}

fn mode_walls() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for a in [0.1, 0.5, 0.9] {
        for n in 1..=5 {
            let m = Mode1D::new(n, a, 1.0)?;
            worst = worst.max(eigenmode_1d(&m, 0.0)?.c1.norm()).max(eigenmode_1d(&m, 1.0)?.c1.norm());
        }
    }
    Ok(worst)
}

fn hypergeometric() -> Result<f64> {
    let mut worst: f64 = 0.0;
    let alphas = [Complex64::new(0.3, 0.0), Complex64::new(1.0, 0.7), Complex64::new(0.5, 2.0)];
    for &alpha in &alphas {
        for z in [-0.5, -0.1, 0.1, 0.5, 0.8] {
            let p = HypParams::new(alpha, alpha + 0.5, Complex64::new(1.5, 0.0), z * z)?;
            let series = hyp2f1(&p, 1e-15)?.value;
            let oracle = hyp2f1_halfgamma_oracle(alpha, z)?;
            worst = worst.max((series - oracle).norm() / oracle.norm());

            let beta = Complex64::new(0.7, -0.4);
            let p = HypParams::new(alpha, beta, beta, z)?;
            let exact = Complex64::new(1.0 - z, 0.0).powc(-alpha);
            worst = worst.max((hyp2f1(&p, 1e-15)?.value - exact).norm() / exact.norm());
        }
    }
    Ok(worst)
}

fn disk_k0() -> Result<f64> {
    let s = disk_spectrum(0, 0.3, 3)?;
    let mut worst: f64 = 0.0;
    for (n, l) in s.eigenvalues.iter().enumerate() {
        worst = worst.max(rel(*l, disk_eigenvalue_k0_closed(n as u32 + 1, 0.3)?));
    }
    Ok(worst)
}

fn disk_static() -> Result<f64> {
    let s = disk_spectrum(1, 0.0, 2)?;
    Ok(rel(s.eigenvalues[0], 4.493_409_457_909_064).max(rel(s.eigenvalues[1], 7.725_251_836_937_707)))
}

fn rescaled_time() -> Result<f64> {
    let law = BoundaryLaw::linear(0.5, 1.0, 10.0)?;
    let mut worst: f64 = 0.0;
    for t in [0.5, 2.0, 10.0] {
        let closed = law.rescaled_time(t)?.tau;
        worst = worst.max(rel(law.rescaled_time_quadrature(0.0, t)?, closed));
    }
    Ok(worst)
}

fn static_unitarity() -> Result<(f64, f64)> {
    let law = BoundaryLaw::static_wall(1.0)?;
    let grid = Grid::new(401)?;
    let start = FieldState::static_mode(1, law, grid)?;
    let (end, _) = evolve(&start, &EvolutionConfig::auto(1.0, 0.4))?;
    let drift = (norm(&end)? - norm(&start)?).abs();
    let dt = 0.4 * grid.spacing();
    let steps = (1.0 / dt).ceil();
    let dt = 1.0 / steps;
    let (there, _) = evolve(&start, &EvolutionConfig::fixed(1.0, dt))?;
    let (back, _) = evolve(&there, &EvolutionConfig::fixed(1.0, -dt))?;
    Ok((drift, l2_error(&back, &start)?))
}

fn exact_mode_scaling() -> Result<f64> {
    let mode = Mode1D::new(1, 0.5, 1.0)?;
    let grid = Grid::new(1025)?;
    let n0 = norm(&FieldState::box_mode(&mode, 0.0, grid)?)?;
    let mut worst: f64 = 0.0;
    for t in [0.5, 1.0, 2.0] {
        let nt = norm(&FieldState::box_mode(&mode, t, grid)?)?;
        worst = worst.max(rel(nt / n0, mode.length(t) / mode.b));
    }
    Ok(worst)
}

fn moving_wall_propagation() -> Result<f64> {
    let mode = Mode1D::new(1, 0.5, 1.0)?;
    let grid = Grid::new(513)?;
    let start = FieldState::box_mode(&mode, 0.0, grid)?;
    let (end, _) = evolve(&start, &EvolutionConfig::auto(1.0, 0.5))?;
    l2_error(&end, &FieldState::box_mode(&mode, 1.0, grid)?)
}

/// Runs every check. A check whose computation itself fails is reported as
/// an infinite measurement.
pub fn run_checks() -> Vec<Check> {
    let measure = |r: Result<f64>| r.unwrap_or(f64::INFINITY);
    let (drift, reversal) = static_unitarity().unwrap_or((f64::INFINITY, f64::INFINITY));
    vec![
        Check { name: "box eigenvalues approach n pi as a -> 0", measured: measure(eigenvalue_limit()), required: 1e-6 },
        Check { name: "box eigenvalues solve the wall condition", measured: measure(quantization()), required: 1e-12 },
        Check { name: "box modes vanish at both walls", measured: measure(mode_walls()), required: 1e-12 },
        Check { name: "hypergeometric series vs closed forms", measured: measure(hypergeometric()), required: 1e-10 },
        Check { name: "disk k = 0 shooting vs closed form", measured: measure(disk_k0()), required: 1e-6 },
        Check { name: "disk static k = 1 vs tan x = x roots", measured: measure(disk_static()), required: 1e-6 },
        Check { name: "rescaled time closed form vs quadrature", measured: measure(rescaled_time()), required: 1e-10 },
        Check { name: "static norm drift over unit time", measured: drift, required: 1e-8 },
        Check { name: "static forward/backward reversal", measured: reversal, required: 1e-8 },
        Check { name: "exact mode norm grows like L(t)", measured: measure(exact_mode_scaling()), required: 1e-6 },
        Check { name: "moving wall propagation error (513 points)", measured: measure(moving_wall_propagation()), required: 1e-4 },
    ]
}
