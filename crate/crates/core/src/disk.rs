//! Radial modes of the circular billiard whose radius grows as
//! `r0(t) = a t + b`.
//!
//! With `y = r / r0(t)` and the separation `P = e^{-i lambda tau} f(y)`,
//! `Q = e^{-i lambda tau} g(y)`, the radial system becomes the first-order
//! pair
//!
//! ```text
//! (1 - a^2 y^2) f' = i a lambda y f + (i a k - lambda) g - (k / y) f
//!               g' = lambda f + (k / y) g - i a y f'
//! ```
//!
//! which is integrated outward from the regular singular point `y = 0`
//! with a Frobenius series seed. Eigenvalues are the real `lambda` for which
//! `f(1) = 0`. At `k = 0` the pair is exactly the moving-wall box system.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::box1d::eigenvalue_1d;
use crate::error::{Error, Result};
use crate::law::{Grid, Spinor2};
use crate::special::{hyp2f1, HypParams};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest wall rate accepted by the spectrum scan.
pub const MAX_DISK_RATE: f64 = 0.95;
/// Acceptance threshold on `|f(1)| / max|f|` at a refined minimum.
pub const ROOT_ACCEPT: f64 = 1e-8;
/// Grid used to tabulate a [`DiskMode`] for interpolation.
pub const DENSE_POINTS: usize = 4097;

/// Leading power `s` of the regular solution, `f ~ y^s` as `y -> 0`.
pub fn frobenius_exponent(k: i64) -> u32 {
    if k >= 0 {
        (k + 1) as u32
    } else {
        (-k) as u32
    }
}

/// Right-hand side `(f', g')` of the separated radial system.
pub fn radial_rhs(k: i64, lambda: f64, a: f64, y: f64, s: Spinor2) -> Result<Spinor2> {
    if y == 0.0 {
        return Err(Error::domain("radial system is singular at y = 0; use the Frobenius seed"));
    }
    let w = 1.0 - a * a * y * y;
    if w == 0.0 {
        return Err(Error::SingularPoint(y));
    }
    let kf = k as f64;
    let (f, g) = (s.c1, s.c2);
    let df = (I * a * lambda * y * f + (I * a * kf - lambda) * g - kf / y * f) / w;
    let dg = lambda * f + kf / y * g - I * a * y * df;
    Ok(Spinor2::new(df, dg))
}

/// Power series of the solution regular at `y = 0`, normalized so that
/// `f = y^s (1 + ...)`.
#[derive(Debug, Clone)]
struct FrobeniusSeries {
    k: i64,
    s: u32,
    f: Vec<Complex64>,
    g: Vec<Complex64>,
}

const SERIES_TERMS: usize = 32;

impl FrobeniusSeries {
    fn new(k: i64, lambda: f64, a: f64) -> Result<Self> {
        if lambda == 0.0 {
            return Err(Error::domain("lambda = 0 is excluded from the radial problem"));
        }
        let s = frobenius_exponent(k);
        let sf = s as f64;
        let kf = k as f64;
        let mut f = vec![ZERO; SERIES_TERMS];
        let mut g = vec![ZERO; SERIES_TERMS];
        f[0] = Complex64::new(1.0, 0.0);
        if k >= 0 {
            // f = sum F_j y^(s+j), g = sum G_j y^(s-1+j)
            g[0] = (2.0 * kf + 1.0) / (I * a * kf - lambda);
            for j in 1..SERIES_TERMS {
                let jf = j as f64;
                let fm2 = if j >= 2 { f[j - 2] } else { ZERO };
                g[j] = (lambda - I * a * (sf + jf - 2.0)) * fm2 / jf;
                f[j] = ((I * a * kf - lambda) * g[j] + (a * a * (sf + jf - 2.0) + I * a * lambda) * fm2)
                    / (sf + jf + kf);
            }
        } else {
            // f = sum F_j y^(s+j), g = sum G_j y^(s+1+j)
            g[0] = (lambda - I * a * sf) / (2.0 * sf + 1.0);
            for j in 1..SERIES_TERMS {
                let jf = j as f64;
                if j >= 2 {
                    f[j] = ((a * a * (sf + jf - 2.0) + I * a * lambda) * f[j - 2]
                        + (I * a * kf - lambda) * g[j - 2])
                        / jf;
                }
                g[j] = (lambda - I * a * (sf + jf)) * f[j] / (2.0 * sf + 1.0 + jf);
            }
        }
        Ok(Self { k, s, f, g })
    }

    fn eval(&self, y: f64) -> Spinor2 {
        let poly = |c: &[Complex64]| c.iter().rev().fold(ZERO, |acc, &cj| acc * y + cj);
        let ys = y.powi(self.s as i32);
        let f = ys * poly(&self.f);
        let g = if self.k >= 0 {
            y.powi(self.s as i32 - 1) * poly(&self.g)
        } else {
            ys * y * poly(&self.g)
        };
        Spinor2::new(f, g)
    }

    /// Derivatives at `y = 0` exactly.
    fn derivative_at_origin(&self) -> Spinor2 {
        let df = if self.s == 1 { self.f[0] } else { ZERO };
        let dg = match (self.k >= 0, self.s) {
            // g = G0 y^(s-1) + G1 y^s + ..., G1 = 0
            (true, 1) => self.g[1],
            (true, 2) => self.g[0],
            _ => ZERO,
        };
        Spinor2::new(df, dg)
    }
}

/// Step-size control for the radial shooting integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootOptions {
    /// Product of the local wavenumber and the RK4 substep; the local
    /// truncation error per step scales as its fifth power.
    pub resolution: f64,
}

impl Default for ShootOptions {
    fn default() -> Self {
        Self { resolution: 0.01 }
    }
}

/// Shooting solution sampled on a grid of `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub grid: Grid,
    pub f: Vec<Complex64>,
    pub g: Vec<Complex64>,
    pub lambda: f64,
    pub k: i64,
    pub a: f64,
}

impl RadialProfile {
    pub fn f_at_wall(&self) -> Complex64 {
        self.f[self.f.len() - 1]
    }

    pub fn max_abs_f(&self) -> f64 {
        self.f.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `|f(1)| / max|f|`, the scale-free boundary mismatch.
    pub fn wall_mismatch(&self) -> f64 {
        let scale = self.max_abs_f();
        if scale == 0.0 {
            return 0.0;
        }
        self.f_at_wall().norm() / scale
    }
}

fn rk4_step(k: i64, lambda: f64, a: f64, y: f64, h: f64, s: Spinor2) -> Result<Spinor2> {
    let k1 = radial_rhs(k, lambda, a, y, s)?;
    let k2 = radial_rhs(k, lambda, a, y + 0.5 * h, s + k1 * (0.5 * h))?;
    let k3 = radial_rhs(k, lambda, a, y + 0.5 * h, s + k2 * (0.5 * h))?;
    let k4 = radial_rhs(k, lambda, a, y + h, s + k3 * h)?;
    Ok(s + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0))
}

/// Integrates the radial system from `y0 = max(1e-6, h/10)` to `y = 1` with
/// classic RK4, seeded by the regular Frobenius series.
pub fn radial_shoot(k: i64, lambda: f64, a: f64, grid: Grid) -> Result<RadialProfile> {
    radial_shoot_with(k, lambda, a, grid, ShootOptions::default())
}

pub fn radial_shoot_with(
    k: i64,
    lambda: f64,
    a: f64,
    grid: Grid,
    opts: ShootOptions,
) -> Result<RadialProfile> {
    if !(a.abs() < 1.0) {
        return Err(Error::domain(format!("wall rate |a| = {} must be < 1", a.abs())));
    }
    if !(opts.resolution > 0.0) {
        return Err(Error::domain("shooting resolution must be positive"));
    }
    let series = FrobeniusSeries::new(k, lambda, a)?;
    let n = grid.n_points();
    let h = grid.spacing();
    let y0 = (h / 10.0).max(1e-6);

    let mut f = Vec::with_capacity(n);
    let mut g = Vec::with_capacity(n);
    let origin = series.eval(0.0);
    f.push(origin.c1);
    g.push(origin.c2);

    let kf = (k as f64).abs();
    let rate = |y_end: f64| (lambda.abs() + (a * kf).abs() + 1.0) / (1.0 - a.abs() * y_end);
    let mut state = series.eval(y0);
    let mut y = y0;
    for i in 1..n {
        let target = grid.y(i);
        if i == 1 {
            // Geometric substeps resolve the k / y scale near the origin.
            let ratio_steps = ((target / y0).ln() / 0.05f64.ln_1p()).ceil() as usize;
            let wave_steps = ((target - y0) * rate(target) / opts.resolution).ceil() as usize;
            let m = ratio_steps.max(wave_steps).max(1);
            let q = (target / y0).powf(1.0 / m as f64);
            for j in 0..m {
                let next = if j + 1 == m { target } else { y * q };
                state = rk4_step(k, lambda, a, y, next - y, state)?;
                y = next;
            }
        } else {
            let w = rate(target) + kf / y;
            let m = ((target - y) * w / opts.resolution).ceil().max(1.0) as usize;
            let start = y;
            let dy = (target - start) / m as f64;
            for j in 0..m {
                let next = if j + 1 == m { target } else { start + (j + 1) as f64 * dy };
                state = rk4_step(k, lambda, a, y, next - y, state)?;
                y = next;
            }
        }
        if !state.is_finite() {
            return Err(Error::numerical("radial_shoot", format!("overflow at y = {y}")));
        }
        f.push(state.c1);
        g.push(state.c2);
    }
    Ok(RadialProfile { grid, f, g, lambda, k, a })
}

/// `lambda_n = 2 pi n a / ln((1 + a) / (1 - a))` for `k = 0`; identical to
/// the box eigenvalue because the two systems coincide.
pub fn disk_eigenvalue_k0_closed(n: u32, a: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("radial index n must be positive"));
    }
    eigenvalue_1d(n as i64, a)
}

/// The hypergeometric boundary value
/// `F(alpha, alpha + 1/2; gamma; a^2)` with
/// `alpha = |k + 1/2| / 2 + i lambda / (2a) + 1/4` and `gamma = |k + 1/2| + 1`.
pub fn hypergeometric_condition(k: i64, lambda: f64, a: f64) -> Result<Complex64> {
    if a == 0.0 || !(a.abs() < 1.0) {
        return Err(Error::domain(format!("wall rate a = {a} must satisfy 0 < |a| < 1")));
    }
    let kk = (k as f64 + 0.5).abs();
    let alpha = Complex64::new(0.5 * kk + 0.25, lambda / (2.0 * a));
    let gamma = Complex64::new(kk + 1.0, 0.0);
    let p = HypParams::new(alpha, alpha + 0.5, gamma, a * a)?;
    Ok(hyp2f1(&p, 1e-15)?.value)
}

/// Eigenvalues of one angular sector, with scan diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskSpectrum {
    pub k: i64,
    pub a: f64,
    pub eigenvalues: Vec<f64>,
    /// `|f(1)| / max|f|` at each accepted eigenvalue.
    pub residuals: Vec<f64>,
    /// Scan minima that did not reach the acceptance threshold.
    pub rejected: Vec<(f64, f64)>,
    /// Negative `k` has no closed-form check.
    pub numerically_defined: bool,
}

const SCAN_POINTS: usize = 129;
const SCAN_CHUNK: usize = 32;

fn mismatch(k: i64, lambda: f64, a: f64, grid: Grid, opts: ShootOptions) -> Result<(Complex64, f64)> {
    let p = radial_shoot_with(k, lambda, a, grid, opts)?;
    Ok((p.f_at_wall(), p.max_abs_f()))
}

/// Golden-section search for the minimum of `|f(1)| / max|f|` on
/// `[lo, hi]`, followed by Newton polishing along real `lambda`.
fn refine_minimum(k: i64, a: f64, lo: f64, hi: f64, grid: Grid, opts: ShootOptions) -> Result<(f64, f64)> {
    let m = |l: f64| -> Result<f64> {
        let (fw, scale) = mismatch(k, l, a, grid, opts)?;
        Ok(fw.norm() / scale)
    };
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (lo, hi);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut m1, mut m2) = (m(x1)?, m(x2)?);
    while hi - lo > 1e-7 * hi.abs().max(1.0) {
        if m1 < m2 {
            hi = x2;
            x2 = x1;
            m2 = m1;
            x1 = hi - inv_phi * (hi - lo);
            m1 = m(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            m1 = m2;
            x2 = lo + inv_phi * (hi - lo);
            m2 = m(x2)?;
        }
    }
    let mut best = if m1 < m2 { (x1, m1) } else { (x2, m2) };
    // Near a real root f(1) ~ c (lambda - lambda_n); project the Newton step.
    for _ in 0..6 {
        let l = best.0;
        let step = 1e-6 * l.abs().max(1.0);
        let (fp, _) = mismatch(k, l + step, a, grid, opts)?;
        let (fm, _) = mismatch(k, l - step, a, grid, opts)?;
        let (f0, scale) = mismatch(k, l, a, grid, opts)?;
        let slope = (fp - fm) / (2.0 * step);
        if slope.norm() == 0.0 {
            break;
        }
        let delta = -(f0 / slope).re;
        if delta.abs() > 10.0 * (hi - lo).max(step) {
            break;
        }
        let cand = l + delta;
        let (fc, sc) = mismatch(k, cand, a, grid, opts)?;
        let mc = fc.norm() / sc;
        if mc < f0.norm() / scale {
            best = (cand, mc);
        }
        if delta.abs() < 1e-14 * l.abs() {
            break;
        }
    }
    Ok(best)
}

/// First `n_max` positive eigenvalues for angular number `k`.
pub fn disk_spectrum(k: i64, a: f64, n_max: usize) -> Result<DiskSpectrum> {
    disk_spectrum_with(k, a, n_max, ShootOptions::default())
}

pub fn disk_spectrum_with(k: i64, a: f64, n_max: usize, opts: ShootOptions) -> Result<DiskSpectrum> {
    if !(a.abs() <= MAX_DISK_RATE) {
        return Err(Error::domain(format!("|a| = {} exceeds {MAX_DISK_RATE}", a.abs())));
    }
    if n_max == 0 {
        return Err(Error::domain("n_max must be at least 1"));
    }
    let grid = Grid::new(SCAN_POINTS)?;
    // Root spacing never exceeds pi; the k = 0 spacing is pi a / atanh(a).
    let spacing = if a == 0.0 { PI } else { PI * a / a.atanh() };
    let dl = 0.05 * spacing;
    let lambda_max = PI * (n_max as f64 + k.unsigned_abs() as f64 + 3.0);

    let mut eigenvalues = Vec::new();
    let mut residuals = Vec::new();
    let mut rejected = Vec::new();
    let mut prev: Vec<(f64, f64)> = Vec::new();
    let mut start = 1usize;
    'scan: loop {
        let lambdas: Vec<f64> = (start..start + SCAN_CHUNK).map(|i| i as f64 * dl).collect();
        if lambdas[0] > lambda_max {
            break;
        }
        let values: Vec<Result<(f64, f64)>> = lambdas
            .par_iter()
            .map(|&l| mismatch(k, l, a, grid, opts).map(|(fw, s)| (l, fw.norm() / s)))
            .collect();
        // Keep the last two points of the previous chunk to detect minima across chunks.
        let mut window = std::mem::take(&mut prev);
        for v in values {
            window.push(v?);
        }
        for i in 1..window.len() - 1 {
            let m = window[i].1;
            if m < window[i - 1].1 && m <= window[i + 1].1 {
                let (root, res) = refine_minimum(k, a, window[i - 1].0, window[i + 1].0, grid, opts)?;
                if res <= ROOT_ACCEPT {
                    eigenvalues.push(root);
                    residuals.push(res);
                    if eigenvalues.len() == n_max {
                        break 'scan;
                    }
                } else {
                    rejected.push((root, res));
                }
            }
        }
        prev = window[window.len() - 2..].to_vec();
        start += SCAN_CHUNK;
    }
    if eigenvalues.len() < n_max {
        let mut all: Vec<(f64, f64)> = eigenvalues.iter().copied().zip(residuals.iter().copied()).collect();
        all.extend(rejected.iter().copied());
        all.sort_by(|x, y| x.0.total_cmp(&y.0));
        return Err(Error::IncompleteSpectrum { requested: n_max, found: eigenvalues, residuals: all });
    }
    Ok(DiskSpectrum { k, a, eigenvalues, residuals, rejected, numerically_defined: k < 0 })
}

/// Eigenvalues only; see [`disk_spectrum`].
pub fn disk_eigenvalues(k: i64, a: f64, n_max: usize) -> Result<Vec<f64>> {
    Ok(disk_spectrum(k, a, n_max)?.eigenvalues)
}

/// Tolerance of the closed-form second component against shooting,
/// relative to `max|g|`.
pub const SECOND_COMPONENT_TOL: f64 = 1e-6;

/// Second component from the first by
/// `g = (lambda + i a (1 - k)) y^k int_0^y s^-k f ds - i a y f + D y^k`,
/// with `D` fitted to `reference` (the shooting `g`) at the grid point
/// nearest `y = 1/2`.
pub fn radial_second_component(
    k: i64,
    lambda: f64,
    a: f64,
    grid: Grid,
    f: &[Complex64],
    reference: &[Complex64],
) -> Result<Vec<Complex64>> {
    let n = grid.n_points();
    if f.len() != n || reference.len() != n {
        return Err(Error::domain("samples do not match the grid"));
    }
    if n < 4 {
        return Err(Error::domain("at least 4 grid points are needed"));
    }
    let h = grid.spacing();
    let kf = k as f64;
    let ypow = |y: f64| if k == 0 { 1.0 } else { y.powf(kf) };
    let integrand: Vec<Complex64> = (0..n)
        .map(|i| {
            let y = grid.y(i);
            if i == 0 {
                if k == 0 { f[0] } else { ZERO }
            } else {
                f[i] / ypow(y)
            }
        })
        .collect();
    // Cumulative integral with cubic interpolation on each interval.
    let u = &integrand;
    let mut cum = vec![ZERO; n];
    for j in 0..n - 1 {
        let piece = if j == 0 {
            u[0] * 9.0 + u[1] * 19.0 - u[2] * 5.0 + u[3]
        } else if j == n - 2 {
            u[n - 4] - u[n - 3] * 5.0 + u[n - 2] * 19.0 + u[n - 1] * 9.0
        } else {
            -u[j - 1] + u[j] * 13.0 + u[j + 1] * 13.0 - u[j + 2]
        };
        cum[j + 1] = cum[j] + piece * (h / 24.0);
    }
    let c = Complex64::new(lambda, a * (1.0 - kf));
    let particular: Vec<Complex64> = (0..n)
        .map(|i| {
            let y = grid.y(i);
            if i == 0 {
                ZERO
            } else {
                c * ypow(y) * cum[i] - I * a * y * f[i]
            }
        })
        .collect();
    let mid = (n - 1) / 2;
    let d = (reference[mid] - particular[mid]) / ypow(grid.y(mid));
    let g: Vec<Complex64> = (0..n)
        .map(|i| {
            if i == 0 {
                if k == 0 { d } else { ZERO }
            } else {
                particular[i] + d * ypow(grid.y(i))
            }
        })
        .collect();
    let scale = reference.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let residual = g.iter().zip(reference).map(|(x, r)| (x - r).norm()).fold(0.0, f64::max);
    let tolerance = SECOND_COMPONENT_TOL * scale.max(f64::MIN_POSITIVE);
    if residual > tolerance {
        return Err(Error::InconsistentFormula { residual, tolerance });
    }
    Ok(g)
}

/// A normalized disk eigenmode tabulated on a dense grid.
#[derive(Debug, Clone)]
pub struct DiskMode {
    pub k: i64,
    pub n: u32,
    pub a: f64,
    /// Initial radius.
    pub b: f64,
    pub lambda: f64,
    pub frobenius_exp: u32,
    /// `N`, fixing the physical norm `b int (|f|^2 + |g|^2) dy` to one.
    pub norm_const: f64,
    profile: RadialProfile,
    derivs: Vec<Spinor2>,
}

impl DiskMode {
    pub fn new(k: i64, n: u32, a: f64, b: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("radial index n must be positive"));
        }
        let spectrum = disk_spectrum(k, a, n as usize)?;
        Self::with_eigenvalue(k, n, a, b, spectrum.eigenvalues[n as usize - 1])
    }

    /// Builds the mode from an already known eigenvalue.
    pub fn with_eigenvalue(k: i64, n: u32, a: f64, b: f64, lambda: f64) -> Result<Self> {
        if !(b > 0.0) {
            return Err(Error::domain(format!("initial radius b = {b} must be positive")));
        }
        let grid = Grid::new(DENSE_POINTS)?;
        let profile = radial_shoot(k, lambda, a, grid)?;
        let mut derivs = Vec::with_capacity(DENSE_POINTS);
        derivs.push(FrobeniusSeries::new(k, lambda, a)?.derivative_at_origin());
        for i in 1..DENSE_POINTS {
            let s = Spinor2::new(profile.f[i], profile.g[i]);
            derivs.push(radial_rhs(k, lambda, a, grid.y(i), s)?);
        }
        let density: Vec<f64> = profile
            .f
            .iter()
            .zip(&profile.g)
            .map(|(f, g)| f.norm_sqr() + g.norm_sqr())
            .collect();
        let integral = crate::evolution::simpson(&density, grid.spacing());
        let norm_const = 1.0 / (b * integral).sqrt();
        Ok(Self {
            k,
            n,
            a,
            b,
            lambda,
            frobenius_exp: frobenius_exponent(k),
            norm_const,
            profile,
            derivs,
        })
    }

    pub fn profile(&self) -> &RadialProfile {
        &self.profile
    }

    /// `gamma = |k + 1/2| + 1` of the hypergeometric representation.
    pub fn hyp_gamma(&self) -> f64 {
        (self.k as f64 + 0.5).abs() + 1.0
    }

    /// `alpha = |k + 1/2| / 2 + i lambda / (2a) + 1/4`.
    pub fn hyp_alpha(&self) -> Complex64 {
        Complex64::new(0.5 * (self.k as f64 + 0.5).abs() + 0.25, self.lambda / (2.0 * self.a))
    }

    pub fn radius(&self, t: f64) -> f64 {
        self.a * t + self.b
    }

    pub fn rescaled_time(&self, t: f64) -> f64 {
        if self.a == 0.0 {
            t / self.b
        } else {
            (self.a * t / self.b).ln_1p() / self.a
        }
    }

    /// Normalized `(N f(y), N g(y))` by cubic Hermite interpolation.
    pub fn eval(&self, y: f64) -> Result<Spinor2> {
        if !(0.0..=1.0).contains(&y) {
            return Err(Error::domain(format!("y = {y} outside [0, 1]")));
        }
        let grid = self.profile.grid;
        let h = grid.spacing();
        let i = ((y / h).floor() as usize).min(grid.n_points() - 2);
        let t = (y - grid.y(i)) / h;
        let (h00, h10, h01, h11) = (
            (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t),
            t * (1.0 - t) * (1.0 - t),
            t * t * (3.0 - 2.0 * t),
            t * t * (t - 1.0),
        );
        let p = &self.profile;
        let f = p.f[i] * h00 + self.derivs[i].c1 * (h10 * h) + p.f[i + 1] * h01 + self.derivs[i + 1].c1 * (h11 * h);
        let g = p.g[i] * h00 + self.derivs[i].c2 * (h10 * h) + p.g[i + 1] * h01 + self.derivs[i + 1].c2 * (h11 * h);
        Ok(Spinor2::new(f, g) * self.norm_const)
    }
}

/// `(P, Q)(r, t) = N e^{-i lambda tau(t)} (f, g)(r / r0(t))`.
pub fn mode_solution_disk(mode: &DiskMode, t: f64, r: f64) -> Result<Spinor2> {
    let r0 = mode.radius(t);
    if !(r0 > 0.0) {
        return Err(Error::domain(format!("disk has collapsed at t = {t}")));
    }
    if !(r >= 0.0 && r <= r0 * (1.0 + 4.0 * f64::EPSILON)) {
        return Err(Error::domain(format!("r = {r} outside the disk [0, {r0}]")));
    }
    let phase = Complex64::from_polar(1.0, -mode.lambda * mode.rescaled_time(t));
    Ok(mode.eval((r / r0).min(1.0))? * phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spin(f: f64, g: f64) -> Spinor2 {
        Spinor2::new(Complex64::new(f, 0.0), Complex64::new(g, 0.0))
    }

    #[test]
    fn rhs_static_harmonic() {
        let d = radial_rhs(0, 2.0, 0.0, 0.4, spin(0.3, -0.7)).unwrap();
        assert_relative_eq!(d.c1.re, 1.4, max_relative = 1e-15);
        assert_relative_eq!(d.c2.re, 0.6, max_relative = 1e-15);
    }

    #[test]
    fn rhs_k0_is_box_system() {
        let (lambda, a, y) = (2.7, 0.5, 0.37);
        let s = Spinor2::new(Complex64::new(0.2, -0.1), Complex64::new(-0.4, 0.9));
        let d = radial_rhs(0, lambda, a, y, s).unwrap();
        let r1 = d.c2 + I * a * y * d.c1 - lambda * s.c1;
        let r2 = -d.c1 + I * a * y * d.c2 - lambda * s.c2;
        assert!(r1.norm() < 1e-14 && r2.norm() < 1e-14);
    }

    #[test]
    fn rhs_k1_static_riccati_bessel() {
        let lambda: f64 = 3.3;
        for &y in &[0.1, 0.5, 0.9] {
            let x = lambda * y;
            let f = x.sin() / x - x.cos();
            let g = -x.sin();
            let d = radial_rhs(1, lambda, 0.0, y, spin(f, g)).unwrap();
            let df = lambda * (x.cos() / x - x.sin() / (x * x) + x.sin());
            assert_relative_eq!(d.c1.re, df, max_relative = 1e-12);
            assert_relative_eq!(d.c2.re, -lambda * x.cos(), max_relative = 1e-12);
        }
    }

    #[test]
    fn rhs_errors() {
        assert!(matches!(radial_rhs(1, 1.0, 0.5, 0.0, spin(1.0, 1.0)), Err(Error::Domain(_))));
        assert!(matches!(radial_rhs(1, 1.0, 0.5, 2.0, spin(1.0, 1.0)), Err(Error::SingularPoint(_))));
    }

    #[test]
    fn series_satisfies_system() {
        for &k in &[0i64, 1, 2, -1, -2] {
            let (lambda, a) = (3.1, 0.4);
            let series = FrobeniusSeries::new(k, lambda, a).unwrap();
            let y = 0.05;
            let e = 1e-5;
            let s = series.eval(y);
            let d = radial_rhs(k, lambda, a, y, s).unwrap();
            let num = (series.eval(y + e) - series.eval(y - e)) * (1.0 / (2.0 * e));
            assert!((d.c1 - num.c1).norm() < 1e-7 * (1.0 + num.c1.norm()), "k={k}");
            assert!((d.c2 - num.c2).norm() < 1e-7 * (1.0 + num.c2.norm()), "k={k}");
        }
    }

    #[test]
    fn shoot_static_sine() {
        let p = radial_shoot(0, PI, 0.0, Grid::new(257).unwrap()).unwrap();
        assert!(p.wall_mismatch() < 1e-8, "{}", p.wall_mismatch());
        // f = y + ... = sin(pi y) / pi
        assert_relative_eq!(p.f[128].re, (PI * 0.5).sin() / PI, max_relative = 1e-9);
    }

    #[test]
    fn shoot_k1_static_root() {
        let p = radial_shoot(1, 4.493_409_457_909_064, 0.0, Grid::new(257).unwrap()).unwrap();
        assert!(p.wall_mismatch() < 1e-6);
    }

    #[test]
    fn shoot_k0_moving_closed_form() {
        let lambda = disk_eigenvalue_k0_closed(1, 0.3).unwrap();
        assert_relative_eq!(lambda, 3.044_969_634_487_090_4, max_relative = 1e-14);
        let p = radial_shoot(0, lambda, 0.3, Grid::new(257).unwrap()).unwrap();
        assert!(p.wall_mismatch() < 1e-6);
    }

    #[test]
    fn closed_form_matches_box() {
        for n in 1..4 {
            assert_eq!(disk_eigenvalue_k0_closed(n, 0.4).unwrap(), eigenvalue_1d(n as i64, 0.4).unwrap());
        }
        assert!(disk_eigenvalue_k0_closed(1, 0.0).is_err());
        assert_relative_eq!(disk_eigenvalue_k0_closed(1, 1e-9).unwrap(), PI, max_relative = 1e-12);
    }

    #[test]
    fn spectrum_k0() {
        let ev = disk_eigenvalues(0, 0.3, 3).unwrap();
        for (i, l) in ev.iter().enumerate() {
            let exact = disk_eigenvalue_k0_closed(i as u32 + 1, 0.3).unwrap();
            assert_relative_eq!(*l, exact, max_relative = 1e-9);
        }
        let slow = disk_eigenvalues(0, 1e-3, 1).unwrap();
        assert!((slow[0] - PI).abs() < 1e-5);
    }

    #[test]
    fn spectrum_k1_static() {
        let ev = disk_eigenvalues(1, 0.0, 2).unwrap();
        assert_relative_eq!(ev[0], 4.493_409_457_909_064, max_relative = 1e-9);
        assert_relative_eq!(ev[1], 7.725_251_836_937_707, max_relative = 1e-9);
    }

    #[test]
    fn spectrum_rejects_fast_walls() {
        assert!(disk_eigenvalues(0, 0.97, 1).is_err());
        assert!(disk_eigenvalues(0, 0.5, 0).is_err());
    }

    #[test]
    fn negative_k_flagged() {
        let s = disk_spectrum(-1, 0.0, 1).unwrap();
        assert!(s.numerically_defined);
        // k = -1 is the mirror of k = 0 in the static limit: f'' + lambda^2 f = 0.
        assert_relative_eq!(s.eigenvalues[0], PI, max_relative = 1e-9);
    }

    #[test]
    fn hypergeometric_condition_k0() {
        let a = 0.3;
        let l1 = disk_eigenvalue_k0_closed(1, a).unwrap();
        let diff = Complex64::from_polar(1.0, -(l1 / a) * a.ln_1p())
            - Complex64::from_polar(1.0, -(l1 / a) * (-a).ln_1p());
        assert!(diff.norm() < 1e-8);
        assert!(hypergeometric_condition(0, l1, a).unwrap().norm() < 1e-12);
        let at_zero = hypergeometric_condition(0, 0.0, a).unwrap();
        assert!(at_zero.norm() > 0.1 && at_zero.is_finite());
        assert!(hypergeometric_condition(0, 1.5, a).unwrap().norm() > 1e-3);
        assert!(hypergeometric_condition(0, 1.0, 0.0).is_err());
    }

    #[test]
    fn second_component_static_sine() {
        let grid = Grid::new(513).unwrap();
        let lambda = 2.5;
        let f: Vec<_> = grid.coords().map(|y| Complex64::new((lambda * y).sin(), 0.0)).collect();
        let reference: Vec<_> = grid.coords().map(|y| Complex64::new(-(lambda * y).cos(), 0.0)).collect();
        let g = radial_second_component(0, lambda, 0.0, grid, &f, &reference).unwrap();
        assert!((g[0].re + 1.0).abs() < 1e-9);
    }

    #[test]
    fn second_component_zero_profile() {
        let grid = Grid::new(33).unwrap();
        let z = vec![ZERO; 33];
        let g = radial_second_component(2, 3.0, 0.2, grid, &z, &z).unwrap();
        assert!(g.iter().all(|v| *v == ZERO));
    }

    #[test]
    fn second_component_detects_inconsistency() {
        let grid = Grid::new(65).unwrap();
        let f: Vec<_> = grid.coords().map(|y| Complex64::new(y.sin(), 0.0)).collect();
        let reference: Vec<_> = grid.coords().map(|y| Complex64::new(y * y, 0.0)).collect();
        assert!(matches!(
            radial_second_component(0, 1.0, 0.0, grid, &f, &reference),
            Err(Error::InconsistentFormula { .. })
        ));
    }

    #[test]
    fn disk_mode_boundary_and_norm() {
        let mode = DiskMode::new(0, 1, 0.3, 1.0).unwrap();
        for &t in &[0.0, 0.7, 2.0] {
            let r0 = mode.radius(t);
            assert!(mode_solution_disk(&mode, t, r0).unwrap().c1.norm() < 1e-8);
        }
        assert!(mode_solution_disk(&mode, 0.0, 1.2).is_err());
        assert_eq!(mode.frobenius_exp, 1);
        assert_relative_eq!(mode.hyp_gamma(), 1.5);
    }
}
