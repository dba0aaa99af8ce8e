//! Exact modes of the massless Dirac particle in a box `0 < x < L(t)` whose
//! right wall moves as `L(t) = a t + b`.
//!
//! In the rescaled variables `y = x / L`, `tau = int dt / L`, the
//! separated spinor `e^{-i lambda tau} (f(y), g(y))` obeys
//!
//! ```text
//!  g' + i a y f' = lambda f
//! -f' + i a y g' = lambda g
//! ```
//!
//! with `f(0) = f(1) = 0`. Writing `mu = -i lambda / a`, the solutions are
//! built from the unimodular powers `(1 -+ a y)^mu`:
//!
//! ```text
//! f = M [(1 - a y)^mu - (1 + a y)^mu]
//! g = -i M [(1 - a y)^mu + (1 + a y)^mu]
//! ```
//!
//! and `f(1) = 0` quantizes `lambda_n = 2 pi n a / ln((1 + a) / (1 - a))`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::law::Spinor2;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn check_rate(a: f64) -> Result<()> {
    if a == 0.0 || !(a.abs() < 1.0) {
        return Err(Error::domain(format!(
            "wall rate a = {a} must satisfy 0 < |a| < 1 (use StaticMode for a = 0)"
        )));
    }
    Ok(())
}

/// `(1 + s)^(-i lambda / a)` for real `s > -1`, computed with the real logarithm.
fn unimodular_power(s: f64, lambda: f64, a: f64) -> Complex64 {
    Complex64::from_polar(1.0, -(lambda / a) * s.ln_1p())
}

/// Separation constant `lambda_n` for the linearly moving wall.
pub fn eigenvalue_1d(n: i64, a: f64) -> Result<f64> {
    check_rate(a)?;
    if n == 0 {
        return Err(Error::domain("n = 0 is the trivial solution lambda = 0"));
    }
    // ln((1+a)/(1-a)) = 2 atanh(a), which stays accurate as a -> 0.
    Ok(PI * n as f64 * a / a.atanh())
}

/// `((1-a)/2)^(-i lambda/a) - ((1+a)/2)^(-i lambda/a)`, the right-wall
/// boundary value of `f` up to a unimodular factor. Vanishes at every
/// `lambda_n` and at the excluded `lambda = 0`.
pub fn quantization_residual_1d(lambda: f64, a: f64) -> Result<Complex64> {
    check_rate(a)?;
    let half = |s: f64| Complex64::from_polar(1.0, -(lambda / a) * (0.5 * s).ln());
    Ok(half(1.0 - a) - half(1.0 + a))
}

/// An exact mode of the moving-wall box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode1D {
    pub n: i64,
    pub a: f64,
    /// Initial box length.
    pub b: f64,
    pub lambda: f64,
    /// `M`, fixed so that the norm at `t = 0` is one.
    pub norm_const: f64,
}

impl Mode1D {
    pub fn new(n: i64, a: f64, b: f64) -> Result<Self> {
        if !(b > 0.0) {
            return Err(Error::domain(format!("initial length b = {b} must be positive")));
        }
        let lambda = eigenvalue_1d(n, a)?;
        // |f|^2 + |g|^2 = 4 M^2 pointwise, so b * 4 M^2 = 1.
        Ok(Self { n, a, b, lambda, norm_const: 0.5 / b.sqrt() })
    }

    /// Exponent `mu = -i lambda / a` of the power solutions.
    pub fn exponent(&self) -> Complex64 {
        -I * self.lambda / self.a
    }

    pub fn length(&self, t: f64) -> f64 {
        self.a * t + self.b
    }

    /// `tau(t) = ln((a t + b) / b) / a`.
    pub fn rescaled_time(&self, t: f64) -> f64 {
        (self.a * t / self.b).ln_1p() / self.a
    }
}

/// Spatial profile `(f(y), g(y))` on the rescaled interval.
pub fn eigenmode_1d(mode: &Mode1D, y: f64) -> Result<Spinor2> {
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::domain(format!("y = {y} outside [0, 1]")));
    }
    let u = unimodular_power(-mode.a * y, mode.lambda, mode.a);
    let v = unimodular_power(mode.a * y, mode.lambda, mode.a);
    let m = mode.norm_const;
    Ok(Spinor2::new((u - v) * m, -I * m * (u + v)))
}

/// Full space-time solution `Psi(t, x)` for `0 <= x <= a t + b`.
pub fn mode_solution_1d(mode: &Mode1D, t: f64, x: f64) -> Result<Spinor2> {
    let l = mode.length(t);
    if !(l > 0.0) {
        return Err(Error::domain(format!("box has collapsed at t = {t} (L = {l})")));
    }
    if !(x >= 0.0 && x <= l * (1.0 + 4.0 * f64::EPSILON)) {
        return Err(Error::domain(format!("x = {x} outside the box [0, {l}]")));
    }
    let y = (x / l).min(1.0);
    let phase = Complex64::from_polar(1.0, -mode.lambda * mode.rescaled_time(t));
    Ok(eigenmode_1d(mode, y)? * phase)
}

/// Max-norm over interior points of the centered-difference residuals of
/// both separated equations, for profiles sampled at `y_i = i h`.
pub fn system_residual_1d(
    lambda: f64,
    a: f64,
    f: &[Complex64],
    g: &[Complex64],
    h: f64,
) -> Result<f64> {
    if f.len() != g.len() {
        return Err(Error::domain("profiles have different lengths"));
    }
    if f.len() < 3 {
        return Err(Error::domain(format!("grid too coarse: {} points", f.len())));
    }
    let mut worst: f64 = 0.0;
    for i in 1..f.len() - 1 {
        let y = i as f64 * h;
        let df = (f[i + 1] - f[i - 1]) / (2.0 * h);
        let dg = (g[i + 1] - g[i - 1]) / (2.0 * h);
        let r1 = dg + I * a * y * df - lambda * f[i];
        let r2 = -df + I * a * y * dg - lambda * g[i];
        worst = worst.max(r1.norm()).max(r2.norm());
    }
    Ok(worst)
}

/// Mode of the box with a fixed wall, `A (sin k x, -cos k x)` with energy `+k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaticMode {
    pub n: u32,
    pub length: f64,
    pub k_n: f64,
    pub energy: f64,
    pub amplitude: f64,
}

impl StaticMode {
    pub fn new(n: u32, length: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("static mode index must be positive"));
        }
        if !(length > 0.0) {
            return Err(Error::domain(format!("length {length} must be positive")));
        }
        let k_n = n as f64 * PI / length;
        Ok(Self { n, length, k_n, energy: k_n, amplitude: 1.0 / length.sqrt() })
    }
}

pub fn static_mode_eval(sm: &StaticMode, x: f64) -> Result<Spinor2> {
    if !(x >= 0.0 && x <= sm.length * (1.0 + 4.0 * f64::EPSILON)) {
        return Err(Error::domain(format!("x = {x} outside [0, {}]", sm.length)));
    }
    let (s, c) = (sm.k_n * x).sin_cos();
    Ok(Spinor2::new(
        Complex64::new(sm.amplitude * s, 0.0),
        Complex64::new(-sm.amplitude * c, 0.0),
    ))
}
