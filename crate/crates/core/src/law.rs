//! Wall trajectories and the shared value types of the moving-boundary
//! problem: the rescaled grid `y = x / L(t)` and rescaled time
//! `tau = int_0^t ds / L(s)`. Units are natural (hbar = c = 1).

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::integrate_adaptive;

/// Relative tolerance for the rescaled-time quadrature.
pub const RESCALED_TIME_TOL: f64 = 1e-12;

/// Two complex amplitudes: `(Psi1, Psi2)` in the box, `(P, Q)` in the disk.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spinor2 {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl Spinor2 {
    pub const fn new(c1: Complex64, c2: Complex64) -> Self {
        Self { c1, c2 }
    }

    pub fn is_finite(&self) -> bool {
        self.c1.is_finite() && self.c2.is_finite()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c1.norm_sqr() + self.c2.norm_sqr()
    }
}

impl Add for Spinor2 {
    type Output = Spinor2;
    fn add(self, rhs: Spinor2) -> Spinor2 {
        Spinor2::new(self.c1 + rhs.c1, self.c2 + rhs.c2)
    }
}

impl Sub for Spinor2 {
    type Output = Spinor2;
    fn sub(self, rhs: Spinor2) -> Spinor2 {
        Spinor2::new(self.c1 - rhs.c1, self.c2 - rhs.c2)
    }
}

impl Mul<Complex64> for Spinor2 {
    type Output = Spinor2;
    fn mul(self, rhs: Complex64) -> Spinor2 {
        Spinor2::new(self.c1 * rhs, self.c2 * rhs)
    }
}

impl Mul<f64> for Spinor2 {
    type Output = Spinor2;
    fn mul(self, rhs: f64) -> Spinor2 {
        Spinor2::new(self.c1 * rhs, self.c2 * rhs)
    }
}

/// Uniform samples of the rescaled coordinate on `[0, 1]`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    n_points: usize,
}

impl Grid {
    pub fn new(n_points: usize) -> Result<Self> {
        if n_points < 3 {
            return Err(Error::domain(format!("grid needs at least 3 points, got {n_points}")));
        }
        Ok(Self { n_points })
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        1.0 / (self.n_points - 1) as f64
    }

    pub fn y(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            1.0
        } else {
            i as f64 * self.spacing()
        }
    }

    pub fn coords(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.y(i))
    }
}

/// Rescaled time `tau = int_0^t ds / L(s)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TransformedTime {
    pub tau: f64,
}

/// Trajectory of the moving wall: box length `L(t)` or disk radius `r0(t)`.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryLaw {
    Static { l0: f64 },
    /// `L(t) = a t + b`, the only law for which the separated problem is exact.
    Linear { a: f64, b: f64 },
    /// `L(t) = l0 (1 + eps sin(omega t))`.
    Breathing { l0: f64, eps: f64, omega: f64 },
    /// Piecewise-linear interpolation of `(t, L)` samples.
    Tabulated { samples: Vec<(f64, f64)> },
}

impl BoundaryLaw {
    pub fn static_wall(l0: f64) -> Result<Self> {
        let law = BoundaryLaw::Static { l0 };
        law.validate(0.0)?;
        Ok(law)
    }

    /// Linear law checked for positivity and subluminality on `[0, horizon]`.
    pub fn linear(a: f64, b: f64, horizon: f64) -> Result<Self> {
        let law = BoundaryLaw::Linear { a, b };
        law.validate(horizon)?;
        Ok(law)
    }

    pub fn breathing(l0: f64, eps: f64, omega: f64, horizon: f64) -> Result<Self> {
        let law = BoundaryLaw::Breathing { l0, eps, omega };
        law.validate(horizon)?;
        Ok(law)
    }

    pub fn tabulated(samples: Vec<(f64, f64)>, horizon: f64) -> Result<Self> {
        let law = BoundaryLaw::Tabulated { samples };
        law.validate(horizon)?;
        Ok(law)
    }

    /// For a contracting linear wall, the time at which the box collapses.
    pub fn collapse_time(&self) -> Option<f64> {
        match *self {
            BoundaryLaw::Linear { a, b } if a < 0.0 => Some(-b / a),
            _ => None,
        }
    }

    /// Checks positivity and subluminal wall speed over `[0, horizon]`.
    pub fn validate(&self, horizon: f64) -> Result<()> {
        if !(horizon >= 0.0) || !horizon.is_finite() {
            return Err(Error::InvalidLaw(format!("horizon {horizon} must be finite and >= 0")));
        }
        match self {
            BoundaryLaw::Static { l0 } => {
                if !(*l0 > 0.0 && l0.is_finite()) {
                    return Err(Error::InvalidLaw(format!("length {l0} must be positive")));
                }
            }
            BoundaryLaw::Linear { a, b } => {
                if !(*b > 0.0 && b.is_finite()) {
                    return Err(Error::InvalidLaw(format!("initial length b = {b} must be positive")));
                }
                if !(a.abs() < 1.0) {
                    return Err(Error::SuperluminalWall { t: 0.0, velocity: *a });
                }
                if a * horizon + b <= 0.0 {
                    return Err(Error::InvalidLaw(format!(
                        "wall collapses at t = {} inside the horizon {horizon}",
                        -b / a
                    )));
                }
            }
            BoundaryLaw::Breathing { l0, eps, omega } => {
                if !(*l0 > 0.0 && l0.is_finite()) {
                    return Err(Error::InvalidLaw(format!("length {l0} must be positive")));
                }
                if !(eps.abs() < 1.0) || !omega.is_finite() {
                    return Err(Error::InvalidLaw(format!(
                        "relative amplitude |eps| = {} must be < 1",
                        eps.abs()
                    )));
                }
                let vmax = (l0 * eps * omega).abs();
                if !(vmax < 1.0) {
                    return Err(Error::SuperluminalWall { t: 0.0, velocity: vmax });
                }
            }
            BoundaryLaw::Tabulated { samples } => {
                if samples.len() < 2 {
                    return Err(Error::InvalidLaw("tabulated law needs at least 2 samples".into()));
                }
                for w in samples.windows(2) {
                    let ((t0, l0), (t1, l1)) = (w[0], w[1]);
                    if !(t1 > t0) {
                        return Err(Error::InvalidLaw(format!(
                            "sample times must increase strictly ({t0} then {t1})"
                        )));
                    }
                    let slope = (l1 - l0) / (t1 - t0);
                    if !(slope.abs() < 1.0) {
                        return Err(Error::SuperluminalWall { t: t0, velocity: slope });
                    }
                }
                if let Some(&(t, l)) = samples.iter().find(|(_, l)| !(*l > 0.0)) {
                    return Err(Error::InvalidLaw(format!("length {l} at t = {t} must be positive")));
                }
                let (lo, hi) = (samples[0].0, samples[samples.len() - 1].0);
                if lo > 0.0 || hi < horizon {
                    return Err(Error::OutOfRange { t: if lo > 0.0 { 0.0 } else { horizon }, lo, hi });
                }
            }
        }
        Ok(())
    }

    /// Wall position `L(t)`.
    pub fn position(&self, t: f64) -> Result<f64> {
        let l = match self {
            BoundaryLaw::Static { l0 } => *l0,
            BoundaryLaw::Linear { a, b } => a * t + b,
            BoundaryLaw::Breathing { l0, eps, omega } => l0 * (1.0 + eps * (omega * t).sin()),
            BoundaryLaw::Tabulated { samples } => {
                let i = segment(samples, t)?;
                let ((t0, l0), (t1, l1)) = (samples[i], samples[i + 1]);
                l0 + (l1 - l0) * (t - t0) / (t1 - t0)
            }
        };
        if !(l > 0.0) {
            return Err(Error::InvalidLaw(match self.collapse_time() {
                Some(tc) => format!("L({t}) = {l} <= 0; the wall collapses at t = {tc}"),
                None => format!("L({t}) = {l} <= 0"),
            }));
        }
        Ok(l)
    }

    /// Wall velocity `dL/dt`; must stay below the speed of light.
    pub fn velocity(&self, t: f64) -> Result<f64> {
        let v = match self {
            BoundaryLaw::Static { .. } => 0.0,
            BoundaryLaw::Linear { a, .. } => *a,
            BoundaryLaw::Breathing { l0, eps, omega } => l0 * eps * omega * (omega * t).cos(),
            BoundaryLaw::Tabulated { samples } => {
                let i = segment(samples, t)?;
                let v0 = node_derivative(samples, i);
                let v1 = node_derivative(samples, i + 1);
                let (t0, t1) = (samples[i].0, samples[i + 1].0);
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        };
        if !(v.abs() < 1.0) {
            return Err(Error::SuperluminalWall { t, velocity: v });
        }
        Ok(v)
    }

    /// `tau(t) = int_0^t ds / L(s)`; closed form for static and linear walls.
    pub fn rescaled_time(&self, t: f64) -> Result<TransformedTime> {
        if t == 0.0 {
            return Ok(TransformedTime { tau: 0.0 });
        }
        let tau = match self {
            BoundaryLaw::Static { l0 } => t / l0,
            BoundaryLaw::Linear { a, b } => {
                self.position(t)?;
                if *a == 0.0 {
                    t / b
                } else {
                    (a * t / b).ln_1p() / a
                }
            }
            BoundaryLaw::Breathing { .. } => self.rescaled_time_quadrature(0.0, t)?,
            BoundaryLaw::Tabulated { samples } => {
                segment(samples, 0.0)?;
                segment(samples, t)?;
                let (lo, hi) = if t > 0.0 { (0.0, t) } else { (t, 0.0) };
                let mut knots = vec![lo];
                knots.extend(samples.iter().map(|s| s.0).filter(|&s| s > lo && s < hi));
                knots.push(hi);
                let mut total = 0.0;
                for w in knots.windows(2) {
                    total += self.rescaled_time_quadrature(w[0], w[1])?;
                }
                total.copysign(t)
            }
        };
        Ok(TransformedTime { tau })
    }

    /// Adaptive quadrature of `1 / L(s)` over `[lo, hi]`, for any law.
    pub fn rescaled_time_quadrature(&self, lo: f64, hi: f64) -> Result<f64> {
        let mut failure = None;
        let est = integrate_adaptive(
            |s| match self.position(s) {
                Ok(l) => Complex64::new(1.0 / l, 0.0),
                Err(e) => {
                    failure.get_or_insert(e);
                    Complex64::new(f64::NAN, 0.0)
                }
            },
            lo,
            hi,
            RESCALED_TIME_TOL,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(est?.value.re)
    }
}

fn segment(samples: &[(f64, f64)], t: f64) -> Result<usize> {
    let (lo, hi) = (samples[0].0, samples[samples.len() - 1].0);
    if !(t >= lo && t <= hi) {
        return Err(Error::OutOfRange { t, lo, hi });
    }
    let i = samples.partition_point(|s| s.0 <= t).saturating_sub(1);
    Ok(i.min(samples.len() - 2))
}

/// Second-order three-point derivative at sample `i` on a nonuniform mesh.
fn node_derivative(samples: &[(f64, f64)], i: usize) -> f64 {
    let n = samples.len();
    if n == 2 {
        return (samples[1].1 - samples[0].1) / (samples[1].0 - samples[0].0);
    }
    let t = |j: usize| samples[j].0;
    let l = |j: usize| samples[j].1;
    if i == 0 {
        let (h1, h2) = (t(1) - t(0), t(2) - t(1));
        -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * l(0) + (h1 + h2) / (h1 * h2) * l(1)
            - h1 / (h2 * (h1 + h2)) * l(2)
    } else if i == n - 1 {
        let (h1, h2) = (t(n - 2) - t(n - 3), t(n - 1) - t(n - 2));
        h2 / (h1 * (h1 + h2)) * l(n - 3) - (h1 + h2) / (h1 * h2) * l(n - 2)
            + (2.0 * h2 + h1) / (h2 * (h1 + h2)) * l(n - 1)
    } else {
        let (h1, h2) = (t(i) - t(i - 1), t(i + 1) - t(i));
        -h2 / (h1 * (h1 + h2)) * l(i - 1) + (h2 - h1) / (h1 * h2) * l(i)
            + h1 / (h2 * (h1 + h2)) * l(i + 1)
    }
}
