//! Method-of-lines propagation of the moving-wall Dirac system on the fixed
//! rescaled interval `y in [0, 1]`.
//!
//! In lab time the transformed equations read
//!
//! ```text
//! d/dt Psi1 = [ -i (D Psi2 - (k/y) Psi2) + Ldot y D Psi1 ] / L
//! d/dt Psi2 = [  i (D Psi1 + (k/y) Psi1) + Ldot y D Psi2 ] / L
//! ```
//!
//! (`k = 0` and no `1/y` terms for the box). `D` is the second-order centered
//! difference with one-sided second-order closures at the endpoints, and
//! time stepping is classic RK4. `Psi1` is pinned to zero at the wall and,
//! for the box or by regularity for the disk, at `y = 0`. At the wall `Psi2`
//! is advanced along the outgoing characteristic.

use num_complex::Complex64;

use crate::box1d::{mode_solution_1d, Mode1D, StaticMode};
use crate::disk::{mode_solution_disk, DiskMode};
use crate::error::{Error, Result};
use crate::law::{BoundaryLaw, Grid, Spinor2};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest Courant number accepted for an explicit fixed step.
pub const MAX_COURANT: f64 = 1.0;
/// Largest Courant factor accepted for automatic steps.
pub const MAX_AUTO_CFL: f64 = 0.5;
/// How far a constrained sample may sit from zero, relative to the field
/// maximum, before a state is rejected.
const BOUNDARY_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Box1D,
    /// Radial sector with angular number `k` of the circular billiard.
    DiskRadial { k: i64 },
}

/// The two spinor components on the rescaled grid at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub t: f64,
    pub grid: Grid,
    pub psi1: Vec<Complex64>,
    pub psi2: Vec<Complex64>,
    pub law: BoundaryLaw,
    pub geometry: Geometry,
}

impl FieldState {
    /// Samples `profile(y)` and enforces the boundary conditions.
    pub fn from_fn<F>(t: f64, grid: Grid, law: BoundaryLaw, geometry: Geometry, mut profile: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<Spinor2>,
    {
        let mut psi1 = Vec::with_capacity(grid.n_points());
        let mut psi2 = Vec::with_capacity(grid.n_points());
        for y in grid.coords() {
            let s = profile(y)?;
            psi1.push(s.c1);
            psi2.push(s.c2);
        }
        let mut state = Self { t, grid, psi1, psi2, law, geometry };
        state.enforce_boundary()?;
        Ok(state)
    }

    /// Static box mode `n` at the initial wall position of `law`.
    pub fn static_mode(n: u32, law: BoundaryLaw, grid: Grid) -> Result<Self> {
        let l0 = law.position(0.0)?;
        let sm = StaticMode::new(n, l0)?;
        FieldState::from_fn(0.0, grid, law, Geometry::Box1D, |y| {
            crate::box1d::static_mode_eval(&sm, (y * l0).min(l0))
        })
    }

    /// The exact moving-wall mode sampled at time `t`.
    pub fn box_mode(mode: &Mode1D, t: f64, grid: Grid) -> Result<Self> {
        let law = BoundaryLaw::Linear { a: mode.a, b: mode.b };
        let l = law.position(t)?;
        FieldState::from_fn(t, grid, law, Geometry::Box1D, |y| mode_solution_1d(mode, t, y * l))
    }

    /// The disk mode sampled at time `t`.
    pub fn disk_mode(mode: &DiskMode, t: f64, grid: Grid) -> Result<Self> {
        let law = if mode.a == 0.0 {
            BoundaryLaw::Static { l0: mode.b }
        } else {
            BoundaryLaw::Linear { a: mode.a, b: mode.b }
        };
        let r0 = law.position(t)?;
        FieldState::from_fn(t, grid, law, Geometry::DiskRadial { k: mode.k }, |y| {
            mode_solution_disk(mode, t, y * r0)
        })
    }

    pub fn length(&self) -> Result<f64> {
        self.law.position(self.t)
    }

    fn constrained(&self) -> (bool, bool) {
        match self.geometry {
            Geometry::Box1D => (true, false),
            Geometry::DiskRadial { k } => (true, k != 0),
        }
    }

    /// Checks the pinned samples are (numerically) zero, then sets them exactly.
    pub fn enforce_boundary(&mut self) -> Result<()> {
        if !self.psi1.iter().chain(&self.psi2).all(|v| v.is_finite()) {
            return Err(Error::numerical("FieldState", format!("non-finite sample at t = {}", self.t)));
        }
        if self.psi1.len() != self.grid.n_points() || self.psi2.len() != self.grid.n_points() {
            return Err(Error::domain("samples do not match the grid"));
        }
        let scale = self
            .psi1
            .iter()
            .chain(&self.psi2)
            .map(|v| v.norm())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        let last = self.psi1.len() - 1;
        let (origin1, origin2) = self.constrained();
        let mut pinned = vec![(1, last, "Psi1 at the wall")];
        if origin1 {
            pinned.push((1, 0, "Psi1 at y = 0"));
        }
        if origin2 {
            pinned.push((2, 0, "Psi2 at y = 0"));
        }
        for (component, i, what) in pinned {
            let v = if component == 1 { &mut self.psi1[i] } else { &mut self.psi2[i] };
            if v.norm() > BOUNDARY_SLACK * scale {
                return Err(Error::domain(format!("{what} is {} but must vanish", v.norm())));
            }
            *v = ZERO;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeStep {
    /// Explicit step; a negative value runs backward in time.
    Fixed(f64),
    /// `dt = cfl * h * L(t) / (1 + |Ldot(t)|)`, recomputed every step.
    Auto { cfl: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Rk4Central,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionConfig {
    pub step: TimeStep,
    /// Duration of the run, measured from the initial state's time.
    pub t_end: f64,
    /// Record a sample every this many steps (the initial and final states are always recorded).
    pub record_every: usize,
    pub scheme: Scheme,
}

impl EvolutionConfig {
    pub fn auto(t_end: f64, cfl: f64) -> Self {
        Self { step: TimeStep::Auto { cfl }, t_end, record_every: usize::MAX, scheme: Scheme::Rk4Central }
    }

    pub fn fixed(t_end: f64, dt: f64) -> Self {
        Self { step: TimeStep::Fixed(dt), t_end, record_every: usize::MAX, scheme: Scheme::Rk4Central }
    }

    pub fn recording(mut self, every: usize) -> Self {
        self.record_every = every;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::domain(format!("t_end = {} must be positive", self.t_end)));
        }
        if self.record_every == 0 {
            return Err(Error::domain("record_every must be at least 1"));
        }
        match self.step {
            TimeStep::Fixed(dt) if dt == 0.0 || !dt.is_finite() => {
                Err(Error::domain(format!("time step {dt} must be nonzero")))
            }
            TimeStep::Auto { cfl } if !(cfl > 0.0 && cfl <= MAX_AUTO_CFL) => {
                Err(Error::domain(format!("CFL factor {cfl} must lie in (0, {MAX_AUTO_CFL}]")))
            }
            _ => Ok(()),
        }
    }
}

/// Centered differences inside, one-sided second-order stencils at the ends.
fn derivative(u: &[Complex64], h: f64, out: &mut [Complex64]) {
    let n = u.len();
    let inv = 0.5 / h;
    out[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) * inv;
    for i in 1..n - 1 {
        out[i] = (u[i + 1] - u[i - 1]) * inv;
    }
    out[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) * inv;
}

/// Fourth-order centered differences where the stencil fits, used by the
/// energy diagnostic.
fn derivative4(u: &[Complex64], h: f64) -> Vec<Complex64> {
    let n = u.len();
    let mut out = vec![ZERO; n];
    derivative(u, h, &mut out);
    let inv = 1.0 / (12.0 * h);
    for i in 2..n.saturating_sub(2) {
        out[i] = (-u[i + 2] + 8.0 * u[i + 1] - 8.0 * u[i - 1] + u[i - 2]) * inv;
    }
    out
}

/// Composite Simpson rule on uniform samples; an odd number of intervals
/// closes with the 3/8 rule.
pub fn simpson(v: &[f64], h: f64) -> f64 {
    let n = v.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * h * (v[0] + v[1]),
        _ => {
            let intervals = n - 1;
            let even = if intervals % 2 == 0 { intervals } else { intervals - 3 };
            let mut s = 0.0;
            for j in (0..even).step_by(2) {
                s += v[j] + 4.0 * v[j + 1] + v[j + 2];
            }
            s *= h / 3.0;
            if even < intervals {
                let j = even;
                s += 3.0 * h / 8.0 * (v[j] + 3.0 * v[j + 1] + 3.0 * v[j + 2] + v[j + 3]);
            }
            s
        }
    }
}

struct Workspace {
    d1: Vec<Complex64>,
    d2: Vec<Complex64>,
    stage1: Vec<Complex64>,
    stage2: Vec<Complex64>,
    k1: [Vec<Complex64>; 4],
    k2: [Vec<Complex64>; 4],
}

impl Workspace {
    fn new(n: usize) -> Self {
        let z = || vec![ZERO; n];
        Self {
            d1: z(),
            d2: z(),
            stage1: z(),
            stage2: z(),
            k1: [z(), z(), z(), z()],
            k2: [z(), z(), z(), z()],
        }
    }
}

struct Rhs<'a> {
    law: &'a BoundaryLaw,
    geometry: Geometry,
    grid: Grid,
}

impl Rhs<'_> {
    fn eval(
        &self,
        t: f64,
        p1: &[Complex64],
        p2: &[Complex64],
        d1: &mut [Complex64],
        d2: &mut [Complex64],
        r1: &mut [Complex64],
        r2: &mut [Complex64],
    ) -> Result<()> {
        let l = self.law.position(t)?;
        let v = self.law.velocity(t)?;
        let h = self.grid.spacing();
        derivative(p1, h, d1);
        derivative(p2, h, d2);
        let inv_l = 1.0 / l;
        let n = p1.len();
        let k = match self.geometry {
            Geometry::Box1D => 0,
            Geometry::DiskRadial { k } => k,
        };
        for i in 0..n {
            let y = self.grid.y(i);
            let (c1, c2) = if k != 0 && i > 0 {
                let ky = k as f64 / y;
                (d2[i] - ky * p2[i], d1[i] + ky * p1[i])
            } else {
                (d2[i], d1[i])
            };
            r1[i] = (-I * c1 + v * y * d1[i]) * inv_l;
            r2[i] = (I * c2 + v * y * d2[i]) * inv_l;
        }
        // At the wall Psi2 follows the outgoing characteristic
        // w = Psi1 + i Psi2, which moves with speed (v - 1) / L; the
        // incoming one is fixed by Psi1 = 0. Differentiating Psi2 one-sidedly
        // in its own equation instead is unstable for an expanding wall.
        let j = n - 1;
        let kf = k as f64;
        r2[j] = ((v - 1.0) * (d2[j] - I * d1[j]) + kf * (p2[j] + I * p1[j])) * inv_l;
        r1[0] = ZERO;
        r1[j] = ZERO;
        if k != 0 {
            r2[0] = ZERO;
        }
        Ok(())
    }
}

fn rk4_step(state: &mut FieldState, dt: f64, ws: &mut Workspace) -> Result<()> {
    let rhs = Rhs { law: &state.law, geometry: state.geometry, grid: state.grid };
    let t = state.t;
    let n = state.psi1.len();
    let Workspace { d1, d2, stage1, stage2, k1, k2 } = ws;
    let weights = [0.0, 0.5, 0.5, 1.0];
    for s in 0..4 {
        let ts = t + weights[s] * dt;
        if s == 0 {
            rhs.eval(ts, &state.psi1, &state.psi2, d1, d2, &mut k1[0], &mut k2[0])?;
        } else {
            let w = weights[s] * dt;
            for i in 0..n {
                stage1[i] = state.psi1[i] + w * k1[s - 1][i];
                stage2[i] = state.psi2[i] + w * k2[s - 1][i];
            }
            rhs.eval(ts, stage1, stage2, d1, d2, &mut k1[s], &mut k2[s])?;
        }
    }
    let c = dt / 6.0;
    for i in 0..n {
        state.psi1[i] += c * (k1[0][i] + 2.0 * k1[1][i] + 2.0 * k1[2][i] + k1[3][i]);
        state.psi2[i] += c * (k2[0][i] + 2.0 * k2[1][i] + 2.0 * k2[2][i] + k2[3][i]);
    }
    state.t = t + dt;
    if !state.psi1.iter().chain(&state.psi2).all(|v| v.is_finite()) {
        return Err(Error::numerical("evolve", format!("NaN or overflow at t = {}", state.t)));
    }
    Ok(())
}

fn courant(law: &BoundaryLaw, t: f64, dt: f64, h: f64) -> Result<f64> {
    let l = law.position(t)?;
    let v = law.velocity(t)?;
    Ok(dt.abs() * (1.0 + v.abs()) / (h * l))
}

/// Steps `initial` through `cfg`, handing every recorded state to `record`.
pub fn propagate<F>(initial: &FieldState, cfg: &EvolutionConfig, mut record: F) -> Result<FieldState>
where
    F: FnMut(&FieldState) -> Result<()>,
{
    cfg.validate()?;
    let mut state = initial.clone();
    state.enforce_boundary()?;
    let h = state.grid.spacing();
    let direction = match cfg.step {
        TimeStep::Fixed(dt) => dt.signum(),
        TimeStep::Auto { .. } => 1.0,
    };
    let t_final = state.t + direction * cfg.t_end;
    state.law.validate(0.0)?;
    let mut ws = Workspace::new(state.psi1.len());
    record(&state)?;
    let mut steps = 0usize;
    let mut recorded_at = 0usize;
    while direction * (t_final - state.t) > 1e-12 * cfg.t_end.max(1.0) {
        let dt = match cfg.step {
            TimeStep::Fixed(dt) => {
                let nu = courant(&state.law, state.t, dt, h)?;
                if nu > MAX_COURANT {
                    return Err(Error::Stability { t: state.t, courant: nu, limit: MAX_COURANT });
                }
                dt
            }
            TimeStep::Auto { cfl } => {
                let l = state.law.position(state.t)?;
                let v = state.law.velocity(state.t)?;
                cfl * h * l / (1.0 + v.abs())
            }
        };
        let remaining = t_final - state.t;
        let dt = if dt.abs() >= remaining.abs() { remaining } else { dt };
        rk4_step(&mut state, dt, &mut ws)?;
        steps += 1;
        if steps % cfg.record_every == 0 {
            record(&state)?;
            recorded_at = steps;
        }
    }
    state.t = t_final;
    if recorded_at != steps {
        record(&state)?;
    }
    Ok(state)
}

/// Evolves and returns the final state plus every recorded state.
pub fn evolve(initial: &FieldState, cfg: &EvolutionConfig) -> Result<(FieldState, Vec<FieldState>)> {
    let mut trajectory = Vec::new();
    let last = propagate(initial, cfg, |s| {
        trajectory.push(s.clone());
        Ok(())
    })?;
    Ok((last, trajectory))
}

/// Physical norm `L(t) int_0^1 (|Psi1|^2 + |Psi2|^2) dy`.
pub fn norm(state: &FieldState) -> Result<f64> {
    let density: Vec<f64> = state
        .psi1
        .iter()
        .zip(&state.psi2)
        .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
        .collect();
    Ok(state.length()? * simpson(&density, state.grid.spacing()))
}

/// `L2` distance in physical units between two states sampled on the same grid.
pub fn l2_error(state: &FieldState, reference: &FieldState) -> Result<f64> {
    if state.grid != reference.grid {
        return Err(Error::domain("states live on different grids"));
    }
    let density: Vec<f64> = (0..state.grid.n_points())
        .map(|i| (state.psi1[i] - reference.psi1[i]).norm_sqr() + (state.psi2[i] - reference.psi2[i]).norm_sqr())
        .collect();
    Ok((state.length()? * simpson(&density, state.grid.spacing())).max(0.0).sqrt())
}

/// Expectation of the free generator,
/// `Re int (Psi1* dx Psi2 - Psi2* dx Psi1) dx / norm` (with the `k / r`
/// terms for a disk sector).
pub fn energy(state: &FieldState) -> Result<f64> {
    let nrm = norm(state)?;
    if !(nrm > 0.0) {
        return Err(Error::domain("energy of a zero field is undefined"));
    }
    let h = state.grid.spacing();
    let d1 = derivative4(&state.psi1, h);
    let d2 = derivative4(&state.psi2, h);
    let k = match state.geometry {
        Geometry::Box1D => 0,
        Geometry::DiskRadial { k } => k,
    };
    let integrand: Vec<f64> = (0..state.psi1.len())
        .map(|i| {
            let (p1, p2) = (state.psi1[i], state.psi2[i]);
            let (mut h1, mut h2) = (d2[i], d1[i]);
            if k != 0 {
                if i == 0 {
                    return 0.0;
                }
                let ky = k as f64 / state.grid.y(i);
                h1 -= ky * p2;
                h2 += ky * p1;
            }
            (p1.conj() * h1 - p2.conj() * h2).re
        })
        .collect();
    Ok(simpson(&integrand, h) / nrm)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservableSample {
    pub t: f64,
    pub length: f64,
    pub norm: f64,
    pub energy: f64,
}

/// Time-ordered `(t, L, norm, energy)` records.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ObservableSeries {
    pub samples: Vec<ObservableSample>,
}

impl ObservableSeries {
    pub fn observe(&mut self, state: &FieldState) -> Result<()> {
        let sample = ObservableSample {
            t: state.t,
            length: state.length()?,
            norm: norm(state)?,
            energy: energy(state)?,
        };
        if let Some(last) = self.samples.last() {
            if !(sample.t > last.t) {
                return Err(Error::domain("observable times must increase"));
            }
        }
        self.samples.push(sample);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Observables of any evolution.
pub fn observe_evolution(initial: &FieldState, cfg: &EvolutionConfig) -> Result<ObservableSeries> {
    let mut series = ObservableSeries::default();
    propagate(initial, cfg, |s| series.observe(s))?;
    Ok(series)
}

/// Starts from static box mode `n0` at `L(0)` and records `(t, L, norm, energy)`
/// under a breathing wall.
pub fn run_fermi(n0: u32, law: &BoundaryLaw, grid: Grid, cfg: &EvolutionConfig) -> Result<ObservableSeries> {
    if !matches!(law, BoundaryLaw::Breathing { .. }) {
        return Err(Error::domain("the Fermi experiment expects a breathing wall"));
    }
    law.validate(cfg.t_end)?;
    let initial = FieldState::static_mode(n0, law.clone(), grid)?;
    observe_evolution(&initial, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn static_state(n: u32, l: f64, points: usize) -> FieldState {
        FieldState::static_mode(n, BoundaryLaw::Static { l0: l }, Grid::new(points).unwrap()).unwrap()
    }

    #[test]
    fn simpson_rules() {
        let h = 0.25;
        let cubic: Vec<f64> = (0..5).map(|i| (i as f64 * h).powi(3)).collect();
        assert_relative_eq!(simpson(&cubic, h), 0.25, max_relative = 1e-15);
        let h = 1.0 / 5.0;
        let cubic: Vec<f64> = (0..6).map(|i| (i as f64 * h).powi(3)).collect();
        assert_relative_eq!(simpson(&cubic, h), 0.25, max_relative = 1e-14);
    }

    #[test]
    fn static_norm_and_energy() {
        let s = static_state(1, 1.0, 401);
        assert!((norm(&s).unwrap() - 1.0).abs() < 1e-8);
        assert!((energy(&s).unwrap() - PI).abs() < 1e-6);
        let s = static_state(2, 2.0, 401);
        assert!((energy(&s).unwrap() - PI).abs() < 1e-6);
    }

    #[test]
    fn zero_field() {
        let grid = Grid::new(11).unwrap();
        let s = FieldState::from_fn(0.0, grid, BoundaryLaw::Static { l0: 1.0 }, Geometry::Box1D, |_| {
            Ok(Spinor2::default())
        })
        .unwrap();
        assert_eq!(norm(&s).unwrap(), 0.0);
        assert!(matches!(energy(&s), Err(Error::Domain(_))));
    }

    #[test]
    fn rejects_unpinned_boundary() {
        let grid = Grid::new(11).unwrap();
        let r = FieldState::from_fn(0.0, grid, BoundaryLaw::Static { l0: 1.0 }, Geometry::Box1D, |_| {
            Ok(Spinor2::new(Complex64::new(1.0, 0.0), ZERO))
        });
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn fixed_step_stability_gate() {
        let s = static_state(1, 1.0, 101);
        let cfg = EvolutionConfig::fixed(0.1, 0.02);
        assert!(matches!(evolve(&s, &cfg), Err(Error::Stability { .. })));
        let ok = EvolutionConfig::fixed(0.1, 0.0095);
        assert!(evolve(&s, &ok).is_ok());
    }

    #[test]
    fn config_validation() {
        let s = static_state(1, 1.0, 21);
        assert!(evolve(&s, &EvolutionConfig::auto(1.0, 0.6)).is_err());
        assert!(evolve(&s, &EvolutionConfig::auto(-1.0, 0.4)).is_err());
        assert!(evolve(&s, &EvolutionConfig::auto(1.0, 0.4).recording(0)).is_err());
    }

    #[test]
    fn static_phase_is_dispersion_limited() {
        // Centered differences advance sin(k y) at sin(k h)/h, so the phase
        // error after unit time is about k^3 h^2 / 6.
        let s = static_state(1, 1.0, 401);
        let (fin, _) = evolve(&s, &EvolutionConfig::auto(1.0, 0.4)).unwrap();
        let h = s.grid.spacing();
        let err: f64 = fin
            .psi1
            .iter()
            .chain(&fin.psi2)
            .zip(s.psi1.iter().chain(&s.psi2))
            .map(|(u, v)| (u + v).norm_sqr())
            .sum::<f64>()
            * h;
        let predicted = PI.powi(3) * h * h / 6.0;
        assert_relative_eq!(err.sqrt(), predicted, max_relative = 0.1);
    }

    #[test]
    fn recording_cadence() {
        let s = static_state(1, 1.0, 51);
        let cfg = EvolutionConfig::fixed(0.1, 0.01).recording(3);
        let (fin, traj) = evolve(&s, &cfg).unwrap();
        // steps 0, 3, 6, 9, and the final 10
        assert_eq!(traj.len(), 5);
        assert_relative_eq!(fin.t, 0.1, max_relative = 1e-12);
        assert!(traj.windows(2).all(|w| w[1].t > w[0].t));
    }

    #[test]
    fn fermi_requires_breathing() {
        let grid = Grid::new(33).unwrap();
        let cfg = EvolutionConfig::auto(0.1, 0.4);
        assert!(run_fermi(1, &BoundaryLaw::Static { l0: 1.0 }, grid, &cfg).is_err());
        let law = BoundaryLaw::Breathing { l0: 1.0, eps: 0.0, omega: 1.0 };
        let series = run_fermi(1, &law, grid, &cfg).unwrap();
        assert!(series.len() >= 2);
    }

    #[test]
    fn expanding_wall_stays_stable_under_refinement() {
        // With Psi2 differentiated one-sidedly in its own equation at the
        // wall, this run blows up from 1025 points on.
        let mode = DiskMode::new(1, 1, 0.3, 1.0).unwrap();
        let errors: Vec<f64> = [513, 1025, 2049]
            .iter()
            .map(|&p| {
                let grid = Grid::new(p).unwrap();
                let (end, _) = evolve(&FieldState::disk_mode(&mode, 0.0, grid).unwrap(), &EvolutionConfig::auto(1.0, 0.5)).unwrap();
                l2_error(&end, &FieldState::disk_mode(&mode, 1.0, grid).unwrap()).unwrap()
            })
            .collect();
        assert!(errors[2] < 5e-6, "{errors:?}");
        for w in errors.windows(2) {
            assert!((w[0] / w[1]).log2() > 1.9, "{errors:?}");
        }
    }
}
