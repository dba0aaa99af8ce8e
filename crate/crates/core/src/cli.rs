//! The `billiard` command line: argument and config parsing into a
//! validated [`RunConfig`], and [`run`] which maps outcomes to exit codes.
//!
//! Exit codes: 0 ok, 1 a `verify` check failed, 2 usage, 3 numerical, 4 I/O.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::box1d::{eigenvalue_1d, mode_solution_1d, static_mode_eval, Mode1D, StaticMode};
use crate::disk::{disk_spectrum, mode_solution_disk, DiskMode, MAX_DISK_RATE};
use crate::error::Error;
use crate::evolution::{observe_evolution, run_fermi, EvolutionConfig, FieldState, Geometry, TimeStep, MAX_AUTO_CFL};
use crate::io::{self, Format, ModeReport, ModeRow, SpectrumReport};
use crate::law::{BoundaryLaw, Grid, Spinor2};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// A diagnostic together with the exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LawKind {
    Static,
    Linear,
    Breathing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryKind {
    Box,
    Disk,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Step {
    Cfl(f64),
    Dt(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Spectrum1D { a: f64, n_max: usize },
    SpectrumDisk { k: i64, a: f64, n_max: usize },
    Mode { geometry: GeometryKind, k: i64, n: i64, a: f64, b: f64, t: f64, points: usize },
    Evolve {
        geometry: GeometryKind,
        k: i64,
        n: i64,
        law: BoundaryLaw,
        t_end: f64,
        points: usize,
        step: Step,
        record_every: usize,
    },
    Fermi { l0: f64, eps: f64, omega: f64, n: u32, t_end: f64, points: usize, step: Step, record_every: usize },
    Verify,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub output: Option<PathBuf>,
    pub format: Format,
}

#[derive(Parser, Debug)]
#[command(name = "billiard", version, about = "Dirac particle in a box or disk with a moving wall")]
struct Cli {
    #[command(subcommand)]
    command: RawCommand,
    /// JSON file with default parameters; explicit flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand, Debug)]
enum RawCommand {
    /// Eigenvalues of the box with a linearly moving wall.
    #[command(name = "spectrum-1d")]
    Spectrum1D(SpectrumArgs),
    /// Radial eigenvalues of the expanding disk in angular sector k.
    #[command(name = "spectrum-disk")]
    SpectrumDisk(SpectrumArgs),
    /// Samples an exact mode at time t.
    Mode(ModeArgs),
    /// Propagates a mode under a wall law and records observables.
    Evolve(EvolveArgs),
    /// Static mode under a breathing wall.
    Fermi(FermiArgs),
    /// Runs the built-in invariant checks.
    Verify(EmptyArgs),
}

#[derive(Args, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
}

#[derive(Args, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModeArgs {
    #[arg(long, value_enum)]
    geometry: Option<GeometryKind>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
}

#[derive(Args, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct EvolveArgs {
    #[arg(long, value_enum)]
    law: Option<LawKind>,
    #[arg(long, value_enum)]
    geometry: Option<GeometryKind>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    l0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eps: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    dt: Option<f64>,
    #[arg(long)]
    record_every: Option<usize>,
}

#[derive(Args, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FermiArgs {
    #[arg(long)]
    l0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    eps: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    dt: Option<f64>,
    #[arg(long)]
    record_every: Option<usize>,
}

#[derive(Args, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct EmptyArgs {}

/// Field-wise `flags.or(config)`.
macro_rules! merge {
    ($flags:expr, $cfg:expr, $ty:ident { $($field:ident),* $(,)? }) => {
        $ty { $($field: $flags.$field.or($cfg.$field)),* }
    };
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::usage(format!("missing required flag {flag}")))
}

fn check(ok: bool, flag: &str, rule: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::usage(format!("invalid {flag}: {rule}")))
    }
}

fn positive(x: f64, flag: &str) -> Result<f64, CliError> {
    check(x > 0.0 && x.is_finite(), flag, "must be a positive finite number")?;
    Ok(x)
}

fn points(p: usize) -> Result<usize, CliError> {
    check(p >= 3, "--points", "must be at least 3")?;
    Ok(p)
}

fn step(cfl: Option<f64>, dt: Option<f64>) -> Result<Step, CliError> {
    match (cfl, dt) {
        (Some(_), Some(_)) => Err(CliError::usage("--cfl and --dt are mutually exclusive")),
        (_, Some(dt)) => {
            check(dt != 0.0 && dt.is_finite(), "--dt", "must be nonzero and finite")?;
            Ok(Step::Dt(dt))
        }
        (cfl, None) => {
            let cfl = cfl.unwrap_or(MAX_AUTO_CFL);
            check(cfl > 0.0 && cfl <= MAX_AUTO_CFL, "--cfl", &format!("must lie in (0, {MAX_AUTO_CFL}]"))?;
            Ok(Step::Cfl(cfl))
        }
    }
}

fn record_every(r: Option<usize>, default: usize) -> Result<usize, CliError> {
    let r = r.unwrap_or(default);
    check(r >= 1, "--record-every", "must be at least 1")?;
    Ok(r)
}

fn disk_rate(a: f64) -> Result<f64, CliError> {
    check(a.abs() <= MAX_DISK_RATE, "--a", &format!("disk expansion rate requires |a| <= {MAX_DISK_RATE}"))?;
    Ok(a)
}

fn box_rate(a: f64, allow_static: bool) -> Result<f64, CliError> {
    check(a.abs() < 1.0 && a.is_finite(), "--a", "the wall rate must satisfy |a| < 1")?;
    check(allow_static || a != 0.0, "--a", "must be nonzero (a = 0 is the static box, spectrum n pi / L)")?;
    Ok(a)
}

fn law_error(err: Error, flag: &str) -> CliError {
    CliError::usage(format!("invalid {flag}: {err}"))
}

fn validate_law(kind: LawKind, a: Option<f64>, b: Option<f64>, l0: Option<f64>, eps: Option<f64>, omega: Option<f64>, t_end: f64) -> Result<BoundaryLaw, CliError> {
    match kind {
        LawKind::Static => {
            let l0 = positive(l0.unwrap_or(1.0), "--l0")?;
            Ok(BoundaryLaw::Static { l0 })
        }
        LawKind::Linear => {
            let a = box_rate(require(a, "--a")?, true)?;
            let b = positive(b.unwrap_or(1.0), "--b")?;
            if a < 0.0 {
                let collapse = -b / a;
                check(t_end < collapse, "--t-end", &format!("the wall collapses at t = {collapse}"))?;
            }
            BoundaryLaw::linear(a, b, t_end).map_err(|e| law_error(e, "--a"))
        }
        LawKind::Breathing => {
            let l0 = positive(l0.unwrap_or(1.0), "--l0")?;
            let eps = require(eps, "--eps")?;
            check(eps.abs() < 1.0, "--eps", "the relative amplitude must satisfy |eps| < 1")?;
            let omega = require(omega, "--omega")?;
            check(omega.is_finite() && omega >= 0.0, "--omega", "must be a finite non-negative frequency")?;
            check((l0 * eps * omega).abs() < 1.0, "--omega", "peak wall speed |l0 eps omega| must stay below 1")?;
            BoundaryLaw::breathing(l0, eps, omega, t_end).map_err(|e| law_error(e, "--omega"))
        }
    }
}

fn load_config(path: &Path) -> Result<Map<String, Value>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError { code: EXIT_IO, message: format!("cannot read --config {}: {e}", path.display()) })?;
    match serde_json::from_str::<Value>(&text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(CliError::usage("--config must hold a JSON object")),
        Err(e) => Err(CliError::usage(format!("invalid --config JSON: {e}"))),
    }
}

fn config_section<T: DeserializeOwned>(map: Map<String, Value>) -> Result<T, CliError> {
    serde_json::from_value(Value::Object(map)).map_err(|e| CliError::usage(format!("invalid --config: {e}")))
}

/// Parses `argv` (without the program name) into a validated configuration.
pub fn parse_args<S: AsRef<str>>(argv: &[S]) -> Result<RunConfig, CliError> {
    let full = std::iter::once("billiard").chain(argv.iter().map(|s| s.as_ref()));
    let cli = Cli::try_parse_from(full).map_err(|e| {
        let code = match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
            _ => EXIT_USAGE,
        };
        CliError { code, message: e.to_string() }
    })?;

    let mut doc = match &cli.config {
        Some(path) => load_config(path)?,
        None => Map::new(),
    };
    let cfg_output = match doc.remove("output") {
        Some(Value::String(s)) => Some(PathBuf::from(s)),
        Some(_) => return Err(CliError::usage("invalid --config: output must be a string")),
        None => None,
    };
    let cfg_format: Option<Format> = match doc.remove("format") {
        Some(v) => Some(serde_json::from_value(v).map_err(|e| CliError::usage(format!("invalid --config format: {e}")))?),
        None => None,
    };

    let command = match cli.command {
        RawCommand::Spectrum1D(flags) => {
            let c: SpectrumArgs = config_section(doc)?;
            let m = merge!(flags, c, SpectrumArgs { a, n_max, k });
            check(m.k.is_none(), "--k", "spectrum-1d has no angular sector")?;
            let a = box_rate(require(m.a, "--a")?, false)?;
            let n_max = m.n_max.unwrap_or(10);
            check(n_max >= 1, "--n-max", "must be at least 1")?;
            Command::Spectrum1D { a, n_max }
        }
        RawCommand::SpectrumDisk(flags) => {
            let c: SpectrumArgs = config_section(doc)?;
            let m = merge!(flags, c, SpectrumArgs { a, n_max, k });
            let a = disk_rate(require(m.a, "--a")?)?;
            let n_max = m.n_max.unwrap_or(5);
            check(n_max >= 1, "--n-max", "must be at least 1")?;
            Command::SpectrumDisk { k: m.k.unwrap_or(0), a, n_max }
        }
        RawCommand::Mode(flags) => {
            let c: ModeArgs = config_section(doc)?;
            let m = merge!(flags, c, ModeArgs { geometry, k, n, a, b, t, points });
            let geometry = m.geometry.unwrap_or(GeometryKind::Box);
            let a = require(m.a, "--a")?;
            let a = match geometry {
                GeometryKind::Box => box_rate(a, true)?,
                GeometryKind::Disk => disk_rate(a)?,
            };
            let k = m.k.unwrap_or(0);
            check(geometry == GeometryKind::Disk || k == 0, "--k", "only the disk has angular sectors")?;
            let n = m.n.unwrap_or(1);
            check(n >= 1, "--n", "mode index must be at least 1")?;
            let b = positive(m.b.unwrap_or(1.0), "--b")?;
            let t = m.t.unwrap_or(0.0);
            check(t.is_finite() && a * t + b > 0.0, "--t", "the wall must not have collapsed by time t")?;
            Command::Mode { geometry, k, n, a, b, t, points: points(m.points.unwrap_or(101))? }
        }
        RawCommand::Evolve(flags) => {
            let c: EvolveArgs = config_section(doc)?;
            let m = merge!(flags, c, EvolveArgs {
                law, geometry, k, n, a, b, l0, eps, omega, t_end, points, cfl, dt, record_every,
            });
            let geometry = m.geometry.unwrap_or(GeometryKind::Box);
            let k = m.k.unwrap_or(0);
            check(geometry == GeometryKind::Disk || k == 0, "--k", "only the disk has angular sectors")?;
            let n = m.n.unwrap_or(1);
            check(n >= 1, "--n", "mode index must be at least 1")?;
            let t_end = positive(m.t_end.unwrap_or(1.0), "--t-end")?;
            let kind = m.law.unwrap_or(LawKind::Static);
            if geometry == GeometryKind::Disk {
                if let Some(a) = m.a {
                    disk_rate(a)?;
                }
            }
            let law = validate_law(kind, m.a, m.b, m.l0, m.eps, m.omega, t_end)?;
            Command::Evolve {
                geometry,
                k,
                n,
                law,
                t_end,
                points: points(m.points.unwrap_or(401))?,
                step: step(m.cfl, m.dt)?,
                record_every: record_every(m.record_every, 10)?,
            }
        }
        RawCommand::Fermi(flags) => {
            let c: FermiArgs = config_section(doc)?;
            let m = merge!(flags, c, FermiArgs { l0, eps, omega, n, t_end, points, cfl, dt, record_every });
            let t_end = positive(m.t_end.unwrap_or(10.0), "--t-end")?;
            let law = validate_law(LawKind::Breathing, None, None, m.l0, m.eps.or(Some(0.1)), m.omega.or(Some(2.0 * PI)), t_end)?;
            let BoundaryLaw::Breathing { l0, eps, omega } = law else { unreachable!() };
            let n = m.n.unwrap_or(1);
            check(n >= 1, "--n", "mode index must be at least 1")?;
            Command::Fermi {
                l0,
                eps,
                omega,
                n,
                t_end,
                points: points(m.points.unwrap_or(513))?,
                step: step(m.cfl, m.dt)?,
                record_every: record_every(m.record_every, 50)?,
            }
        }
        RawCommand::Verify(_) => {
            let _: EmptyArgs = config_section(doc)?;
            Command::Verify
        }
    };

    Ok(RunConfig {
        command,
        output: cli.output.or(cfg_output),
        format: cli.format.or(cfg_format).unwrap_or_default(),
    })
}

fn num(x: f64) -> String {
    // Display prints the shortest string that parses back to `x`.
    format!("{x}")
}

fn push(argv: &mut Vec<String>, flag: &str, value: String) {
    argv.push(format!("--{flag}={value}"));
}

fn geometry_name(g: GeometryKind) -> String {
    match g {
        GeometryKind::Box => "box".into(),
        GeometryKind::Disk => "disk".into(),
    }
}

fn push_step(argv: &mut Vec<String>, s: Step) {
    match s {
        Step::Cfl(c) => push(argv, "cfl", num(c)),
        Step::Dt(dt) => push(argv, "dt", num(dt)),
    }
}

/// Arguments that [`parse_args`] maps back to `config`.
pub fn to_argv(config: &RunConfig) -> Vec<String> {
    let mut argv = Vec::new();
    match &config.command {
        Command::Spectrum1D { a, n_max } => {
            argv.push("spectrum-1d".into());
            push(&mut argv, "a", num(*a));
            push(&mut argv, "n-max", n_max.to_string());
        }
        Command::SpectrumDisk { k, a, n_max } => {
            argv.push("spectrum-disk".into());
            push(&mut argv, "k", k.to_string());
            push(&mut argv, "a", num(*a));
            push(&mut argv, "n-max", n_max.to_string());
        }
        Command::Mode { geometry, k, n, a, b, t, points } => {
            argv.push("mode".into());
            push(&mut argv, "geometry", geometry_name(*geometry));
            push(&mut argv, "k", k.to_string());
            push(&mut argv, "n", n.to_string());
            push(&mut argv, "a", num(*a));
            push(&mut argv, "b", num(*b));
            push(&mut argv, "t", num(*t));
            push(&mut argv, "points", points.to_string());
        }
        Command::Evolve { geometry, k, n, law, t_end, points, step, record_every } => {
            argv.push("evolve".into());
            push(&mut argv, "geometry", geometry_name(*geometry));
            push(&mut argv, "k", k.to_string());
            push(&mut argv, "n", n.to_string());
            match law {
                BoundaryLaw::Static { l0 } => {
                    push(&mut argv, "law", "static".into());
                    push(&mut argv, "l0", num(*l0));
                }
                BoundaryLaw::Linear { a, b } => {
                    push(&mut argv, "law", "linear".into());
                    push(&mut argv, "a", num(*a));
                    push(&mut argv, "b", num(*b));
                }
                BoundaryLaw::Breathing { l0, eps, omega } => {
                    push(&mut argv, "law", "breathing".into());
                    push(&mut argv, "l0", num(*l0));
                    push(&mut argv, "eps", num(*eps));
                    push(&mut argv, "omega", num(*omega));
                }
                BoundaryLaw::Tabulated { .. } => unreachable!("tabulated laws are library-only"),
            }
            push(&mut argv, "t-end", num(*t_end));
            push(&mut argv, "points", points.to_string());
            push_step(&mut argv, *step);
            push(&mut argv, "record-every", record_every.to_string());
        }
        Command::Fermi { l0, eps, omega, n, t_end, points, step, record_every } => {
            argv.push("fermi".into());
            push(&mut argv, "l0", num(*l0));
            push(&mut argv, "eps", num(*eps));
            push(&mut argv, "omega", num(*omega));
            push(&mut argv, "n", n.to_string());
            push(&mut argv, "t-end", num(*t_end));
            push(&mut argv, "points", points.to_string());
            push_step(&mut argv, *step);
            push(&mut argv, "record-every", record_every.to_string());
        }
        Command::Verify => argv.push("verify".into()),
    }
    if let Some(path) = &config.output {
        push(&mut argv, "output", path.display().to_string());
    }
    push(&mut argv, "format", match config.format {
        Format::Csv => "csv".into(),
        Format::Json => "json".into(),
    });
    argv
}

/// What a successful command produced: text for the output sink and notes
/// for stderr.
struct Outcome {
    text: String,
    notes: Vec<String>,
    verify_failed: bool,
}

fn time_step(s: Step) -> TimeStep {
    match s {
        Step::Cfl(cfl) => TimeStep::Auto { cfl },
        Step::Dt(dt) => TimeStep::Fixed(dt),
    }
}

fn mode_rows(points: usize, length: f64, mut psi: impl FnMut(f64) -> crate::Result<Spinor2>) -> crate::Result<Vec<ModeRow>> {
    let grid = Grid::new(points)?;
    grid.coords()
        .map(|y| {
            let x = (y * length).min(length);
            let s = psi(x)?;
            Ok(ModeRow { x, psi1_re: s.c1.re, psi1_im: s.c1.im, psi2_re: s.c2.re, psi2_im: s.c2.im })
        })
        .collect()
}

fn initial_state(geometry: GeometryKind, k: i64, n: i64, law: &BoundaryLaw, grid: Grid) -> crate::Result<FieldState> {
    let l0 = law.position(0.0)?;
    match (geometry, law) {
        (GeometryKind::Box, BoundaryLaw::Linear { a, b }) if *a != 0.0 => {
            FieldState::box_mode(&Mode1D::new(n, *a, *b)?, 0.0, grid)
        }
        (GeometryKind::Box, _) => FieldState::static_mode(n as u32, law.clone(), grid),
        (GeometryKind::Disk, _) => {
            let a = match law {
                BoundaryLaw::Linear { a, .. } => *a,
                _ => 0.0,
            };
            let mode = DiskMode::new(k, n as u32, a, l0)?;
            FieldState::from_fn(0.0, grid, law.clone(), Geometry::DiskRadial { k }, |y| {
                mode_solution_disk(&mode, 0.0, (y * l0).min(l0))
            })
        }
    }
}

fn execute(config: &RunConfig) -> crate::Result<Outcome> {
    let plain = |text: String| Outcome { text, notes: Vec::new(), verify_failed: false };
    match &config.command {
        Command::Spectrum1D { a, n_max } => {
            let eigenvalues = (1..=*n_max as i64).map(|n| eigenvalue_1d(n, *a)).collect::<crate::Result<Vec<_>>>()?;
            Ok(plain(SpectrumReport::box1d(*a, eigenvalues).render(config.format)?))
        }
        Command::SpectrumDisk { k, a, n_max } => {
            let s = disk_spectrum(*k, *a, *n_max)?;
            let report = SpectrumReport::disk(*k, *a, s.eigenvalues, s.numerically_defined);
            Ok(plain(report.render(config.format)?))
        }
        Command::Mode { geometry, k, n, a, b, t, points } => {
            let report = match geometry {
                GeometryKind::Box if *a == 0.0 => {
                    let sm = StaticMode::new(*n as u32, *b)?;
                    let phase = Complex64::from_polar(1.0, -sm.energy * t);
                    let rows = mode_rows(*points, *b, |x| Ok(static_mode_eval(&sm, x)? * phase))?;
                    ModeReport { case: "box1d".into(), k: None, n: *n, a: *a, b: *b, t: *t, lambda: sm.k_n * b, length: *b, rows }
                }
                GeometryKind::Box => {
                    let mode = Mode1D::new(*n, *a, *b)?;
                    let length = mode.length(*t);
                    let rows = mode_rows(*points, length, |x| mode_solution_1d(&mode, *t, x))?;
                    ModeReport { case: "box1d".into(), k: None, n: *n, a: *a, b: *b, t: *t, lambda: mode.lambda, length, rows }
                }
                GeometryKind::Disk => {
                    let mode = DiskMode::new(*k, *n as u32, *a, *b)?;
                    let length = mode.radius(*t);
                    let rows = mode_rows(*points, length, |r| mode_solution_disk(&mode, *t, r))?;
                    ModeReport { case: "disk".into(), k: Some(*k), n: *n, a: *a, b: *b, t: *t, lambda: mode.lambda, length, rows }
                }
            };
            Ok(plain(report.render(config.format)?))
        }
        Command::Evolve { geometry, k, n, law, t_end, points, step, record_every } => {
            let grid = Grid::new(*points)?;
            let initial = initial_state(*geometry, *k, *n, law, grid)?;
            let cfg = EvolutionConfig { step: time_step(*step), ..EvolutionConfig::auto(*t_end, MAX_AUTO_CFL) }
                .recording(*record_every);
            let series = observe_evolution(&initial, &cfg)?;
            Ok(plain(io::render_series(&series, config.format)?))
        }
        Command::Fermi { l0, eps, omega, n, t_end, points, step, record_every } => {
            let law = BoundaryLaw::breathing(*l0, *eps, *omega, *t_end)?;
            let cfg = EvolutionConfig { step: time_step(*step), ..EvolutionConfig::auto(*t_end, MAX_AUTO_CFL) }
                .recording(*record_every);
            let series = run_fermi(*n, &law, Grid::new(*points)?, &cfg)?;
            let first = series.samples[0];
            let scaling = series
                .samples
                .iter()
                .map(|s| (s.energy * s.length / (first.energy * first.length) - 1.0).abs())
                .fold(0.0, f64::max);
            let mut out = plain(io::render_series(&series, config.format)?);
            out.notes.push(format!("max |E(t) L(t) / (E(0) L(0)) - 1| = {scaling:.6e}"));
            Ok(out)
        }
        Command::Verify => {
            let checks = verify::run_checks();
            let mut text = String::new();
            for c in &checks {
                text.push_str(&c.to_string());
                text.push('\n');
            }
            let failed = checks.iter().filter(|c| !c.passed()).count();
            text.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
            Ok(Outcome { text, notes: Vec::new(), verify_failed: failed > 0 })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Spectrum1D { .. } => "spectrum-1d",
        Command::SpectrumDisk { .. } => "spectrum-disk",
        Command::Mode { .. } => "mode",
        Command::Evolve { .. } => "evolve",
        Command::Fermi { .. } => "fermi",
        Command::Verify => "verify",
    }
}

/// Executes `config`, writes the result and returns the process exit code.
pub fn run(config: &RunConfig) -> i32 {
    let outcome = match execute(config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {} failed [{}]: {e}", command_name(&config.command), e.kind());
            return if matches!(e, Error::Io { .. }) { EXIT_IO } else { EXIT_NUMERICAL };
        }
    };
    let written = match &config.output {
        Some(path) => io::write_text(path, &outcome.text),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(outcome.text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::Io { path: "<stdout>".into(), detail: e.to_string() })
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_IO;
    }
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    if outcome.verify_failed {
        EXIT_VERIFY
    } else {
        EXIT_OK
    }
}

/// Parses and runs; the body of `main`.
pub fn main_with_args<S: AsRef<str>>(argv: &[S]) -> i32 {
    match parse_args(argv) {
        Ok(config) => run(&config),
        Err(e) if e.code == EXIT_OK => {
            print!("{e}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("{}", e.message.trim_end());
            e.code
        }
    }
}
