//! Numerical kernels: the Gauss hypergeometric series, a closed-form
//! reference for its `gamma = 3/2` quadratic-argument case, adaptive
//! Gauss–Kronrod quadrature and Brent root bracketing.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest number of series terms summed before giving up.
pub const MAX_SERIES_TERMS: usize = 1_000_000;
/// Smallest relative tolerance accepted by [`hyp2f1`].
pub const MIN_SERIES_TOL: f64 = 1e-15;

/// Parameters of `2F1(alpha, beta; gamma; z)` restricted to the disk of
/// convergence of the power series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub z: f64,
}

impl HypParams {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64, z: f64) -> Result<Self> {
        if !(z.abs() < 1.0) {
            return Err(Error::domain(format!("|z| = {} must be < 1 for the series", z.abs())));
        }
        if gamma.im == 0.0 && gamma.re <= 0.0 && gamma.re.fract() == 0.0 {
            return Err(Error::domain(format!("gamma = {} is a pole", gamma.re)));
        }
        Ok(Self { alpha, beta, gamma, z })
    }
}

/// A summed series or quadrature together with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

/// Gauss hypergeometric function by direct summation of
/// `sum_k (alpha)_k (beta)_k / ((gamma)_k k!) z^k`.
///
/// Summation stops once two successive terms are both below
/// `tol * |partial sum|`. The term recurrence is symmetric in `alpha` and
/// `beta`, so swapping them gives a bit-identical result.
pub fn hyp2f1(p: &HypParams, tol: f64) -> Result<Estimate> {
    if !(tol >= MIN_SERIES_TOL) {
        return Err(Error::domain(format!("series tolerance {tol:e} below {MIN_SERIES_TOL:e}")));
    }
    // Re-check in case the struct was built literally.
    let p = HypParams::new(p.alpha, p.beta, p.gamma, p.z)?;
    let z = p.z;

    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut abs_sum = 1.0;
    let mut small_in_a_row = 0;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        let num = (p.alpha + kf) * (p.beta + kf);
        let den = (p.gamma + kf) * (kf + 1.0);
        term = term * num / den * z;
        sum += term;
        abs_sum += term.norm();
        if !sum.re.is_finite() || !sum.im.is_finite() {
            return Err(Error::numerical("hyp2f1", format!("overflow after {k} terms")));
        }
        if term.norm() < tol * sum.norm() {
            small_in_a_row += 1;
        } else {
            small_in_a_row = 0;
        }
        if small_in_a_row >= 2 {
            // Geometric bound on the tail using the current term ratio.
            let next = (k + 1) as f64;
            let ratio = ((p.alpha + next).norm() * (p.beta + next).norm()
                / ((p.gamma + next).norm() * (next + 1.0)))
                * z.abs();
            let ratio = ratio.max(z.abs());
            let tail = if ratio < 1.0 {
                term.norm() * ratio / (1.0 - ratio)
            } else {
                term.norm()
            };
            let rounding = 4.0 * f64::EPSILON * abs_sum;
            return Ok(Estimate { value: sum, error: tail + rounding });
        }
    }
    Err(Error::numerical(
        "hyp2f1",
        format!("series did not converge within {MAX_SERIES_TERMS} terms"),
    ))
}

/// Closed form of `2F1(alpha, alpha + 1/2; 3/2; z^2)`:
/// `[(1+z)^(1-2alpha) - (1-z)^(1-2alpha)] / (2 z (1 - 2alpha))`.
///
/// At `alpha = 1/2` the limit `ln((1+z)/(1-z)) / (2z)` is returned, and
/// `z = 0` gives 1.
pub fn hyp2f1_halfgamma_oracle(alpha: Complex64, z: f64) -> Result<Complex64> {
    if !(z.abs() < 1.0) {
        return Err(Error::domain(format!("|z| = {} must be < 1", z.abs())));
    }
    if z == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let expo = Complex64::new(1.0, 0.0) - 2.0 * alpha;
    let lp = z.ln_1p();
    let lm = (-z).ln_1p();
    if expo.norm() < 1e-300 {
        return Ok(Complex64::new((lp - lm) / (2.0 * z), 0.0));
    }
    let num = (expo * lp).exp() - (expo * lm).exp();
    Ok(num / (2.0 * z * expo))
}

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 5_000;

struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    abs_value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, lo: f64, hi: f64) -> Result<Panel> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_value = fc.norm() * WGK[7];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let f1 = f(center - half * x);
        let f2 = f(center + half * x);
        kronrod += (f1 + f2) * w;
        abs_value += (f1.norm() + f2.norm()) * w;
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let value = kronrod * half;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::numerical(
            "integrate_adaptive",
            format!("non-finite integrand on [{lo}, {hi}]"),
        ));
    }
    Ok(Panel {
        lo,
        hi,
        value,
        abs_value: abs_value * half.abs(),
        error: ((kronrod - gauss) * half).norm(),
    })
}

/// Adaptive Gauss–Kronrod (7/15) integration of a complex function over
/// `[lo, hi]`, bisecting the panel with the largest error until the summed
/// error estimate falls below `tol * |value|`.
///
/// Endpoints are never evaluated, so integrable singularities of type
/// `s^p` with `p > -1` at either end are fine.
pub fn integrate_adaptive<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<Estimate>
where
    F: FnMut(f64) -> Complex64,
{
    if !(lo.is_finite() && hi.is_finite()) || !(tol > 0.0) {
        return Err(Error::domain("integration limits must be finite and tol > 0"));
    }
    if lo == hi {
        return Ok(Estimate { value: Complex64::new(0.0, 0.0), error: 0.0 });
    }
    let mut heap = BinaryHeap::new();
    heap.push(gk15(&mut f, lo, hi)?);
    loop {
        let (value, error, abs_value) = heap.iter().fold(
            (Complex64::new(0.0, 0.0), 0.0, 0.0),
            |(v, e, a), p| (v + p.value, e + p.error, a + p.abs_value),
        );
        let roundoff = 50.0 * f64::EPSILON * abs_value;
        if error <= tol * value.norm() || error <= roundoff {
            return Ok(Estimate { value, error: error.max(roundoff) });
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::numerical(
                "integrate_adaptive",
                format!("{MAX_INTERVALS} panels exhausted, error {error:e} vs value {:e}", value.norm()),
            ));
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid == worst.lo || mid == worst.hi {
            return Err(Error::numerical(
                "integrate_adaptive",
                format!("panel at {} cannot be bisected further", worst.lo),
            ));
        }
        heap.push(gk15(&mut f, worst.lo, mid)?);
        heap.push(gk15(&mut f, mid, worst.hi)?);
    }
}

const MAX_BRENT_ITER: usize = 200;

/// Brent's method: inverse quadratic interpolation guarded by bisection.
/// Shrinks the bracket until its width is at most `tol` (plus a few ulps).
pub fn find_root_bracketed<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if !fa.is_finite() || !fb.is_finite() {
        return Err(Error::numerical("find_root_bracketed", "non-finite value at bracket end"));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket { lo, hi, flo: fa, fhi: fb });
    }
    let (mut c, mut fc) = (b, fb);
    let (mut d, mut e) = (b - a, b - a);
    for _ in 0..MAX_BRENT_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::numerical("find_root_bracketed", format!("non-finite value at {b}")));
        }
    }
    Err(Error::numerical("find_root_bracketed", "iteration limit reached"))
}
