//! Deterministic CSV and JSON renderings of spectra, mode profiles and
//! observable series.
//!
//! CSV cells use 17 significant digits (enough to round-trip any `f64`),
//! `.` as the decimal separator and LF line endings. JSON goes through
//! `serde_json`, whose shortest round-trip float printing is equally exact.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::ObservableSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// `x` with 17 significant digits and trailing zeros stripped: `0`, `1`,
/// `3.1415926535897931`, `1.0000000000000001e-7`.
pub fn format_f64(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let digits = digits.trim_end_matches('0');
    let digits = if digits.is_empty() { "0" } else { digits };
    if digits == "0" {
        return format!("{sign}0");
    }

    let mut out = String::from(sign);
    if (-7..21).contains(&exp) {
        if exp < 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
            out.push_str(digits);
        } else {
            let int_len = exp as usize + 1;
            if digits.len() <= int_len {
                out.push_str(digits);
                out.extend(std::iter::repeat_n('0', int_len - digits.len()));
            } else {
                out.push_str(&digits[..int_len]);
                out.push('.');
                out.push_str(&digits[int_len..]);
            }
        }
    } else {
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        let _ = write!(out, "e{exp}");
    }
    out
}

#[derive(Serialize)]
struct SampleRow {
    t: f64,
    #[serde(rename = "L")]
    length: f64,
    norm: f64,
    energy: f64,
}

pub fn render_series(series: &ObservableSeries, format: Format) -> Result<String> {
    if series.is_empty() {
        return Err(Error::domain("refusing to write an empty series"));
    }
    match format {
        Format::Csv => {
            let mut out = String::from("t,L,norm,energy\n");
            for s in &series.samples {
                let cells = [s.t, s.length, s.norm, s.energy].map(format_f64);
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            Ok(out)
        }
        Format::Json => {
            let rows: Vec<SampleRow> = series
                .samples
                .iter()
                .map(|s| SampleRow { t: s.t, length: s.length, norm: s.norm, energy: s.energy })
                .collect();
            to_json(&rows)
        }
    }
}

/// Writes the series to `path`. An empty series is an error and leaves the
/// file system untouched.
pub fn write_series(series: &ObservableSeries, path: &Path, format: Format) -> Result<()> {
    let text = render_series(series, format)?;
    write_text(path, &text)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub a: f64,
    pub eigenvalues: Vec<f64>,
    /// Set for disk sectors whose boundary condition is only defined numerically.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numerically_defined: Option<bool>,
}

impl SpectrumReport {
    pub fn box1d(a: f64, eigenvalues: Vec<f64>) -> Self {
        Self { case: "box1d".into(), k: None, a, eigenvalues, numerically_defined: None }
    }

    pub fn disk(k: i64, a: f64, eigenvalues: Vec<f64>, numerically_defined: bool) -> Self {
        Self { case: "disk".into(), k: Some(k), a, eigenvalues, numerically_defined: Some(numerically_defined) }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut out = String::from("n,lambda\n");
                for (i, l) in self.eigenvalues.iter().enumerate() {
                    let _ = writeln!(out, "{},{}", i + 1, format_f64(*l));
                }
                Ok(out)
            }
        }
    }
}

/// One spatial sample of a mode at fixed time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeRow {
    pub x: f64,
    pub psi1_re: f64,
    pub psi1_im: f64,
    pub psi2_re: f64,
    pub psi2_im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeReport {
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    pub n: i64,
    pub a: f64,
    pub b: f64,
    pub t: f64,
    pub lambda: f64,
    /// Box length or disk radius at `t`.
    pub length: f64,
    pub rows: Vec<ModeRow>,
}

impl ModeReport {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => to_json(self),
            Format::Csv => {
                let mut out = String::from("x,psi1_re,psi1_im,psi2_re,psi2_im\n");
                for r in &self.rows {
                    let cells = [r.x, r.psi1_re, r.psi1_im, r.psi2_re, r.psi2_im].map(format_f64);
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                Ok(out)
            }
        }
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string(value)
        .map_err(|e| Error::numerical("json", e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::Io { path: path.display().to_string(), detail: e.to_string() })
}
