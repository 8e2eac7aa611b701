//! Unit-tagged quantities at the command-line boundary.
//!
//! Everything is converted to SI here and nowhere else: gains become linear,
//! data becomes bits (1 kB = 8000 bits), energy joules, bandwidth hertz,
//! power watts, time seconds. A bare number is taken to be SI already.

use std::fmt;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    /// Linear power ratio; accepts `dB`.
    Gain,
    /// Gain expressed in decibels; the bare number and `dB` mean the same.
    Decibels,
    Data,
    Energy,
    Frequency,
    Power,
    Time,
    /// Noise spectral density in W/Hz.
    Density,
    /// Output only: bits per joule.
    DataPerEnergy,
    Dimensionless,
}

impl Dimension {
    pub fn si_unit(self) -> &'static str {
        match self {
            Dimension::Gain | Dimension::Dimensionless => "",
            Dimension::Decibels => "dB",
            Dimension::Data => "bits",
            Dimension::Energy => "J",
            Dimension::Frequency => "Hz",
            Dimension::Power => "W",
            Dimension::Time => "s",
            Dimension::Density => "W/Hz",
            Dimension::DataPerEnergy => "bits/J",
        }
    }
}

enum Scale {
    Mul(f64),
    Div(f64),
    FromDecibels,
}

fn scale_for(dim: Dimension, suffix: &str) -> Option<Scale> {
    use Scale::*;
    let scale = match (dim, suffix) {
        (_, "") => Mul(1.0),
        (Dimension::Gain, "dB") => FromDecibels,
        (Dimension::Decibels, "dB") => Mul(1.0),
        (Dimension::Data, "bits" | "bit" | "b") => Mul(1.0),
        (Dimension::Data, "B") => Mul(8.0),
        (Dimension::Data, "kB") => Mul(8e3),
        (Dimension::Data, "MB") => Mul(8e6),
        (Dimension::Energy, "J") => Mul(1.0),
        (Dimension::Energy, "mJ") => Div(1e3),
        (Dimension::Energy, "uJ" | "µJ") => Div(1e6),
        (Dimension::Frequency, "Hz") => Mul(1.0),
        (Dimension::Frequency, "kHz") => Mul(1e3),
        (Dimension::Frequency, "MHz") => Mul(1e6),
        (Dimension::Power, "W") => Mul(1.0),
        (Dimension::Power, "mW") => Div(1e3),
        (Dimension::Time, "s") => Mul(1.0),
        (Dimension::Time, "ms") => Div(1e3),
        (Dimension::Density, "W/Hz") => Mul(1.0),
        (Dimension::DataPerEnergy, "bits/J") => Mul(1.0),
        _ => return None,
    };
    Some(scale)
}

/// `10^(db/10)`, exact for whole decades.
pub fn db_to_linear(db: f64) -> f64 {
    let decades = db / 10.0;
    if decades.fract() == 0.0 && decades.abs() <= 300.0 {
        let mag = 10f64.powi(decades.abs() as i32);
        if decades < 0.0 {
            1.0 / mag
        } else {
            mag
        }
    } else {
        10f64.powf(decades)
    }
}

/// Parses `text` as a quantity of dimension `dim`, returning its SI value.
pub fn parse(dim: Dimension, text: &str) -> Result<f64, CliError> {
    let text = text.trim();
    let split = text
        .char_indices()
        .rev()
        .take_while(|&(_, c)| c.is_alphabetic() || c == '/' || c == 'µ')
        .last()
        .map_or(text.len(), |(i, _)| i);
    let (number, suffix) = text.split_at(split);
    let number = number.trim();
    let value: f64 = number
        .parse()
        .map_err(|_| CliError::Usage(format!("cannot parse number in {text:?}")))?;
    if !value.is_finite() {
        return Err(CliError::Usage(format!("{text:?} is not finite")));
    }
    let scale = scale_for(dim, suffix.trim()).ok_or_else(|| {
        CliError::Usage(format!("unit {suffix:?} in {text:?} is not valid for {}", dim_name(dim)))
    })?;
    Ok(match scale {
        Scale::Mul(k) => value * k,
        Scale::Div(k) => value / k,
        Scale::FromDecibels => db_to_linear(value),
    })
}

fn dim_name(dim: Dimension) -> &'static str {
    match dim {
        Dimension::Gain => "a gain (linear or dB)",
        Dimension::Decibels => "a gain in dB",
        Dimension::Data => "data (bits, B, kB, MB)",
        Dimension::Energy => "energy (J, mJ, uJ)",
        Dimension::Frequency => "bandwidth (Hz, kHz, MHz)",
        Dimension::Power => "power (W, mW)",
        Dimension::Time => "time (s, ms)",
        Dimension::Density => "noise density (W/Hz)",
        Dimension::DataPerEnergy => "bits/J",
        Dimension::Dimensionless => "a plain number",
    }
}

/// Shortest text that parses back to exactly `value`.
pub struct Exact(pub f64);

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.0.abs();
        if a == 0.0 || (1e-4..1e16).contains(&a) {
            write!(f, "{}", self.0)
        } else {
            write!(f, "{:e}", self.0)
        }
    }
}

/// A value with its SI unit, e.g. `0.08 J`.
pub struct WithUnit(pub f64, pub Dimension);

impl fmt::Display for WithUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.1.si_unit() {
            "" => write!(f, "{}", Exact(self.0)),
            unit => write!(f, "{} {unit}", Exact(self.0)),
        }
    }
}
