//! Spin-system parameters and their key-value config format.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::{Error, Result};

/// Offsets and coupling of the two-spin system, all in Hz. The frequency
/// separation `delta = nu_i - nu_s` is derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinSystemParams {
    pub nu_i: f64,
    pub nu_s: f64,
    pub j: f64,
}

impl Default for SpinSystemParams {
    /// The cytosine proton pair: ±457.9 Hz offsets, J = 7.2 Hz.
    fn default() -> Self {
        Self { nu_i: 457.9, nu_s: -457.9, j: 7.2 }
    }
}

impl SpinSystemParams {
    pub fn new(nu_i: f64, nu_s: f64, j: f64) -> Result<Self> {
        if !(nu_i.is_finite() && nu_s.is_finite() && j.is_finite()) {
            return Err(Error::Domain("spin-system parameters must be finite".into()));
        }
        if j < 0.0 {
            return Err(Error::Domain(format!("coupling J = {j} Hz must be non-negative")));
        }
        Ok(Self { nu_i, nu_s, j })
    }

    pub fn delta(&self) -> f64 {
        self.nu_i - self.nu_s
    }
}

/// `nu_i_hz=…`, `nu_s_hz=…`, `j_hz=…`, one per line. `#` comments and blank
/// lines are ignored; keys missing from the file keep their defaults.
impl FromStr for SpinSystemParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let defaults = SpinSystemParams::default();
        let (mut nu_i, mut nu_s, mut j) = (defaults.nu_i, defaults.nu_s, defaults.j);
        for (index, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Config { line: index + 1, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got '{line}'")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| err(format!("invalid number '{}'", value.trim())))?;
            match key.trim() {
                "nu_i_hz" => nu_i = value,
                "nu_s_hz" => nu_s = value,
                "j_hz" => j = value,
                "delta_hz" => {
                    return Err(err("delta_hz is derived from nu_i_hz and nu_s_hz".into()))
                }
                other => return Err(err(format!("unknown key '{other}'"))),
            }
        }
        SpinSystemParams::new(nu_i, nu_s, j)
    }
}

impl fmt::Display for SpinSystemParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nu_i_hz={}", self.nu_i)?;
        writeln!(f, "nu_s_hz={}", self.nu_s)?;
        writeln!(f, "j_hz={}", self.j)
    }
}
