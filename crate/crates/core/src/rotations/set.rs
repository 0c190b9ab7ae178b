//! Named averaging sets and their canonical text form.
//!
//! Grammar (colon separated):
//!
//! ```text
//! pauli4 | bennett12 | discrete27 | discrete18a | discrete18b
//! cyclic:<p>:<axis>
//! random-axis | euler | two-axis | axis120 | spin:<axis> | gradient[:2|:3]
//!     optionally followed by :quad:<n> or :mc:<n>[:seed=<s>]
//! <axis> = x | y | z | <a>,<b>,<c>
//! ```

use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;
use serde::{Serialize, Serializer};

use super::unitary::Cartesian;
use crate::{Error, Result};

pub const DEFAULT_QUADRATURE: usize = 64;
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    Cartesian(Cartesian),
    /// Normalized on construction.
    Vector([f64; 3]),
}

impl Axis {
    pub fn vector(v: Vector3<f64>) -> Result<Self> {
        let n = v.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Domain("rotation axis must be a nonzero finite vector".into()));
        }
        let u = v / n;
        Ok(Axis::Vector([u.x, u.y, u.z]))
    }

    pub fn unit(&self) -> Vector3<f64> {
        match self {
            Axis::Cartesian(c) => c.unit(),
            Axis::Vector(v) => Vector3::new(v[0], v[1], v[2]),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Cartesian(Cartesian::X) => write!(f, "x"),
            Axis::Cartesian(Cartesian::Y) => write!(f, "y"),
            Axis::Cartesian(Cartesian::Z) => write!(f, "z"),
            Axis::Vector(v) => write!(f, "{},{},{}", v[0], v[1], v[2]),
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(Axis::Cartesian(Cartesian::X)),
            "y" => Ok(Axis::Cartesian(Cartesian::Y)),
            "z" => Ok(Axis::Cartesian(Cartesian::Z)),
            _ => {
                let parts: Vec<f64> = s
                    .split(',')
                    .map(|p| p.trim().parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Usage(format!("bad axis '{s}'")))?;
                match parts.as_slice() {
                    [a, b, c] => Axis::vector(Vector3::new(*a, *b, *c)),
                    _ => Err(Error::Usage(format!("axis '{s}' needs three components"))),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    /// Uniform angle in `[0, 2π)` about a spherically uniform axis.
    RandomAxisRandomAngle,
    /// Euler angles with a spherically uniform `(θ, φ)` and uniform `ξ`.
    Euler,
    /// `R_z(φ)` then `R_y(θ)`, both angles uniform in `[0, 2π)`.
    TwoAxisZy,
    Pauli4,
    /// Fixed `2π/3` rotation about a spherically uniform axis.
    Axis120Random,
    /// Uniform angle about a fixed axis; the continuous partner of `Cyclic`.
    AxisSpin(Axis),
    Cyclic { order: usize, axis: Axis },
    Bennett12,
    Discrete27,
    Discrete18a,
    Discrete18b,
    /// Bilateral `z` crushes separated by `90_x` (two stages) and then
    /// `magic_x` (three stages).
    GradientSequence { stages: usize },
}

impl Variant {
    pub fn is_discrete(&self) -> bool {
        matches!(
            self,
            Variant::Pauli4
                | Variant::Cyclic { .. }
                | Variant::Bennett12
                | Variant::Discrete27
                | Variant::Discrete18a
                | Variant::Discrete18b
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    ExactSum,
    MonteCarlo { n: usize, seed: u64 },
    /// `n` nodes per continuous angle.
    Quadrature { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationSetSpec {
    pub variant: Variant,
    pub sampling: Sampling,
}

impl RotationSetSpec {
    /// Discrete variants get `ExactSum`, continuous ones the default
    /// quadrature.
    pub fn new(variant: Variant) -> Self {
        let sampling = if variant.is_discrete() {
            Sampling::ExactSum
        } else {
            Sampling::Quadrature { n: DEFAULT_QUADRATURE }
        };
        Self { variant, sampling }
    }

    pub fn with_sampling(variant: Variant, sampling: Sampling) -> Result<Self> {
        let spec = Self { variant, sampling };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self.sampling {
            Sampling::MonteCarlo { n: 0, .. } => {
                Err(Error::Usage("monte-carlo sampling needs n >= 1".into()))
            }
            Sampling::Quadrature { n: 0 } => Err(Error::Usage("quadrature needs n >= 1".into())),
            _ if self.variant.is_discrete() => Ok(()),
            Sampling::ExactSum => Err(Error::Usage(format!(
                "continuous set '{self}' cannot be summed exactly; use quad or mc"
            ))),
            _ => match self.variant {
                Variant::GradientSequence { stages } if !(2..=3).contains(&stages) => {
                    Err(Error::Usage("gradient sequences have 2 or 3 stages".into()))
                }
                _ => Ok(()),
            },
        }
    }

    pub fn is_discrete(&self) -> bool {
        self.variant.is_discrete()
    }

    pub fn pauli4() -> Self {
        Self::new(Variant::Pauli4)
    }

    pub fn bennett12() -> Self {
        Self::new(Variant::Bennett12)
    }

    pub fn cyclic(order: usize, axis: Axis) -> Self {
        Self::new(Variant::Cyclic { order, axis })
    }

    pub fn quadrature(variant: Variant, n: usize) -> Self {
        Self { variant, sampling: Sampling::Quadrature { n } }
    }
}

impl fmt::Display for RotationSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.variant {
            Variant::RandomAxisRandomAngle => write!(f, "random-axis")?,
            Variant::Euler => write!(f, "euler")?,
            Variant::TwoAxisZy => write!(f, "two-axis")?,
            Variant::Pauli4 => return write!(f, "pauli4"),
            Variant::Axis120Random => write!(f, "axis120")?,
            Variant::AxisSpin(axis) => write!(f, "spin:{axis}")?,
            Variant::Cyclic { order, axis } => return write!(f, "cyclic:{order}:{axis}"),
            Variant::Bennett12 => return write!(f, "bennett12"),
            Variant::Discrete27 => return write!(f, "discrete27"),
            Variant::Discrete18a => return write!(f, "discrete18a"),
            Variant::Discrete18b => return write!(f, "discrete18b"),
            Variant::GradientSequence { stages } => write!(f, "gradient:{stages}")?,
        }
        match self.sampling {
            Sampling::ExactSum => Ok(()),
            Sampling::Quadrature { n } => write!(f, ":quad:{n}"),
            Sampling::MonteCarlo { n, seed } => write!(f, ":mc:{n}:seed={seed}"),
        }
    }
}

impl Serialize for RotationSetSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_count(s: &str, what: &str) -> Result<usize> {
    s.parse::<usize>().map_err(|_| Error::Usage(format!("bad {what} '{s}'")))
}

fn parse_sampling(rest: &[&str]) -> Result<Sampling> {
    match rest {
        [] => Ok(Sampling::Quadrature { n: DEFAULT_QUADRATURE }),
        ["quad"] => Ok(Sampling::Quadrature { n: DEFAULT_QUADRATURE }),
        ["quad", n] => Ok(Sampling::Quadrature { n: parse_count(n, "node count")? }),
        ["mc", n] => Ok(Sampling::MonteCarlo { n: parse_count(n, "sample count")?, seed: DEFAULT_SEED }),
        ["mc", n, seed] => {
            let seed = seed
                .strip_prefix("seed=")
                .ok_or_else(|| Error::Usage(format!("expected seed=<s>, got '{seed}'")))?;
            let seed = seed.parse::<u64>().map_err(|_| Error::Usage(format!("bad seed '{seed}'")))?;
            Ok(Sampling::MonteCarlo { n: parse_count(n, "sample count")?, seed })
        }
        other => Err(Error::Usage(format!("bad sampling plan '{}'", other.join(":")))),
    }
}

impl FromStr for RotationSetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let discrete = |variant: Variant, rest: &[&str]| {
            if rest.is_empty() {
                Ok(RotationSetSpec::new(variant))
            } else {
                Err(Error::Usage(format!("discrete set '{}' takes no sampling plan", parts[0])))
            }
        };
        let spec = match parts.as_slice() {
            ["pauli4", rest @ ..] => discrete(Variant::Pauli4, rest)?,
            ["bennett12", rest @ ..] => discrete(Variant::Bennett12, rest)?,
            ["discrete27", rest @ ..] => discrete(Variant::Discrete27, rest)?,
            ["discrete18a", rest @ ..] => discrete(Variant::Discrete18a, rest)?,
            ["discrete18b", rest @ ..] => discrete(Variant::Discrete18b, rest)?,
            ["cyclic", p, axis] => {
                let order = parse_count(p, "cyclic order")?;
                if order == 0 {
                    return Err(Error::Usage("cyclic order must be >= 1".into()));
                }
                RotationSetSpec::cyclic(order, axis.parse()?)
            }
            ["random-axis" | "R", rest @ ..] => {
                RotationSetSpec { variant: Variant::RandomAxisRandomAngle, sampling: parse_sampling(rest)? }
            }
            ["euler" | "E", rest @ ..] => {
                RotationSetSpec { variant: Variant::Euler, sampling: parse_sampling(rest)? }
            }
            ["two-axis", rest @ ..] => {
                RotationSetSpec { variant: Variant::TwoAxisZy, sampling: parse_sampling(rest)? }
            }
            ["axis120", rest @ ..] => {
                RotationSetSpec { variant: Variant::Axis120Random, sampling: parse_sampling(rest)? }
            }
            ["spin", axis, rest @ ..] => {
                RotationSetSpec { variant: Variant::AxisSpin(axis.parse()?), sampling: parse_sampling(rest)? }
            }
            ["gradient", stage @ ("2" | "3"), rest @ ..] => RotationSetSpec {
                variant: Variant::GradientSequence { stages: parse_count(stage, "stage count")? },
                sampling: parse_sampling(rest)?,
            },
            ["gradient", rest @ ..] => RotationSetSpec {
                variant: Variant::GradientSequence { stages: 2 },
                sampling: parse_sampling(rest)?,
            },
            _ => return Err(Error::Usage(format!("unknown rotation set '{s}'"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}
