//! Drawing, enumerating and discretizing rotation sets.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::Vector3;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::quadrature::{gauss_legendre, periodic};
use super::set::{RotationSetSpec, Sampling, Variant};
use super::unitary::{
    axis_angle_unitary, euler_unitary, magic_angle, rotation_about, spherical_axis, AxisAngle,
    Cartesian, EulerTriple, Unitary,
};
use crate::{Error, Result};

/// A finite mixture of rotations with weights summing to one.
#[derive(Debug, Clone)]
pub struct WeightedSet {
    pub elements: Vec<(f64, Unitary)>,
}

impl WeightedSet {
    pub fn uniform(unitaries: Vec<Unitary>) -> Self {
        let w = 1.0 / unitaries.len() as f64;
        Self { elements: unitaries.into_iter().map(|u| (w, u)).collect() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn unitaries(&self) -> impl Iterator<Item = &Unitary> {
        self.elements.iter().map(|(_, u)| u)
    }
}

fn z(angle: f64) -> Unitary {
    rotation_about(angle, Cartesian::Z)
}

fn x(angle: f64) -> Unitary {
    rotation_about(angle, Cartesian::X)
}

fn from_axis(xi: f64, axis: Vector3<f64>) -> Unitary {
    axis_angle_unitary(&AxisAngle { xi, axis: [axis.x, axis.y, axis.z] })
}

/// `z(a) 90_x z(b)` or `z(a) 90_x z(b) magic_x z(c)` in time order.
fn gradient_element(phases: &[f64]) -> Unitary {
    let pulses = [x(FRAC_PI_2), x(magic_angle())];
    let mut u = z(phases[0]);
    for (pulse, phase) in pulses.iter().zip(&phases[1..]) {
        u = u.then(pulse).then(&z(*phase));
    }
    u
}

/// Builds one element of a continuous set from its raw coordinates. Each
/// coordinate is either a periodic angle in `[0, 2π)` or `cos θ ∈ [-1, 1]`,
/// as laid out by [`coordinates`].
fn element(variant: &Variant, c: &[f64]) -> Unitary {
    match variant {
        Variant::RandomAxisRandomAngle => from_axis(c[0], spherical_axis(c[1], c[2])),
        Variant::Euler => euler_unitary(&EulerTriple { phi: c[0], theta: c[1].clamp(-1.0, 1.0).acos(), xi: c[2] }),
        Variant::TwoAxisZy => z(c[0]).then(&rotation_about(c[1], Cartesian::Y)),
        Variant::Axis120Random => from_axis(TAU / 3.0, spherical_axis(c[0], c[1])),
        Variant::AxisSpin(axis) => from_axis(c[0], axis.unit()),
        Variant::GradientSequence { .. } => gradient_element(c),
        _ => unreachable!("discrete variants have no coordinates"),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Coordinate {
    Angle,
    CosTheta,
}

fn coordinates(variant: &Variant) -> Vec<Coordinate> {
    use Coordinate::*;
    match variant {
        Variant::RandomAxisRandomAngle => vec![Angle, CosTheta, Angle],
        Variant::Euler => vec![Angle, CosTheta, Angle],
        Variant::TwoAxisZy => vec![Angle, Angle],
        Variant::Axis120Random => vec![CosTheta, Angle],
        Variant::AxisSpin(_) => vec![Angle],
        Variant::GradientSequence { stages } => vec![Angle; *stages],
        _ => Vec::new(),
    }
}

/// One random draw from a continuous set. Spherical axes use
/// `cos θ ~ U[-1, 1]`, `φ ~ U[0, 2π)`.
pub fn sample<R: Rng + ?Sized>(spec: &RotationSetSpec, rng: &mut R) -> Result<Unitary> {
    if spec.is_discrete() {
        return Err(Error::Usage(format!("cannot sample discrete set '{spec}'; enumerate it")));
    }
    let coords: Vec<f64> = coordinates(&spec.variant)
        .into_iter()
        .map(|c| match c {
            Coordinate::Angle => rng.gen_range(0.0..TAU),
            Coordinate::CosTheta => rng.gen_range(-1.0..=1.0),
        })
        .collect();
    Ok(element(&spec.variant, &coords))
}

/// All elements of a discrete set, uniformly weighted.
pub fn enumerate(spec: &RotationSetSpec) -> Result<WeightedSet> {
    let elements = match &spec.variant {
        Variant::Pauli4 => vec![
            Unitary::identity(),
            rotation_about(PI, Cartesian::X),
            rotation_about(PI, Cartesian::Y),
            rotation_about(PI, Cartesian::Z),
        ],
        Variant::Cyclic { order, axis } => {
            let n = axis.unit();
            (0..*order).map(|k| from_axis(TAU * k as f64 / *order as f64, n)).collect()
        }
        Variant::Bennett12 => bennett12(),
        Variant::Discrete27 => staged_discrete(3, 3, 3),
        Variant::Discrete18a => staged_discrete(2, 3, 3),
        Variant::Discrete18b => staged_discrete(3, 2, 3),
        _ => return Err(Error::Usage(format!("cannot enumerate continuous set '{spec}'"))),
    };
    Ok(WeightedSet::uniform(elements))
}

/// Identity, half turns about x, y, z, and ±2π/3 about the four body
/// diagonals `(±1, ±1, 1)/√3`.
fn bennett12() -> Vec<Unitary> {
    let mut out = vec![Unitary::identity()];
    out.extend([Cartesian::X, Cartesian::Y, Cartesian::Z].map(|c| rotation_about(PI, c)));
    for (sx, sy) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let axis = Vector3::new(sx, sy, 1.0).normalize();
        out.push(from_axis(TAU / 3.0, axis));
        out.push(from_axis(-TAU / 3.0, axis));
    }
    out
}

/// `Z_a^m 90_x Z_b^n magic_x Z_c^p` over all exponents, in time order.
fn staged_discrete(a: usize, b: usize, c: usize) -> Vec<Unitary> {
    let mut out = Vec::with_capacity(a * b * c);
    for m in 0..a {
        for n in 0..b {
            for p in 0..c {
                out.push(gradient_element(&[
                    TAU * m as f64 / a as f64,
                    TAU * n as f64 / b as f64,
                    TAU * p as f64 / c as f64,
                ]));
            }
        }
    }
    out
}

/// Turns any spec into a finite weighted mixture according to its
/// sampling plan.
pub fn realize(spec: &RotationSetSpec) -> Result<WeightedSet> {
    spec.validate()?;
    if spec.is_discrete() {
        return enumerate(spec);
    }
    match spec.sampling {
        Sampling::ExactSum => unreachable!("rejected by validate"),
        Sampling::MonteCarlo { n, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draws = (0..n).map(|_| sample(spec, &mut rng)).collect::<Result<Vec<_>>>()?;
            Ok(WeightedSet::uniform(draws))
        }
        Sampling::Quadrature { n } => {
            let rules: Vec<Vec<(f64, f64)>> = coordinates(&spec.variant)
                .into_iter()
                .map(|c| match c {
                    Coordinate::Angle => periodic(n),
                    Coordinate::CosTheta => gauss_legendre(n),
                })
                .collect();
            let mut elements = Vec::with_capacity(rules.iter().map(Vec::len).product());
            let mut index = vec![0usize; rules.len()];
            loop {
                let coords: Vec<f64> = index.iter().zip(&rules).map(|(&i, r)| r[i].0).collect();
                let weight: f64 = index.iter().zip(&rules).map(|(&i, r)| r[i].1).product();
                elements.push((weight, element(&spec.variant, &coords)));
                // odometer increment, last coordinate fastest
                let mut k = rules.len();
                loop {
                    if k == 0 {
                        return Ok(WeightedSet { elements });
                    }
                    k -= 1;
                    index[k] += 1;
                    if index[k] < rules[k].len() {
                        break;
                    }
                    index[k] = 0;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotations::set::Axis;

    fn spec(text: &str) -> RotationSetSpec {
        text.parse().unwrap()
    }

    #[test]
    fn axis120_draws_have_fixed_angle() {
        let s = spec("axis120:mc:100");
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let u = sample(&s, &mut rng).unwrap();
            assert!((u.rotation_angle() - TAU / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let s = spec("random-axis:mc:10");
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..10).map(|_| *sample(&s, &mut rng).unwrap().matrix()).collect::<Vec<_>>()
        };
        assert_eq!(draw(42), draw(42));
        assert_ne!(draw(42), draw(43));
    }

    #[test]
    fn degenerate_euler_is_z_rotation() {
        let u = element(&Variant::Euler, &[0.3, 1.0, 0.9]);
        assert!(u.same_action(&z(1.2), 1e-14));
    }

    #[test]
    fn discrete_and_continuous_misuse() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(sample(&spec("bennett12"), &mut rng), Err(Error::Usage(_))));
        assert!(matches!(enumerate(&spec("euler")), Err(Error::Usage(_))));
    }

    #[test]
    fn cyclic_three_about_z() {
        let set = enumerate(&RotationSetSpec::cyclic(3, Axis::Cartesian(Cartesian::Z))).unwrap();
        assert_eq!(set.len(), 3);
        for (k, u) in set.unitaries().enumerate() {
            assert!(u.same_action(&z(TAU * k as f64 / 3.0), 1e-14));
        }
    }

    #[test]
    fn set_sizes() {
        for (text, n) in [("pauli4", 4), ("bennett12", 12), ("discrete27", 27), ("discrete18a", 18), ("discrete18b", 18)] {
            assert_eq!(enumerate(&spec(text)).unwrap().len(), n, "{text}");
        }
        assert_eq!(realize(&spec("euler:quad:4")).unwrap().len(), 64);
        assert_eq!(realize(&spec("two-axis:quad:5")).unwrap().len(), 25);
        assert_eq!(realize(&spec("euler:mc:17")).unwrap().len(), 17);
    }

    #[test]
    fn quadrature_weights_sum_to_one() {
        for text in ["random-axis:quad:8", "euler:quad:6", "axis120:quad:7", "gradient:3:quad:4"] {
            let total: f64 = realize(&spec(text)).unwrap().elements.iter().map(|(w, _)| w).sum();
            assert!((total - 1.0).abs() < 1e-13, "{text}");
        }
    }

    #[test]
    fn bennett12_is_a_group() {
        let set = bennett12();
        for a in &set {
            for b in &set {
                let ab = a.then(b);
                let hits = set.iter().filter(|c| c.same_action(&ab, 1e-12)).count();
                assert_eq!(hits, 1);
            }
        }
    }
}
