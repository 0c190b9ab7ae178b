//! The product-operator basis for two spins `I` (left) and `S` (right).
//!
//! With `I_α = σ_α/2 ⊗ 1` and `S_β = 1 ⊗ σ_β/2` the operators `I_α`, `S_β` and
//! `2 I_α S_β` are exactly `(σ_a ⊗ σ_b)/2`, which is orthonormal under
//! `Tr(A B)`. Coefficients are therefore plain inner products and the
//! usual NMR normalization needs no extra scale factors.

use std::fmt;

use serde::{Serialize, Serializer};

use super::linalg::{pauli, tensor, Matrix4, PauliAxis};
use super::state::TwoQubit;

/// `σ_left ⊗ σ_right / 2`. `(Identity, Identity)` is `1/2`, the trace part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProductOperator {
    pub i: PauliAxis,
    pub s: PauliAxis,
}

impl ProductOperator {
    pub const fn new(i: PauliAxis, s: PauliAxis) -> Self {
        Self { i, s }
    }

    pub fn matrix(&self) -> Matrix4 {
        tensor(&pauli(self.i), &pauli(self.s)).scale(0.5)
    }

    /// The 15 traceless basis elements: `Ix, Iy, Iz, Sx, Sy, Sz`, then
    /// `2IαSβ` with α major.
    pub fn traceless_basis() -> [ProductOperator; 15] {
        use PauliAxis::*;
        let cart = [X, Y, Z];
        let mut out = [ProductOperator::new(Identity, Identity); 15];
        for (k, a) in cart.iter().enumerate() {
            out[k] = ProductOperator::new(*a, Identity);
            out[3 + k] = ProductOperator::new(Identity, *a);
        }
        for (k, (a, b)) in cart.iter().flat_map(|a| cart.iter().map(move |b| (a, b))).enumerate() {
            out[6 + k] = ProductOperator::new(*a, *b);
        }
        out
    }
}

impl fmt::Display for ProductOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PauliAxis::Identity;
        match (self.i, self.s) {
            (Identity, Identity) => write!(f, "E/2"),
            (a, Identity) => write!(f, "I{}", a.label()),
            (Identity, b) => write!(f, "S{}", b.label()),
            (a, b) => write!(f, "2I{}S{}", a.label(), b.label()),
        }
    }
}

/// Coefficients of a deviation matrix in [`ProductOperator::traceless_basis`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductOperatorCoefficients {
    values: [f64; 15],
}

impl ProductOperatorCoefficients {
    pub fn values(&self) -> &[f64; 15] {
        &self.values
    }

    pub fn get(&self, op: ProductOperator) -> f64 {
        ProductOperator::traceless_basis()
            .iter()
            .position(|b| *b == op)
            .map(|k| self.values[k])
            .unwrap_or(0.0)
    }

    /// `Σ c_k B_k`
    pub fn reconstruct(&self) -> Matrix4 {
        ProductOperator::traceless_basis()
            .iter()
            .zip(self.values.iter())
            .fold(Matrix4::zeros(), |acc, (b, c)| acc + b.matrix().scale(*c))
    }

    pub fn named(&self) -> Vec<(String, f64)> {
        ProductOperator::traceless_basis()
            .iter()
            .zip(self.values.iter())
            .map(|(b, c)| (b.to_string(), *c))
            .collect()
    }
}

impl Serialize for ProductOperatorCoefficients {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(15))?;
        for (name, value) in self.named() {
            map.serialize_entry(&name, &value)?;
        }
        map.end()
    }
}

/// `c_k = Tr(B_k ρ)`. Any trace part of `rho` is ignored.
pub fn product_operator_decomposition(rho: &TwoQubit) -> ProductOperatorCoefficients {
    let mut values = [0.0; 15];
    for (v, b) in values.iter_mut().zip(ProductOperator::traceless_basis()) {
        *v = (b.matrix() * rho.matrix()).trace().re;
    }
    ProductOperatorCoefficients { values }
}
