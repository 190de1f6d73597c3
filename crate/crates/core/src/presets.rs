//! Ready-made generators.
//!
//! # Spin-½ in a rotating field
//!
//! The field precesses about `z` at angular frequency `ω`:
//!
//! ```text
//! H(t) = (b/2) [sin χ cos ωt σx + sin χ sin ωt σy + cos χ σz]
//! ```
//!
//! In the frame co-rotating with the field the generator becomes the constant
//! `H_eff = U†HU − (ω/2)σz = (b sin χ / 2) σx + ((b cos χ − ω) / 2) σz`.
//! The preset is parametrised by that effective field: strength `B` and tilt
//! `θ_c`. The lab field then has
//!
//! ```text
//! b sin χ = B sin θ_c,    b cos χ = B cos θ_c + ω,
//! ```
//!
//! so `H_eff = (B/2)(sin θ_c σx + cos θ_c σz)`. Its eigenstate along
//! `(sin θ_c, 0, cos θ_c)` is the adapted initial state: in the lab frame its
//! Bloch vector sweeps the cone of half-angle `θ_c` exactly once per period
//! `2π/|ω|`, and the evolution is cyclic for every `B` and `ω`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::evolution::GeneratorSpec;
use crate::matrix::ComplexMatrix;
use crate::state::StateVector;
use crate::surface::bloch_state;

pub const SPIN_HALF_ROTATING_FIELD: &str = "spin_half_rotating_field";

/// Names accepted by [`build_preset`].
pub const PRESET_NAMES: &[&str] = &[SPIN_HALF_ROTATING_FIELD];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinHalfRotatingField {
    strength: f64,
    theta_c: f64,
    omega: f64,
}

impl SpinHalfRotatingField {
    pub fn new(strength: f64, theta_c: f64, omega: f64) -> Result<Self> {
        if !(strength.is_finite() && strength != 0.0) {
            return Err(Error::ParameterOutOfRange {
                name: "B",
                value: strength,
            });
        }
        if !(omega.is_finite() && omega != 0.0) {
            return Err(Error::ParameterOutOfRange {
                name: "omega",
                value: omega,
            });
        }
        if !(theta_c > 0.0 && theta_c < PI) {
            return Err(Error::ParameterOutOfRange {
                name: "theta_c",
                value: theta_c,
            });
        }
        Ok(Self {
            strength,
            theta_c,
            omega,
        })
    }

    pub fn strength(&self) -> f64 {
        self.strength
    }

    pub fn theta_c(&self) -> f64 {
        self.theta_c
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega.abs()
    }

    /// Lab-frame field `(b, χ)`.
    pub fn lab_field(&self) -> (f64, f64) {
        let perp = self.strength * self.theta_c.sin();
        let axial = self.strength * self.theta_c.cos() + self.omega;
        (perp.hypot(axial), perp.atan2(axial))
    }

    pub fn hamiltonian(&self, t: f64) -> ComplexMatrix {
        let (b, chi) = self.lab_field();
        let (s, c) = (self.omega * t).sin_cos();
        let half = 0.5 * b;
        ComplexMatrix::pauli_x()
            .scale(C64::new(half * chi.sin() * c, 0.0))
            .add(&ComplexMatrix::pauli_y().scale(C64::new(half * chi.sin() * s, 0.0)))
            .add(&ComplexMatrix::pauli_z().scale(C64::new(half * chi.cos(), 0.0)))
    }

    /// Constant rotating-frame generator `(B/2)(sin θ_c σx + cos θ_c σz)`.
    pub fn effective_hamiltonian(&self) -> ComplexMatrix {
        let half = 0.5 * self.strength;
        ComplexMatrix::pauli_x()
            .scale(C64::new(half * self.theta_c.sin(), 0.0))
            .add(&ComplexMatrix::pauli_z().scale(C64::new(half * self.theta_c.cos(), 0.0)))
    }

    /// Eigenstate of the effective generator with Bloch vector `(sin θ_c, 0, cos θ_c)`.
    pub fn adapted_state(&self) -> StateVector {
        bloch_state(self.theta_c, 0.0)
    }

    pub fn generator(&self) -> GeneratorSpec {
        let field = *self;
        let params = BTreeMap::from([
            ("B".to_string(), self.strength),
            ("theta_c".to_string(), self.theta_c),
            ("omega".to_string(), self.omega),
        ]);
        GeneratorSpec::from_fn(2, true, move |t| field.hamiltonian(t))
            .named(SPIN_HALF_ROTATING_FIELD, params)
    }
}

/// Build a named preset from its parameter map. Missing or unknown keys are errors.
pub fn build_preset(name: &str, params: &BTreeMap<String, f64>) -> Result<GeneratorSpec> {
    match name {
        SPIN_HALF_ROTATING_FIELD => {
            let field = spin_half_from_params(params)?;
            Ok(field.generator())
        }
        other => Err(Error::InvalidParameter(format!("unknown preset `{other}`"))),
    }
}

/// Parse the `B`, `theta_c`, `omega` parameters of the rotating-field preset.
pub fn spin_half_from_params(params: &BTreeMap<String, f64>) -> Result<SpinHalfRotatingField> {
    const KEYS: [&str; 3] = ["B", "theta_c", "omega"];
    if let Some(k) = params.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(Error::InvalidParameter(format!(
            "unknown parameter `{k}` for preset `{SPIN_HALF_ROTATING_FIELD}`"
        )));
    }
    let get = |k: &str| {
        params.get(k).copied().ok_or_else(|| {
            Error::InvalidParameter(format!(
                "missing parameter `{k}` for preset `{SPIN_HALF_ROTATING_FIELD}`"
            ))
        })
    };
    SpinHalfRotatingField::new(get("B")?, get("theta_c")?, get("omega")?)
}
