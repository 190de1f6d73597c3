//! Great-circle geodesics between rays and the Pancharatnam phase as a line
//! integral of the natural connection.
//!
//! For in-phase unit endpoints with `a = ⟨ψ₁|ψ₂⟩ ∈ (0, 1)` the arc is
//!
//! ```text
//! ψ(θ) = ξ₁(θ) ψ₁ + ξ₂(θ) ψ₂,   θ ∈ [0, θ₀],  cos θ₀ = a,
//! ξ₁(θ) = cos θ − a sin θ / √(1 − a²),   ξ₂(θ) = sin θ / √(1 − a²).
//! ```
//!
//! General endpoints are first phase-aligned, and the removed relative phase
//! `β` is put back as the gauge `α(s) = sβ` on the unit parameter `s = θ/θ₀`.

use num_complex::Complex64 as C64;

use crate::connection::{connection_along, line_integral};
use crate::error::{Error, Result};
use crate::numerics::linspace;
use crate::state::{inner, relative_phase_tol, state_angle, wrap_phase, StateVector};
use crate::trajectory::Trajectory;

/// Unit-norm tolerance for geodesic endpoints.
pub const UNIT_TOL: f64 = 1e-10;

/// Minimum ray distance between distinct geodesic endpoints.
pub const DISTINCT_TOL: f64 = 1e-10;

/// Fewest samples accepted by [`pancharatnam_integral`].
pub const MIN_PANCHARATNAM_SAMPLES: usize = 64;

/// The shorter great-circle arc between two non-orthogonal, distinct rays.
#[derive(Debug, Clone)]
pub struct GeodesicArc {
    psi1: StateVector,
    psi2: StateVector,
    a: f64,
    theta0: f64,
    sin_theta0: f64,
    phase_offset: f64,
}

impl GeodesicArc {
    /// Start point `ψ₁ = φ₁`.
    pub fn psi1(&self) -> &StateVector {
        &self.psi1
    }

    /// Phase-aligned end point `ψ₂ = e^{−iβ} φ₂`.
    pub fn psi2(&self) -> &StateVector {
        &self.psi2
    }

    /// `a = Re⟨ψ₁|ψ₂⟩ = |⟨φ₁|φ₂⟩|`.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Arc length `θ₀ = arccos a`.
    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    /// Relative phase `β` reintroduced along the arc.
    pub fn phase_offset(&self) -> f64 {
        self.phase_offset
    }

    /// `(ξ₁(θ), ξ₂(θ))`.
    pub fn coefficients(&self, theta: f64) -> (f64, f64) {
        let (s, c) = theta.sin_cos();
        (c - self.a * s / self.sin_theta0, s / self.sin_theta0)
    }

    fn check_param(s: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::ParameterOutOfRange {
                name: "geodesic parameter",
                value: s,
            });
        }
        Ok(())
    }

    /// Point of the horizontal (phase-aligned) arc at `θ = s·θ₀`.
    pub fn horizontal_point(&self, s: f64) -> Result<StateVector> {
        Self::check_param(s)?;
        let (x1, x2) = self.coefficients(s * self.theta0);
        StateVector::new(
            self.psi1
                .amplitudes()
                .iter()
                .zip(self.psi2.amplitudes())
                .map(|(p, q)| p * x1 + q * x2)
                .collect(),
        )
    }

    /// Uniformly sampled arc with an arbitrary gauge `α` on top of the
    /// horizontal lift.
    pub fn sample_with_gauge<F>(&self, samples: usize, alpha: F) -> Result<Trajectory>
    where
        F: Fn(f64) -> f64,
    {
        if samples < 3 {
            return Err(Error::TooFewSamples {
                needed: 3,
                got: samples,
            });
        }
        Trajectory::sample(linspace(0.0, 1.0, samples), |s| {
            Ok(self.horizontal_point(s)?.with_phase(alpha(s)))
        })
    }

    /// Uniformly sampled arc in the linear gauge `α(s) = sβ`.
    pub fn sample(&self, samples: usize) -> Result<Trajectory> {
        let beta = self.phase_offset;
        self.sample_with_gauge(samples, |s| s * beta)
    }
}

fn check_unit(psi: &StateVector) -> Result<()> {
    if !psi.is_unit(UNIT_TOL) {
        return Err(Error::NotNormalized { norm: psi.norm() });
    }
    Ok(())
}

/// Build the geodesic from `φ₁` (at `s = 0`) to `φ₂` (at `s = 1`).
pub fn geodesic_between(phi1: &StateVector, phi2: &StateVector) -> Result<GeodesicArc> {
    check_unit(phi1)?;
    check_unit(phi2)?;
    let beta = relative_phase_tol(phi1, phi2, crate::state::ORTHOGONALITY_TOL)?;
    if state_angle(phi1, phi2)? <= DISTINCT_TOL {
        return Err(Error::IdenticalRays);
    }
    let psi2 = phi2.with_phase(-beta);
    let a = inner(phi1, &psi2)?.re;
    let theta0 = a.acos();
    Ok(GeodesicArc {
        psi1: phi1.clone(),
        psi2,
        a,
        theta0,
        sin_theta0: (1.0 - a * a).sqrt(),
        phase_offset: beta,
    })
}

/// `e^{isβ}(ξ₁(θ)ψ₁ + ξ₂(θ)ψ₂)` with `θ = sθ₀`.
pub fn geodesic_point(arc: &GeodesicArc, s: f64) -> Result<StateVector> {
    Ok(arc.horizontal_point(s)?.with_phase(s * arc.phase_offset))
}

/// Largest `|ξ₁² + 2aξ₁ξ₂ + ξ₂² − 1|` over a uniform grid of `samples` points.
pub fn normalization_residual(arc: &GeodesicArc, samples: usize) -> Result<f64> {
    if samples < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: samples,
        });
    }
    Ok(linspace(0.0, 1.0, samples)
        .into_iter()
        .map(|s| {
            let (x1, x2) = arc.coefficients(s * arc.theta0);
            (x1 * x1 + 2.0 * arc.a * x1 * x2 + x2 * x2 - 1.0).abs()
        })
        .fold(0.0, f64::max))
}

/// `⟨ψ(θ₁)|ψ(θ₂)⟩` on the phase-aligned arc; analytically `cos(θ₁ − θ₂)`.
pub fn horizontal_overlap(arc: &GeodesicArc, s1: f64, s2: f64) -> Result<C64> {
    let p = arc.horizontal_point(s1)?;
    let q = arc.horizontal_point(s2)?;
    inner(&p, &q)
}

/// Relative phase of `φ₁, φ₂` recovered as `∫₀¹ A_s ds` along the geodesic.
pub fn pancharatnam_integral(
    phi1: &StateVector,
    phi2: &StateVector,
    samples: usize,
) -> Result<f64> {
    if samples < MIN_PANCHARATNAM_SAMPLES {
        return Err(Error::TooFewSamples {
            needed: MIN_PANCHARATNAM_SAMPLES,
            got: samples,
        });
    }
    let arc = geodesic_between(phi1, phi2)?;
    line_integral(&connection_along(&arc.sample(samples)?)?)
}

/// `arg(⟨ψ₁|ψ₂⟩⟨ψ₂|ψ₃⟩⟨ψ₃|ψ₁⟩)` in `(−π, π]`.
pub fn bargmann_triangle(
    psi1: &StateVector,
    psi2: &StateVector,
    psi3: &StateVector,
) -> Result<f64> {
    let mut product = C64::new(1.0, 0.0);
    for (p, q) in [(psi1, psi2), (psi2, psi3), (psi3, psi1)] {
        let z = inner(p, q)?;
        let overlap = z.norm() / (p.norm() * q.norm());
        if overlap <= crate::state::ORTHOGONALITY_TOL {
            return Err(Error::OrthogonalStates { overlap });
        }
        product *= z;
    }
    Ok(wrap_phase(product.arg()))
}
