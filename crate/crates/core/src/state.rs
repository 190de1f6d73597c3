//! State vectors, rays and the relative phase between states.
//!
//! The inner product conjugates its first argument, so `inner(a, b)` is
//! `Σ conj(aᵢ)·bᵢ`. Every phase convention in the crate follows from that.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Default threshold below which an overlap is treated as zero.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Modulus above which a component counts as "significantly non-zero" when
/// fixing the canonical gauge of a ray.
pub const GAUGE_THRESHOLD: f64 = 1e-12;

/// Reduce an angle to `(−π, π]`.
pub fn wrap_phase(angle: f64) -> f64 {
    let r = angle.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    wrap_phase(a - b).abs()
}

/// A vector of the Hilbert space `ℂⁿ`, `n ≥ 2`, finite and non-zero.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<C64>,
}

impl StateVector {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.len() < 2 {
            return Err(Error::TooFewComponents(amps.len()));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitude".into()));
        }
        if amps.iter().all(|z| z.norm_sqr() == 0.0) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { amps })
    }

    /// Build from `(re, im)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(re, im)| C64::new(re, im)).collect())
    }

    /// Build from real amplitudes.
    pub fn from_reals(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Computational basis vector `e_k` in dimension `n`.
    pub fn basis(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::ParameterOutOfRange {
                name: "basis index",
                value: k as f64,
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); n];
        amps[k] = C64::new(1.0, 0.0);
        Self::new(amps)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            amps: self.amps.iter().map(|z| z / n).collect(),
        }
    }

    /// `c·ψ` for a non-zero complex scalar.
    pub fn scaled(&self, c: C64) -> Result<Self> {
        Self::new(self.amps.iter().map(|z| z * c).collect())
    }

    /// Multiply by the unimodular factor `e^{iθ}`.
    pub fn with_phase(&self, theta: f64) -> Self {
        let u = C64::from_polar(1.0, theta);
        Self {
            amps: self.amps.iter().map(|z| z * u).collect(),
        }
    }

    /// Largest componentwise modulus difference.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.amps.iter()).finish()
    }
}

/// `⟨a|b⟩` on raw amplitude slices. Caller guarantees equal lengths.
pub(crate) fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

/// `⟨a|b⟩ = Σ conj(aᵢ)·bᵢ`.
pub fn inner(a: &StateVector, b: &StateVector) -> Result<C64> {
    check_dims(a.dim(), b.dim())?;
    Ok(dot(&a.amps, &b.amps))
}

/// A point of projective Hilbert space, held as its unit representative in
/// canonical gauge (first significantly non-zero component real positive).
#[derive(Clone, PartialEq)]
pub struct RayPoint {
    rep: StateVector,
}

impl RayPoint {
    pub fn representative(&self) -> &StateVector {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// Componentwise comparison of canonical representatives.
    pub fn approx_eq(&self, other: &RayPoint, tol: f64) -> bool {
        self.dim() == other.dim() && self.rep.max_abs_diff(&other.rep) <= tol
    }
}

impl fmt::Debug for RayPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RayPoint({:?})", self.rep)
    }
}

/// The projection `Π : H → P(H)`.
pub fn project(psi: &StateVector) -> RayPoint {
    let unit = psi.normalized();
    let lead = unit
        .amps
        .iter()
        .copied()
        .find(|z| z.norm() > GAUGE_THRESHOLD)
        .unwrap_or_else(|| C64::new(1.0, 0.0));
    let gauge = lead.conj() / lead.norm();
    let mut amps: Vec<C64> = unit.amps.iter().map(|z| z * gauge).collect();
    // Pin the leading component exactly on the positive real axis.
    if let Some(z) = amps.iter_mut().find(|z| z.norm() > GAUGE_THRESHOLD) {
        *z = C64::new(z.norm(), 0.0);
    }
    RayPoint {
        rep: StateVector { amps },
    }
}

/// `arg⟨a|b⟩` in `(−π, π]`.
///
/// The overlap is compared against `tol` after normalising both vectors, so
/// the orthogonality test does not depend on their scale.
pub fn relative_phase_tol(a: &StateVector, b: &StateVector, tol: f64) -> Result<f64> {
    let z = inner(a, b)?;
    let overlap = z.norm() / (a.norm() * b.norm());
    if overlap <= tol {
        return Err(Error::OrthogonalStates { overlap });
    }
    Ok(wrap_phase(z.arg()))
}

/// [`relative_phase_tol`] with the default orthogonality tolerance.
pub fn relative_phase(a: &StateVector, b: &StateVector) -> Result<f64> {
    relative_phase_tol(a, b, ORTHOGONALITY_TOL)
}

/// True iff `⟨a|b⟩` is real and positive up to `tol` (relative to `|⟨a|b⟩|`).
pub fn in_phase(a: &StateVector, b: &StateVector, tol: f64) -> Result<bool> {
    let z = inner(a, b)?;
    Ok(z.re > 0.0 && z.im.abs() <= tol * z.norm())
}

/// Fubini–Study angle `arccos |⟨â|b̂⟩|` between the rays of two vectors.
///
/// Evaluated as `atan2(‖b̂ − ⟨â|b̂⟩â‖, |⟨â|b̂⟩|)`, which stays accurate for
/// nearly coincident rays where `arccos` loses half the digits. The residual
/// is averaged over both argument orders so the result is exactly symmetric.
pub fn state_angle(a: &StateVector, b: &StateVector) -> Result<f64> {
    check_dims(a.dim(), b.dim())?;
    let a = a.normalized();
    let b = b.normalized();
    let c = dot(&a.amps, &b.amps);
    let residual = |x: &[C64], y: &[C64], c: C64| -> f64 {
        x.iter()
            .zip(y)
            .map(|(xi, yi)| (yi - c * xi).norm_sqr())
            .sum::<f64>()
            .sqrt()
    };
    let perp = 0.5 * (residual(&a.amps, &b.amps, c) + residual(&b.amps, &a.amps, c.conj()));
    Ok(perp.atan2(c.norm()))
}

/// Fubini–Study distance between rays, in `[0, π/2]`.
pub fn ray_distance(p: &RayPoint, q: &RayPoint) -> Result<f64> {
    state_angle(&p.rep, &q.rep)
}
