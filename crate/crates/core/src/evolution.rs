//! Schrödinger evolution, dynamical-phase removal and the Aharonov–Anandan phase.
//!
//! States evolve under `i ∂ψ/∂t = H(t) ψ`, i.e. `ψ' = −i H ψ`. The dynamical
//! phase uses the norm-normalised expectation `h = Re⟨ψ|Hψ⟩ / ⟨ψ|ψ⟩`, and the
//! transported curve is `φ(t) = exp(i∫₀ᵗ h) ψ(t)`. Along `φ` the connection
//! `Im⟨φ|φ'⟩ / ⟨φ|φ⟩` vanishes, which [`transport_residual`] measures.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::connection::{connection_along, holonomy_element};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::numerics::{cumulative_simpson, linspace, simpson};
use crate::state::{dot, project, ray_distance, wrap_phase, StateVector};
use crate::trajectory::Trajectory;

/// Hermiticity tolerance applied when a generator claims to be Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Default ray-distance tolerance for declaring an evolution cyclic.
pub const CYCLIC_TOL: f64 = 1e-6;

type EvalFn = dyn Fn(f64) -> ComplexMatrix + Send + Sync;

/// A (possibly time-dependent, possibly non-Hermitian) generator `H(t)`.
#[derive(Clone)]
pub struct GeneratorSpec {
    dimension: usize,
    evaluate: Arc<EvalFn>,
    hermitian_hint: bool,
    name: String,
    params: BTreeMap<String, f64>,
}

impl GeneratorSpec {
    pub fn from_fn<F>(dimension: usize, hermitian_hint: bool, f: F) -> Self
    where
        F: Fn(f64) -> ComplexMatrix + Send + Sync + 'static,
    {
        Self {
            dimension,
            evaluate: Arc::new(f),
            hermitian_hint,
            name: "custom".into(),
            params: BTreeMap::new(),
        }
    }

    /// Time-independent generator. The Hermitian hint is inferred.
    pub fn constant(matrix: ComplexMatrix) -> Self {
        let hermitian = matrix.hermiticity_defect() <= HERMITIAN_TOL;
        let n = matrix.dim();
        Self::from_fn(n, hermitian, move |_| matrix.clone()).named("constant", BTreeMap::new())
    }

    pub fn named(mut self, name: &str, params: BTreeMap<String, f64>) -> Self {
        self.name = name.to_string();
        self.params = params;
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn hermitian_hint(&self) -> bool {
        self.hermitian_hint
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    pub fn evaluate(&self, t: f64) -> ComplexMatrix {
        (self.evaluate)(t)
    }

    /// Evaluate and check shape, finiteness and (if hinted) hermiticity.
    pub fn evaluate_checked(&self, t: f64) -> Result<ComplexMatrix> {
        let m = self.evaluate(t);
        if m.dim() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: m.dim(),
            });
        }
        if !m.is_finite() {
            return Err(Error::NonFinite(format!("generator at t = {t}")));
        }
        if self.hermitian_hint {
            let defect = m.hermiticity_defect();
            if defect > HERMITIAN_TOL {
                return Err(Error::InvalidParameter(format!(
                    "generator `{}` marked Hermitian but ‖H − H†‖ = {defect:e} at t = {t}",
                    self.name
                )));
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorSpec")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .field("hermitian_hint", &self.hermitian_hint)
            .field("params", &self.params)
            .finish()
    }
}

fn rhs(h: &ComplexMatrix, psi: &[C64]) -> Vec<C64> {
    let minus_i = C64::new(0.0, -1.0);
    h.apply(psi).into_iter().map(|z| z * minus_i).collect()
}

fn axpy(y: &[C64], a: f64, x: &[C64]) -> Vec<C64> {
    y.iter().zip(x).map(|(yi, xi)| yi + xi * a).collect()
}

/// Integrate `ψ' = −i H(t) ψ` on a uniform grid over `[0, t_final]` with the
/// classical four-stage Runge–Kutta scheme. The result has `steps + 1` samples.
pub fn integrate_schrodinger(
    gen: &GeneratorSpec,
    psi0: &StateVector,
    t_final: f64,
    steps: usize,
) -> Result<Trajectory> {
    if steps < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "steps",
            value: steps as f64,
        });
    }
    if !(t_final.is_finite() && t_final > 0.0) {
        return Err(Error::ParameterOutOfRange {
            name: "t_final",
            value: t_final,
        });
    }
    if psi0.dim() != gen.dimension() {
        return Err(Error::DimensionMismatch {
            expected: gen.dimension(),
            found: psi0.dim(),
        });
    }
    let times = linspace(0.0, t_final, steps + 1);
    let dt = t_final / steps as f64;
    let mut states = Vec::with_capacity(steps + 1);
    let mut psi = psi0.amplitudes().to_vec();
    states.push(psi0.clone());
    let mut h_start = gen.evaluate_checked(0.0)?;
    for k in 0..steps {
        let t = dt * k as f64;
        let h_mid = gen.evaluate_checked(t + 0.5 * dt)?;
        let h_end = gen.evaluate_checked(t + dt)?;
        let k1 = rhs(&h_start, &psi);
        let k2 = rhs(&h_mid, &axpy(&psi, 0.5 * dt, &k1));
        let k3 = rhs(&h_mid, &axpy(&psi, 0.5 * dt, &k2));
        let k4 = rhs(&h_end, &axpy(&psi, dt, &k3));
        for (i, z) in psi.iter_mut().enumerate() {
            *z += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0);
        }
        let next = StateVector::new(psi.clone())
            .map_err(|_| Error::NonFinite(format!("state at t = {}", t + dt)))?;
        states.push(next);
        h_start = h_end;
    }
    Ok(Trajectory::new(times, states)?.with_generator(gen.clone()))
}

/// `h(t) = Re⟨ψ|H(t)ψ⟩ / ⟨ψ|ψ⟩`.
pub fn expectation_h(gen: &GeneratorSpec, psi: &StateVector, t: f64) -> Result<f64> {
    if psi.dim() != gen.dimension() {
        return Err(Error::DimensionMismatch {
            expected: gen.dimension(),
            found: psi.dim(),
        });
    }
    let h_psi = gen.evaluate(t).apply(psi.amplitudes());
    Ok(dot(psi.amplitudes(), &h_psi).re / psi.norm_sqr())
}

fn h_samples(traj: &Trajectory, gen: &GeneratorSpec) -> Result<Vec<f64>> {
    traj.times()
        .iter()
        .zip(traj.states())
        .map(|(&t, psi)| expectation_h(gen, psi, t))
        .collect()
}

/// `∫₀^τ h(t) dt` by composite Simpson quadrature on the trajectory grid.
pub fn dynamical_phase(traj: &Trajectory, gen: &GeneratorSpec) -> Result<f64> {
    simpson(traj.times(), &h_samples(traj, gen)?)
}

/// `φ(t) = exp(i∫₀ᵗ h) ψ(t)` on the same grid, with the running integral
/// accumulated by the quadrature rule of [`dynamical_phase`].
pub fn remove_dynamical_phase(traj: &Trajectory, gen: &GeneratorSpec) -> Result<Trajectory> {
    let running = cumulative_simpson(traj.times(), &h_samples(traj, gen)?)?;
    Ok(traj.map_states(|i, psi| psi.with_phase(running[i])))
}

/// Largest `|Im⟨φ|φ'⟩| / ⟨φ|φ⟩` over the grid; zero along a parallel-transported curve.
pub fn transport_residual(traj: &Trajectory) -> Result<f64> {
    let conn = connection_along(traj)?;
    Ok(conn.values().iter().fold(0.0, |m, v| m.max(v.abs())))
}

/// Phase decomposition of one cyclic run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseReport {
    /// `arg⟨ψ(0)|ψ(τ)⟩` in `(−π, π]`.
    pub total_phase: f64,
    /// `∫₀^τ h dt`, not reduced.
    pub dynamical_phase: f64,
    /// `arg⟨ψ(0)|ψ(τ)⟩ + ∫h dt` reduced to `(−π, π]`.
    pub geometric_phase: f64,
    /// `e^{i·geometric_phase}`.
    pub holonomy: C64,
    /// Ray distance between the endpoints.
    pub cyclic_residual: f64,
    /// [`transport_residual`] of the dynamical-phase-free curve.
    pub max_transport_residual: f64,
}

/// Aharonov–Anandan phase of an (approximately) cyclic evolution.
///
/// The transported curve `φ` is horizontal, so the whole phase is collected by
/// the vertical segment closing `φ(τ)` back onto `φ(0)`.
pub fn aa_phase(
    gen: &GeneratorSpec,
    psi0: &StateVector,
    t_final: f64,
    steps: usize,
    cyclic_tol: f64,
) -> Result<PhaseReport> {
    aa_phase_with_trajectory(gen, psi0, t_final, steps, cyclic_tol).map(|(r, _)| r)
}

/// [`aa_phase`], also returning the transported curve `φ`.
pub fn aa_phase_with_trajectory(
    gen: &GeneratorSpec,
    psi0: &StateVector,
    t_final: f64,
    steps: usize,
    cyclic_tol: f64,
) -> Result<(PhaseReport, Trajectory)> {
    let traj = integrate_schrodinger(gen, psi0, t_final, steps)?;
    let cyclic_residual = ray_distance(&project(traj.first()), &project(traj.last()))?;
    if cyclic_residual > cyclic_tol {
        return Err(Error::NotCyclic {
            residual: cyclic_residual,
            tol: cyclic_tol,
        });
    }
    let dynamical = dynamical_phase(&traj, gen)?;
    let total = wrap_phase(dot(traj.first().amplitudes(), traj.last().amplitudes()).arg());
    let geometric = wrap_phase(total + dynamical);
    let transported = remove_dynamical_phase(&traj, gen)?;
    let report = PhaseReport {
        total_phase: total,
        dynamical_phase: dynamical,
        geometric_phase: geometric,
        holonomy: holonomy_element(geometric),
        cyclic_residual,
        max_transport_residual: transport_residual(&transported)?,
    };
    Ok((report, transported))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn sigma_z() -> GeneratorSpec {
        GeneratorSpec::constant(ComplexMatrix::pauli_z())
    }

    fn e0() -> StateVector {
        StateVector::basis(2, 0).unwrap()
    }

    #[test]
    fn zero_generator_keeps_state() {
        let gen = GeneratorSpec::constant(ComplexMatrix::zeros(3));
        let psi0 = StateVector::from_pairs(&[(0.1, 0.2), (0.3, -0.4), (0.5, 0.0)]).unwrap();
        let traj = integrate_schrodinger(&gen, &psi0, 2.0, 10).unwrap();
        assert_eq!(traj.len(), 11);
        for s in traj.states() {
            assert_eq!(s, &psi0);
        }
        assert_eq!(dynamical_phase(&traj, &gen).unwrap(), 0.0);
        let phi = remove_dynamical_phase(&traj, &gen).unwrap();
        assert_eq!(phi.states(), traj.states());
        assert!(transport_residual(&phi).unwrap() <= 1e-14);
    }

    #[test]
    fn diagonal_generator_closed_form() {
        // ψ(t) = (e^{−it}, 0)
        let traj = integrate_schrodinger(&sigma_z(), &e0(), PI, 1000).unwrap();
        let expected = StateVector::from_reals(&[-1.0, 0.0]).unwrap();
        assert!(traj.last().max_abs_diff(&expected) < 1e-8);
    }

    #[test]
    fn half_sigma_z_on_superposition() {
        // H = ωσ_z/2 with ω = 2: components pick up e^{∓it}; at t = π both are −1.
        let gen = GeneratorSpec::constant(ComplexMatrix::pauli_z());
        let psi0 = StateVector::from_reals(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        let traj = integrate_schrodinger(&gen, &psi0, PI, 1000).unwrap();
        let expected = StateVector::from_reals(&[-FRAC_1_SQRT_2, -FRAC_1_SQRT_2]).unwrap();
        assert!(traj.last().max_abs_diff(&expected) < 1e-8);
        let mid = &traj.states()[500];
        let expected_mid =
            StateVector::from_pairs(&[(0.0, -FRAC_1_SQRT_2), (0.0, FRAC_1_SQRT_2)]).unwrap();
        assert!(mid.max_abs_diff(&expected_mid) < 1e-8);
    }

    #[test]
    fn expectation_examples() {
        let psi = StateVector::from_pairs(&[(0.6, 0.0), (0.0, 0.8)]).unwrap();
        let id = GeneratorSpec::constant(ComplexMatrix::identity(2));
        assert!((expectation_h(&id, &psi, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(expectation_h(&sigma_z(), &e0(), 0.3).unwrap(), 1.0);
        let anti = GeneratorSpec::constant(ComplexMatrix::identity(2).scale(C64::new(0.0, 1.0)));
        assert!(!anti.hermitian_hint());
        assert_eq!(expectation_h(&anti, &psi, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn dynamical_phase_examples() {
        let id = GeneratorSpec::constant(ComplexMatrix::identity(2));
        let psi = StateVector::from_reals(&[0.6, 0.8]).unwrap();
        let traj = integrate_schrodinger(&id, &psi, 2.0, 200).unwrap();
        assert!((dynamical_phase(&traj, &id).unwrap() - 2.0).abs() < 1e-12);
        let traj = integrate_schrodinger(&sigma_z(), &e0(), 1.5, 150).unwrap();
        assert!((dynamical_phase(&traj, &sigma_z()).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn eigenstate_phase_cancels() {
        let traj = integrate_schrodinger(&sigma_z(), &e0(), 3.0, 300).unwrap();
        let phi = remove_dynamical_phase(&traj, &sigma_z()).unwrap();
        for s in phi.states() {
            assert!(s.max_abs_diff(&e0()) <= 1e-8);
        }
    }

    #[test]
    fn uniform_phase_rotation_is_not_transported() {
        let psi0 = StateVector::from_reals(&[0.6, 0.8]).unwrap();
        let grid = linspace(0.0, 1.0, 100);
        let traj = Trajectory::sample(grid, |t| Ok(psi0.with_phase(t))).unwrap();
        assert!((transport_residual(&traj).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn pure_dynamical_evolution_has_no_geometric_phase() {
        let gen = GeneratorSpec::constant(ComplexMatrix::identity(2).scale(C64::new(0.7, 0.0)));
        let psi0 = StateVector::from_pairs(&[(0.6, 0.1), (0.0, 0.79)]).unwrap();
        let r = aa_phase(&gen, &psi0, 2.5, 500, CYCLIC_TOL).unwrap();
        assert!(r.geometric_phase.abs() < 1e-10);
        assert!((r.dynamical_phase - 0.7 * 2.5).abs() < 1e-10);
        assert!((r.total_phase - wrap_phase(-0.7 * 2.5)).abs() < 1e-10);
        assert!((r.holonomy - C64::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn non_cyclic_run_rejected() {
        let gen = GeneratorSpec::constant(ComplexMatrix::pauli_x());
        let r = aa_phase(&gen, &e0(), 0.5, 100, CYCLIC_TOL);
        assert!(matches!(r, Err(Error::NotCyclic { .. })));
    }

    #[test]
    fn bad_arguments_rejected() {
        assert!(matches!(
            integrate_schrodinger(&sigma_z(), &e0(), 1.0, 1),
            Err(Error::ParameterOutOfRange { name: "steps", .. })
        ));
        let e3 = StateVector::basis(3, 0).unwrap();
        assert!(matches!(
            integrate_schrodinger(&sigma_z(), &e3, 1.0, 10),
            Err(Error::DimensionMismatch { .. })
        ));
        let lying = GeneratorSpec::from_fn(2, true, |_| {
            ComplexMatrix::identity(2).scale(C64::new(0.0, 1.0))
        });
        assert!(matches!(
            integrate_schrodinger(&lying, &e0(), 1.0, 10),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn blow_up_reported() {
        let gen = GeneratorSpec::constant(ComplexMatrix::identity(2).scale(C64::new(0.0, 1e3)));
        let r = integrate_schrodinger(&gen, &e0(), 10.0, 100);
        assert!(matches!(r, Err(Error::NonFinite(_))));
    }
}
