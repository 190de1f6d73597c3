//! The natural connection `A_s = Im⟨φ|φ'⟩ / ⟨φ|φ⟩` along sampled curves,
//! its line integrals, holonomy, the horizontal/vertical split of tangent
//! vectors and the curvature flux through triangulated surfaces.
//!
//! Sign convention: `A_s` carries a plus sign throughout. Under a gauge change
//! `φ → e^{iα}φ` it shifts to `A_s + α'(s)`. For a loop whose horizontal lift
//! ends at `φ(τ) = e^{iγ}φ(0)`, [`close_loop_phase`] returns `−γ`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numerics::{check_grid, simpson, stencil};
use crate::state::{
    dot, phase_distance, project, ray_distance, state_angle, wrap_phase, StateVector,
};
use crate::surface::{Orientation, SurfacePatch};
use crate::trajectory::Trajectory;

/// Endpoint tolerance (ray distance) for treating a curve as a closed loop.
pub const LOOP_CLOSURE_TOL: f64 = 1e-6;

/// Minimum normalised overlap between the vertices of one curvature triangle.
pub const TRIANGLE_OVERLAP_TOL: f64 = 1e-6;

/// Stencil neighbours must keep this normalised overlap with the centre node
/// for the phase-based difference in [`connection_along`].
const LOCAL_OVERLAP_MIN: f64 = 0.5;

/// Largest relative phase inside one stencil for the phase-based difference.
const LOCAL_PHASE_MAX: f64 = std::f64::consts::FRAC_PI_2;

/// Per-vertex ray-distance tolerance between a patch boundary and a loop.
pub const BOUNDARY_TOL: f64 = 1e-3;

/// Samples of `A_s` along a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionSamples {
    params: Vec<f64>,
    values: Vec<f64>,
}

impl ConnectionSamples {
    pub fn new(params: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if params.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: params.len(),
                found: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("connection value".into()));
        }
        Ok(Self { params, values })
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `A_s(sᵢ) = Im⟨φ|φ'⟩ / ⟨φ|φ⟩` by five-point finite differences.
///
/// At each node the stencil differentiates the local phase
/// `θⱼ = arg⟨φ(sᵢ)|φ(sⱼ)⟩`, whose derivative at `sᵢ` is exactly `A_s(sᵢ)`.
/// Unlike the amplitudes, `θ` stays smooth under rapid re-phasing of the
/// curve. Nodes whose stencil neighbours are far from `φ(sᵢ)` fall back to
/// differencing the amplitudes.
pub fn connection_along(traj: &Trajectory) -> Result<ConnectionSamples> {
    let xs = traj.times();
    check_grid(xs, 3)?;
    let rows = traj.amplitude_rows();
    let mut values = Vec::with_capacity(rows.len());
    for (i, phi) in rows.iter().enumerate() {
        let (lo, w) = stencil(xs, i);
        let norm: f64 = phi.iter().map(|z| z.norm_sqr()).sum();
        let near = rows[lo..lo + w.len()].iter().map(|q| {
            let z = dot(phi, q);
            let qn: f64 = q.iter().map(|c| c.norm_sqr()).sum();
            (z, z.norm() / (norm * qn).sqrt())
        });
        let local: Vec<(C64, f64)> = near.collect();
        let value = if local
            .iter()
            .all(|&(z, o)| o >= LOCAL_OVERLAP_MIN && z.arg().abs() <= LOCAL_PHASE_MAX)
        {
            w.iter().zip(&local).map(|(wj, (z, _))| wj * z.arg()).sum()
        } else {
            let mut m = vec![C64::new(0.0, 0.0); phi.len()];
            for (wj, q) in w.iter().zip(&rows[lo..]) {
                for (acc, z) in m.iter_mut().zip(q) {
                    *acc += z * wj;
                }
            }
            dot(phi, &m).im / norm
        };
        values.push(value);
    }
    ConnectionSamples::new(xs.to_vec(), values)
}

/// Samplewise gauge change `φ(sᵢ) → e^{iα(sᵢ)} φ(sᵢ)`.
pub fn gauge_transform<F>(traj: &Trajectory, alpha: F) -> Result<Trajectory>
where
    F: Fn(f64) -> f64,
{
    let angles: Vec<f64> = traj.times().iter().map(|&s| alpha(s)).collect();
    if let Some(i) = angles.iter().position(|a| !a.is_finite()) {
        return Err(Error::NonFinite(format!("gauge angle at sample {i}")));
    }
    Ok(traj.map_states(|i, phi| phi.with_phase(angles[i])))
}

/// `∫ A_s ds` by composite Simpson quadrature.
pub fn line_integral(samples: &ConnectionSamples) -> Result<f64> {
    if samples.params.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: samples.params.len(),
        });
    }
    simpson(&samples.params, &samples.values)
}

/// Phase of a closed ray loop: the open integral of `A_s` plus the vertical
/// segment `arg⟨φ(τ)|φ(0)⟩` that carries the end of the lift back to its start.
pub fn close_loop_phase(traj: &Trajectory) -> Result<f64> {
    let distance = state_angle(traj.first(), traj.last())?;
    if distance > LOOP_CLOSURE_TOL {
        return Err(Error::EndpointsNotOnSameRay { distance });
    }
    let open = line_integral(&connection_along(traj)?)?;
    let vertical = dot(traj.last().amplitudes(), traj.first().amplitudes()).arg();
    Ok(wrap_phase(open + vertical))
}

/// `e^{iγ}`.
pub fn holonomy_element(gamma: f64) -> C64 {
    C64::from_polar(1.0, gamma)
}

fn check_unit(psi: &StateVector) -> Result<()> {
    if !psi.is_unit(1e-10) {
        return Err(Error::NotNormalized { norm: psi.norm() });
    }
    Ok(())
}

fn check_tangent(psi: &StateVector, x: &[C64]) -> Result<()> {
    if x.len() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: psi.dim(),
            found: x.len(),
        });
    }
    Ok(())
}

/// `⟨ψ|X⟩ = 0` up to `tol` in both real and imaginary parts.
///
/// Tangent vectors need not be non-zero, so `x` is a plain amplitude slice.
pub fn is_horizontal(psi: &StateVector, x: &[C64], tol: f64) -> Result<bool> {
    check_unit(psi)?;
    check_tangent(psi, x)?;
    let z = dot(psi.amplitudes(), x);
    Ok(z.re.abs() <= tol && z.im.abs() <= tol)
}

/// The vertical part `i·Im⟨ψ|X⟩·ψ` of a tangent vector.
pub fn vertical_component(psi: &StateVector, x: &[C64]) -> Result<Vec<C64>> {
    check_unit(psi)?;
    check_tangent(psi, x)?;
    let lambda = dot(psi.amplitudes(), x).im;
    let factor = C64::new(0.0, lambda);
    Ok(psi.amplitudes().iter().map(|z| z * factor).collect())
}

/// Project an arbitrary vector onto the tangent space of the unit sphere at `ψ`
/// by removing the real radial part `Re⟨ψ|X⟩ ψ`.
pub fn tangential_part(psi: &StateVector, x: &[C64]) -> Result<Vec<C64>> {
    check_unit(psi)?;
    check_tangent(psi, x)?;
    let radial = dot(psi.amplitudes(), x).re;
    Ok(x.iter()
        .zip(psi.amplitudes())
        .map(|(xi, pi)| xi - pi * radial)
        .collect())
}

/// Loop phase `arg(⟨v₁|v₂⟩⟨v₂|v₃⟩⟨v₃|v₁⟩)` of one triangle.
pub(crate) fn triangle_phase(a: &StateVector, b: &StateVector, c: &StateVector) -> C64 {
    let (a, b, c) = (a.amplitudes(), b.amplitudes(), c.amplitudes());
    dot(a, b) * dot(b, c) * dot(c, a)
}

/// Flux of the curvature through a triangulated surface: the sum of the
/// triangle loop phases in fixed triangle order, signed by the patch orientation.
pub fn curvature_flux(patch: &SurfacePatch) -> Result<f64> {
    let sign = match patch.orientation() {
        Orientation::Positive => 1.0,
        Orientation::Negative => -1.0,
    };
    let verts = patch.vertices();
    let mut total = 0.0;
    for (t, tri) in patch.triangles().iter().enumerate() {
        let [a, b, c] = tri.map(|i| verts[i].representative());
        for (p, q) in [(a, b), (b, c), (c, a)] {
            if dot(p.amplitudes(), q.amplitudes()).norm() <= TRIANGLE_OVERLAP_TOL {
                return Err(Error::OrthogonalTriangleVertices { triangle: t });
            }
        }
        total += triangle_phase(a, b, c).arg();
    }
    Ok(sign * total)
}

/// `|close_loop_phase(traj) − curvature_flux(patch)|` reduced to `[0, π]`.
///
/// Every boundary vertex of the patch must lie within [`BOUNDARY_TOL`] of some
/// sample of the loop.
pub fn stokes_residual(traj: &Trajectory, patch: &SurfacePatch) -> Result<f64> {
    let rays: Vec<_> = traj.states().iter().map(project).collect();
    for v in patch.boundary_vertices() {
        let vertex = &patch.vertices()[v];
        let mut nearest = f64::INFINITY;
        for r in &rays {
            nearest = nearest.min(ray_distance(vertex, r)?);
        }
        if nearest > BOUNDARY_TOL {
            return Err(Error::BoundaryMismatch {
                vertex: v,
                distance: nearest,
            });
        }
    }
    let loop_phase = close_loop_phase(traj)?;
    Ok(phase_distance(loop_phase, curvature_flux(patch)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::linspace;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn psi0() -> StateVector {
        StateVector::from_pairs(&[(0.6, 0.0), (0.0, 0.8)]).unwrap()
    }

    #[test]
    fn constant_curve_has_zero_connection() {
        let traj = Trajectory::sample(linspace(0.0, 1.0, 50), |_| Ok(psi0())).unwrap();
        let conn = connection_along(&traj).unwrap();
        assert!(conn.values().iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn phase_rotation_has_unit_connection_at_any_scale() {
        for scale in [1.0, 2.0] {
            let base = psi0().scaled(C64::new(scale, 0.0)).unwrap();
            let traj =
                Trajectory::sample(linspace(0.0, 1.0, 1000), |s| Ok(base.with_phase(s))).unwrap();
            let conn = connection_along(&traj).unwrap();
            assert!(conn.values().iter().all(|v| (v - 1.0).abs() <= 1e-6));
        }
    }

    #[test]
    fn gauge_transform_examples() {
        let traj = Trajectory::sample(linspace(0.0, 1.0, 20), |s| {
            StateVector::from_pairs(&[(1.0, s), (s * s, 0.5)])
        })
        .unwrap();
        let same = gauge_transform(&traj, |_| 0.0).unwrap();
        assert_eq!(same.states(), traj.states());
        let neg = gauge_transform(&traj, |_| PI).unwrap();
        for (a, b) in neg.states().iter().zip(traj.states()) {
            let flipped = b.scaled(C64::new(-1.0, 0.0)).unwrap();
            assert!(a.max_abs_diff(&flipped) < 1e-15);
        }
        assert!(matches!(
            gauge_transform(&traj, |_| f64::NAN),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn line_integral_examples() {
        let zeros = ConnectionSamples::new(linspace(0.0, 1.0, 11), vec![0.0; 11]).unwrap();
        assert_eq!(line_integral(&zeros).unwrap(), 0.0);
        let ones = ConnectionSamples::new(linspace(0.0, 1.0, 11), vec![1.0; 11]).unwrap();
        assert!((line_integral(&ones).unwrap() - 1.0).abs() < 1e-15);
        let traj =
            Trajectory::sample(linspace(0.0, 1.0, 2000), |s| Ok(psi0().with_phase(s * s))).unwrap();
        let total = line_integral(&connection_along(&traj).unwrap()).unwrap();
        assert!((total - 1.0).abs() < 1e-6);
        let short = ConnectionSamples::new(vec![0.0, 1.0], vec![1.0, 1.0]).unwrap();
        assert!(matches!(
            line_integral(&short),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn close_loop_of_vertical_path_is_zero() {
        // Going once around the fibre: open integral 2π, vertical term 0.
        let traj = Trajectory::sample(linspace(0.0, 2.0 * PI, 2000), |s| Ok(psi0().with_phase(s)))
            .unwrap();
        let g = close_loop_phase(&traj).unwrap();
        assert!(phase_distance(g, 0.0) < 1e-8, "{g}");
    }

    #[test]
    fn open_curve_rejected_by_close_loop() {
        let traj = Trajectory::sample(linspace(0.0, 1.0, 10), |s| {
            StateVector::from_reals(&[s.cos(), s.sin()])
        })
        .unwrap();
        assert!(matches!(
            close_loop_phase(&traj),
            Err(Error::EndpointsNotOnSameRay { .. })
        ));
    }

    #[test]
    fn holonomy_examples() {
        assert_eq!(holonomy_element(0.0), C64::new(1.0, 0.0));
        assert!((holonomy_element(PI) - C64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((holonomy_element(-FRAC_PI_2) - C64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((holonomy_element(1.234).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn horizontality_examples() {
        let e0 = StateVector::basis(2, 0).unwrap();
        let c = |re, im| C64::new(re, im);
        assert!(is_horizontal(&e0, &[c(0.0, 0.0), c(1.0, 0.0)], 1e-12).unwrap());
        assert!(!is_horizontal(&e0, &[c(0.0, 1.0), c(0.0, 0.0)], 1e-12).unwrap());
        assert!(!is_horizontal(&e0, &[c(0.5, 0.0), c(1.0, 0.0)], 1e-12).unwrap());
        let unnormalised = StateVector::from_reals(&[2.0, 0.0]).unwrap();
        assert!(matches!(
            is_horizontal(&unnormalised, &[c(0.0, 0.0), c(1.0, 0.0)], 1e-12),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn vertical_component_examples() {
        let c = |re, im| C64::new(re, im);
        let e0 = StateVector::basis(2, 0).unwrap();
        let v = vertical_component(&e0, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(v.iter().all(|z| z.norm() == 0.0));
        let psi = psi0();
        let x: Vec<C64> = psi.amplitudes().iter().map(|z| z * c(0.0, 3.0)).collect();
        let v = vertical_component(&psi, &x).unwrap();
        for (a, b) in v.iter().zip(&x) {
            assert!((a - b).norm() < 1e-14);
        }
        let v = vertical_component(&e0, &[c(0.0, 2.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(v, vec![c(0.0, 2.0), c(0.0, 0.0)]);
    }

    #[test]
    fn coarse_sampling_falls_back_to_amplitude_differences() {
        // phase steps of 1.8 rad exceed the phase-based stencil's range
        let grid = linspace(0.0, 9.0, 6);
        let traj = Trajectory::sample(grid.clone(), |s| Ok(psi0().with_phase(s))).unwrap();
        let values = connection_along(&traj).unwrap();
        assert!(values.values().iter().all(|v| v.is_finite()));
        let fine =
            Trajectory::sample(linspace(0.0, 9.0, 600), |s| Ok(psi0().with_phase(s))).unwrap();
        for v in connection_along(&fine).unwrap().values() {
            assert!((v - 1.0).abs() < 1e-10);
        }
    }
}
