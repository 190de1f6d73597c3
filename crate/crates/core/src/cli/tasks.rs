//! Task runners. Each returns a report and, optionally, a sampled curve for
//! the CSV table.
//!
//! Report fields by task (angles in radians, reduced to `(−π, π]` unless
//! marked otherwise):
//!
//! - `aa_phase`: `task`, `dimension`, `total_phase`, `dynamical_phase`,
//!   `geometric_phase`, `holonomy` (`[re, im]`), `cyclic_residual`,
//!   `transport_residual`, `steps`, `t_final`, then
//!   `dynamical_phase_unwrapped` (the raw `∫h dt`). Samples: the
//!   transported curve over `t`.
//! - `pancharatnam`: `task`, `dimension`, `beta` (the line integral along the
//!   geodesic), `arg_overlap`, `abs_error`, `theta0`, `samples`. Samples: the
//!   geodesic in the linear gauge.
//! - `geodesic_table`: `task`, `dimension`, `a`, `theta0`, `beta`,
//!   `normalization_residual`, `samples`. Samples: the geodesic.
//! - `stokes_check`: `task`, `dimension`, `shape`, `refinement`,
//!   `loop_phase`, `curvature_flux` (not reduced), `expected_flux` (not
//!   reduced), `residual`, `triangles`, `boundary_samples`. Samples: the
//!   boundary loop.
//! - `gauge_audit`: `task`, `dimension`, `seed`, `trials`,
//!   `reference_loop_phase`, `max_loop_gamma_deviation`,
//!   `max_open_shift_deviation`, `samples`. Samples: the reference loop.

use std::f64::consts::PI;

use crate::cli::config::{PatchShape, RunConfig, Task};
use crate::cli::output::Report;
use crate::connection::{
    close_loop_phase, connection_along, curvature_flux, gauge_transform, line_integral,
    stokes_residual,
};
use crate::error::{Error, Result};
use crate::evolution::aa_phase_with_trajectory;
use crate::geodesic::{geodesic_between, normalization_residual, pancharatnam_integral};
use crate::sampling::{seeded_rng, RandomGauge};
use crate::state::{inner, phase_distance, wrap_phase};
use crate::surface::{bloch_latitude_loop, bloch_polygon_loop, SurfacePatch};
use crate::trajectory::Trajectory;

/// Polar angle of the loop audited when `gauge_audit` has no generator.
pub const AUDIT_LOOP_THETA: f64 = PI / 3.0;

/// Fourier modes per random gauge in `gauge_audit`.
pub const AUDIT_GAUGE_MODES: usize = 3;

pub struct Outcome {
    pub report: Report,
    pub samples: Option<Trajectory>,
}

/// Computational failures carry an [`Error`]; config problems were caught on load.
pub fn run_task(cfg: &RunConfig) -> Result<Outcome> {
    let config_err = |e: crate::cli::config::ConfigError| Error::InvalidParameter(e.to_string());
    let base = Report::new()
        .text("task", cfg.task.as_str())
        .int("dimension", cfg.dimension as i64);
    match cfg.task {
        Task::AaPhase => {
            let gen = cfg.generator_spec().map_err(config_err)?;
            let psi0 = cfg.resolved_initial_state().map_err(config_err)?;
            let t_final = cfg.resolved_t_final().map_err(config_err)?;
            let steps = cfg.time.as_ref().expect("validated").steps;
            let psi0 = psi0.normalized();
            let (r, phi) =
                aa_phase_with_trajectory(&gen, &psi0, t_final, steps, cfg.tolerances.cyclic_tol)?;
            let report = base
                .float("total_phase", r.total_phase)
                .float("dynamical_phase", wrap_phase(r.dynamical_phase))
                .float("geometric_phase", r.geometric_phase)
                .complex("holonomy", r.holonomy)
                .float("cyclic_residual", r.cyclic_residual)
                .float("transport_residual", r.max_transport_residual)
                .int("steps", steps as i64)
                .float("t_final", t_final)
                .float("dynamical_phase_unwrapped", r.dynamical_phase);
            Ok(Outcome {
                report,
                samples: Some(phi),
            })
        }
        Task::Pancharatnam => {
            let (p, q) = cfg.endpoint_states().map_err(config_err)?;
            let (p, q) = (p.normalized(), q.normalized());
            let samples = cfg.sample_count();
            let beta = pancharatnam_integral(&p, &q, samples)?;
            let arg = inner(&p, &q)?.arg();
            let arc = geodesic_between(&p, &q)?;
            let report = base
                .float("beta", beta)
                .float("arg_overlap", arg)
                .float("abs_error", phase_distance(beta, arg))
                .float("theta0", arc.theta0())
                .int("samples", samples as i64);
            Ok(Outcome {
                report,
                samples: Some(arc.sample(samples)?),
            })
        }
        Task::GeodesicTable => {
            let (p, q) = cfg.endpoint_states().map_err(config_err)?;
            let arc = geodesic_between(&p.normalized(), &q.normalized())?;
            let samples = cfg.sample_count();
            let report = base
                .float("a", arc.a())
                .float("theta0", arc.theta0())
                .float("beta", arc.phase_offset())
                .float(
                    "normalization_residual",
                    normalization_residual(&arc, samples)?,
                )
                .int("samples", samples as i64);
            Ok(Outcome {
                report,
                samples: Some(arc.sample(samples)?),
            })
        }
        Task::StokesCheck => {
            let patch_cfg = cfg.patch.as_ref().expect("validated");
            let n = patch_cfg.refinement;
            let b = patch_cfg.boundary_samples;
            let (shape, patch, lp, expected) = match patch_cfg.shape {
                PatchShape::Octant => {
                    let corners = [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
                    let patch =
                        SurfacePatch::bloch_triangle(corners[0], corners[1], corners[2], n)?;
                    let per_edge = (b - 1) / 3 + 1;
                    (
                        "octant",
                        patch,
                        bloch_polygon_loop(&corners, per_edge)?,
                        PI / 4.0,
                    )
                }
                PatchShape::Hemisphere => {
                    let patch = SurfacePatch::bloch_cap(PI / 2.0, n, 4 * n)?;
                    let lp = bloch_latitude_loop(PI / 2.0, cap_loop_samples(b, 4 * n))?;
                    ("hemisphere", patch, lp, PI)
                }
                PatchShape::Cap => {
                    let th = patch_cfg.theta_max.expect("validated");
                    let patch = SurfacePatch::bloch_cap(th, n, 4 * n)?;
                    let lp = bloch_latitude_loop(th, cap_loop_samples(b, 4 * n))?;
                    ("cap", patch, lp, PI * (1.0 - th.cos()))
                }
            };
            let residual = stokes_residual(&lp, &patch)?;
            let report = base
                .text("shape", shape)
                .int("refinement", n as i64)
                .float("loop_phase", close_loop_phase(&lp)?)
                .float("curvature_flux", curvature_flux(&patch)?)
                .float("expected_flux", expected)
                .float("residual", residual)
                .int("triangles", patch.triangles().len() as i64)
                .int("boundary_samples", lp.len() as i64);
            Ok(Outcome {
                report,
                samples: Some(lp),
            })
        }
        Task::GaugeAudit => {
            let reference = if cfg.generator.is_some() {
                let gen = cfg.generator_spec().map_err(config_err)?;
                let psi0 = cfg
                    .resolved_initial_state()
                    .map_err(config_err)?
                    .normalized();
                let t_final = cfg.resolved_t_final().map_err(config_err)?;
                let steps = cfg.time.as_ref().expect("validated").steps;
                aa_phase_with_trajectory(&gen, &psi0, t_final, steps, cfg.tolerances.cyclic_tol)?.1
            } else {
                bloch_latitude_loop(AUDIT_LOOP_THETA, cfg.sample_count())?
            };
            let (max_loop, max_open, gamma) = gauge_audit(&reference, cfg.seed, cfg.trial_count())?;
            let report = base
                .int("seed", cfg.seed as i64)
                .int("trials", cfg.trial_count() as i64)
                .float("reference_loop_phase", gamma)
                .float("max_loop_gamma_deviation", max_loop)
                .float("max_open_shift_deviation", max_open)
                .int("samples", reference.len() as i64);
            Ok(Outcome {
                report,
                samples: Some(reference),
            })
        }
    }
}

/// Round a loop size up so every cap boundary vertex is also a loop sample.
fn cap_loop_samples(requested: usize, sectors: usize) -> usize {
    (requested - 1).div_ceil(sectors) * sectors + 1
}

/// Apply `trials` seeded single-valued gauges to a closed lift.
///
/// Returns the largest change of [`close_loop_phase`] (mod 2π), the largest
/// error of the open integral shift against `α(end) − α(start)`, and the
/// reference loop phase.
pub fn gauge_audit(reference: &Trajectory, seed: u64, trials: usize) -> Result<(f64, f64, f64)> {
    let gamma = close_loop_phase(reference)?;
    let open = line_integral(&connection_along(reference)?)?;
    let (s0, s1) = (reference.times()[0], *reference.times().last().unwrap());
    let mut rng = seeded_rng(seed);
    let (mut max_loop, mut max_open) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        let g = RandomGauge::draw(&mut rng, s0, s1, AUDIT_GAUGE_MODES);
        let gauged = gauge_transform(reference, |s| g.value(s))?;
        max_loop = max_loop.max(phase_distance(close_loop_phase(&gauged)?, gamma));
        let shifted = line_integral(&connection_along(&gauged)?)?;
        let expected = g.value(s1) - g.value(s0);
        max_open = max_open.max((shifted - open - expected).abs());
    }
    Ok((max_loop, max_open, gamma))
}
