//! Geometric phases of finite-dimensional quantum systems.
//!
//! The crate computes the Aharonov–Anandan phase of cyclic Schrödinger
//! evolutions and the Pancharatnam relative phase between states, and checks
//! the identities linking them numerically:
//!
//! - [`state`]: vectors, rays, relative phase and the "in phase" relation.
//! - [`evolution`]: Runge–Kutta integration, dynamical-phase removal and the
//!   Aharonov–Anandan phase of a cyclic run.
//! - [`connection`]: the natural connection along sampled curves, its gauge
//!   behaviour, loop phases, holonomy and curvature flux through
//!   [`surface`] patches.
//! - [`geodesic`]: great-circle geodesics between rays and the Pancharatnam
//!   phase as a line integral along them.
//! - [`cli`]: JSON run configurations, reports and CSV sample tables behind
//!   the `geophase` binary.
//!
//! Each capability has a runnable program under `examples/`:
//!
//! ```bash
//! cargo run --example pancharatnam
//! ```

pub mod cli;
pub mod connection;
pub mod error;
pub mod evolution;
pub mod geodesic;
pub mod matrix;
pub mod numerics;
pub mod presets;
pub mod sampling;
pub mod state;
pub mod surface;
pub mod trajectory;

pub use error::{Error, Result};
pub use evolution::{GeneratorSpec, PhaseReport};
pub use geodesic::GeodesicArc;
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
pub use state::{RayPoint, StateVector};
pub use surface::SurfacePatch;
pub use trajectory::Trajectory;
