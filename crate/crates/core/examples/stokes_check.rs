//! Loop phase against curvature flux on the Bloch sphere.
//!
//! The phase picked up around a closed loop equals the flux of the curvature
//! through any surface it bounds: half the enclosed solid angle for spin-½.
//!
//! ```bash
//! cargo run --example stokes_check
//! ```

use std::f64::consts::PI;

use geophase::connection::{close_loop_phase, curvature_flux, stokes_residual};
use geophase::surface::{bloch_latitude_loop, bloch_polygon_loop, SurfacePatch};

fn main() -> geophase::Result<()> {
    let corners = [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
    println!(
        "{:>10} {:>6} {:>14} {:>14} {:>14} {:>10}",
        "patch", "level", "loop", "flux", "excess/2", "residual"
    );
    for level in [4, 16, 64] {
        let patch = SurfacePatch::bloch_triangle(corners[0], corners[1], corners[2], level)?;
        let lp = bloch_polygon_loop(&corners, 1366)?;
        println!(
            "{:>10} {level:>6} {:>14.10} {:>14.10} {:>14.10} {:>10.2e}",
            "octant",
            close_loop_phase(&lp)?,
            curvature_flux(&patch)?,
            PI / 4.0,
            stokes_residual(&lp, &patch)?
        );
    }
    for theta in [PI / 4.0, PI / 2.0, 2.0 * PI / 3.0] {
        let patch = SurfacePatch::bloch_cap(theta, 64, 256)?;
        let lp = bloch_latitude_loop(theta, 4097)?;
        println!(
            "{:>10} {:>6} {:>14.10} {:>14.10} {:>14.10} {:>10.2e}",
            format!("cap {:.3}", theta),
            64,
            close_loop_phase(&lp)?,
            curvature_flux(&patch)?,
            PI * (1.0 - theta.cos()),
            stokes_residual(&lp, &patch)?
        );
    }
    Ok(())
}
