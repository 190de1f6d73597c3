//! Aharonov–Anandan phase of a spin-½ dragged around a cone by a rotating field.
//!
//! For each cone angle the adapted state returns to its ray after one period;
//! the geometric phase is minus half the solid angle swept, `−π(1 − cos θ_c)`
//! mod 2π, whatever the field strength.
//!
//! ```bash
//! cargo run --example aa_cone_phase
//! ```

use std::f64::consts::PI;

use geophase::evolution::{aa_phase, CYCLIC_TOL};
use geophase::presets::SpinHalfRotatingField;
use geophase::state::{phase_distance, wrap_phase};

fn main() -> geophase::Result<()> {
    println!(
        "{:>8} {:>6} {:>14} {:>14} {:>14} {:>10}",
        "theta_c", "B", "total", "dynamical", "geometric", "error"
    );
    for theta_c in [PI / 6.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, 0.1] {
        for strength in [0.5, 1.0, 3.0] {
            let field = SpinHalfRotatingField::new(strength, theta_c, 1.0)?;
            let r = aa_phase(
                &field.generator(),
                &field.adapted_state(),
                field.period(),
                4000,
                CYCLIC_TOL,
            )?;
            let expected = wrap_phase(-PI * (1.0 - theta_c.cos()));
            println!(
                "{theta_c:>8.4} {strength:>6.2} {:>14.10} {:>14.10} {:>14.10} {:>10.2e}",
                r.total_phase,
                r.dynamical_phase,
                r.geometric_phase,
                phase_distance(r.geometric_phase, expected)
            );
        }
    }
    Ok(())
}
