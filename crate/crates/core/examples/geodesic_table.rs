//! Geodesic between two rays: coefficients, normalisation and overlaps.
//!
//! Prints a table of the interpolation coefficients along the arc and checks
//! that the phase-aligned points stay unit and overlap as `cos(θ₁ − θ₂)`.
//!
//! ```bash
//! cargo run --example geodesic_table
//! ```

use geophase::geodesic::{geodesic_between, horizontal_overlap, normalization_residual};
use geophase::numerics::linspace;
use geophase::sampling::{random_pair, seeded_rng};

fn main() -> geophase::Result<()> {
    let (p, q) = random_pair(&mut seeded_rng(11), 3, 0.3, 0.9);
    let arc = geodesic_between(&p, &q)?;
    println!(
        "a = {:.12}  theta0 = {:.12}  beta = {:.12}",
        arc.a(),
        arc.theta0(),
        arc.phase_offset()
    );
    println!("{:>6} {:>14} {:>14} {:>14}", "s", "xi1", "xi2", "norm-1");
    for s in linspace(0.0, 1.0, 11) {
        let (x1, x2) = arc.coefficients(s * arc.theta0());
        let point = arc.horizontal_point(s)?;
        println!(
            "{s:>6.2} {x1:>14.10} {x2:>14.10} {:>14.2e}",
            point.norm() - 1.0
        );
    }
    println!(
        "max normalisation residual: {:.2e}",
        normalization_residual(&arc, 1001)?
    );
    let (s1, s2) = (0.2, 0.75);
    let z = horizontal_overlap(&arc, s1, s2)?;
    let expected = ((s1 - s2) * arc.theta0()).cos();
    println!(
        "<psi(0.2)|psi(0.75)> = {:.14} {:+.2e}i, cos = {:.14}",
        z.re, z.im, expected
    );
    Ok(())
}
