//! Pancharatnam's relative phase recovered as a line integral.
//!
//! Two non-orthogonal states are joined by the shortest geodesic on the ray
//! space; integrating the connection along it gives back `arg⟨φ₁|φ₂⟩`.
//!
//! ```bash
//! cargo run --example pancharatnam
//! ```

use geophase::geodesic::pancharatnam_integral;
use geophase::sampling::{random_pair, seeded_rng};
use geophase::state::{in_phase, inner, phase_distance, relative_phase, StateVector};
use geophase::Complex64;

fn main() -> geophase::Result<()> {
    // (1, 0) against e^{iπ/3}(1, 1)/√2
    let p = StateVector::from_reals(&[1.0, 0.0])?;
    let q = StateVector::from_reals(&[1.0, 1.0])?
        .normalized()
        .with_phase(std::f64::consts::FRAC_PI_3);
    let beta = pancharatnam_integral(&p, &q, 2000)?;
    println!(
        "arg<p|q> = {:.12}   integral = {:.12}",
        relative_phase(&p, &q)?,
        beta
    );
    println!(
        "in phase after removing beta: {}",
        in_phase(&p, &q.with_phase(-beta), 1e-8)?
    );

    println!(
        "\n{:>3} {:>14} {:>14} {:>10}",
        "n", "|overlap|", "arg", "error"
    );
    let mut rng = seeded_rng(0);
    for n in 2..=8 {
        let (a, b) = random_pair(&mut rng, n, 0.05, 0.95);
        let z: Complex64 = inner(&a, &b)?;
        let integral = pancharatnam_integral(&a, &b, 2000)?;
        println!(
            "{n:>3} {:>14.10} {:>14.10} {:>10.2e}",
            z.norm(),
            z.arg(),
            phase_distance(integral, z.arg())
        );
    }
    Ok(())
}
