//! Parallel transport by removing the dynamical phase.
//!
//! A random time-dependent Hermitian generator `H₀ + cos t·H₁` is integrated;
//! after multiplying by `exp(i∫h)` the curve is horizontal, and the residual
//! connection falls with the step size.
//!
//! ```bash
//! cargo run --example parallel_transport
//! ```

use geophase::evolution::{integrate_schrodinger, remove_dynamical_phase, transport_residual};
use geophase::sampling::{random_hermitian, random_unit_state, seeded_rng};
use geophase::{Complex64, GeneratorSpec};

fn main() -> geophase::Result<()> {
    let mut rng = seeded_rng(42);
    for n in [2, 3, 4] {
        let h0 = random_hermitian(&mut rng, n, 1.0);
        let h1 = random_hermitian(&mut rng, n, 0.5);
        let gen = GeneratorSpec::from_fn(n, true, move |t| {
            h0.add(&h1.scale(Complex64::new(t.cos(), 0.0)))
        });
        let psi0 = random_unit_state(&mut rng, n);
        print!("n = {n}:");
        for steps in [1000, 2000, 4000, 8000] {
            let traj = integrate_schrodinger(&gen, &psi0, 10.0, steps)?;
            let phi = remove_dynamical_phase(&traj, &gen)?;
            let before = transport_residual(&traj)?;
            let after = transport_residual(&phi)?;
            print!("  [{steps}] {before:.2e} -> {after:.2e}");
        }
        println!();
    }
    Ok(())
}
