//! States, rays and the "in phase" relation.
//!
//! ```bash
//! cargo run --example rays
//! ```

use std::f64::consts::PI;

use geophase::connection::{is_horizontal, tangential_part, vertical_component};
use geophase::state::{in_phase, project, ray_distance, relative_phase, StateVector};
use geophase::Complex64;

fn main() -> geophase::Result<()> {
    let psi = StateVector::from_pairs(&[(0.6, 0.0), (0.0, 0.8)])?;
    let rotated = psi.scaled(Complex64::from_polar(2.5, 0.7))?;
    println!(
        "same ray after scaling: {}",
        project(&psi).approx_eq(&project(&rotated), 1e-12)
    );
    println!("relative phase: {:.12}", relative_phase(&psi, &rotated)?);
    println!(
        "in phase with itself: {}, with rotated: {}",
        in_phase(&psi, &psi, 1e-12)?,
        in_phase(&psi, &rotated, 1e-12)?
    );

    let up = StateVector::from_reals(&[1.0, 0.0])?;
    let plus = StateVector::from_reals(&[1.0, 1.0])?.normalized();
    let down = StateVector::from_reals(&[0.0, 1.0])?;
    println!(
        "ray distance |0>,|+>: {:.12} (π/4 = {:.12})",
        ray_distance(&project(&up), &project(&plus))?,
        PI / 4.0
    );
    println!(
        "ray distance |0>,|1>: {:.12} (π/2 = {:.12})",
        ray_distance(&project(&up), &project(&down))?,
        PI / 2.0
    );

    // split a tangent vector at psi into horizontal and vertical parts
    let x = [Complex64::new(0.3, -0.2), Complex64::new(0.1, 0.4)];
    let t = tangential_part(&psi, &x)?;
    let v = vertical_component(&psi, &t)?;
    let h: Vec<Complex64> = t.iter().zip(&v).map(|(a, b)| a - b).collect();
    println!("vertical part: {v:?}");
    println!("remainder horizontal: {}", is_horizontal(&psi, &h, 1e-12)?);
    Ok(())
}
