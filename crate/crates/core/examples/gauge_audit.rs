//! Gauge behaviour of the connection.
//!
//! Re-phasing a curve by `e^{iα(s)}` shifts the connection by `α'(s)`. Open
//! integrals move by `α(end) − α(start)`. The closed-loop phase does not move
//! at all, provided the gauge is single-valued around the loop.
//!
//! ```bash
//! cargo run --example gauge_audit
//! ```

use std::f64::consts::PI;

use geophase::cli::tasks::gauge_audit;
use geophase::connection::{close_loop_phase, connection_along, gauge_transform};
use geophase::sampling::{seeded_rng, RandomGauge};
use geophase::surface::bloch_latitude_loop;

fn main() -> geophase::Result<()> {
    let theta = PI / 3.0;
    let lp = bloch_latitude_loop(theta, 2000)?;
    println!(
        "loop phase on the θ = π/3 circle: {:.12}",
        close_loop_phase(&lp)?
    );

    // pointwise gauge law on one random gauge
    let g = RandomGauge::draw(&mut seeded_rng(1), 0.0, 2.0 * PI, 3);
    let before = connection_along(&lp)?;
    let after = connection_along(&gauge_transform(&lp, |s| g.value(s))?)?;
    let worst = before
        .params()
        .iter()
        .zip(before.values().iter().zip(after.values()))
        .map(|(&s, (a, b))| (b - a - g.derivative(s)).abs())
        .fold(0.0, f64::max);
    println!("winding {}: max |Â − A − α'| = {worst:.2e}", g.winding());

    for seed in [0, 1, 2] {
        let (loop_dev, open_dev, gamma) = gauge_audit(&lp, seed, 100)?;
        println!("seed {seed}: gamma = {gamma:.12}, loop deviation {loop_dev:.2e}, open-shift error {open_dev:.2e}");
    }
    Ok(())
}
