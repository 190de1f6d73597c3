//! Seeded random states and generators for property suites and audits.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::ComplexMatrix;
use crate::state::{inner, StateVector};

/// Deterministic generator used everywhere a seed is accepted.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random unit vector in `ℂⁿ`.
pub fn random_unit_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> StateVector {
    loop {
        let amps: Vec<C64> = (0..n).map(|_| gaussian_c64(rng)).collect();
        if let Ok(v) = StateVector::new(amps) {
            return v.normalized();
        }
    }
}

/// Unit pair with `min_overlap ≤ |⟨φ₁|φ₂⟩| ≤ max_overlap`, drawn by rejection.
pub fn random_pair<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    min_overlap: f64,
    max_overlap: f64,
) -> (StateVector, StateVector) {
    loop {
        let a = random_unit_state(rng, n);
        let b = random_unit_state(rng, n);
        let o = inner(&a, &b).expect("same dimension").norm();
        if o >= min_overlap && o <= max_overlap {
            return (a, b);
        }
    }
}

/// Random Hermitian matrix `(G + G†)/2` with complex Gaussian `G`, times `scale`.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> ComplexMatrix {
    let rows: Vec<Vec<C64>> = (0..n)
        .map(|_| (0..n).map(|_| gaussian_c64(rng)).collect())
        .collect();
    let g = ComplexMatrix::from_rows(rows).expect("square");
    g.add(&g.adjoint()).scale(C64::new(0.5 * scale, 0.0))
}

/// Smooth gauge on `[s0, s1]`: a constant, a few Fourier modes and `m` full
/// windings, `α(s) = c + Σₖ (aₖ cos 2πku + bₖ sin 2πku) + 2πm·u` with
/// `u = (s − s0)/(s1 − s0)`. With `m ≠ 0` it changes by `2πm` across the
/// interval, so `e^{iα}` is still single-valued on a loop.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomGauge {
    s0: f64,
    s1: f64,
    offset: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
    winding: i32,
}

impl RandomGauge {
    /// Draw `modes` Fourier pairs with coefficients in `[−1, 1]`, an offset in
    /// `[−π, π]` and a winding number in `−2..=2`.
    pub fn draw<R: Rng + ?Sized>(rng: &mut R, s0: f64, s1: f64, modes: usize) -> Self {
        let offset = rng.gen_range(-PI..=PI);
        let cos = (0..modes).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let sin = (0..modes).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let winding = rng.gen_range(-2..=2);
        Self {
            s0,
            s1,
            offset,
            cos,
            sin,
            winding,
        }
    }

    pub fn winding(&self) -> i32 {
        self.winding
    }

    fn u(&self, s: f64) -> f64 {
        (s - self.s0) / (self.s1 - self.s0)
    }

    pub fn value(&self, s: f64) -> f64 {
        let u = self.u(s);
        let mut a = self.offset + 2.0 * PI * self.winding as f64 * u;
        for (k, (c, d)) in self.cos.iter().zip(&self.sin).enumerate() {
            let w = 2.0 * PI * (k + 1) as f64;
            a += c * (w * u).cos() + d * (w * u).sin();
        }
        a
    }

    /// Analytic `dα/ds`.
    pub fn derivative(&self, s: f64) -> f64 {
        let u = self.u(s);
        let mut d = 2.0 * PI * self.winding as f64;
        for (k, (c, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let w = 2.0 * PI * (k + 1) as f64;
            d += w * (b * (w * u).cos() - c * (w * u).sin());
        }
        d / (self.s1 - self.s0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_draws_repeat() {
        let a = random_unit_state(&mut seeded_rng(7), 4);
        let b = random_unit_state(&mut seeded_rng(7), 4);
        assert_eq!(a, b);
        assert!(a.is_unit(1e-14));
    }

    #[test]
    fn hermitian_draws() {
        let h = random_hermitian(&mut seeded_rng(1), 5, 2.0);
        assert!(h.hermiticity_defect() < 1e-15);
    }

    #[test]
    fn pair_overlap_window() {
        let mut rng = seeded_rng(3);
        for _ in 0..20 {
            let (a, b) = random_pair(&mut rng, 3, 0.2, 0.9);
            let o = inner(&a, &b).unwrap().norm();
            assert!((0.2..=0.9).contains(&o));
        }
    }

    #[test]
    fn gauge_derivative_matches_difference() {
        let g = RandomGauge::draw(&mut seeded_rng(5), 0.5, 2.5, 3);
        let h = 1e-6;
        for s in [0.5, 0.9, 1.7, 2.5] {
            let fd = (g.value(s + h) - g.value(s - h)) / (2.0 * h);
            assert!((fd - g.derivative(s)).abs() < 1e-6);
        }
        let jump = g.value(2.5) - g.value(0.5);
        assert!((jump - 2.0 * PI * g.winding() as f64).abs() < 1e-12);
    }
}
