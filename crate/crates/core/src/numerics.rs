//! Quadrature and finite-difference rules on (possibly non-uniform) grids.
//!
//! All weights come from integrating or differentiating the Lagrange
//! interpolant through a handful of neighbouring nodes, so the same code
//! serves uniform and non-uniform grids.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Nodes used by the difference stencil (fourth-order accurate).
const STENCIL: usize = 5;

/// Three-point Gauss–Legendre rule on `[-1, 1]`; exact for degree ≤ 5.
const GAUSS3: [(f64, f64); 3] = [
    (-0.774_596_669_241_483_4, 5.0 / 9.0),
    (0.0, 8.0 / 9.0),
    (0.774_596_669_241_483_4, 5.0 / 9.0),
];

fn lagrange_basis(nodes: &[f64], j: usize, x: f64) -> f64 {
    nodes
        .iter()
        .enumerate()
        .filter(|&(m, _)| m != j)
        .map(|(_, &xm)| (x - xm) / (nodes[j] - xm))
        .product()
}

/// Weights `w` with `∫ₐᵇ p ≈ Σ wⱼ f(xⱼ)` for the interpolant `p` through `nodes`.
fn integral_weights(nodes: &[f64], a: f64, b: f64) -> Vec<f64> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    (0..nodes.len())
        .map(|j| {
            GAUSS3
                .iter()
                .map(|&(g, w)| w * lagrange_basis(nodes, j, mid + half * g))
                .sum::<f64>()
                * half
        })
        .collect()
}

/// Weights for `p'(x)` where `p` interpolates at `nodes`.
fn derivative_weights(nodes: &[f64], x: f64) -> Vec<f64> {
    let k = nodes.len();
    (0..k)
        .map(|j| {
            let mut total = 0.0;
            for m in (0..k).filter(|&m| m != j) {
                let mut term = 1.0 / (nodes[j] - nodes[m]);
                for l in (0..k).filter(|&l| l != j && l != m) {
                    term *= (x - nodes[l]) / (nodes[j] - nodes[l]);
                }
                total += term;
            }
            total
        })
        .collect()
}

pub(crate) fn check_grid(xs: &[f64], min_len: usize) -> Result<()> {
    if xs.len() < min_len {
        return Err(Error::TooFewSamples {
            needed: min_len,
            got: xs.len(),
        });
    }
    if let Some(i) = xs.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite(format!("grid point {i}")));
    }
    if let Some(i) = xs.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::NonMonotonicGrid(i + 1));
    }
    Ok(())
}

fn weighted<T>(xs: &[f64], ys: &[T], lo: usize, hi: usize, a: f64, b: f64) -> T
where
    T: Copy + std::ops::Mul<f64, Output = T> + std::iter::Sum<T>,
{
    integral_weights(&xs[lo..=hi], a, b)
        .into_iter()
        .zip(&ys[lo..=hi])
        .map(|(w, &y)| y * w)
        .sum()
}

/// Composite Simpson integral of `ys` over `xs`.
///
/// Interval pairs use Simpson's rule; an odd trailing interval is absorbed by
/// the three-eighths rule over the last three intervals (trapezoid when the
/// grid has a single interval).
pub fn simpson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    Ok(*cumulative_simpson(xs, ys)?.last().unwrap())
}

/// Running integral `I_k = ∫_{x₀}^{x_k}` under the same rule as [`simpson`].
///
/// Even indices carry the composite Simpson value. Odd indices close with a
/// three-eighths panel over the last three intervals so that the running
/// integral keeps fourth-order accuracy at every node; the first odd node
/// integrates the cubic through the first four nodes over its interval.
pub fn cumulative_simpson(xs: &[f64], ys: &[f64]) -> Result<Vec<f64>> {
    check_grid(xs, 2)?;
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            found: ys.len(),
        });
    }
    let n = xs.len();
    let mut out = vec![0.0; n];
    if n == 2 {
        out[1] = 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]);
        return Ok(out);
    }
    for i in 1..n {
        out[i] = if i % 2 == 0 {
            out[i - 2] + weighted(xs, ys, i - 2, i, xs[i - 2], xs[i])
        } else if i >= 3 {
            out[i - 3] + weighted(xs, ys, i - 3, i, xs[i - 3], xs[i])
        } else {
            // i == 1
            let hi = n.min(4) - 1;
            weighted(xs, ys, 0, hi, xs[0], xs[1])
        };
    }
    Ok(out)
}

/// Finite-difference derivative of complex samples along a grid.
///
/// Interior nodes use the centred five-point stencil; the two nodes nearest
/// each end use the five-point one-sided stencil. Grids with fewer than five
/// nodes fall back to the full-grid interpolant.
pub fn derivative(xs: &[f64], ys: &[Vec<C64>]) -> Result<Vec<Vec<C64>>> {
    check_grid(xs, 3)?;
    Ok((0..xs.len())
        .map(|i| {
            let (lo, w) = stencil(xs, i);
            let dim = ys[i].len();
            let mut d = vec![C64::new(0.0, 0.0); dim];
            for (wj, y) in w.iter().zip(&ys[lo..]) {
                for (acc, z) in d.iter_mut().zip(y) {
                    *acc += z * wj;
                }
            }
            d
        })
        .collect())
}

/// First node and weights of the difference stencil used at node `i`
/// (grid already checked, at least 3 nodes).
pub(crate) fn stencil(xs: &[f64], i: usize) -> (usize, Vec<f64>) {
    let n = xs.len();
    let k = STENCIL.min(n);
    let lo = i.saturating_sub(k / 2).min(n - k);
    (lo, derivative_weights(&xs[lo..lo + k], xs[i]))
}

/// Uniform grid of `count` points spanning `[a, b]`.
pub fn linspace(a: f64, b: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![a];
    }
    let h = (b - a) / (count - 1) as f64;
    (0..count)
        .map(|i| if i + 1 == count { b } else { a + h * i as f64 })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_weights_match_textbook_values() {
        let w = integral_weights(&[0.0, 1.0, 2.0], 0.0, 2.0);
        for (a, b) in w.iter().zip([1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0]) {
            assert!((a - b).abs() < 1e-15);
        }
        let w = integral_weights(&[0.0, 1.0, 2.0, 3.0], 0.0, 3.0);
        for (a, b) in w.iter().zip([3.0 / 8.0, 9.0 / 8.0, 9.0 / 8.0, 3.0 / 8.0]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn cumulative_exact_on_quadratics_nonuniform() {
        let xs = [0.0, 0.1, 0.35, 0.4, 0.9, 1.3, 2.0];
        let f = |x: f64| 1.0 - 2.0 * x + 3.0 * x * x;
        let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        let prim = |x: f64| x - x * x + x * x * x;
        let cum = cumulative_simpson(&xs, &ys).unwrap();
        for (x, c) in xs.iter().zip(&cum) {
            assert!((c - prim(*x)).abs() < 1e-13, "{x}: {c} vs {}", prim(*x));
        }
    }

    #[test]
    fn cumulative_exact_on_cubics_uniform() {
        let xs = linspace(0.0, 2.0, 8);
        let f = |x: f64| 1.0 - 2.0 * x + 3.0 * x * x - 0.5 * x * x * x;
        let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        let prim = |x: f64| x - x * x + x * x * x - 0.125 * x.powi(4);
        let cum = cumulative_simpson(&xs, &ys).unwrap();
        for (x, c) in xs.iter().zip(&cum) {
            assert!((c - prim(*x)).abs() < 1e-13, "{x}: {c} vs {}", prim(*x));
        }
    }

    #[test]
    fn two_point_grid_is_trapezoid() {
        assert_eq!(simpson(&[0.0, 2.0], &[1.0, 3.0]).unwrap(), 4.0);
    }

    #[test]
    fn derivative_exact_on_quartics() {
        let xs = linspace(-1.0, 2.0, 9);
        let f = |x: f64| C64::new(x.powi(4) - x, 2.0 * x * x);
        let df = |x: f64| C64::new(4.0 * x.powi(3) - 1.0, 4.0 * x);
        let ys: Vec<Vec<C64>> = xs.iter().map(|&x| vec![f(x)]).collect();
        let d = derivative(&xs, &ys).unwrap();
        for (x, di) in xs.iter().zip(&d) {
            assert!((di[0] - df(*x)).norm() < 1e-11);
        }
    }

    #[test]
    fn bad_grids_rejected() {
        assert!(matches!(
            simpson(&[0.0, 1.0, 1.0], &[0.0; 3]),
            Err(Error::NonMonotonicGrid(2))
        ));
        assert!(matches!(
            simpson(&[0.0], &[0.0]),
            Err(Error::TooFewSamples { .. })
        ));
    }
}
