//! Triangulated surfaces in ray space, plus Bloch-sphere builders for `n = 2`.

use std::collections::HashSet;
use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::connection::TRIANGLE_OVERLAP_TOL;
use crate::error::{Error, Result};
use crate::numerics::linspace;
use crate::state::{dot, project, RayPoint, StateVector};
use crate::trajectory::Trajectory;

/// Winding of a patch. `Positive` keeps the right-hand order of each
/// triangle's vertex list; `Negative` flips every triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
}

/// An oriented triangle mesh whose vertices are rays.
#[derive(Debug, Clone)]
pub struct SurfacePatch {
    vertices: Vec<RayPoint>,
    triangles: Vec<[usize; 3]>,
    orientation: Orientation,
}

impl SurfacePatch {
    /// Validate indices, pairwise non-orthogonality inside each triangle, and
    /// orientability (no directed edge used twice).
    pub fn new(vertices: Vec<RayPoint>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        if let Some(v) = vertices
            .iter()
            .skip(1)
            .find(|v| v.dim() != vertices[0].dim())
        {
            return Err(Error::DimensionMismatch {
                expected: vertices[0].dim(),
                found: v.dim(),
            });
        }
        let mut edges = HashSet::new();
        for (t, tri) in triangles.iter().enumerate() {
            if tri.iter().any(|&i| i >= vertices.len()) {
                return Err(Error::InvalidMesh(format!(
                    "triangle {t} references a missing vertex"
                )));
            }
            for (a, b) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])] {
                let (p, q) = (vertices[a].representative(), vertices[b].representative());
                if dot(p.amplitudes(), q.amplitudes()).norm() <= TRIANGLE_OVERLAP_TOL {
                    return Err(Error::OrthogonalTriangleVertices { triangle: t });
                }
                if a != b && !edges.insert((a, b)) {
                    return Err(Error::InvalidMesh(format!(
                        "edge {a}->{b} traversed twice in the same direction (triangle {t})"
                    )));
                }
            }
        }
        Ok(Self {
            vertices,
            triangles,
            orientation: Orientation::Positive,
        })
    }

    pub fn empty() -> Self {
        Self {
            vertices: Vec::new(),
            triangles: Vec::new(),
            orientation: Orientation::Positive,
        }
    }

    pub fn vertices(&self) -> &[RayPoint] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Same surface with opposite winding.
    pub fn reversed(&self) -> Self {
        let orientation = match self.orientation {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        };
        Self {
            orientation,
            ..self.clone()
        }
    }

    /// Indices of vertices on edges that have no reversed partner.
    pub fn boundary_vertices(&self) -> Vec<usize> {
        let edges: HashSet<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
            .filter(|(a, b)| a != b)
            .collect();
        let mut out: Vec<usize> = edges
            .iter()
            .filter(|(a, b)| !edges.contains(&(*b, *a)))
            .flat_map(|&(a, b)| [a, b])
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        out.sort_unstable();
        out
    }

    /// Geodesic subdivision of the spherical triangle with Bloch-vector corners
    /// `a, b, c` into `levels²` triangles, wound in the order `a → b → c`.
    pub fn bloch_triangle(a: [f64; 3], b: [f64; 3], c: [f64; 3], levels: usize) -> Result<Self> {
        if levels == 0 {
            return Err(Error::InvalidParameter("levels must be ≥ 1".into()));
        }
        let l = levels as f64;
        let mut index = vec![vec![0usize; levels + 1]; levels + 1];
        let mut vertices = Vec::new();
        for (i, row) in index.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate().take(levels - i + 1) {
                let (wa, wb, wc) = ((l - (i + j) as f64) / l, i as f64 / l, j as f64 / l);
                let p = [
                    wa * a[0] + wb * b[0] + wc * c[0],
                    wa * a[1] + wb * b[1] + wc * c[1],
                    wa * a[2] + wb * b[2] + wc * c[2],
                ];
                *slot = vertices.len();
                vertices.push(project(&bloch_state_from_vector(p)?));
            }
        }
        let mut triangles = Vec::with_capacity(levels * levels);
        for i in 0..levels {
            for j in 0..(levels - i) {
                triangles.push([index[i][j], index[i + 1][j], index[i][j + 1]]);
                if i + j + 1 < levels {
                    triangles.push([index[i + 1][j], index[i + 1][j + 1], index[i][j + 1]]);
                }
            }
        }
        Self::new(vertices, triangles)
    }

    /// Polar cap `θ ≤ theta_max` about `+z`, `rings × sectors` cells, wound
    /// counter-clockwise seen from outside the sphere.
    pub fn bloch_cap(theta_max: f64, rings: usize, sectors: usize) -> Result<Self> {
        if rings == 0 || sectors < 3 {
            return Err(Error::InvalidParameter(
                "cap needs rings ≥ 1 and sectors ≥ 3".into(),
            ));
        }
        if !(theta_max > 0.0 && theta_max < PI) {
            return Err(Error::ParameterOutOfRange {
                name: "theta_max",
                value: theta_max,
            });
        }
        let mut vertices = vec![project(&bloch_state(0.0, 0.0))];
        let ring_index = |j: usize, k: usize| 1 + (j - 1) * sectors + (k % sectors);
        for j in 1..=rings {
            let theta = theta_max * j as f64 / rings as f64;
            for k in 0..sectors {
                let phi = 2.0 * PI * k as f64 / sectors as f64;
                vertices.push(project(&bloch_state(theta, phi)));
            }
        }
        let mut triangles = Vec::new();
        for k in 0..sectors {
            triangles.push([0, ring_index(1, k), ring_index(1, k + 1)]);
        }
        for j in 1..rings {
            for k in 0..sectors {
                triangles.push([
                    ring_index(j, k),
                    ring_index(j + 1, k),
                    ring_index(j + 1, k + 1),
                ]);
                triangles.push([
                    ring_index(j, k),
                    ring_index(j + 1, k + 1),
                    ring_index(j, k + 1),
                ]);
            }
        }
        Self::new(vertices, triangles)
    }
}

/// Spinor `(cos θ/2, e^{iφ} sin θ/2)` with Bloch vector at polar angle `θ`, azimuth `φ`.
pub fn bloch_state(theta: f64, phi: f64) -> StateVector {
    StateVector::new(vec![
        C64::new((0.5 * theta).cos(), 0.0),
        C64::from_polar((0.5 * theta).sin(), phi),
    ])
    .expect("spinor is never zero")
}

/// Spinor for the direction of a non-zero 3-vector.
pub fn bloch_state_from_vector(v: [f64; 3]) -> Result<StateVector> {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::ZeroVector);
    }
    let theta = v[0].hypot(v[1]).atan2(v[2]);
    let phi = v[1].atan2(v[0]);
    Ok(bloch_state(theta, phi))
}

/// Closed loop around the circle of latitude `θ`, azimuth running `0 → 2π`,
/// lifted by the spinor chart (closed in Hilbert space as well).
pub fn bloch_latitude_loop(theta: f64, samples: usize) -> Result<Trajectory> {
    if samples < 5 {
        return Err(Error::TooFewSamples {
            needed: 5,
            got: samples,
        });
    }
    let grid = linspace(0.0, 2.0 * PI, samples);
    let last = samples - 1;
    Trajectory::new(
        grid.clone(),
        grid.iter()
            .enumerate()
            .map(|(i, &phi)| bloch_state(theta, if i == last { 0.0 } else { phi }))
            .collect(),
    )
}

/// Closed loop through the Bloch-vector `corners` along great-circle edges,
/// lifted by the spinor chart.
///
/// Each edge is traversed with the easing `u − sin(2πu)/2π`, which brings the
/// curve to rest at every corner so the sampled loop stays smooth there.
pub fn bloch_polygon_loop(corners: &[[f64; 3]], samples_per_edge: usize) -> Result<Trajectory> {
    if corners.len() < 2 || samples_per_edge < 3 {
        return Err(Error::InvalidParameter(
            "polygon loop needs ≥ 2 corners and ≥ 3 samples per edge".into(),
        ));
    }
    let unit = |v: [f64; 3]| {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        [v[0] / r, v[1] / r, v[2] / r]
    };
    let edges = corners.len();
    let per = samples_per_edge - 1;
    let total = edges * per + 1;
    let grid = linspace(0.0, edges as f64, total);
    let mut states = Vec::with_capacity(total);
    for (k, &s) in grid.iter().enumerate() {
        let e = (k / per).min(edges - 1);
        let u = s - e as f64;
        let t = u - (2.0 * PI * u).sin() / (2.0 * PI);
        let (p, q) = (unit(corners[e]), unit(corners[(e + 1) % edges]));
        let cos = (p[0] * q[0] + p[1] * q[1] + p[2] * q[2]).clamp(-1.0, 1.0);
        let angle = cos.acos();
        let (wp, wq) = if angle < 1e-12 {
            (1.0 - t, t)
        } else {
            (
                ((1.0 - t) * angle).sin() / angle.sin(),
                (t * angle).sin() / angle.sin(),
            )
        };
        let point = [
            wp * p[0] + wq * q[0],
            wp * p[1] + wq * q[1],
            wp * p[2] + wq * q[2],
        ];
        states.push(bloch_state_from_vector(point)?);
    }
    Trajectory::new(grid, states)
}

/// Bloch vector `⟨σ⟩` of a two-level state.
pub fn bloch_vector(psi: &StateVector) -> Result<[f64; 3]> {
    if psi.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: psi.dim(),
        });
    }
    let u = psi.normalized();
    let (a, b) = (u.amplitudes()[0], u.amplitudes()[1]);
    let ab = a.conj() * b;
    Ok([2.0 * ab.re, 2.0 * ab.im, a.norm_sqr() - b.norm_sqr()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::curvature_flux;
    use std::f64::consts::FRAC_PI_4;

    const Z: [f64; 3] = [0.0, 0.0, 1.0];
    const X: [f64; 3] = [1.0, 0.0, 0.0];
    const Y: [f64; 3] = [0.0, 1.0, 0.0];

    #[test]
    fn bloch_roundtrip() {
        for v in [Z, X, Y, [0.3, -0.4, 0.5]] {
            let psi = bloch_state_from_vector(v).unwrap();
            let b = bloch_vector(&psi).unwrap();
            let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            for k in 0..3 {
                assert!((b[k] - v[k] / r).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn degenerate_triangle_has_no_flux() {
        let z = project(&bloch_state(0.0, 0.0));
        let patch = SurfacePatch::new(vec![z.clone(), z.clone(), z], vec![[0, 1, 2]]).unwrap();
        assert_eq!(curvature_flux(&patch).unwrap(), 0.0);
    }

    #[test]
    fn octant_flux_and_orientation() {
        let patch = SurfacePatch::bloch_triangle(Z, X, Y, 1).unwrap();
        let f = curvature_flux(&patch).unwrap();
        assert!((f - FRAC_PI_4).abs() < 1e-14, "{f}");
        assert!((curvature_flux(&patch.reversed()).unwrap() + FRAC_PI_4).abs() < 1e-14);
        let swapped = SurfacePatch::bloch_triangle(Z, Y, X, 1).unwrap();
        assert!((curvature_flux(&swapped).unwrap() + FRAC_PI_4).abs() < 1e-14);
    }

    #[test]
    fn subdivision_counts_and_boundary() {
        let patch = SurfacePatch::bloch_triangle(Z, X, Y, 4).unwrap();
        assert_eq!(patch.triangles().len(), 16);
        assert_eq!(patch.vertices().len(), 15);
        assert_eq!(patch.boundary_vertices().len(), 12);
        let cap = SurfacePatch::bloch_cap(1.0, 3, 8).unwrap();
        assert_eq!(cap.boundary_vertices().len(), 8);
    }

    #[test]
    fn orthogonal_vertices_rejected() {
        let up = project(&bloch_state(0.0, 0.0));
        let down = project(&bloch_state(PI, 0.0));
        let side = project(&bloch_state(PI / 2.0, 0.0));
        let r = SurfacePatch::new(vec![up, down, side], vec![[0, 1, 2]]);
        assert!(matches!(
            r,
            Err(Error::OrthogonalTriangleVertices { triangle: 0 })
        ));
    }

    #[test]
    fn non_orientable_mesh_rejected() {
        let patch = SurfacePatch::bloch_triangle(Z, X, Y, 1).unwrap();
        let v = patch.vertices().to_vec();
        let r = SurfacePatch::new(v, vec![[0, 1, 2], [0, 1, 2]]);
        assert!(matches!(r, Err(Error::InvalidMesh(_))));
    }
}
