use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Result, ScqError};
use crate::exec::Execution;
use crate::oracle::CircleFit;

use super::ray::integrate_ray;

/// The edges in counter-clockwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    Right,
    Top,
    Left,
    Bottom,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::Right, Edge::Top, Edge::Left, Edge::Bottom];

    /// Preimage arc `(start, end)` on the unit circle.
    pub fn arc(self, t: f64) -> (f64, f64) {
        match self {
            Edge::Right => (-t, t),
            Edge::Top => (t, PI - t),
            Edge::Left => (PI - t, PI + t),
            Edge::Bottom => (PI + t, 2.0 * PI - t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// The map `f` itself.
    F,
    /// `g = f / w₁`, so the right edge passes through 1.
    G,
}

impl Normalization {
    pub fn tag(self) -> &'static str {
        match self {
            Normalization::F => "f",
            Normalization::G => "g = f/w1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SceneMetadata {
    pub t: f64,
    pub lambda: f64,
    pub steps: usize,
    pub normalization: Normalization,
}

/// Boundary samples of the image quadrilateral. `boundary[k]` holds the
/// images of the ray endpoints on edge `Edge::ALL[k]`, in
/// counter-clockwise order; `vertices[k]` is the corner at the end of that
/// edge.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderScene {
    pub boundary: Vec<Vec<Complex64>>,
    pub vertices: Vec<Complex64>,
    pub metadata: SceneMetadata,
}

impl RenderScene {
    pub fn is_empty(&self) -> bool {
        self.boundary.iter().all(Vec::is_empty)
    }

    /// Edge `k` with its two corners attached.
    pub fn closed_edge(&self, k: usize) -> Vec<Complex64> {
        let start = self.vertices[(k + 3) % 4];
        let end = self.vertices[k];
        std::iter::once(start)
            .chain(self.boundary[k].iter().copied())
            .chain(std::iter::once(end))
            .collect()
    }

    /// The whole boundary as one closed polygon through the corners.
    pub fn outline(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        for k in 0..4 {
            out.push(self.vertices[(k + 3) % 4]);
            out.extend(self.boundary[k].iter().copied());
        }
        out
    }
}

/// Corner image by interpolating the two nearest samples on each side as a
/// cubic in `u = √((z - a) / (i a))`, in which the map is analytic at a
/// right-angled corner `f(a)`.
fn corner(a: Complex64, before: [(f64, Complex64); 2], after: [(f64, Complex64); 2]) -> Complex64 {
    let nodes: Vec<(Complex64, Complex64)> = before
        .iter()
        .chain(after.iter())
        .map(|&(theta, w)| {
            let z = Complex64::from_polar(1.0, theta);
            (((z - a) / (Complex64::i() * a)).sqrt(), w)
        })
        .collect();
    let mut value = Complex64::new(0.0, 0.0);
    for (k, &(uk, wk)) in nodes.iter().enumerate() {
        let mut basis = Complex64::new(1.0, 0.0);
        for (j, &(uj, _)) in nodes.iter().enumerate() {
            if j != k {
                basis *= -uj / (uk - uj);
            }
        }
        value += wk * basis;
    }
    value
}

pub fn boundary_polyline(
    t: f64,
    lambda: f64,
    rays: usize,
    steps: usize,
    normalize: bool,
) -> Result<RenderScene> {
    boundary_polyline_with(t, lambda, rays, steps, normalize, Execution::default())
}

/// Integrates `rays / 4` rays per edge at the midpoints of equal
/// subdivisions of each preimage arc and assembles the scene.
pub fn boundary_polyline_with(
    t: f64,
    lambda: f64,
    rays: usize,
    steps: usize,
    normalize: bool,
    exec: Execution,
) -> Result<RenderScene> {
    crate::scq::check_angle(t)?;
    if rays < 16 {
        return Err(ScqError::InvalidArgument(format!(
            "rays = {rays}, need at least 16"
        )));
    }
    let per_edge = rays / 4;
    let mut thetas = Vec::with_capacity(4 * per_edge + 1);
    for edge in Edge::ALL {
        let (a, b) = edge.arc(t);
        let width = (b - a) / per_edge as f64;
        thetas.extend((0..per_edge).map(|k| a + (k as f64 + 0.5) * width));
    }
    if normalize {
        thetas.push(0.0);
    }

    let ends = exec.map(&thetas, |&theta| {
        integrate_ray(t, lambda, theta, steps).map(|r| r.endpoint())
    });
    let mut ends = ends.into_iter().collect::<Result<Vec<_>>>()?;
    if normalize {
        let w1 = ends.pop().expect("normalising ray");
        for w in &mut ends {
            *w /= w1;
        }
    }
    let sampled: Vec<(f64, Complex64)> = thetas.iter().copied().zip(ends).collect();
    let boundary: Vec<Vec<Complex64>> = sampled
        .chunks(per_edge)
        .take(4)
        .map(|c| c.iter().map(|&(_, w)| w).collect())
        .collect();

    let edges: Vec<&[(f64, Complex64)]> = sampled.chunks(per_edge).take(4).collect();
    let vertices = (0..4)
        .map(|k| {
            let cur = edges[k];
            let next = edges[(k + 1) % 4];
            let shift = if k == 3 { -2.0 * PI } else { 0.0 };
            let before = [cur[per_edge - 2], cur[per_edge - 1]];
            let after = [
                (next[0].0 - shift, next[0].1),
                (next[1].0 - shift, next[1].1),
            ];
            let a = Complex64::from_polar(1.0, Edge::ALL[k].arc(t).1);
            corner(a, before, after)
        })
        .collect();

    Ok(RenderScene {
        boundary,
        vertices,
        metadata: SceneMetadata {
            t,
            lambda,
            steps,
            normalization: if normalize {
                Normalization::G
            } else {
                Normalization::F
            },
        },
    })
}

fn segments_cross(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let cross = |a: Complex64, b: Complex64| a.re * b.im - a.im * b.re;
    let d1 = cross(p2 - p1, q1 - p1);
    let d2 = cross(p2 - p1, q2 - p1);
    let d3 = cross(q2 - q1, p1 - q1);
    let d4 = cross(q2 - q1, p2 - q1);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Index pairs `(i, j)` of non-adjacent segments `[p_i, p_{i+1}]` that
/// properly cross. With `closed`, the segment from the last point back to
/// the first is included.
pub fn self_intersections(points: &[Complex64], closed: bool) -> Vec<(usize, usize)> {
    let n = points.len();
    if n < 4 {
        return Vec::new();
    }
    let count = if closed { n } else { n - 1 };
    let seg = |i: usize| (points[i], points[(i + 1) % n]);
    let mut hits = Vec::new();
    for i in 0..count {
        for j in i + 2..count {
            if closed && i == 0 && j == count - 1 {
                continue;
            }
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            if segments_cross(a, b, c, d) {
                hits.push((i, j));
            }
        }
    }
    hits
}

fn tangent_normal(fit: &CircleFit, p: Complex64) -> Complex64 {
    match (fit.center, fit.line) {
        (Some(c), _) => (p - c) / (p - c).norm(),
        (None, Some((_, dir))) => dir * Complex64::i(),
        (None, None) => Complex64::new(f64::NAN, f64::NAN),
    }
}

fn circle_intersections(a: &CircleFit, b: &CircleFit) -> Vec<Complex64> {
    match (a.center, b.center, a.line, b.line) {
        (Some(c1), Some(c2), _, _) => {
            let d = (c2 - c1).norm();
            let (r1, r2) = (a.radius, b.radius);
            let along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
            let h2 = r1 * r1 - along * along;
            if !(h2 >= 0.0) || d == 0.0 {
                return Vec::new();
            }
            let u = (c2 - c1) / d;
            let base = c1 + u * along;
            let off = u * Complex64::i() * h2.sqrt();
            vec![base + off, base - off]
        }
        (Some(_), None, _, Some(_)) => circle_intersections(b, a),
        (None, Some(c), Some((p, dir)), _) => {
            let s = ((c - p) * dir.conj()).re;
            let foot = p + dir * s;
            let h2 = b.radius * b.radius - (c - foot).norm_sqr();
            if !(h2 >= 0.0) {
                return Vec::new();
            }
            vec![foot + dir * h2.sqrt(), foot - dir * h2.sqrt()]
        }
        (None, None, Some((p, dp)), Some((q, dq))) => {
            let cross = |x: Complex64, y: Complex64| x.re * y.im - x.im * y.re;
            let den = cross(dp, dq);
            if den == 0.0 {
                return Vec::new();
            }
            vec![p + dp * (cross(q - p, dq) / den)]
        }
        _ => Vec::new(),
    }
}

/// Angle in degrees between adjacent fitted edge circles at their
/// intersection nearest each estimated corner.
pub fn vertex_angles(scene: &RenderScene, fits: &[CircleFit]) -> Vec<f64> {
    (0..4)
        .map(|k| {
            let (a, b) = (&fits[k], &fits[(k + 1) % 4]);
            let v = scene.vertices[k];
            let p = circle_intersections(a, b)
                .into_iter()
                .min_by(|x, y| (x - v).norm().total_cmp(&(y - v).norm()))
                .unwrap_or(v);
            let (na, nb) = (tangent_normal(a, p), tangent_normal(b, p));
            let cos = (na * nb.conj()).re.abs().min(1.0);
            cos.acos().to_degrees()
        })
        .collect()
}
