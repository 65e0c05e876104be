//! Planar star charts and the winding-number kernel.
//!
//! Every index computation in this crate reduces to the same primitive:
//! walk a loop of nonzero planar vectors and count how many net turns the
//! direction makes. The chart flattens a vertex star so mesh fields can be
//! fed to that primitive.

use crate::complex::SurfaceComplex;
use crate::geom::{angle3, dist3, signed_angle2};
use std::f64::consts::{PI, TAU};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChartError {
    #[error("triangle {tri} has zero area at vertex {vertex}")]
    ZeroAreaTriangle { vertex: usize, tri: usize },
    #[error("consecutive loop vectors are at least pi apart; refine the loop")]
    UndersampledLoop,
    #[error("loop contains a zero vector at sample {0}")]
    ZeroVector(usize),
    #[error("loop has {0} samples, need at least 8")]
    TooFewSamples(usize),
    #[error("points and vectors differ in length")]
    LengthMismatch,
    #[error("accumulated turning {0} is not within 1e-6 of an integer")]
    NonIntegerWinding(f64),
}

/// A discretized loop around a singularity: sample points and the nonzero
/// field vectors observed there, in cyclic order.
#[derive(Debug, Clone)]
pub struct LoopSamples {
    pub points: Vec<[f64; 2]>,
    pub vectors: Vec<[f64; 2]>,
}

impl LoopSamples {
    pub fn new(points: Vec<[f64; 2]>, vectors: Vec<[f64; 2]>) -> Result<Self, ChartError> {
        if points.len() != vectors.len() {
            return Err(ChartError::LengthMismatch);
        }
        Ok(LoopSamples { points, vectors })
    }
}

/// Net number of turns a cyclic sequence of nonzero vectors makes.
///
/// Sums the signed principal angle between consecutive vectors; the total
/// is an exact multiple of 2 pi, enforced to 1e-6. Steps of at least
/// pi - 1e-6 are ambiguous and rejected.
pub fn winding_number(samples: &LoopSamples) -> Result<i32, ChartError> {
    if samples.points.len() != samples.vectors.len() {
        return Err(ChartError::LengthMismatch);
    }
    if samples.vectors.len() < 8 {
        return Err(ChartError::TooFewSamples(samples.vectors.len()));
    }
    winding_of_vectors(&samples.vectors)
}

/// The same accumulated-turning count for any cyclic vector sequence, used
/// directly where the loop is combinatorial (one vector per star triangle)
/// and can legitimately be short.
pub(crate) fn winding_of_vectors(vectors: &[[f64; 2]]) -> Result<i32, ChartError> {
    let n = vectors.len();
    let mut total = 0.0;
    for (i, &v) in vectors.iter().enumerate() {
        if v[0] == 0.0 && v[1] == 0.0 || !v[0].is_finite() || !v[1].is_finite() {
            return Err(ChartError::ZeroVector(i));
        }
        let w = vectors[(i + 1) % n];
        let step = signed_angle2(v, w);
        if step.abs() >= PI - 1e-6 {
            return Err(ChartError::UndersampledLoop);
        }
        total += step;
    }
    let turns = total / TAU;
    let rounded = turns.round();
    if (turns - rounded).abs() >= 1e-6 {
        return Err(ChartError::NonIntegerWinding(turns));
    }
    Ok(rounded as i32)
}

/// A vertex star flattened to the plane.
///
/// The star triangles are laid out fan-wise around the origin in link
/// order; each corner angle is the true 3D corner angle scaled by a common
/// factor so the total is exactly 2 pi, and radial edge lengths are kept.
#[derive(Debug, Clone)]
pub struct Chart {
    center: usize,
    star: Vec<usize>,
    link: Vec<usize>,
    corner_angles: Vec<f64>,
    /// Ray angle of each link vertex; `ray_angles[0] == 0`.
    ray_angles: Vec<f64>,
    /// Distance from the center to each link vertex.
    radii: Vec<f64>,
}

impl Chart {
    /// Flattens the star of `v`.
    pub fn new(k: &SurfaceComplex, v: usize) -> Result<Self, ChartError> {
        let link = k.link(v).to_vec();
        let star = k.star(v).to_vec();
        let center = k.position(v);
        let d = link.len();

        let mut true_angles = Vec::with_capacity(d);
        for i in 0..d {
            let a = crate::geom::sub3(k.position(link[i]), center);
            let b = crate::geom::sub3(k.position(link[(i + 1) % d]), center);
            let angle = angle3(a, b);
            if !(angle > 1e-12 && angle < PI - 1e-12) {
                return Err(ChartError::ZeroAreaTriangle { vertex: v, tri: star[i] });
            }
            true_angles.push(angle);
        }
        let scale = TAU / true_angles.iter().sum::<f64>();
        let corner_angles: Vec<f64> = true_angles.iter().map(|a| a * scale).collect();

        let mut ray_angles = Vec::with_capacity(d);
        let mut acc = 0.0;
        for angle in &corner_angles {
            ray_angles.push(acc);
            acc += angle;
        }
        let radii = link.iter().map(|&w| dist3(k.position(w), center)).collect();

        Ok(Chart { center: v, star, link, corner_angles, ray_angles, radii })
    }

    pub fn center(&self) -> usize {
        self.center
    }

    /// Star triangle ids in cyclic order; triangle `i` spans the center and
    /// link vertices `i` and `i + 1`.
    pub fn star(&self) -> &[usize] {
        &self.star
    }

    pub fn link(&self) -> &[usize] {
        &self.link
    }

    /// Scaled corner angles, summing to 2 pi.
    pub fn corner_angles(&self) -> &[f64] {
        &self.corner_angles
    }

    /// Chart position of link vertex `i`.
    pub fn link_point(&self, i: usize) -> [f64; 2] {
        [
            self.radii[i] * self.ray_angles[i].cos(),
            self.radii[i] * self.ray_angles[i].sin(),
        ]
    }

    /// Chart vertices of star triangle `i`: center, link `i`, link `i + 1`.
    pub fn triangle_points(&self, i: usize) -> [[f64; 2]; 3] {
        let d = self.link.len();
        [[0.0, 0.0], self.link_point(i), self.link_point((i + 1) % d)]
    }

    /// Maps barycentric coordinates on star triangle `i` into the chart.
    pub fn embed(&self, i: usize, bary: [f64; 3]) -> [f64; 2] {
        let [_, p, q] = self.triangle_points(i);
        [
            bary[1] * p[0] + bary[2] * q[0],
            bary[1] * p[1] + bary[2] * q[1],
        ]
    }

    /// Loop points around the center: `per_triangle` samples on the arc of
    /// each sector, at radius 0.25 times the shortest radial edge.
    pub fn loop_points(&self, per_triangle: usize) -> Vec<[f64; 2]> {
        let r = 0.25 * self.radii.iter().cloned().fold(f64::INFINITY, f64::min);
        let d = self.link.len();
        let mut points = Vec::with_capacity(d * per_triangle);
        for i in 0..d {
            let span = self.corner_angles[i];
            for j in 0..per_triangle {
                let angle = self.ray_angles[i] + span * j as f64 / per_triangle as f64;
                points.push([r * angle.cos(), r * angle.sin()]);
            }
        }
        points
    }
}

/// Winding of a planar field around the chart center, sampled on the
/// default loop with 16 samples per star triangle and doubled on
/// undersampling, up to 1024 per triangle.
pub fn index_around_center(
    chart: &Chart,
    field: impl Fn([f64; 2]) -> [f64; 2],
) -> Result<i32, ChartError> {
    let mut per_triangle = 16;
    loop {
        let points = chart.loop_points(per_triangle);
        let vectors = points.iter().map(|&p| field(p)).collect();
        let samples = LoopSamples { points, vectors };
        match winding_number(&samples) {
            Err(ChartError::UndersampledLoop) if per_triangle < 1 << 10 => per_triangle *= 2,
            other => return other,
        }
    }
}
