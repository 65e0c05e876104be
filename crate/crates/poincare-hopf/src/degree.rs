//! Degrees of circle and sphere maps by two independent algorithms, and the
//! numerical check that radially extending a planar field to 3-space keeps
//! its index.
//!
//! Circle maps are piecewise-geodesic through sampled angles; their degree
//! comes either from accumulated turning or from signed crossings of a
//! regular value. Sphere maps are piecewise central projections of vertex
//! images; their degree comes either from summed signed solid angles or
//! from signed containment of a regular value.

use crate::complex::{refined_icosahedron, OrientationResult, SurfaceComplex};
use crate::fields::{planar_index, FieldError, ModelField};
use crate::geom::{dot3, norm3, normalize3, pairwise_sum, triple3};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DegreeError {
    #[error("map has {0} samples, need at least 8")]
    TooFewSamples(usize),
    #[error("samples {0} and {1} are exactly opposite; the geodesic arc is ambiguous")]
    AmbiguousStep(usize, usize),
    #[error("sample values must be finite")]
    NonFiniteSample,
    #[error("the requested value is not regular for this map")]
    NonRegularValue,
    #[error("degree total {0} is not within 1e-6 of an integer")]
    NonIntegerTotal(f64),
    #[error("source must be a connected sphere-like complex with chi = 2, got chi = {0}")]
    SourceNotSphere(i64),
    #[error("source vertex {0} is not on the unit sphere")]
    SourceVertexOffSphere(usize),
    #[error("image of vertex {vertex} has norm {norm}, expected 1 within 1e-12")]
    ImageNotUnit { vertex: usize, norm: f64 },
    #[error("image count {got} does not match source vertex count {want}")]
    WrongImageCount { got: usize, want: usize },
    #[error("image triangle {0} degenerates through the origin")]
    DegenerateImageTriangle(usize),
    #[error("field vanishes on the sampling sphere at vertex {0}")]
    ZeroFieldOnSphere(usize),
    #[error("field has no isolated zero at the origin")]
    NoIsolatedZero,
    #[error("refinement level {0} is too coarse, need at least 2")]
    LevelTooSmall(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A map from a closed curve to the circle: image angles at equispaced
/// source samples, extended along the shorter arc between neighbors.
#[derive(Debug, Clone)]
pub struct CircleMap {
    /// Image angles reduced to [0, 2 pi).
    samples: Vec<f64>,
    /// Signed principal steps between consecutive samples, each in
    /// (-pi, pi).
    steps: Vec<f64>,
}

impl CircleMap {
    pub fn new(samples: Vec<f64>) -> Result<Self, DegreeError> {
        if samples.len() < 8 {
            return Err(DegreeError::TooFewSamples(samples.len()));
        }
        if !samples.iter().all(|a| a.is_finite()) {
            return Err(DegreeError::NonFiniteSample);
        }
        let samples: Vec<f64> = samples.into_iter().map(|a| a.rem_euclid(TAU)).collect();
        let n = samples.len();
        let mut steps = Vec::with_capacity(n);
        for i in 0..n {
            let step = principal(samples[(i + 1) % n] - samples[i]);
            if step.abs() >= PI - 1e-9 {
                return Err(DegreeError::AmbiguousStep(i, (i + 1) % n));
            }
            steps.push(step);
        }
        Ok(CircleMap { samples, steps })
    }

    /// The identity on n samples.
    pub fn identity(n: usize) -> Result<Self, DegreeError> {
        Self::new((0..n).map(|i| TAU * i as f64 / n as f64).collect())
    }

    /// The k-fold covering t -> k t.
    pub fn mult(k: u32, n: usize) -> Result<Self, DegreeError> {
        Self::new((0..n).map(|i| k as f64 * TAU * i as f64 / n as f64).collect())
    }

    /// t -> t + a sin t, degree 1 with two turning points when |a| > 1.
    pub fn sine(a: f64, n: usize) -> Result<Self, DegreeError> {
        Self::new(
            (0..n)
                .map(|i| {
                    let t = TAU * i as f64 / n as f64;
                    t + a * t.sin()
                })
                .collect(),
        )
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Sample indices where the walk along the image reverses direction:
    /// the one-sided steps have opposite signs. These are the discrete
    /// turning points, and they are exactly where a crossing count can
    /// change its mind.
    pub fn turning_points(&self) -> Vec<usize> {
        let n = self.samples.len();
        let mut out = Vec::new();
        for i in 0..n {
            let before = (0..n)
                .map(|d| self.steps[(i + n - 1 - d) % n])
                .find(|s| *s != 0.0);
            let after = (0..n).map(|d| self.steps[(i + d) % n]).find(|s| *s != 0.0);
            if let (Some(b), Some(a)) = (before, after) {
                if b.signum() != a.signum() {
                    out.push(i);
                }
            }
        }
        out
    }
}

fn principal(angle: f64) -> f64 {
    let mut a = angle.rem_euclid(TAU);
    if a > PI {
        a -= TAU;
    }
    a
}

/// Degree as accumulated turning: the signed geodesic steps sum to an exact
/// multiple of 2 pi.
pub fn circle_degree_winding(map: &CircleMap) -> Result<i32, DegreeError> {
    let turns = pairwise_sum(&map.steps) / TAU;
    let rounded = turns.round();
    if (turns - rounded).abs() >= 1e-6 {
        return Err(DegreeError::NonIntegerTotal(turns));
    }
    Ok(rounded as i32)
}

/// One signed crossing of the regular value by an arc of the map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    /// Index of the arc (from sample `arc` to sample `arc + 1`).
    pub arc: usize,
    /// +1 for an ascending pass, -1 for a descending pass.
    pub sign: i32,
}

/// All signed crossings of the value `y` by the piecewise arcs, in arc
/// order. Errors if `y` is (numerically) a sample image.
pub fn circle_crossings(map: &CircleMap, y: f64) -> Result<Vec<Crossing>, DegreeError> {
    for &s in &map.samples {
        if principal(s - y).abs() < 1e-9 {
            return Err(DegreeError::NonRegularValue);
        }
    }
    // Lift the walk to the reals; each arc is monotone, so it crosses at
    // most one representative y + 2 pi k. |step| < pi keeps this exact.
    let mut crossings = Vec::new();
    let mut lift = map.samples[0];
    for (i, &step) in map.steps.iter().enumerate() {
        let (lo, hi) = if step >= 0.0 { (lift, lift + step) } else { (lift + step, lift) };
        let k = ((lo - y) / TAU).ceil();
        let candidate = y + TAU * k;
        if candidate > lo && candidate < hi {
            crossings.push(Crossing { arc: i, sign: if step > 0.0 { 1 } else { -1 } });
        }
        lift += step;
    }
    Ok(crossings)
}

/// Degree as the signed count of passes through a regular value; equal to
/// [`circle_degree_winding`] for every regular value.
pub fn circle_degree_regular_value(map: &CircleMap, y: f64) -> Result<i32, DegreeError> {
    Ok(circle_crossings(map, y)?.iter().map(|c| c.sign).sum())
}

/// A piecewise map from a triangulated unit sphere to the unit sphere,
/// given by per-vertex unit image vectors and extended over each triangle
/// by central projection of the linear span.
#[derive(Debug, Clone)]
pub struct SphereMap {
    source: SurfaceComplex,
    images: Vec<[f64; 3]>,
    /// Source triangles reordered to the outward global orientation.
    oriented: Vec<[usize; 3]>,
}

impl SphereMap {
    pub fn new(source: SurfaceComplex, images: Vec<[f64; 3]>) -> Result<Self, DegreeError> {
        if source.euler_characteristic() != 2 || !source.is_connected() {
            return Err(DegreeError::SourceNotSphere(source.euler_characteristic()));
        }
        for (v, p) in source.vertices().iter().enumerate() {
            if (norm3(*p) - 1.0).abs() > 1e-9 {
                return Err(DegreeError::SourceVertexOffSphere(v));
            }
        }
        if images.len() != source.vertex_count() {
            return Err(DegreeError::WrongImageCount {
                got: images.len(),
                want: source.vertex_count(),
            });
        }
        for (v, p) in images.iter().enumerate() {
            let norm = norm3(*p);
            if (norm - 1.0).abs() > 1e-12 {
                return Err(DegreeError::ImageNotUnit { vertex: v, norm });
            }
        }
        let OrientationResult::Orientable { flips } = source.orient() else {
            unreachable!("a connected complex with chi = 2 is a sphere, hence orientable");
        };
        let mut oriented: Vec<[usize; 3]> = source
            .triangles()
            .iter()
            .zip(&flips)
            .map(|(&[a, b, c], &flip)| if flip { [a, c, b] } else { [a, b, c] })
            .collect();
        // The sweep picks an arbitrary side; pin the outward one by the
        // sign of the enclosed volume.
        let volume: f64 = oriented
            .iter()
            .map(|&[a, b, c]| {
                triple3(source.position(a), source.position(b), source.position(c)) / 6.0
            })
            .sum();
        if volume < 0.0 {
            for tri in &mut oriented {
                tri.swap(1, 2);
            }
        }
        Ok(SphereMap { source, images, oriented })
    }

    /// The identity map on an icosahedral sphere refined `level` times.
    pub fn identity(level: u32) -> Self {
        let source = refined_icosahedron(level);
        let images = source.vertices().to_vec();
        Self::new(source, images).expect("identity sphere map is valid")
    }

    /// The antipodal map p -> -p, a composition of three reflections.
    pub fn antipodal(level: u32) -> Self {
        let source = refined_icosahedron(level);
        let images = source.vertices().iter().map(|p| [-p[0], -p[1], -p[2]]).collect();
        Self::new(source, images).expect("antipodal sphere map is valid")
    }

    pub fn source(&self) -> &SurfaceComplex {
        &self.source
    }

    pub fn images(&self) -> &[[f64; 3]] {
        &self.images
    }

    fn image_triangle(&self, t: usize) -> [[f64; 3]; 3] {
        let [a, b, c] = self.oriented[t];
        [self.images[a], self.images[b], self.images[c]]
    }
}

/// Signed solid angle subtended at the origin by the spherical triangle
/// (a, b, c), by the two-argument arctangent formula. `None` when the
/// triangle plane passes through the origin with both arctangent arguments
/// vanishing, where the angle is ambiguous by 4 pi.
fn signed_solid_angle(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> Option<f64> {
    let numer = triple3(a, b, c);
    let denom = 1.0 + dot3(a, b) + dot3(b, c) + dot3(c, a);
    if numer.abs() < 1e-14 && denom <= 1e-14 {
        return None;
    }
    Some(2.0 * numer.atan2(denom))
}

/// Degree as total signed solid angle of the image triangles over 4 pi.
pub fn sphere_degree_solid_angle(map: &SphereMap) -> Result<i32, DegreeError> {
    let mut angles = Vec::with_capacity(map.oriented.len());
    for t in 0..map.oriented.len() {
        let [a, b, c] = map.image_triangle(t);
        let angle =
            signed_solid_angle(a, b, c).ok_or(DegreeError::DegenerateImageTriangle(t))?;
        angles.push(angle);
    }
    let total = pairwise_sum(&angles) / (4.0 * PI);
    let rounded = total.round();
    if (total - rounded).abs() >= 1e-6 {
        return Err(DegreeError::NonIntegerTotal(total));
    }
    Ok(rounded as i32)
}

/// Degree as the signed count of image triangles containing the regular
/// value `y`; equal to [`sphere_degree_solid_angle`].
pub fn sphere_degree_regular_value(map: &SphereMap, y: [f64; 3]) -> Result<i32, DegreeError> {
    let y = normalize3(y);
    let margin = 1e-11;
    let mut degree = 0i32;
    for t in 0..map.oriented.len() {
        let [a, b, c] = map.image_triangle(t);
        let det = triple3(a, b, c);
        let (s1, s2, s3) = (triple3(y, b, c), triple3(a, y, c), triple3(a, b, y));
        if det.abs() <= margin {
            // A sliver triangle: y must be clearly outside of it.
            if s1.abs() <= 1e-9 && s2.abs() <= 1e-9 && s3.abs() <= 1e-9 {
                return Err(DegreeError::NonRegularValue);
            }
            continue;
        }
        let sign = det.signum();
        let (t1, t2, t3) = (s1 * sign, s2 * sign, s3 * sign);
        if t1 > margin && t2 > margin && t3 > margin {
            degree += sign as i32;
        } else if t1 > -margin && t2 > -margin && t3 > -margin {
            // On or numerically near an edge arc of the image triangle.
            return Err(DegreeError::NonRegularValue);
        }
    }
    Ok(degree)
}

/// Draws seeded regular values until the containment count succeeds, up to
/// 64 attempts. Returns the degree and the value that worked.
pub fn sphere_degree_regular_value_seeded(
    map: &SphereMap,
    seed: u64,
) -> Result<(i32, [f64; 3]), DegreeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let y = random_unit_vector(&mut rng);
        match sphere_degree_regular_value(map, y) {
            Err(DegreeError::NonRegularValue) => continue,
            Ok(d) => return Ok((d, y)),
            Err(e) => return Err(e),
        }
    }
    Err(DegreeError::NonRegularValue)
}

fn random_unit_vector(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n = norm3(v);
        if n > 1e-3 && n <= 1.0 {
            return normalize3(v);
        }
    }
}

/// The Gauss map of the radial extension w(x, y, z) = (v(x, y), z) of a
/// planar field v, sampled on a refined icosahedral sphere.
///
/// If w vanishes at a sample vertex the mesh is retried once under a fixed
/// rotation.
pub fn radial_extension_gauss_map(
    field: &ModelField,
    level: u32,
) -> Result<SphereMap, DegreeError> {
    if level < 2 {
        return Err(DegreeError::LevelTooSmall(level));
    }
    if !field.vanishes_only_at_origin() {
        return Err(DegreeError::NoIsolatedZero);
    }
    let source = refined_icosahedron(level);
    match gauss_images(field, &source) {
        Ok(images) => SphereMap::new(source, images),
        Err(_) => {
            let rotated = rotate_mesh(&source);
            let images = gauss_images(field, &rotated)?;
            SphereMap::new(rotated, images)
        }
    }
}

fn gauss_images(
    field: &ModelField,
    source: &SurfaceComplex,
) -> Result<Vec<[f64; 3]>, DegreeError> {
    source
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let v = field.eval([p[0], p[1]]);
            let w = [v[0], v[1], p[2]];
            if norm3(w) < 1e-12 {
                return Err(DegreeError::ZeroFieldOnSphere(i));
            }
            Ok(normalize3(w))
        })
        .collect()
}

/// A fixed small rotation used to jitter sample vertices off of field
/// zeros; the degree is invariant under it.
fn rotate_mesh(k: &SurfaceComplex) -> SurfaceComplex {
    let (s, c) = (0.1234_f64.sin(), 0.1234_f64.cos());
    let (s2, c2) = (0.0567_f64.sin(), 0.0567_f64.cos());
    let pts = k
        .vertices()
        .iter()
        .map(|p| {
            let q = [p[0] * c - p[1] * s, p[0] * s + p[1] * c, p[2]];
            [q[0] * c2 - q[2] * s2, q[1], q[0] * s2 + q[2] * c2]
        })
        .collect();
    SurfaceComplex::build(pts, k.triangles().to_vec()).expect("rotation preserves validity")
}

/// Outcome of the radial-extension check: the planar index of the field and
/// the degree of its extended Gauss map by both algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaReport {
    pub planar: i32,
    pub solid_angle: i32,
    pub regular_value: i32,
    pub pass: bool,
}

/// Computes the planar index of `field` at the origin and the degree of the
/// Gauss map of its radial extension by both algorithms; passes when all
/// three agree.
pub fn verify_extension_lemma(
    field: &ModelField,
    level: u32,
) -> Result<LemmaReport, DegreeError> {
    let planar = planar_index(field, 0.5, 256)?;
    let map = radial_extension_gauss_map(field, level)?;
    let solid_angle = sphere_degree_solid_angle(&map)?;
    let (regular_value, _) = sphere_degree_regular_value_seeded(&map, 0)?;
    let pass = planar == solid_angle && solid_angle == regular_value;
    Ok(LemmaReport { planar, solid_angle, regular_value, pass })
}
