//! Model planar fields, PL functions on meshes, and the two singularity
//! index algorithms.
//!
//! The combinatorial index of a generic PL function at a vertex counts sign
//! changes of f(link) - f(center) around the link cycle: index = 1 - s/2.
//! The geometric route flattens the star and winds the per-triangle
//! gradients of f. Both are exposed and cross-checked; the Hopf field on a
//! barycentric subdivision ties their totals to the Euler characteristic.

use crate::chart::{winding_number, Chart, ChartError, LoopSamples};
use crate::complex::SurfaceComplex;
use crate::geom::{cross2, norm2};
use crate::subdivide::{barycentric, BarycenterKind, SubdividedComplex};
use rand::Rng;
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error("function values must be finite")]
    NonFiniteValue,
    #[error("function has {got} values but the complex has {want} vertices")]
    WrongLength { got: usize, want: usize },
    #[error("gradient vanishes on star triangle {tri} of vertex {vertex}")]
    ZeroGradientTriangle { vertex: usize, tri: usize },
    #[error("consecutive star gradients at vertex {0} are opposite; geometry is non-generic")]
    NonGenericGeometry(usize),
    #[error("winding and combinatorial indices disagree at vertex {vertex}: {gradient} vs {banchoff}")]
    IndexMismatch { vertex: usize, banchoff: i32, gradient: i32 },
    #[error("sampled field table is empty")]
    EmptySampleTable,
    #[error("csv line {line}: expected `x,y,vx,vy` with finite numbers")]
    BadCsvRow { line: usize },
}

/// A symbolic planar vector field with a known singularity structure at the
/// origin, used as index ground truth.
#[derive(Debug, Clone)]
pub enum ModelField {
    /// z -> z^k: index +k at the origin.
    Power(u32),
    /// z -> conj(z)^k: index -k at the origin.
    ConjPower(u32),
    /// A nonvanishing constant field: index 0 anywhere.
    Constant([f64; 2]),
    /// Tabulated samples (point, vector), evaluated by nearest point.
    Sampled(Vec<([f64; 2], [f64; 2])>),
}

impl ModelField {
    pub fn eval(&self, p: [f64; 2]) -> [f64; 2] {
        match self {
            ModelField::Power(k) => complex_pow(p, *k),
            ModelField::ConjPower(k) => complex_pow([p[0], -p[1]], *k),
            ModelField::Constant(d) => *d,
            ModelField::Sampled(table) => {
                let mut best = [0.0, 0.0];
                let mut best_d = f64::INFINITY;
                for &(q, v) in table {
                    let d = (q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2);
                    if d < best_d {
                        best_d = d;
                        best = v;
                    }
                }
                best
            }
        }
    }

    /// Whether the field is known to vanish at the planar origin and
    /// nowhere else. Sampled tables are trusted by the caller.
    pub fn vanishes_only_at_origin(&self) -> bool {
        matches!(self, ModelField::Power(_) | ModelField::ConjPower(_) | ModelField::Sampled(_))
    }
}

fn complex_pow(z: [f64; 2], k: u32) -> [f64; 2] {
    let mut out = [1.0, 0.0];
    for _ in 0..k {
        out = [out[0] * z[0] - out[1] * z[1], out[0] * z[1] + out[1] * z[0]];
    }
    out
}

/// Loads a sampled planar field from CSV rows `x,y,vx,vy`. Blank lines and
/// `#` comments are skipped.
pub fn parse_field_csv(text: &str) -> Result<ModelField, FieldError> {
    let mut table = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<f64> = line
            .split(',')
            .map(|w| w.trim().parse().map_err(|_| FieldError::BadCsvRow { line: i + 1 }))
            .collect::<Result<_, _>>()?;
        let [x, y, vx, vy] = nums[..] else {
            return Err(FieldError::BadCsvRow { line: i + 1 });
        };
        if ![x, y, vx, vy].iter().all(|v| v.is_finite()) {
            return Err(FieldError::BadCsvRow { line: i + 1 });
        }
        table.push(([x, y], [vx, vy]));
    }
    if table.is_empty() {
        return Err(FieldError::EmptySampleTable);
    }
    Ok(ModelField::Sampled(table))
}

/// Index of a model field at the origin: the winding of the field sampled
/// on a circle of the given radius. Doubles the sample count on
/// undersampling, up to 2^16 samples.
pub fn planar_index(field: &ModelField, radius: f64, samples: usize) -> Result<i32, FieldError> {
    let mut n = samples.max(8);
    loop {
        let points: Vec<[f64; 2]> = (0..n)
            .map(|i| {
                let t = TAU * i as f64 / n as f64;
                [radius * t.cos(), radius * t.sin()]
            })
            .collect();
        let vectors = points.iter().map(|&p| field.eval(p)).collect();
        match winding_number(&LoopSamples { points, vectors }) {
            Err(ChartError::UndersampledLoop) if n < 1 << 16 => n *= 2,
            Err(e) => return Err(e.into()),
            Ok(w) => return Ok(w),
        }
    }
}

/// A piecewise-linear function given by one value per vertex.
///
/// Genericity never needs explicit perturbation: all vertex comparisons are
/// lexicographic on (value, vertex id), so distinct vertices never tie.
#[derive(Debug, Clone)]
pub struct PLFunction {
    values: Vec<f64>,
}

impl PLFunction {
    pub fn new(values: Vec<f64>) -> Result<Self, FieldError> {
        if !values.iter().all(|v| v.is_finite()) {
            return Err(FieldError::NonFiniteValue);
        }
        Ok(PLFunction { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, v: usize) -> f64 {
        self.values[v]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Lexicographic order on (value, id); the tie-break keeps every
    /// restriction to a vertex star injective.
    fn above(&self, u: usize, v: usize) -> bool {
        (self.values[u], u) > (self.values[v], v)
    }
}

/// Uniform random values in [0, 1), one per vertex.
pub fn random_pl_function(vertex_count: usize, rng: &mut impl Rng) -> PLFunction {
    PLFunction { values: (0..vertex_count).map(|_| rng.gen::<f64>()).collect() }
}

/// The kind function of a subdivision: 0 on original vertices, 1 on edge
/// barycenters, 2 on triangle barycenters. Its ascending PL gradient flows
/// along every subdivision edge from the lower- to the higher-dimensional
/// barycenter.
pub fn hopf_function(kp: &SubdividedComplex) -> PLFunction {
    PLFunction {
        values: kp.kinds().iter().map(|k| k.dimension() as f64).collect(),
    }
}

fn check_function(k: &SurfaceComplex, f: &PLFunction) -> Result<(), FieldError> {
    if f.len() != k.vertex_count() {
        return Err(FieldError::WrongLength { got: f.len(), want: k.vertex_count() });
    }
    Ok(())
}

/// Combinatorial index of the ascending gradient of `f` at `v`:
/// 1 - s/2, where s counts sign changes of f(link) - f(v) around the link
/// cycle. s is even, so the result is an integer.
pub fn banchoff_index(k: &SurfaceComplex, f: &PLFunction, v: usize) -> Result<i32, FieldError> {
    check_function(k, f)?;
    let link = k.link(v);
    let mut changes = 0u32;
    for i in 0..link.len() {
        let a = f.above(link[i], v);
        let b = f.above(link[(i + 1) % link.len()], v);
        if a != b {
            changes += 1;
        }
    }
    debug_assert!(changes.is_multiple_of(2));
    Ok(1 - changes as i32 / 2)
}

/// Geometric index of the ascending gradient of `f` at `v`: the winding of
/// the cyclic sequence of per-triangle chart gradients. Must agree with
/// [`banchoff_index`] wherever both are defined.
pub fn gradient_index(k: &SurfaceComplex, f: &PLFunction, v: usize) -> Result<i32, FieldError> {
    check_function(k, f)?;
    let chart = Chart::new(k, v)?;
    let d = chart.link().len();
    let mut gradients = Vec::with_capacity(d);
    for i in 0..d {
        let [o, p, q] = chart.triangle_points(i);
        let (f0, f1, f2) = (
            f.value(v),
            f.value(chart.link()[i]),
            f.value(chart.link()[(i + 1) % d]),
        );
        let (ex, ey) = ([p[0] - o[0], p[1] - o[1]], [q[0] - o[0], q[1] - o[1]]);
        let det = cross2(ex, ey);
        let g = [
            ((f1 - f0) * ey[1] - (f2 - f0) * ex[1]) / det,
            (ex[0] * (f2 - f0) - ey[0] * (f1 - f0)) / det,
        ];
        if norm2(g) == 0.0 {
            return Err(FieldError::ZeroGradientTriangle { vertex: v, tri: chart.star()[i] });
        }
        gradients.push(g);
    }
    match crate::chart::winding_of_vectors(&gradients) {
        Ok(w) => Ok(w),
        Err(ChartError::UndersampledLoop) => Err(FieldError::NonGenericGeometry(v)),
        Err(e) => Err(e.into()),
    }
}

/// One singularity row of an index table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexEntry {
    pub vertex: usize,
    /// Barycenter kind when the vertex lives on a subdivision.
    pub kind: Option<BarycenterKind>,
    pub index: i32,
}

/// Indices of every singularity of a field, plus their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexReport {
    pub entries: Vec<IndexEntry>,
    pub total: i64,
}

/// Builds the barycentric subdivision, puts the Hopf field on it, and
/// computes the index at every subdivision vertex by the combinatorial
/// count, cross-checked against the gradient winding. The total equals the
/// Euler characteristic of the base complex.
pub fn hopf_index_report(k: &SurfaceComplex) -> Result<IndexReport, FieldError> {
    let kp = barycentric(k);
    let f = hopf_function(&kp);
    let cx = kp.complex();
    let mut entries = Vec::with_capacity(cx.vertex_count());
    let mut total = 0i64;
    for v in 0..cx.vertex_count() {
        let banchoff = banchoff_index(cx, &f, v)?;
        let gradient = gradient_index(cx, &f, v)?;
        if banchoff != gradient {
            return Err(FieldError::IndexMismatch { vertex: v, banchoff, gradient });
        }
        entries.push(IndexEntry { vertex: v, kind: Some(kp.kind(v)), index: banchoff });
        total += banchoff as i64;
    }
    Ok(IndexReport { entries, total })
}

/// Sum of the combinatorial indices of `f` over all vertices; equal to the
/// Euler characteristic for every generic function on a closed surface.
pub fn morse_sum(k: &SurfaceComplex, f: &PLFunction) -> Result<i64, FieldError> {
    check_function(k, f)?;
    let mut total = 0i64;
    for v in 0..k.vertex_count() {
        total += banchoff_index(k, f, v)? as i64;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{icosahedron, projective_plane_6, tetrahedron, torus_grid};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn planar_indices_of_model_fields() {
        assert_eq!(planar_index(&ModelField::Power(1), 1.0, 64).unwrap(), 1);
        assert_eq!(planar_index(&ModelField::ConjPower(1), 1.0, 64).unwrap(), -1);
        assert_eq!(planar_index(&ModelField::Power(2), 1.0, 64).unwrap(), 2);
        assert_eq!(planar_index(&ModelField::Constant([0.0, 1.0]), 1.0, 64).unwrap(), 0);
    }

    #[test]
    fn planar_index_is_radius_independent() {
        for k in 1..=3 {
            for radius in [0.5, 1.0] {
                assert_eq!(planar_index(&ModelField::Power(k), radius, 64).unwrap(), k as i32);
                assert_eq!(
                    planar_index(&ModelField::ConjPower(k), radius, 64).unwrap(),
                    -(k as i32)
                );
            }
        }
    }

    #[test]
    fn planar_index_refines_until_resolved() {
        // 8 samples of z^4 step by exactly pi, which is ambiguous; the
        // doubling retry has to kick in before the winding resolves.
        assert_eq!(planar_index(&ModelField::Power(4), 1.0, 8).unwrap(), 4);
    }

    #[test]
    fn hopf_function_values_are_kinds() {
        let kp = barycentric(&tetrahedron());
        let f = hopf_function(&kp);
        for v in 0..kp.complex().vertex_count() {
            assert_eq!(f.value(v), kp.kind(v).dimension() as f64);
        }
    }

    #[test]
    fn hopf_indices_by_kind() {
        let kp = barycentric(&tetrahedron());
        let f = hopf_function(&kp);
        let cx = kp.complex();
        for v in 0..cx.vertex_count() {
            let expected = match kp.kind(v) {
                BarycenterKind::Vertex => 1,
                BarycenterKind::Edge => -1,
                BarycenterKind::Triangle => 1,
            };
            assert_eq!(banchoff_index(cx, &f, v).unwrap(), expected, "vertex {v}");
            assert_eq!(gradient_index(cx, &f, v).unwrap(), expected, "vertex {v}");
        }
    }

    #[test]
    fn tetrahedron_report_counts_extrema_and_saddles() {
        let report = hopf_index_report(&tetrahedron()).unwrap();
        let count = |want: i32| report.entries.iter().filter(|e| e.index == want).count();
        assert_eq!(count(1), 8, "4 minima + 4 maxima");
        assert_eq!(count(-1), 6, "6 saddles");
        assert_eq!(report.total, 2);

        // The +1 singularities split into sources at original vertices and
        // sinks at triangle barycenters.
        let kp = barycentric(&tetrahedron());
        let f = hopf_function(&kp);
        let cx = kp.complex();
        let mut minima = 0;
        let mut maxima = 0;
        for v in 0..cx.vertex_count() {
            let link = cx.link(v);
            if link.iter().all(|&w| f.above(w, v)) {
                minima += 1;
            }
            if link.iter().all(|&w| f.above(v, w)) {
                maxima += 1;
            }
        }
        assert_eq!(minima, 4);
        assert_eq!(maxima, 4);
    }

    #[test]
    fn hopf_report_totals_match_chi() {
        for (k, chi) in [
            (tetrahedron(), 2),
            (torus_grid(3, 3).unwrap(), 0),
            (projective_plane_6(), 1),
            (crate::complex::klein_grid(4, 4).unwrap(), 0),
        ] {
            let report = hopf_index_report(&k).unwrap();
            assert_eq!(report.total, chi);
            assert_eq!(report.total, k.euler_characteristic());
        }
    }

    #[test]
    fn height_function_on_rotated_icosahedron() {
        // A generic rotation leaves one minimum, one maximum, and ten
        // regular vertices; verify by counting, not just by the total.
        let k = icosahedron();
        let (s, c) = (0.37_f64.sin(), 0.37_f64.cos());
        let f = PLFunction::new(
            k.vertices().iter().map(|p| p[2] * c + p[0] * s + 0.1 * p[1]).collect(),
        )
        .unwrap();
        let indices: Vec<i32> =
            (0..12).map(|v| banchoff_index(&k, &f, v).unwrap()).collect();
        assert_eq!(indices.iter().filter(|&&i| i == 1).count(), 2);
        assert_eq!(indices.iter().filter(|&&i| i == 0).count(), 10);
        assert_eq!(morse_sum(&k, &f).unwrap(), 2);
    }

    #[test]
    fn regular_point_of_a_height_function_has_index_zero() {
        // A flat hexagonal fan closed by a far apex; the x-coordinate is
        // not extremal at the fan center, so both routes see a regular
        // point with a constant gradient that winds zero times.
        let mut pts = vec![[0.0, 0.0, 0.0]];
        for i in 0..6 {
            let t = TAU * i as f64 / 6.0;
            pts.push([t.cos(), t.sin(), 0.0]);
        }
        pts.push([0.0, 0.0, -4.0]);
        let mut tris = Vec::new();
        for i in 0..6 {
            let (a, b) = (1 + i, 1 + (i + 1) % 6);
            tris.push([0, a, b]);
            tris.push([7, b, a]);
        }
        let k = SurfaceComplex::build(pts, tris).unwrap();
        let f = PLFunction::new(k.vertices().iter().map(|p| p[0]).collect()).unwrap();
        assert_eq!(banchoff_index(&k, &f, 0).unwrap(), 0);
        assert_eq!(gradient_index(&k, &f, 0).unwrap(), 0);
    }

    #[test]
    fn morse_sum_of_random_functions_is_chi() {
        let k = torus_grid(4, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let f = random_pl_function(k.vertex_count(), &mut rng);
            assert_eq!(morse_sum(&k, &f).unwrap(), 0);
        }
    }

    #[test]
    fn banchoff_and_gradient_agree_on_random_functions() {
        let k = icosahedron();
        let mut rng = ChaCha8Rng::seed_from_u64(413);
        for _ in 0..100 {
            let f = random_pl_function(k.vertex_count(), &mut rng);
            for v in 0..k.vertex_count() {
                assert_eq!(
                    banchoff_index(&k, &f, v).unwrap(),
                    gradient_index(&k, &f, v).unwrap()
                );
            }
        }
    }

    #[test]
    fn constant_function_has_zero_gradient_error() {
        let k = tetrahedron();
        let f = PLFunction::new(vec![1.0; 4]).unwrap();
        assert!(matches!(
            gradient_index(&k, &f, 0),
            Err(FieldError::ZeroGradientTriangle { .. })
        ));
        // The combinatorial route stays defined thanks to the tie-break:
        // vertex 0 is "below" every neighbor, a minimum.
        assert_eq!(banchoff_index(&k, &f, 0).unwrap(), 1);
    }

    #[test]
    fn csv_parsing_round_trips_and_rejects_junk() {
        let field = parse_field_csv("# a radial field\n1,0,1,0\n0,1,0,1\n-1,0,-1,0\n0,-1,0,-1\n")
            .unwrap();
        assert_eq!(field.eval([0.9, 0.1]), [1.0, 0.0]);
        assert!(matches!(
            parse_field_csv("1,0,1\n"),
            Err(FieldError::BadCsvRow { line: 1 })
        ));
        assert!(matches!(
            parse_field_csv("1,0,nope,0\n"),
            Err(FieldError::BadCsvRow { line: 1 })
        ));
        assert!(matches!(parse_field_csv("\n# only comments\n"), Err(FieldError::EmptySampleTable)));
    }

    #[test]
    fn function_length_is_checked() {
        let k = tetrahedron();
        let f = PLFunction::new(vec![0.0; 3]).unwrap();
        assert!(matches!(
            banchoff_index(&k, &f, 0),
            Err(FieldError::WrongLength { got: 3, want: 4 })
        ));
    }
}
