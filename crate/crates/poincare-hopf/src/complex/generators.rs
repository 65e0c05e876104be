//! Built-in meshes: spheres, tori, and the two small non-orientable models.

use super::{ComplexError, SurfaceComplex};
use crate::geom::{cross3, dot3, normalize3, sub3};
use std::collections::HashMap;
use std::f64::consts::PI;

/// Boundary of the regular tetrahedron inscribed in the unit sphere.
pub fn tetrahedron() -> SurfaceComplex {
    let s = 1.0 / 3.0_f64.sqrt();
    let pts = vec![
        [s, s, s],
        [s, -s, -s],
        [-s, s, -s],
        [-s, -s, s],
    ];
    let tris = vec![[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]];
    SurfaceComplex::build(pts, tris).expect("tetrahedron is a valid complex")
}

/// The cube surface split into 12 binding triangles, scaled onto the unit
/// sphere: 8 vertices, 18 edges, 12 triangles.
pub fn cube_sphere() -> SurfaceComplex {
    let s = 1.0 / 3.0_f64.sqrt();
    let mut pts = Vec::with_capacity(8);
    for z in [-s, s] {
        for y in [-s, s] {
            for x in [-s, s] {
                pts.push([x, y, z]);
            }
        }
    }
    // Quads of the cube with outward orientation, each split on a diagonal.
    let quads = [
        [0, 2, 3, 1], // bottom (z = -s)
        [4, 5, 7, 6], // top
        [0, 1, 5, 4], // front (y = -s)
        [2, 6, 7, 3], // back
        [0, 4, 6, 2], // left (x = -s)
        [1, 3, 7, 5], // right
    ];
    let mut tris = Vec::with_capacity(12);
    for q in quads {
        tris.push([q[0], q[1], q[2]]);
        tris.push([q[0], q[2], q[3]]);
    }
    SurfaceComplex::build(pts, tris).expect("cube sphere is a valid complex")
}

fn icosahedron_raw() -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let mut pts = Vec::with_capacity(12);
    for &(a, b) in &[(1.0, phi), (1.0, -phi), (-1.0, phi), (-1.0, -phi)] {
        pts.push([0.0, a, b]);
        pts.push([a, b, 0.0]);
        pts.push([b, 0.0, a]);
    }
    // Faces are the triples of mutually nearest vertices (separation 2 in
    // these golden-rectangle coordinates), oriented outward.
    let adjacent = |i: usize, j: usize| {
        let d = sub3(pts[i], pts[j]);
        (dot3(d, d) - 4.0).abs() < 1e-9
    };
    let mut tris = Vec::with_capacity(20);
    for i in 0..12 {
        for j in i + 1..12 {
            if !adjacent(i, j) {
                continue;
            }
            for k in j + 1..12 {
                if adjacent(i, k) && adjacent(j, k) {
                    let normal = cross3(sub3(pts[j], pts[i]), sub3(pts[k], pts[i]));
                    if dot3(normal, pts[i]) > 0.0 {
                        tris.push([i, j, k]);
                    } else {
                        tris.push([i, k, j]);
                    }
                }
            }
        }
    }
    debug_assert_eq!(tris.len(), 20);
    let pts = pts.into_iter().map(normalize3).collect();
    (pts, tris)
}

/// Regular icosahedron inscribed in the unit sphere: 12 vertices, 30 edges,
/// 20 triangles.
pub fn icosahedron() -> SurfaceComplex {
    let (pts, tris) = icosahedron_raw();
    SurfaceComplex::build(pts, tris).expect("icosahedron is a valid complex")
}

/// Icosahedron refined `level` times by 1-to-4 triangle splits, every new
/// vertex pushed out to the unit sphere.
pub fn refined_icosahedron(level: u32) -> SurfaceComplex {
    let mut k = icosahedron();
    for _ in 0..level {
        let mut pts = k.vertices().to_vec();
        let midpoint_base = pts.len();
        for edge in k.edges() {
            let (a, b) = edge.ends;
            let pa = k.position(a);
            let pb = k.position(b);
            pts.push(normalize3([
                (pa[0] + pb[0]) / 2.0,
                (pa[1] + pb[1]) / 2.0,
                (pa[2] + pb[2]) / 2.0,
            ]));
        }
        let mid = |a: usize, b: usize| midpoint_base + k.edge_id(a, b).expect("edge exists");
        let mut tris = Vec::with_capacity(4 * k.triangle_count());
        for &[a, b, c] in k.triangles() {
            let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
            tris.push([a, ab, ca]);
            tris.push([ab, b, bc]);
            tris.push([ca, bc, c]);
            tris.push([ab, bc, ca]);
        }
        k = SurfaceComplex::build(pts, tris).expect("refinement preserves validity");
    }
    k
}

/// Torus from an m x n grid on the square with opposite sides identified,
/// embedded with major radius 2 and minor radius 1.
pub fn torus_grid(m: usize, n: usize) -> Result<SurfaceComplex, ComplexError> {
    if m < 3 || n < 3 {
        return Err(ComplexError::GridTooSmall { m, n });
    }
    let mut pts = Vec::with_capacity(m * n);
    for i in 0..m {
        let theta = 2.0 * PI * i as f64 / m as f64;
        for j in 0..n {
            let phi = 2.0 * PI * j as f64 / n as f64;
            let r = 2.0 + phi.cos();
            pts.push([r * theta.cos(), r * theta.sin(), phi.sin()]);
        }
    }
    let vid = |i: usize, j: usize| (i % m) * n + (j % n);
    let mut tris = Vec::with_capacity(2 * m * n);
    for i in 0..m {
        for j in 0..n {
            let (c00, c10, c01, c11) = (vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1));
            tris.push([c00, c10, c11]);
            tris.push([c00, c11, c01]);
        }
    }
    SurfaceComplex::build(pts, tris)
}

/// Klein bottle from an m x n grid: the theta sides are identified with a
/// flip in phi. Coordinates come from the figure-eight immersion, which is
/// regular even though it self-intersects in 3-space.
pub fn klein_grid(m: usize, n: usize) -> Result<SurfaceComplex, ComplexError> {
    if m < 3 || n < 3 {
        return Err(ComplexError::GridTooSmall { m, n });
    }
    let immerse = |theta: f64, phi: f64| -> [f64; 3] {
        let r = 3.0 + (theta / 2.0).cos() * phi.sin() - (theta / 2.0).sin() * (2.0 * phi).sin();
        let z = (theta / 2.0).sin() * phi.sin() + (theta / 2.0).cos() * (2.0 * phi).sin();
        [r * theta.cos(), r * theta.sin(), z]
    };
    let mut pts = Vec::with_capacity(m * n);
    for i in 0..m {
        let theta = 2.0 * PI * i as f64 / m as f64;
        for j in 0..n {
            let phi = 2.0 * PI * j as f64 / n as f64;
            pts.push(immerse(theta, phi));
        }
    }
    // Crossing theta = 2pi lands on the i = 0 column with phi reversed.
    let vid = |i: usize, j: usize| {
        let jj = j % n;
        if i < m {
            i * n + jj
        } else {
            (n - jj) % n
        }
    };
    let mut tris = Vec::with_capacity(2 * m * n);
    for i in 0..m {
        for j in 0..n {
            let (c00, c10, c01, c11) = (vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1));
            tris.push([c00, c10, c11]);
            tris.push([c00, c11, c01]);
        }
    }
    SurfaceComplex::build(pts, tris)
}

/// The 6-vertex projective plane: antipodal quotient of the icosahedron,
/// with 15 edges and 10 triangles. Its edge graph is the complete graph K6.
pub fn projective_plane_6() -> SurfaceComplex {
    let (pts, tris) = icosahedron_raw();
    // Pair each vertex with its antipode; the quotient keeps the member of
    // each pair with the lower id.
    let mut antipode = vec![usize::MAX; pts.len()];
    for (i, p) in pts.iter().enumerate() {
        for (j, q) in pts.iter().enumerate() {
            if (p[0] + q[0]).abs() < 1e-12
                && (p[1] + q[1]).abs() < 1e-12
                && (p[2] + q[2]).abs() < 1e-12
            {
                antipode[i] = j;
            }
        }
    }
    let mut rep_id = HashMap::new();
    let mut quotient_pts = Vec::new();
    let mut quotient_of = vec![usize::MAX; pts.len()];
    for i in 0..pts.len() {
        let rep = i.min(antipode[i]);
        let id = *rep_id.entry(rep).or_insert_with(|| {
            quotient_pts.push(pts[rep]);
            quotient_pts.len() - 1
        });
        quotient_of[i] = id;
    }
    // Antipodal faces project to the same triangle; keep each once.
    let mut seen = HashMap::new();
    let mut quotient_tris = Vec::new();
    for tri in tris {
        let mapped = [quotient_of[tri[0]], quotient_of[tri[1]], quotient_of[tri[2]]];
        let mut key = mapped;
        key.sort_unstable();
        if seen.insert(key, ()).is_none() {
            quotient_tris.push(mapped);
        }
    }
    SurfaceComplex::build(quotient_pts, quotient_tris)
        .expect("antipodal icosahedron quotient is a valid complex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{cross3, norm3, sub3};

    #[test]
    fn refined_icosahedron_counts() {
        // One refinement: V + E new vertices, 4x triangles.
        let k1 = refined_icosahedron(1);
        assert_eq!(k1.vertex_count(), 42);
        assert_eq!(k1.triangle_count(), 80);
        let k2 = refined_icosahedron(2);
        assert_eq!(k2.vertex_count(), 162);
        assert_eq!(k2.edge_count(), 480);
        assert_eq!(k2.triangle_count(), 320);
        assert_eq!(k2.euler_characteristic(), 2);
    }

    #[test]
    fn refined_icosahedron_vertices_are_unit() {
        let k = refined_icosahedron(2);
        for p in k.vertices() {
            assert!((norm3(*p) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn torus_grid_counts_and_chi() {
        for (m, n) in [(3, 3), (4, 4), (5, 3)] {
            let k = torus_grid(m, n).unwrap();
            assert_eq!(k.vertex_count(), m * n);
            assert_eq!(k.edge_count(), 3 * m * n);
            assert_eq!(k.triangle_count(), 2 * m * n);
            assert_eq!(k.euler_characteristic(), 0);
            assert!(k.orient().is_orientable());
        }
    }

    #[test]
    fn grid_too_small_is_rejected() {
        assert!(matches!(torus_grid(2, 5), Err(ComplexError::GridTooSmall { m: 2, n: 5 })));
        assert!(matches!(klein_grid(3, 2), Err(ComplexError::GridTooSmall { .. })));
    }

    #[test]
    fn projective_plane_counts() {
        let k = projective_plane_6();
        assert_eq!(k.vertex_count(), 6);
        assert_eq!(k.edge_count(), 15);
        assert_eq!(k.triangle_count(), 10);
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn projective_plane_nonorientability_is_exhaustive() {
        // Independent check behind the orientation sweep: no assignment of
        // the 2^10 flip masks orients all 15 edges consistently.
        let k = projective_plane_6();
        let nt = k.triangle_count();
        'mask: for mask in 0u32..(1 << nt) {
            for edge in k.edges() {
                let [t, u] = edge.tris;
                let oriented = |id: usize| -> [usize; 3] {
                    let tri = k.triangle(id);
                    if mask >> id & 1 == 1 {
                        [tri[0], tri[2], tri[1]]
                    } else {
                        tri
                    }
                };
                let (a, b) = edge.ends;
                let forward = |tri: [usize; 3]| {
                    (tri[0] == a && tri[1] == b)
                        || (tri[1] == a && tri[2] == b)
                        || (tri[2] == a && tri[0] == b)
                };
                if forward(oriented(t)) == forward(oriented(u)) {
                    continue 'mask;
                }
            }
            panic!("found a consistent orientation of rp2 with mask {mask:#b}");
        }
    }

    #[test]
    fn quotient_mesh_triangles_are_far_from_degenerate() {
        // Star charts need positive triangle areas; check the two quotient
        // constructions whose coordinates are only representatives.
        for k in [projective_plane_6(), klein_grid(3, 3).unwrap(), klein_grid(4, 4).unwrap()] {
            for &[a, b, c] in k.triangles() {
                let area = norm3(cross3(
                    sub3(k.position(b), k.position(a)),
                    sub3(k.position(c), k.position(a)),
                )) / 2.0;
                assert!(area > 1e-6, "triangle [{a},{b},{c}] has area {area}");
            }
        }
    }
}
