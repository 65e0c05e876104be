//! Barycentric subdivision with labeled barycenters.
//!
//! Every simplex of the base complex contributes one vertex of the
//! subdivision: the original vertices stay put, each edge gains its
//! midpoint, each triangle its centroid. Vertex ids are allocated in that
//! order, so reports are reproducible.

use crate::complex::SurfaceComplex;

/// Which simplex of the base complex a subdivision vertex is the
/// barycenter of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BarycenterKind {
    Vertex = 0,
    Edge = 1,
    Triangle = 2,
}

impl BarycenterKind {
    /// The dimension 0, 1, or 2 of the parent simplex.
    pub fn dimension(self) -> u8 {
        self as u8
    }
}

/// Parent simplex of a subdivision vertex, by id in the base complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParentSimplex {
    Vertex(usize),
    Edge(usize),
    Triangle(usize),
}

/// The barycentric subdivision K' of a base complex, with per-vertex
/// barycenter labels.
#[derive(Debug, Clone)]
pub struct SubdividedComplex {
    complex: SurfaceComplex,
    kinds: Vec<BarycenterKind>,
    parents: Vec<ParentSimplex>,
}

impl SubdividedComplex {
    pub fn complex(&self) -> &SurfaceComplex {
        &self.complex
    }

    pub fn kind(&self, v: usize) -> BarycenterKind {
        self.kinds[v]
    }

    pub fn kinds(&self) -> &[BarycenterKind] {
        &self.kinds
    }

    pub fn parent(&self, v: usize) -> ParentSimplex {
        self.parents[v]
    }
}

/// Builds the barycentric subdivision: each triangle splits into six, one
/// per (vertex, edge, triangle) barycenter chain.
pub fn barycentric(k: &SurfaceComplex) -> SubdividedComplex {
    let n0 = k.vertex_count();
    let n1 = k.edge_count();
    let n2 = k.triangle_count();

    let mut points = Vec::with_capacity(n0 + n1 + n2);
    let mut kinds = Vec::with_capacity(n0 + n1 + n2);
    let mut parents = Vec::with_capacity(n0 + n1 + n2);

    points.extend_from_slice(k.vertices());
    for v in 0..n0 {
        kinds.push(BarycenterKind::Vertex);
        parents.push(ParentSimplex::Vertex(v));
    }
    for (e, edge) in k.edges().iter().enumerate() {
        let (a, b) = edge.ends;
        let (pa, pb) = (k.position(a), k.position(b));
        points.push([
            (pa[0] + pb[0]) / 2.0,
            (pa[1] + pb[1]) / 2.0,
            (pa[2] + pb[2]) / 2.0,
        ]);
        kinds.push(BarycenterKind::Edge);
        parents.push(ParentSimplex::Edge(e));
    }
    for (t, &[a, b, c]) in k.triangles().iter().enumerate() {
        let (pa, pb, pc) = (k.position(a), k.position(b), k.position(c));
        points.push([
            (pa[0] + pb[0] + pc[0]) / 3.0,
            (pa[1] + pb[1] + pc[1]) / 3.0,
            (pa[2] + pb[2] + pc[2]) / 3.0,
        ]);
        kinds.push(BarycenterKind::Triangle);
        parents.push(ParentSimplex::Triangle(t));
    }

    let edge_vertex = |a: usize, b: usize| n0 + k.edge_id(a, b).expect("edge of a triangle");
    let mut triangles = Vec::with_capacity(6 * n2);
    for (t, &[a, b, c]) in k.triangles().iter().enumerate() {
        let g = n0 + n1 + t;
        for (u, v) in [(a, b), (b, c), (c, a)] {
            let m = edge_vertex(u, v);
            triangles.push([u, m, g]);
            triangles.push([m, v, g]);
        }
    }

    let complex =
        SurfaceComplex::build(points, triangles).expect("subdivision of a valid complex is valid");
    SubdividedComplex { complex, kinds, parents }
}
