//! The orientation double cover.
//!
//! Every triangle contributes two oriented copies, one per orientation;
//! copies glue across each base edge so that the induced edge orientations
//! cancel. The glued corners are merged by union-find into cover vertices,
//! which avoids choosing local orientations vertex by vertex. The result is
//! always orientable; it is connected exactly when the base is not.

use crate::complex::{ComplexError, SurfaceComplex};
use crate::fields::PLFunction;
use crate::geom::{add3, cross3, norm3, normalize3, scale3, sub3};

/// The orientation double cover of a base complex, with its projection and
/// sheet-swapping deck involution.
#[derive(Debug, Clone)]
pub struct DoubleCover {
    cover: SurfaceComplex,
    /// Base vertex under each cover vertex.
    projection: Vec<usize>,
    /// The involution swapping the two preimages of every base vertex.
    deck: Vec<usize>,
}

impl DoubleCover {
    pub fn cover(&self) -> &SurfaceComplex {
        &self.cover
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn deck(&self) -> &[usize] {
        &self.deck
    }

    /// The two preimages of a base vertex.
    pub fn fiber(&self, base_vertex: usize) -> [usize; 2] {
        let first = self
            .projection
            .iter()
            .position(|&b| b == base_vertex)
            .expect("every base vertex has preimages");
        [first, self.deck[first]]
    }

    /// CSV table `cover_id,base_id,deck_id`, one row per cover vertex.
    pub fn maps_csv(&self) -> String {
        let mut out = String::from("cover_id,base_id,deck_id\n");
        for v in 0..self.projection.len() {
            out.push_str(&format!("{},{},{}\n", v, self.projection[v], self.deck[v]));
        }
        out
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins, keeping class ids stable.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Builds the orientation double cover of a connected complex.
pub fn orientation_double_cover(k: &SurfaceComplex) -> Result<DoubleCover, ComplexError> {
    if !k.is_connected() {
        return Err(ComplexError::DisconnectedComplex);
    }
    let n2 = k.triangle_count();
    // Corner slots: copy c of triangle t, corner j, at (c * n2 + t) * 3 + j.
    let slot = |c: usize, t: usize, j: usize| (c * n2 + t) * 3 + j;
    let corner_of = |t: usize, v: usize| {
        k.triangle(t).iter().position(|&x| x == v).expect("vertex belongs to triangle")
    };
    let mut uf = UnionFind::new(6 * n2);
    for edge in k.edges() {
        let [t, u] = edge.tris;
        let (a, b) = edge.ends;
        let forward = |id: usize| {
            let tri = k.triangle(id);
            (tri[0] == a && tri[1] == b) || (tri[1] == a && tri[2] == b)
                || (tri[2] == a && tri[0] == b)
        };
        // Copy c of a triangle traverses (a, b) forward iff the stored
        // order does xor c. Glue the copies that disagree.
        let same_copy = forward(t) != forward(u);
        for c in 0..2 {
            let cu = if same_copy { c } else { 1 - c };
            for v in [a, b] {
                uf.union(slot(c, t, corner_of(t, v)), slot(cu, u, corner_of(u, v)));
            }
        }
    }

    // Dense cover-vertex ids in first-appearance order of the slot roots.
    let mut class_id = vec![usize::MAX; 6 * n2];
    let mut projection = Vec::new();
    let mut representative_slot = Vec::new();
    for c in 0..2 {
        for t in 0..n2 {
            for j in 0..3 {
                let s = slot(c, t, j);
                let root = uf.find(s);
                if class_id[root] == usize::MAX {
                    class_id[root] = projection.len();
                    projection.push(k.triangle(t)[j]);
                    representative_slot.push(s);
                }
            }
        }
    }
    let vertex_at = |uf: &mut UnionFind, c: usize, t: usize, j: usize| {
        class_id[uf.find(slot(c, t, j))]
    };

    // Copy 0 keeps the stored vertex order, copy 1 reverses it, so the
    // stored orders already form a global orientation of the cover.
    let mut triangles = Vec::with_capacity(2 * n2);
    for c in 0..2 {
        for t in 0..n2 {
            let (v0, v1, v2) = (
                vertex_at(&mut uf, c, t, 0),
                vertex_at(&mut uf, c, t, 1),
                vertex_at(&mut uf, c, t, 2),
            );
            triangles.push(if c == 0 { [v0, v1, v2] } else { [v0, v2, v1] });
        }
    }

    let deck: Vec<usize> = representative_slot
        .iter()
        .map(|&s| {
            let (ct, j) = (s / 3, s % 3);
            let (c, t) = (ct / n2, ct % n2);
            class_id[uf.find(slot(1 - c, t, j))]
        })
        .collect();

    // Cover coordinates: base coordinates nudged along the vertex normal,
    // one sheet each way, purely so OFF exports do not self-overlap.
    let normals = vertex_normals(k);
    let offset = 0.05 * mean_edge_length(k);
    let positions: Vec<[f64; 3]> = (0..projection.len())
        .map(|v| {
            let sign = if v < deck[v] { 1.0 } else { -1.0 };
            add3(k.position(projection[v]), scale3(normals[projection[v]], sign * offset))
        })
        .collect();

    let cover = SurfaceComplex::build(positions, triangles)
        .expect("gluing two oriented copies of a closed surface stays closed");
    debug_assert!(cover.vertex_count() == 2 * k.vertex_count());
    Ok(DoubleCover { cover, projection, deck })
}

fn vertex_normals(k: &SurfaceComplex) -> Vec<[f64; 3]> {
    let mut normals = vec![[0.0; 3]; k.vertex_count()];
    for &[a, b, c] in k.triangles() {
        let n = cross3(
            sub3(k.position(b), k.position(a)),
            sub3(k.position(c), k.position(a)),
        );
        for v in [a, b, c] {
            normals[v] = add3(normals[v], n);
        }
    }
    normals
        .into_iter()
        .map(|n| if norm3(n) > 1e-9 { normalize3(n) } else { [0.0; 3] })
        .collect()
}

fn mean_edge_length(k: &SurfaceComplex) -> f64 {
    let total: f64 = k
        .edges()
        .iter()
        .map(|e| norm3(sub3(k.position(e.ends.0), k.position(e.ends.1))))
        .sum();
    total / k.edge_count() as f64
}

/// Pulls a base function back through the projection. Indices are preserved
/// at both preimages of every singularity because the projection is a local
/// homeomorphism on stars.
pub fn lift_function(dc: &DoubleCover, f: &PLFunction) -> PLFunction {
    PLFunction::new(dc.projection().iter().map(|&b| f.value(b)).collect())
        .expect("lift of a finite function is finite")
}
