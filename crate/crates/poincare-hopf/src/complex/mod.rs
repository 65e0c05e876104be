//! Closed triangulated surfaces: validation, Euler characteristic,
//! orientability, and genus.
//!
//! A [`SurfaceComplex`] is a simplicial surface without boundary: every edge
//! is shared by exactly two triangles and the link of every vertex is a
//! single simple cycle. Construction validates all of this; the query
//! operations can then assume a clean mesh.

mod generators;
pub mod off;

pub use generators::{
    cube_sphere, icosahedron, klein_grid, projective_plane_6, refined_icosahedron, tetrahedron,
    torus_grid,
};

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("complex needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("triangle {tri} references vertex {vertex}, but there are only {count} vertices")]
    VertexOutOfRange { tri: usize, vertex: usize, count: usize },
    #[error("triangle {0} repeats a vertex id")]
    DegenerateTriangle(usize),
    #[error("triangles {0} and {1} span the same vertex set")]
    DuplicateTriangle(usize, usize),
    #[error("edge ({a}, {b}) is incident to {count} triangles, expected 2")]
    NonManifoldEdge { a: usize, b: usize, count: usize },
    #[error("the link of vertex {0} is not a single simple cycle")]
    PinchedVertex(usize),
    #[error("operation requires a connected complex")]
    DisconnectedComplex,
    #[error("quotient grid needs m, n >= 3, got {m} x {n}")]
    GridTooSmall { m: usize, n: usize },
}

/// An undirected edge together with its two incident triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    /// Endpoint vertex ids with `ends.0 < ends.1`.
    pub ends: (usize, usize),
    /// The two incident triangle ids, in order of discovery.
    pub tris: [usize; 2],
}

/// A closed triangulated surface with derived incidence tables.
///
/// Immutable after construction; all operations are pure queries.
#[derive(Debug, Clone)]
pub struct SurfaceComplex {
    vertices: Vec<[f64; 3]>,
    triangles: Vec<[usize; 3]>,
    edges: Vec<Edge>,
    edge_ids: HashMap<(usize, usize), usize>,
    /// Link cycle of each vertex: the neighbors in cyclic order.
    links: Vec<Vec<usize>>,
    /// Star triangles of each vertex: `star[v][i]` spans `v`, `link[v][i]`,
    /// `link[v][(i + 1) % d]`.
    stars: Vec<Vec<usize>>,
}

/// Outcome of the orientation sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrientationResult {
    /// A consistent global orientation: triangle `t` keeps its stored vertex
    /// order when `flips[t]` is false and reverses it otherwise.
    Orientable { flips: Vec<bool> },
    /// A cycle of pairwise edge-adjacent triangles whose orientation
    /// transport comes back reversed.
    NonOrientable { witness: Vec<usize> },
}

impl OrientationResult {
    pub fn is_orientable(&self) -> bool {
        matches!(self, OrientationResult::Orientable { .. })
    }
}

/// Orientability, Euler characteristic, and genus of a connected complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusReport {
    pub orientable: bool,
    pub euler: i64,
    /// Orientable: the handle count g with chi = 2 - 2g.
    /// Non-orientable: the cross-cap count k with chi = 2 - k.
    pub genus: i64,
}

impl SurfaceComplex {
    /// Builds and fully validates a complex from vertex coordinates and
    /// triangle vertex triples.
    pub fn build(
        vertices: Vec<[f64; 3]>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, ComplexError> {
        if vertices.len() < 4 {
            return Err(ComplexError::TooFewVertices(vertices.len()));
        }
        let n = vertices.len();
        let mut seen_tris: HashMap<[usize; 3], usize> = HashMap::with_capacity(triangles.len());
        for (t, tri) in triangles.iter().enumerate() {
            for &v in tri {
                if v >= n {
                    return Err(ComplexError::VertexOutOfRange { tri: t, vertex: v, count: n });
                }
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(ComplexError::DegenerateTriangle(t));
            }
            let mut key = *tri;
            key.sort_unstable();
            match seen_tris.entry(key) {
                Entry::Occupied(prev) => {
                    return Err(ComplexError::DuplicateTriangle(*prev.get(), t))
                }
                Entry::Vacant(slot) => {
                    slot.insert(t);
                }
            }
        }

        // Edge table in first-encounter order, so edge ids are reproducible.
        let mut edges: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        let mut edge_ids: HashMap<(usize, usize), usize> = HashMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            for (a, b) in [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])] {
                let key = (a.min(b), a.max(b));
                let id = *edge_ids.entry(key).or_insert_with(|| {
                    edges.push((key.0, key.1, Vec::new()));
                    edges.len() - 1
                });
                edges[id].2.push(t);
            }
        }
        let edges: Vec<Edge> = edges
            .into_iter()
            .map(|(a, b, tris)| {
                if tris.len() != 2 {
                    return Err(ComplexError::NonManifoldEdge { a, b, count: tris.len() });
                }
                Ok(Edge { ends: (a, b), tris: [tris[0], tris[1]] })
            })
            .collect::<Result<_, _>>()?;

        let (links, stars) = vertex_links(n, &triangles, &edges, &edge_ids)?;

        Ok(SurfaceComplex { vertices, triangles, edges, edge_ids, links, stars })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    pub fn position(&self, v: usize) -> [f64; 3] {
        self.vertices[v]
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle(&self, t: usize) -> [usize; 3] {
        self.triangles[t]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Id of the undirected edge (a, b), if present.
    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_ids.get(&(a.min(b), a.max(b))).copied()
    }

    /// The neighbors of `v` in cyclic link order.
    pub fn link(&self, v: usize) -> &[usize] {
        &self.links[v]
    }

    /// The star triangles of `v`, aligned with [`Self::link`]:
    /// `star(v)[i]` spans `v`, `link(v)[i]`, `link(v)[(i + 1) % d]`.
    pub fn star(&self, v: usize) -> &[usize] {
        &self.stars[v]
    }

    /// chi = n0 - n1 + n2.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Propagates triangle orientations across shared edges, sweeping every
    /// component from its lowest-id triangle.
    pub fn orient(&self) -> OrientationResult {
        let mut flips = vec![false; self.triangles.len()];
        let mut visited = vec![false; self.triangles.len()];
        for start in 0..self.triangles.len() {
            if !visited[start] {
                match self.sweep_orientation(start, &mut flips, &mut visited) {
                    Ok(()) => {}
                    Err(witness) => return OrientationResult::NonOrientable { witness },
                }
            }
        }
        OrientationResult::Orientable { flips }
    }

    /// Like [`Self::orient`], but seeds the sweep of the start triangle's
    /// component at `start`. The verdict never depends on the seed.
    pub fn orient_from(&self, start: usize) -> OrientationResult {
        let mut flips = vec![false; self.triangles.len()];
        let mut visited = vec![false; self.triangles.len()];
        if let Err(witness) = self.sweep_orientation(start, &mut flips, &mut visited) {
            return OrientationResult::NonOrientable { witness };
        }
        for t in 0..self.triangles.len() {
            if !visited[t] {
                match self.sweep_orientation(t, &mut flips, &mut visited) {
                    Ok(()) => {}
                    Err(witness) => return OrientationResult::NonOrientable { witness },
                }
            }
        }
        OrientationResult::Orientable { flips }
    }

    fn sweep_orientation(
        &self,
        start: usize,
        flips: &mut [bool],
        visited: &mut [bool],
    ) -> Result<(), Vec<usize>> {
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        visited[start] = true;
        queue.push_back(start);
        while let Some(t) = queue.pop_front() {
            for (u, same_direction) in self.edge_neighbors(t) {
                // Adjacent triangles are consistent when they traverse the
                // shared edge in opposite directions.
                let want = flips[t] ^ same_direction;
                if !visited[u] {
                    visited[u] = true;
                    flips[u] = want;
                    parent.insert(u, t);
                    queue.push_back(u);
                } else if flips[u] != want {
                    return Err(witness_cycle(&parent, t, u));
                }
            }
        }
        Ok(())
    }

    /// For each edge of triangle `t`: the opposite triangle and whether it
    /// traverses the shared edge in the same direction as `t` does.
    fn edge_neighbors(&self, t: usize) -> impl Iterator<Item = (usize, bool)> + '_ {
        let tri = self.triangles[t];
        [(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])]
            .into_iter()
            .map(move |(a, b)| {
                let e = self.edge_ids[&(a.min(b), a.max(b))];
                let Edge { tris, .. } = self.edges[e];
                let u = if tris[0] == t { tris[1] } else { tris[0] };
                (u, traverses_forward(self.triangles[u], a, b))
            })
    }

    /// True if the complex has a single triangle-connected component.
    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn component_count(&self) -> usize {
        let mut visited = vec![false; self.triangles.len()];
        let mut components = 0;
        for start in 0..self.triangles.len() {
            if visited[start] {
                continue;
            }
            components += 1;
            let mut queue = VecDeque::from([start]);
            visited[start] = true;
            while let Some(t) = queue.pop_front() {
                for (u, _) in self.edge_neighbors(t) {
                    if !visited[u] {
                        visited[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        components
    }

    /// Genus from chi: g = (2 - chi) / 2 when orientable, k = 2 - chi
    /// otherwise. Requires a connected complex.
    pub fn genus(&self) -> Result<GenusReport, ComplexError> {
        if !self.is_connected() {
            return Err(ComplexError::DisconnectedComplex);
        }
        let euler = self.euler_characteristic();
        let orientable = self.orient().is_orientable();
        let genus = if orientable {
            debug_assert!(euler % 2 == 0, "closed orientable surface must have even chi");
            (2 - euler) / 2
        } else {
            2 - euler
        };
        Ok(GenusReport { orientable, euler, genus })
    }
}

/// Does `tri`, read in its stored order, contain the directed edge (a, b)?
fn traverses_forward(tri: [usize; 3], a: usize, b: usize) -> bool {
    (tri[0] == a && tri[1] == b) || (tri[1] == a && tri[2] == b) || (tri[2] == a && tri[0] == b)
}

/// Walks the link of every vertex; errors unless each link is one simple
/// cycle covering all incident triangles.
#[allow(clippy::type_complexity)]
fn vertex_links(
    n: usize,
    triangles: &[[usize; 3]],
    edges: &[Edge],
    edge_ids: &HashMap<(usize, usize), usize>,
) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>), ComplexError> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (t, tri) in triangles.iter().enumerate() {
        for &v in tri {
            incident[v].push(t);
        }
    }
    let mut links = Vec::with_capacity(n);
    let mut stars = Vec::with_capacity(n);
    for (v, tris) in incident.iter().enumerate() {
        if tris.is_empty() {
            return Err(ComplexError::PinchedVertex(v));
        }
        // Map each link vertex to its (at most two) cyclic neighbors.
        let mut next: HashMap<usize, Vec<usize>> = HashMap::new();
        for &t in tris {
            let [a, b] = opposite_edge(triangles[t], v);
            next.entry(a).or_default().push(b);
            next.entry(b).or_default().push(a);
        }
        // Each incident edge (v, w) carries exactly two triangles, so every
        // link vertex already has degree two; a pinch shows up as the walk
        // closing before it has consumed the whole star.
        let start = *next.keys().min().expect("nonempty link");
        if next[&start].len() != 2 {
            return Err(ComplexError::PinchedVertex(v));
        }
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = {
            let mut around = next[&start].clone();
            around.sort_unstable();
            around[0]
        };
        while cur != start {
            cycle.push(cur);
            let around = &next[&cur];
            if around.len() != 2 {
                return Err(ComplexError::PinchedVertex(v));
            }
            let step = if around[0] == prev { around[1] } else { around[0] };
            prev = cur;
            cur = step;
            if cycle.len() > tris.len() {
                return Err(ComplexError::PinchedVertex(v));
            }
        }
        if cycle.len() != tris.len() || cycle.len() != next.len() || cycle.len() < 3 {
            return Err(ComplexError::PinchedVertex(v));
        }
        let mut star = Vec::with_capacity(cycle.len());
        for i in 0..cycle.len() {
            let a = cycle[i];
            let b = cycle[(i + 1) % cycle.len()];
            let e = edge_ids[&(a.min(b), a.max(b))];
            let t = edges[e]
                .tris
                .into_iter()
                .find(|&t| triangles[t].contains(&v))
                .ok_or(ComplexError::PinchedVertex(v))?;
            star.push(t);
        }
        links.push(cycle);
        stars.push(star);
    }
    Ok((links, stars))
}

fn opposite_edge(tri: [usize; 3], v: usize) -> [usize; 2] {
    match tri {
        [a, b, c] if a == v => [b, c],
        [a, b, c] if b == v => [c, a],
        [a, b, c] => {
            debug_assert_eq!(c, v);
            [a, b]
        }
    }
}

/// Closes the odd cycle root..t -> u..root discovered by the orientation
/// sweep into a list of pairwise adjacent triangles.
fn witness_cycle(parent: &HashMap<usize, usize>, t: usize, u: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut path = vec![x];
        while let Some(&p) = parent.get(&x) {
            path.push(p);
            x = p;
        }
        path
    };
    let mut up = path_to_root(t);
    let mut down = path_to_root(u);
    // Trim the common tail so the witness is a simple cycle through the
    // lowest common ancestor.
    while up.len() > 1 && down.len() > 1 && up[up.len() - 1] == down[down.len() - 1]
        && up[up.len() - 2] == down[down.len() - 2]
    {
        up.pop();
        down.pop();
    }
    up.reverse();
    up.extend(down);
    up.pop();
    up
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_counts_and_chi() {
        let k = tetrahedron();
        assert_eq!(k.vertex_count(), 4);
        assert_eq!(k.edge_count(), 6);
        assert_eq!(k.triangle_count(), 4);
        assert_eq!(k.euler_characteristic(), 2);
    }

    #[test]
    fn open_disk_is_rejected() {
        // Two triangles sharing one edge: every boundary edge has count 1.
        let pts = vec![
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [1.0, 1.0, 0.0],
        ];
        let err = SurfaceComplex::build(pts, vec![[0, 1, 2], [1, 3, 2]]).unwrap_err();
        assert!(matches!(err, ComplexError::NonManifoldEdge { count: 1, .. }));
    }

    #[test]
    fn cube_sphere_counts() {
        let k = cube_sphere();
        assert_eq!(k.vertex_count(), 8);
        assert_eq!(k.edge_count(), 18);
        assert_eq!(k.triangle_count(), 12);
        assert_eq!(k.euler_characteristic(), 2);
    }

    #[test]
    fn degenerate_triangle_is_rejected() {
        let pts = vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let err = SurfaceComplex::build(pts, vec![[0, 1, 1], [0, 1, 2]]).unwrap_err();
        assert_eq!(err, ComplexError::DegenerateTriangle(0));
    }

    #[test]
    fn out_of_range_vertex_is_rejected() {
        let pts = vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let err = SurfaceComplex::build(pts, vec![[0, 1, 7]]).unwrap_err();
        assert!(matches!(err, ComplexError::VertexOutOfRange { vertex: 7, .. }));
    }

    #[test]
    fn pinched_vertex_is_rejected() {
        // Two tetrahedra joined at a single vertex: every edge is fine but
        // the shared vertex has two disjoint link cycles.
        let mut pts = Vec::new();
        for p in [
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [-1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, -1.0],
        ] {
            pts.push(p);
        }
        let tris = vec![
            [0, 1, 2],
            [0, 3, 1],
            [0, 2, 3],
            [1, 3, 2],
            [0, 4, 5],
            [0, 6, 4],
            [0, 5, 6],
            [4, 6, 5],
        ];
        let err = SurfaceComplex::build(pts, tris).unwrap_err();
        assert_eq!(err, ComplexError::PinchedVertex(0));
    }

    #[test]
    fn tetrahedron_is_orientable() {
        let k = tetrahedron();
        match k.orient() {
            OrientationResult::Orientable { flips } => {
                // The generator already lists faces consistently.
                assert!(flips.iter().all(|&f| !f));
            }
            OrientationResult::NonOrientable { .. } => panic!("tetrahedron must be orientable"),
        }
    }

    #[test]
    fn genus_of_sphere_torus_rp2() {
        let sphere = icosahedron().genus().unwrap();
        assert_eq!(sphere, GenusReport { orientable: true, euler: 2, genus: 0 });
        let torus = torus_grid(4, 4).unwrap().genus().unwrap();
        assert_eq!(torus, GenusReport { orientable: true, euler: 0, genus: 1 });
        let rp2 = projective_plane_6().genus().unwrap();
        assert_eq!(rp2, GenusReport { orientable: false, euler: 1, genus: 1 });
    }

    #[test]
    fn klein_grid_is_nonorientable_with_chi_zero() {
        let k = klein_grid(4, 4).unwrap();
        assert_eq!(k.euler_characteristic(), 0);
        let report = k.genus().unwrap();
        assert!(!report.orientable);
        assert_eq!(report.genus, 2);
    }

    #[test]
    fn nonorientable_witness_is_an_odd_cycle() {
        let k = projective_plane_6();
        let OrientationResult::NonOrientable { witness } = k.orient() else {
            panic!("rp2 must be non-orientable");
        };
        assert!(witness.len() >= 3);
        // Transport an orientation around the cycle; it must come back
        // reversed, which is exactly what makes the complex non-orientable.
        let mut parity = false;
        for i in 0..witness.len() {
            let t = witness[i];
            let u = witness[(i + 1) % witness.len()];
            let tri_t = k.triangle(t);
            let shared: Vec<usize> =
                tri_t.into_iter().filter(|v| k.triangle(u).contains(v)).collect();
            assert_eq!(shared.len(), 2, "witness triangles {t} and {u} must share an edge");
            let (a, b) = if traverses_forward(tri_t, shared[0], shared[1]) {
                (shared[0], shared[1])
            } else {
                (shared[1], shared[0])
            };
            parity ^= traverses_forward(k.triangle(u), a, b);
        }
        assert!(parity, "orientation transport around the witness must flip");
    }

    #[test]
    fn disconnected_complex_genus_errors() {
        let mut pts = tetrahedron().vertices().to_vec();
        let far: Vec<[f64; 3]> = tetrahedron()
            .vertices()
            .iter()
            .map(|p| [p[0] + 10.0, p[1], p[2]])
            .collect();
        pts.extend(far);
        let mut tris = tetrahedron().triangles().to_vec();
        let shifted: Vec<[usize; 3]> = tetrahedron()
            .triangles()
            .iter()
            .map(|t| [t[0] + 4, t[1] + 4, t[2] + 4])
            .collect();
        tris.extend(shifted);
        let k = SurfaceComplex::build(pts, tris).unwrap();
        assert_eq!(k.component_count(), 2);
        assert_eq!(k.euler_characteristic(), 4);
        assert_eq!(k.genus().unwrap_err(), ComplexError::DisconnectedComplex);
    }

    #[test]
    fn star_aligns_with_link() {
        let k = icosahedron();
        for v in 0..k.vertex_count() {
            let link = k.link(v);
            let star = k.star(v);
            assert_eq!(link.len(), star.len());
            for i in 0..link.len() {
                let tri = k.triangle(star[i]);
                assert!(tri.contains(&v));
                assert!(tri.contains(&link[i]));
                assert!(tri.contains(&link[(i + 1) % link.len()]));
            }
        }
    }
}
