//! Planar geometry: points, robust-enough predicates, convex hulls, and
//! Delaunay triangulations with their combinatorial structure.
//!
//! A [`Triangulation`] owns its sites and faces and derives the edge list,
//! edge-to-face incidence, and vertex-to-face incidence once at
//! construction. Faces are stored counterclockwise with their lowest
//! vertex index first and are sorted by vertex triple, so two
//! triangulations over the same sites compare equal exactly when they
//! triangulate the same way.

mod delaunay;
mod hull;
mod predicates;

pub use delaunay::delaunay_triangulate;
pub use hull::convex_hull;
pub use predicates::{in_circle, in_circle_test, orient2d, orientation, InCircle, Orientation};

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::Error;

/// A point in the plane. Coordinates are finite wherever a constructor of
/// a larger structure has had a chance to check them.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Euclidean distance to `other`.
    pub fn dist(self, other: Point2) -> f64 {
        libm::hypot(self.x - other.x, self.y - other.y)
    }

    pub fn dist_sq(self, other: Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    /// Linear interpolation, `t = 0` gives `self`, `t = 1` gives `other`.
    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        Point2::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }
}

/// A face given by three site indices. Stored counterclockwise with the
/// lowest index in `a` once the owning [`Triangulation`] has normalized it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Triangle {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Triangle {
    pub const fn new(a: usize, b: usize, c: usize) -> Self {
        Triangle { a, b, c }
    }

    pub fn vertices(self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }

    /// Vertex indices in ascending order.
    pub fn sorted_vertices(self) -> [usize; 3] {
        let mut v = self.vertices();
        v.sort_unstable();
        v
    }

    pub fn contains_vertex(self, v: usize) -> bool {
        self.a == v || self.b == v || self.c == v
    }

    /// True when the two faces share at least one vertex.
    pub fn shares_vertex(self, other: Triangle) -> bool {
        other.vertices().iter().any(|&v| self.contains_vertex(v))
    }

    /// The three undirected edges, each with its endpoints ascending.
    pub fn undirected_edges(self) -> [(usize, usize); 3] {
        [
            sort_pair(self.a, self.b),
            sort_pair(self.b, self.c),
            sort_pair(self.c, self.a),
        ]
    }

    /// The three directed edges in the stored orientation.
    pub fn directed_edges(self) -> [(usize, usize); 3] {
        [(self.a, self.b), (self.b, self.c), (self.c, self.a)]
    }

    /// Rotates the lowest vertex into `a` without changing orientation.
    fn rotate_min_first(self) -> Triangle {
        if self.a <= self.b && self.a <= self.c {
            self
        } else if self.b <= self.c {
            Triangle::new(self.b, self.c, self.a)
        } else {
            Triangle::new(self.c, self.a, self.b)
        }
    }
}

pub(crate) fn sort_pair(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Doubled signed area is the primitive; this halves and strips the sign.
pub fn triangle_area(a: Point2, b: Point2, c: Point2) -> f64 {
    0.5 * orient2d(a, b, c).abs()
}

/// A planar triangulation: a site list plus a set of triangular faces
/// whose interiors are pairwise disjoint and whose edges each border one
/// or two faces.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangulation {
    sites: Vec<Point2>,
    faces: Vec<Triangle>,
    /// Undirected edges, endpoints ascending, sorted lexicographically.
    edges: Vec<(usize, usize)>,
    /// Face ids incident to each edge, ascending; length 1 or 2.
    edge_faces: Vec<Vec<usize>>,
    /// Face ids incident to each site, ascending.
    vertex_faces: Vec<Vec<usize>>,
    /// Edge ids of each face's three edges.
    face_edges: Vec<[usize; 3]>,
}

impl Triangulation {
    /// Builds a triangulation from sites and faces, normalizing face
    /// storage and validating the structure.
    ///
    /// # Errors
    ///
    /// [`Error::DegenerateInput`] when there are fewer than three sites,
    /// a coordinate is not finite, a face has near-zero area, two faces
    /// overlap anywhere but a shared vertex or edge, or an edge borders
    /// more than two faces. [`Error::OutOfBounds`] when a face refers to
    /// a missing site.
    pub fn new(sites: Vec<Point2>, faces: Vec<Triangle>) -> Result<Self, Error> {
        if sites.len() < 3 {
            return Err(Error::DegenerateInput(
                "a triangulation needs at least 3 sites".to_string(),
            ));
        }
        if let Some(p) = sites.iter().find(|p| !p.is_finite()) {
            return Err(Error::DegenerateInput(alloc::format!(
                "non-finite site ({}, {})",
                p.x,
                p.y
            )));
        }
        if faces.is_empty() {
            return Err(Error::DegenerateInput("a triangulation needs at least 1 face".to_string()));
        }

        let mut normalized = Vec::with_capacity(faces.len());
        for face in &faces {
            let [a, b, c] = face.vertices();
            for v in [a, b, c] {
                if v >= sites.len() {
                    return Err(Error::OutOfBounds(alloc::format!(
                        "face vertex {v} with {} sites",
                        sites.len()
                    )));
                }
            }
            if a == b || b == c || a == c {
                return Err(Error::DegenerateInput(alloc::format!(
                    "face ({a}, {b}, {c}) repeats a vertex"
                )));
            }
            let face = match orientation(sites[a], sites[b], sites[c]) {
                Orientation::CounterClockwise => *face,
                Orientation::Clockwise => Triangle::new(a, c, b),
                Orientation::Collinear => {
                    return Err(Error::DegenerateInput(alloc::format!(
                        "face ({a}, {b}, {c}) is collinear"
                    )))
                }
            };
            normalized.push(face.rotate_min_first());
        }
        normalized.sort_unstable_by_key(|f| f.sorted_vertices());
        if normalized.windows(2).any(|w| w[0].sorted_vertices() == w[1].sorted_vertices()) {
            return Err(Error::DegenerateInput("duplicate face".to_string()));
        }

        let mut edge_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for face in &normalized {
            for e in face.undirected_edges() {
                let next = edge_ids.len();
                edge_ids.entry(e).or_insert(next);
            }
        }
        // BTreeMap iteration gives the edges in lexicographic order; re-key
        // them so edge ids follow that order.
        let edges: Vec<(usize, usize)> = edge_ids.keys().copied().collect();
        for (i, e) in edges.iter().enumerate() {
            *edge_ids.get_mut(e).unwrap() = i;
        }

        let mut edge_faces = alloc::vec![Vec::new(); edges.len()];
        let mut vertex_faces = alloc::vec![Vec::new(); sites.len()];
        let mut face_edges = Vec::with_capacity(normalized.len());
        for (fid, face) in normalized.iter().enumerate() {
            let mut fe = [0usize; 3];
            for (k, e) in face.undirected_edges().into_iter().enumerate() {
                let eid = edge_ids[&e];
                fe[k] = eid;
                edge_faces[eid].push(fid);
            }
            face_edges.push(fe);
            for v in face.vertices() {
                vertex_faces[v].push(fid);
            }
        }
        if let Some(eid) = edge_faces.iter().position(|f| f.len() > 2) {
            let (u, v) = edges[eid];
            return Err(Error::DegenerateInput(alloc::format!(
                "edge ({u}, {v}) borders {} faces",
                edge_faces[eid].len()
            )));
        }

        let t = Triangulation {
            sites,
            faces: normalized,
            edges,
            edge_faces,
            vertex_faces,
            face_edges,
        };
        t.check_disjoint_interiors()?;
        Ok(t)
    }

    /// Rejects face sets whose interiors overlap: a crossing or collinear
    /// overlap between edges of different faces, or a site strictly inside
    /// a face it does not belong to.
    fn check_disjoint_interiors(&self) -> Result<(), Error> {
        for (i, &(a1, b1)) in self.edges.iter().enumerate() {
            for &(a2, b2) in &self.edges[i + 1..] {
                if a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2 {
                    continue;
                }
                if segments_overlap(
                    self.sites[a1],
                    self.sites[b1],
                    self.sites[a2],
                    self.sites[b2],
                ) {
                    return Err(Error::DegenerateInput(alloc::format!(
                        "edges ({a1}, {b1}) and ({a2}, {b2}) cross"
                    )));
                }
            }
        }
        for (fid, face) in self.faces.iter().enumerate() {
            let [a, b, c] = face.vertices();
            for (v, p) in self.sites.iter().enumerate() {
                if face.contains_vertex(v) {
                    continue;
                }
                let strictly_inside = orientation(self.sites[a], self.sites[b], *p)
                    == Orientation::CounterClockwise
                    && orientation(self.sites[b], self.sites[c], *p) == Orientation::CounterClockwise
                    && orientation(self.sites[c], self.sites[a], *p) == Orientation::CounterClockwise;
                if strictly_inside {
                    return Err(Error::DegenerateInput(alloc::format!(
                        "site {v} lies inside face {fid}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn sites(&self) -> &[Point2] {
        &self.sites
    }

    pub fn faces(&self) -> &[Triangle] {
        &self.faces
    }

    /// Undirected edges with ascending endpoints, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Face ids bordering edge `eid`; one id on the outer boundary, two
    /// in the interior.
    pub fn edge_faces(&self, eid: usize) -> &[usize] {
        &self.edge_faces[eid]
    }

    /// Face ids incident to site `v`, ascending.
    pub fn vertex_faces(&self, v: usize) -> &[usize] {
        &self.vertex_faces[v]
    }

    /// Edge ids of face `fid` in the face's stored edge order.
    pub fn face_edges(&self, fid: usize) -> [usize; 3] {
        self.face_edges[fid]
    }

    /// Looks up the edge id of an undirected edge, if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&sort_pair(u, v)).ok()
    }

    pub fn site(&self, v: usize) -> Point2 {
        self.sites[v]
    }

    /// The three corner points of face `fid`.
    pub fn face_points(&self, fid: usize) -> [Point2; 3] {
        let f = self.faces[fid];
        [self.sites[f.a], self.sites[f.b], self.sites[f.c]]
    }

    /// Centroid of face `fid`.
    pub fn face_centroid(&self, fid: usize) -> Point2 {
        let [p, q, r] = self.face_points(fid);
        Point2::new((p.x + q.x + r.x) / 3.0, (p.y + q.y + r.y) / 3.0)
    }

    pub fn face_area(&self, fid: usize) -> f64 {
        let [p, q, r] = self.face_points(fid);
        triangle_area(p, q, r)
    }

    /// Axis-aligned bounding box of the sites as (min corner, max corner).
    pub fn bounding_box(&self) -> (Point2, Point2) {
        bounding_box(&self.sites)
    }

    /// Diagonal length of the site bounding box.
    pub fn bbox_diagonal(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        lo.dist(hi)
    }
}

/// Bounding box of a non-empty point slice as (min corner, max corner).
pub fn bounding_box(points: &[Point2]) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

/// True when two segments that share no endpoint index cross properly or
/// overlap along a collinear stretch.
fn segments_overlap(p1: Point2, q1: Point2, p2: Point2, q2: Point2) -> bool {
    let d1 = orientation(p2, q2, p1);
    let d2 = orientation(p2, q2, q1);
    let d3 = orientation(p1, q1, p2);
    let d4 = orientation(p1, q1, q2);

    use Orientation::Collinear as Col;
    if d1 != Col && d2 != Col && d3 != Col && d4 != Col {
        return d1 != d2 && d3 != d4;
    }
    // Collinear cases: endpoints of one segment on the other's line. An
    // overlap of positive length means the interiors meet; a single shared
    // point between distinct endpoints also counts as a crossing here.
    let on = |a: Point2, b: Point2, p: Point2| -> bool {
        orientation(a, b, p) == Col
            && p.x >= a.x.min(b.x) - 1e-12
            && p.x <= a.x.max(b.x) + 1e-12
            && p.y >= a.y.min(b.y) - 1e-12
            && p.y <= a.y.max(b.y) + 1e-12
    };
    (d1 == Col && on(p2, q2, p1))
        || (d2 == Col && on(p2, q2, q1))
        || (d3 == Col && on(p1, q1, p2))
        || (d4 == Col && on(p1, q1, q2))
}
