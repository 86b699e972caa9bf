//! Nearness predicates between triangles and face collections.
//!
//! Three relations of increasing strength appear here. `near` holds when
//! closures touch, i.e. the face sets share a vertex. `strongly_near`
//! holds when sigma-expanded interiors overlap: with no expansion only
//! face-sharing counts, while any positive sigma lets adjacent faces
//! overlap, and disjoint regions must come within `2 * sigma` of each
//! other. `descriptively_near` ignores position entirely and compares
//! image-derived feature vectors.
//!
//! The expansion primitive is [`OpenTriangle`]: the intersection of the
//! triangle's three half-planes, each pushed outward by `sigma`. The
//! half-plane inequalities use unit normals, so `sigma` is a distance in
//! site coordinates, and the relaxed region strictly contains the closed
//! triangle for every positive `sigma`.

use alloc::collections::BTreeSet;

use libm::{atan2, hypot, round};

use crate::error::Error;
use crate::geom::{orient2d, triangle_area, Point2, Triangle, Triangulation};
use crate::raster::GrayImage;

/// A triangle expanded outward by `sigma` along each edge normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpenTriangle {
    base: Triangle,
    sigma: f64,
}

impl OpenTriangle {
    /// Wraps `base` with expansion `sigma`.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidArgument`] unless `sigma` is positive and finite;
    /// [`Error::OutOfBounds`] for a vertex index outside `sites`;
    /// [`Error::DegenerateInput`] when the vertices are collinear.
    pub fn new(base: Triangle, sigma: f64, sites: &[Point2]) -> Result<Self, Error> {
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::InvalidArgument(alloc::format!(
                "expansion {sigma} must be positive"
            )));
        }
        let [a, b, c] = base.vertices();
        for v in [a, b, c] {
            if v >= sites.len() {
                return Err(Error::OutOfBounds(alloc::format!(
                    "vertex {v} of {} sites",
                    sites.len()
                )));
            }
        }
        if orient2d(sites[a], sites[b], sites[c]) == 0.0 {
            return Err(Error::DegenerateInput(alloc::format!(
                "triangle ({a}, {b}, {c}) is collinear"
            )));
        }
        Ok(OpenTriangle { base, sigma })
    }

    pub fn base(&self) -> Triangle {
        self.base
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Whether `q` satisfies all three relaxed half-plane inequalities.
    ///
    /// Every point of the closed triangle passes: boundary points sit at
    /// signed distance zero, strictly above `-sigma`.
    pub fn contains(&self, sites: &[Point2], q: Point2) -> bool {
        let [i, j, k] = self.base.vertices();
        let (a, b, c) = if orient2d(sites[i], sites[j], sites[k]) > 0.0 {
            (sites[i], sites[j], sites[k])
        } else {
            (sites[i], sites[k], sites[j])
        };
        for (p, r) in [(a, b), (b, c), (c, a)] {
            let len = p.dist(r);
            let cross = (r.x - p.x) * (q.y - p.y) - (r.y - p.y) * (q.x - p.x);
            if cross / len <= -self.sigma {
                return false;
            }
        }
        true
    }
}

fn vertex_set(t: &Triangulation, faces: &[usize]) -> BTreeSet<usize> {
    let mut set = BTreeSet::new();
    for &f in faces {
        for v in t.faces()[f].vertices() {
            set.insert(v);
        }
    }
    set
}

/// Whether the closed regions of two face sets intersect.
///
/// Faces of one triangulation meet only along shared vertices and edges,
/// so closure intersection reduces to a common vertex.
pub fn near(t: &Triangulation, a: &[usize], b: &[usize]) -> bool {
    let va = vertex_set(t, a);
    vertex_set(t, b).iter().any(|v| va.contains(v))
}

fn point_segment_dist(q: Point2, a: Point2, b: Point2) -> f64 {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    let len_sq = dx * dx + dy * dy;
    if len_sq == 0.0 {
        return q.dist(a);
    }
    let s = ((q.x - a.x) * dx + (q.y - a.y) * dy) / len_sq;
    let s = s.clamp(0.0, 1.0);
    q.dist(Point2::new(a.x + s * dx, a.y + s * dy))
}

fn segments_cross(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let d1 = orient2d(c, d, a);
    let d2 = orient2d(c, d, b);
    let d3 = orient2d(a, b, c);
    let d4 = orient2d(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

fn segment_pair_dist(a: Point2, b: Point2, c: Point2, d: Point2) -> f64 {
    if segments_cross(a, b, c, d) {
        return 0.0;
    }
    point_segment_dist(a, c, d)
        .min(point_segment_dist(b, c, d))
        .min(point_segment_dist(c, a, b))
        .min(point_segment_dist(d, a, b))
}

fn region_dist(t: &Triangulation, a: &[usize], b: &[usize]) -> f64 {
    let mut best = f64::INFINITY;
    for &fa in a {
        for (p0, p1) in t.faces()[fa].directed_edges().map(|(u, v)| (t.site(u), t.site(v))) {
            for &fb in b {
                for (q0, q1) in
                    t.faces()[fb].directed_edges().map(|(u, v)| (t.site(u), t.site(v)))
                {
                    best = best.min(segment_pair_dist(p0, p1, q0, q1));
                }
            }
        }
    }
    best
}

/// Whether the sigma-expanded open interiors of two face sets intersect.
///
/// With `sigma <= 0` no expansion happens and only a shared face makes
/// interiors overlap. A positive `sigma` thickens each region by `sigma`
/// on every side, so touching regions overlap immediately and disjoint
/// regions overlap exactly when their distance drops below `2 * sigma`.
pub fn strongly_near(t: &Triangulation, a: &[usize], b: &[usize], sigma: f64) -> bool {
    if a.iter().any(|f| b.contains(f)) {
        return true;
    }
    if sigma <= 0.0 {
        return false;
    }
    if near(t, a, b) {
        return true;
    }
    region_dist(t, a, b) < 2.0 * sigma
}

/// Gradient of the image function at one vertex, in polar form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gradient {
    /// Magnitude, intensity units per pixel; never negative.
    pub magnitude: f64,
    /// Orientation in radians, half-open range `(-pi, pi]`.
    pub angle: f64,
}

/// Position-free feature vector of one triangle over an image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleDescriptor {
    /// Gradient at each vertex pixel, in vertex order.
    pub grad: [Gradient; 3],
    /// Euclidean edge lengths, in directed-edge order.
    pub edge_lengths: [f64; 3],
    pub area: f64,
}

/// Gradient, edge-length, and area features of `tri` sampled from `img`.
///
/// Each vertex rounds to its nearest pixel; the gradient there is the
/// central difference of intensity, with reads past the border clamped
/// to the border pixel.
///
/// # Errors
///
/// [`Error::OutOfBounds`] for a vertex index outside `sites` or a vertex
/// lying outside the raster.
pub fn triangle_descriptor(
    img: &GrayImage,
    tri: Triangle,
    sites: &[Point2],
) -> Result<TriangleDescriptor, Error> {
    let [i, j, k] = tri.vertices();
    for v in [i, j, k] {
        if v >= sites.len() {
            return Err(Error::OutOfBounds(alloc::format!(
                "vertex {v} of {} sites",
                sites.len()
            )));
        }
        let p = sites[v];
        if !img.contains(p.x, p.y) {
            return Err(Error::OutOfBounds(alloc::format!(
                "vertex {v} at ({}, {}) outside {}x{} raster",
                p.x,
                p.y,
                img.width(),
                img.height()
            )));
        }
    }
    let mut grad = [Gradient { magnitude: 0.0, angle: 0.0 }; 3];
    for (slot, &v) in [i, j, k].iter().enumerate() {
        let px = round(sites[v].x) as isize;
        let py = round(sites[v].y) as isize;
        let gx = (f64::from(img.get_clamped(px + 1, py))
            - f64::from(img.get_clamped(px - 1, py)))
            / 2.0;
        let gy = (f64::from(img.get_clamped(px, py + 1))
            - f64::from(img.get_clamped(px, py - 1)))
            / 2.0;
        let angle = atan2(gy, gx);
        grad[slot] = Gradient {
            magnitude: hypot(gx, gy),
            angle: if angle <= -core::f64::consts::PI {
                core::f64::consts::PI
            } else {
                angle
            },
        };
    }
    let (a, b, c) = (sites[i], sites[j], sites[k]);
    Ok(TriangleDescriptor {
        grad,
        edge_lengths: [a.dist(b), b.dist(c), c.dist(a)],
        area: triangle_area(a, b, c),
    })
}

/// Per-feature tolerances for descriptor comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescriptorTolerance {
    pub grad_magnitude: f64,
    pub edge_length: f64,
    pub area: f64,
}

impl DescriptorTolerance {
    /// The same tolerance for every feature.
    pub fn uniform(tol: f64) -> Self {
        DescriptorTolerance { grad_magnitude: tol, edge_length: tol, area: tol }
    }
}

fn sorted3(values: [f64; 3]) -> [f64; 3] {
    let mut v = values;
    v.sort_unstable_by(f64::total_cmp);
    v
}

/// Whether two descriptors agree within `tol` on every feature.
///
/// Edge lengths and gradient magnitudes are compared sorted, so vertex
/// order does not matter. Any negative tolerance component fails every
/// comparison, including a descriptor against itself.
pub fn descriptively_near(
    d1: &TriangleDescriptor,
    d2: &TriangleDescriptor,
    tol: DescriptorTolerance,
) -> bool {
    if (d1.area - d2.area).abs() > tol.area {
        return false;
    }
    let (e1, e2) = (sorted3(d1.edge_lengths), sorted3(d2.edge_lengths));
    if e1.iter().zip(&e2).any(|(x, y)| (x - y).abs() > tol.edge_length) {
        return false;
    }
    let m1 = sorted3([d1.grad[0].magnitude, d1.grad[1].magnitude, d1.grad[2].magnitude]);
    let m2 = sorted3([d2.grad[0].magnitude, d2.grad[1].magnitude, d2.grad[2].magnitude]);
    m1.iter().zip(&m2).all(|(x, y)| (x - y).abs() <= tol.grad_magnitude)
}
