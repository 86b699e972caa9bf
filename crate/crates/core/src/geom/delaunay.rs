//! Incremental Delaunay triangulation.
//!
//! Sites are inserted one at a time into a triangulation seeded with a
//! large enclosing triangle. Each insertion removes the cavity of faces
//! whose circumcircle contains the new site and fans the site to the
//! cavity boundary. Cocircular sites count as inside the cavity; together
//! with insertion in ascending site order this makes the result a pure
//! function of the input sequence.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::Error;
use crate::geom::predicates::{in_circle_test, orientation, InCircle, Orientation};
use crate::geom::{bounding_box, Point2, Triangle, Triangulation};
use crate::tolerance::SNAP_SCALE;

/// Delaunay triangulation of `sites`.
///
/// Sites closer together than [`SNAP_SCALE`] times the bounding-box
/// diagonal are merged into the earliest of them first; the returned
/// triangulation owns the merged site list. Every face of the result has
/// an empty open circumdisk: no site lies strictly inside it.
///
/// # Errors
///
/// [`Error::DegenerateInput`] when fewer than three sites survive
/// merging, when a coordinate is not finite, or when all sites are
/// collinear.
pub fn delaunay_triangulate(sites: &[Point2]) -> Result<Triangulation, Error> {
    if let Some(p) = sites.iter().find(|p| !p.is_finite()) {
        return Err(Error::DegenerateInput(alloc::format!(
            "non-finite site ({}, {})",
            p.x,
            p.y
        )));
    }
    let sites = snap_sites(sites);
    if sites.len() < 3 {
        return Err(Error::DegenerateInput(
            "triangulation needs at least 3 distinct sites".to_string(),
        ));
    }
    if !has_noncollinear_triple(&sites) {
        return Err(Error::DegenerateInput("all sites are collinear".to_string()));
    }

    let (lo, hi) = bounding_box(&sites);
    let cx = 0.5 * (lo.x + hi.x);
    let cy = 0.5 * (lo.y + hi.y);
    let r = 20.0 * lo.dist(hi).max(1.0);
    let n = sites.len();
    let mut work = sites.clone();
    work.push(Point2::new(cx - 2.0 * r, cy - r));
    work.push(Point2::new(cx + 2.0 * r, cy - r));
    work.push(Point2::new(cx, cy + 2.0 * r));

    let mut faces: Vec<Triangle> = alloc::vec![ccw(&work, n, n + 1, n + 2)];
    for p in 0..n {
        insert_site(&work, &mut faces, p);
    }
    faces.retain(|f| f.vertices().iter().all(|&v| v < n));
    if faces.is_empty() {
        return Err(Error::DegenerateInput("no faces over the input sites".to_string()));
    }
    Triangulation::new(sites, faces)
}

/// Merges sites closer than the snap tolerance, keeping the earliest
/// occurrence of each cluster.
fn snap_sites(sites: &[Point2]) -> Vec<Point2> {
    let (lo, hi) = bounding_box(sites);
    let tol = SNAP_SCALE * lo.dist(hi);
    let tol_sq = tol * tol;
    let mut kept: Vec<Point2> = Vec::with_capacity(sites.len());
    for &p in sites {
        if !kept.iter().any(|q| q.dist_sq(p) <= tol_sq) {
            kept.push(p);
        }
    }
    kept
}

fn has_noncollinear_triple(sites: &[Point2]) -> bool {
    let a = sites[0];
    let b = *sites[1..]
        .iter()
        .max_by(|p, q| a.dist_sq(**p).partial_cmp(&a.dist_sq(**q)).unwrap())
        .unwrap();
    sites
        .iter()
        .any(|&c| orientation(a, b, c) != Orientation::Collinear)
}

fn ccw(pts: &[Point2], a: usize, b: usize, c: usize) -> Triangle {
    if orientation(pts[a], pts[b], pts[c]) == Orientation::Clockwise {
        Triangle::new(a, c, b)
    } else {
        Triangle::new(a, b, c)
    }
}

fn insert_site(pts: &[Point2], faces: &mut Vec<Triangle>, p: usize) {
    // Cavity: every face whose closed circumdisk reaches the new site.
    let mut cavity: Vec<Triangle> = Vec::new();
    faces.retain(|f| {
        let hit = in_circle_test(pts[f.a], pts[f.b], pts[f.c], pts[p]) != InCircle::Outside;
        if hit {
            cavity.push(*f);
        }
        !hit
    });

    // Cavity boundary: undirected edges owned by exactly one cavity face.
    let mut boundary: Vec<(usize, usize)> = Vec::new();
    for f in &cavity {
        for e in f.undirected_edges() {
            if let Some(i) = boundary.iter().position(|&x| x == e) {
                boundary.swap_remove(i);
            } else {
                boundary.push(e);
            }
        }
    }
    for (u, v) in boundary {
        faces.push(ccw(pts, p, u, v));
    }
}
