//! Sign predicates with magnitude-relative tolerance.
//!
//! Determinants are compared against [`SIGN_EPS_SCALE`] times the sum of
//! the absolute values of their additive terms, so the zero band scales
//! with the coordinates involved instead of being a fixed constant.

use crate::geom::Point2;
use crate::tolerance::SIGN_EPS_SCALE;

/// Which side of the directed line a -> b the point c lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

/// Relation of a query point to a triangle's circumcircle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InCircle {
    Outside,
    On,
    Inside,
}

/// Twice the signed area of triangle (a, b, c); positive when the triple
/// turns counterclockwise.
pub fn orient2d(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Tolerance-aware sign of [`orient2d`].
pub fn orientation(a: Point2, b: Point2, c: Point2) -> Orientation {
    let t1 = (b.x - a.x) * (c.y - a.y);
    let t2 = (b.y - a.y) * (c.x - a.x);
    let det = t1 - t2;
    let eps = SIGN_EPS_SCALE * (t1.abs() + t2.abs());
    if det > eps {
        Orientation::CounterClockwise
    } else if det < -eps {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

/// In-circle determinant for the circumcircle of (a, b, c). Positive when
/// d is strictly inside, given (a, b, c) counterclockwise.
pub fn in_circle(a: Point2, b: Point2, c: Point2, d: Point2) -> f64 {
    let (det, _) = in_circle_parts(a, b, c, d);
    det
}

/// Tolerance-aware classification of d against the circumcircle of the
/// counterclockwise triangle (a, b, c).
pub fn in_circle_test(a: Point2, b: Point2, c: Point2, d: Point2) -> InCircle {
    let (det, magnitude) = in_circle_parts(a, b, c, d);
    let eps = SIGN_EPS_SCALE * magnitude;
    if det > eps {
        InCircle::Inside
    } else if det < -eps {
        InCircle::Outside
    } else {
        InCircle::On
    }
}

fn in_circle_parts(a: Point2, b: Point2, c: Point2, d: Point2) -> (f64, f64) {
    let ax = a.x - d.x;
    let ay = a.y - d.y;
    let bx = b.x - d.x;
    let by = b.y - d.y;
    let cx = c.x - d.x;
    let cy = c.y - d.y;
    let a2 = ax * ax + ay * ay;
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let t1 = a2 * (bx * cy - by * cx);
    let t2 = b2 * (ax * cy - ay * cx);
    let t3 = c2 * (ax * by - ay * bx);
    (t1 - t2 + t3, t1.abs() + t2.abs() + t3.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: Point2 = Point2::new(0.0, 0.0);
    const B: Point2 = Point2::new(1.0, 0.0);
    const C: Point2 = Point2::new(0.0, 1.0);

    #[test]
    fn orientation_signs() {
        assert_eq!(orientation(A, B, C), Orientation::CounterClockwise);
        assert_eq!(orientation(A, C, B), Orientation::Clockwise);
        assert_eq!(orientation(A, B, Point2::new(2.0, 0.0)), Orientation::Collinear);
        assert_eq!(orient2d(A, B, C), 1.0);
    }

    #[test]
    fn orientation_zero_band_scales_with_magnitude() {
        // Near-cancelling products of magnitude 2e12 leave an absolute
        // tolerance of a few units; a deviation below it reads as
        // collinear, one above it does not.
        let b = Point2::new(1e6, 1e6);
        assert_eq!(
            orientation(A, b, Point2::new(2e6, 2e6 + 1e-8)),
            Orientation::Collinear
        );
        assert_eq!(
            orientation(A, b, Point2::new(2e6, 2e6 + 1e-3)),
            Orientation::CounterClockwise
        );
    }

    #[test]
    fn in_circle_classification() {
        // Circumcircle of (A, B, C) has center (0.5, 0.5).
        assert_eq!(in_circle_test(A, B, C, Point2::new(0.5, 0.5)), InCircle::Inside);
        assert_eq!(in_circle_test(A, B, C, Point2::new(1.0, 1.0)), InCircle::On);
        assert_eq!(in_circle_test(A, B, C, Point2::new(2.0, 2.0)), InCircle::Outside);
        assert!(in_circle(A, B, C, Point2::new(0.5, 0.5)) > 0.0);
    }

    #[test]
    fn in_circle_matches_circumcircle_radius() {
        // Compare the predicate against an explicit circumcenter
        // computation on an irregular triangle.
        let a = Point2::new(0.3, -0.2);
        let b = Point2::new(2.1, 0.4);
        let c = Point2::new(0.9, 1.7);
        let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
        let ux = ((a.x * a.x + a.y * a.y) * (b.y - c.y)
            + (b.x * b.x + b.y * b.y) * (c.y - a.y)
            + (c.x * c.x + c.y * c.y) * (a.y - b.y))
            / d;
        let uy = ((a.x * a.x + a.y * a.y) * (c.x - b.x)
            + (b.x * b.x + b.y * b.y) * (a.x - c.x)
            + (c.x * c.x + c.y * c.y) * (b.x - a.x))
            / d;
        let center = Point2::new(ux, uy);
        let r = center.dist(a);
        for (q, expected) in [
            (center, InCircle::Inside),
            (Point2::new(ux + 2.0 * r, uy), InCircle::Outside),
            (Point2::new(ux + 0.5 * r, uy), InCircle::Inside),
        ] {
            assert_eq!(in_circle_test(a, b, c, q), expected);
        }
    }
}
