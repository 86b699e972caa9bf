//! B-spline basis functions, rational curves, and curvilinear
//! triangulations.
//!
//! Curves are evaluated directly from the recursive basis, with the
//! convention that a vanishing span contributes zero. Rational curves
//! divide a weighted combination of control points by the weighted basis
//! sum, so a degree-2 curve over knots `[0, 0, 0, 1, 1, 1]` with weights
//! `[1, sqrt(2)/2, 1]` traces an exact quarter circle:
//!
//! ```
//! use trishape_core::geom::Point2;
//! use trishape_core::splines::NurbsCurve;
//!
//! let quarter = NurbsCurve::new(
//!     vec![Point2::new(1.0, 0.0), Point2::new(1.0, 1.0), Point2::new(0.0, 1.0)],
//!     vec![1.0, f64::sqrt(2.0) / 2.0, 1.0],
//!     vec![0.0, 0.0, 0.0, 1.0, 1.0, 1.0],
//!     2,
//! ).unwrap();
//! let p = quarter.eval(0.3).unwrap();
//! assert!((p.x * p.x + p.y * p.y - 1.0).abs() < 1e-12);
//! ```
//!
//! [`curvilinearize`] replaces every straight edge of a triangulation by
//! such a curve, bowing the midpoint toward the centroid of the
//! incident face with the smaller spoke level.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::complexes::SpokeDecomposition;
use crate::error::Error;
use crate::geom::{Point2, Triangulation};

/// Clamped uniform knot vector for `n` control points of the given
/// degree: `degree + 1` zeros, evenly spaced interior knots, and
/// `degree + 1` ones.
pub fn clamped_uniform_knots(n: usize, degree: usize) -> Vec<f64> {
    let spans = n - degree;
    let mut knots = alloc::vec![0.0; degree + 1];
    knots.reserve(n);
    for i in 1..spans {
        knots.push(i as f64 / spans as f64);
    }
    knots.extend(core::iter::repeat_n(1.0, degree + 1));
    knots
}

/// Parameter interval on which a full set of basis functions is active.
fn domain(knots: &[f64], degree: usize) -> (f64, f64) {
    (knots[degree], knots[knots.len() - 1 - degree])
}

fn check_knots(knots: &[f64], degree: usize) -> Result<(), Error> {
    if knots.len() < 2 * (degree + 1) {
        return Err(Error::InvalidArgument(alloc::format!(
            "{} knots for degree {degree}",
            knots.len()
        )));
    }
    if knots.iter().any(|k| !k.is_finite()) {
        return Err(Error::InvalidArgument("non-finite knot".to_string()));
    }
    if knots.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("knots must be non-decreasing".to_string()));
    }
    Ok(())
}

fn check_domain(knots: &[f64], degree: usize, t: f64) -> Result<(), Error> {
    let (lo, hi) = domain(knots, degree);
    if !t.is_finite() || t < lo || t > hi {
        return Err(Error::OutOfDomain { t, lo, hi });
    }
    Ok(())
}

/// Degree-0 span indicator. Spans are half open except the last
/// non-empty one, which closes at the final knot so clamped curves reach
/// their last control point.
fn basis0(i: usize, t: f64, knots: &[f64]) -> f64 {
    let lo = knots[i];
    let hi = knots[i + 1];
    if lo < hi && t >= lo && (t < hi || (t == hi && hi == knots[knots.len() - 1])) {
        1.0
    } else {
        0.0
    }
}

fn basis_rec(i: usize, j: usize, t: f64, knots: &[f64]) -> f64 {
    if j == 0 {
        return basis0(i, t, knots);
    }
    // A vanishing denominator zeroes its whole term (the 0/0 convention).
    let mut value = 0.0;
    let dl = knots[i + j] - knots[i];
    if dl != 0.0 {
        value += (t - knots[i]) / dl * basis_rec(i, j - 1, t, knots);
    }
    let dr = knots[i + j + 1] - knots[i + 1];
    if dr != 0.0 {
        value += (knots[i + j + 1] - t) / dr * basis_rec(i + 1, j - 1, t, knots);
    }
    value
}

/// B-spline basis function of index `i` and degree `degree` at `t`.
///
/// # Errors
///
/// [`Error::InvalidArgument`] when the knot vector is too short for the
/// index, not sorted, or not finite. [`Error::OutOfDomain`] when `t`
/// falls outside the knot interval on which the basis of this degree is
/// complete.
pub fn bspline_basis(i: usize, degree: usize, t: f64, knots: &[f64]) -> Result<f64, Error> {
    check_knots(knots, degree)?;
    if i + degree + 1 >= knots.len() {
        return Err(Error::InvalidArgument(alloc::format!(
            "basis index {i} needs knot {} of {}",
            i + degree + 1,
            knots.len()
        )));
    }
    check_domain(knots, degree, t)?;
    Ok(basis_rec(i, degree, t, knots))
}

/// Point on a non-rational B-spline curve.
///
/// # Errors
///
/// [`Error::InvalidArgument`] when the control count, degree, and knot
/// count disagree; [`Error::OutOfDomain`] as for [`bspline_basis`].
pub fn bspline_point(
    control: &[Point2],
    degree: usize,
    knots: &[f64],
    t: f64,
) -> Result<Point2, Error> {
    check_knots(knots, degree)?;
    if control.len() + degree + 1 != knots.len() {
        return Err(Error::InvalidArgument(alloc::format!(
            "{} control points with {} knots at degree {degree}",
            control.len(),
            knots.len()
        )));
    }
    check_domain(knots, degree, t)?;
    let mut x = 0.0;
    let mut y = 0.0;
    for (i, p) in control.iter().enumerate() {
        let n = basis_rec(i, degree, t, knots);
        x += n * p.x;
        y += n * p.y;
    }
    Ok(Point2::new(x, y))
}

/// 3x3 matrix acting on homogeneous plane coordinates, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn translation(dx: f64, dy: f64) -> Mat3 {
        Mat3([[1.0, 0.0, dx], [0.0, 1.0, dy], [0.0, 0.0, 1.0]])
    }

    pub fn rotation(angle: f64) -> Mat3 {
        let (s, c) = (libm::sin(angle), libm::cos(angle));
        Mat3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn scaling(sx: f64, sy: f64) -> Mat3 {
        Mat3([[sx, 0.0, 0.0], [0.0, sy, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[r][k] * other.0[k][c]).sum();
            }
        }
        Mat3(out)
    }

    /// Image of `(x, y, 1)` before the projective division.
    pub fn apply_homogeneous(&self, p: Point2) -> (f64, f64, f64) {
        let m = &self.0;
        (
            m[0][0] * p.x + m[0][1] * p.y + m[0][2],
            m[1][0] * p.x + m[1][1] * p.y + m[1][2],
            m[2][0] * p.x + m[2][1] * p.y + m[2][2],
        )
    }

    /// Projective image of a plane point.
    ///
    /// # Errors
    ///
    /// [`Error::ProjectiveDegenerate`] when the point maps to infinity.
    pub fn apply_point(&self, p: Point2) -> Result<Point2, Error> {
        let (x, y, w) = self.apply_homogeneous(p);
        if w.abs() <= 1e-14 * (x.abs() + y.abs() + 1.0) {
            return Err(Error::ProjectiveDegenerate);
        }
        Ok(Point2::new(x / w, y / w))
    }
}

/// Rational B-spline curve in the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct NurbsCurve {
    control: Vec<Point2>,
    weights: Vec<f64>,
    knots: Vec<f64>,
    degree: usize,
}

impl NurbsCurve {
    /// # Errors
    ///
    /// [`Error::InvalidArgument`] when the control, weight, and knot
    /// counts disagree with the degree, a weight is not a positive
    /// finite number, or the knots are invalid.
    pub fn new(
        control: Vec<Point2>,
        weights: Vec<f64>,
        knots: Vec<f64>,
        degree: usize,
    ) -> Result<Self, Error> {
        check_knots(&knots, degree)?;
        if control.len() != weights.len() {
            return Err(Error::InvalidArgument(alloc::format!(
                "{} control points with {} weights",
                control.len(),
                weights.len()
            )));
        }
        if control.len() + degree + 1 != knots.len() {
            return Err(Error::InvalidArgument(alloc::format!(
                "{} control points with {} knots at degree {degree}",
                control.len(),
                knots.len()
            )));
        }
        if control.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument("non-finite control point".to_string()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::InvalidArgument("weights must be positive".to_string()));
        }
        Ok(NurbsCurve { control, weights, knots, degree })
    }

    pub fn control(&self) -> &[Point2] {
        &self.control
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Parameter interval of the curve.
    pub fn domain(&self) -> (f64, f64) {
        domain(&self.knots, self.degree)
    }

    /// Point on the curve at parameter `t`.
    ///
    /// # Errors
    ///
    /// [`Error::OutOfDomain`] outside the knot domain;
    /// [`Error::SingularWeight`] when the rational denominator vanishes.
    pub fn eval(&self, t: f64) -> Result<Point2, Error> {
        check_domain(&self.knots, self.degree, t)?;
        let mut nx = 0.0;
        let mut ny = 0.0;
        let mut den = 0.0;
        let mut scale = 0.0;
        for (i, p) in self.control.iter().enumerate() {
            let wn = self.weights[i] * basis_rec(i, self.degree, t, &self.knots);
            nx += wn * p.x;
            ny += wn * p.y;
            den += wn;
            scale += wn.abs();
        }
        if den.abs() <= 1e-14 * scale || scale == 0.0 {
            return Err(Error::SingularWeight { t });
        }
        Ok(Point2::new(nx / den, ny / den))
    }

    /// Samples the curve at `chords + 1` evenly spaced parameters.
    fn sample(&self, chords: usize) -> Result<Vec<Point2>, Error> {
        let (lo, hi) = self.domain();
        (0..=chords)
            .map(|k| self.eval(lo + (hi - lo) * k as f64 / chords as f64))
            .collect()
    }
}

/// Transforms a curve by a projective map: control points move through
/// the map and each weight picks up the homogeneous scale of its control
/// point. Evaluating the result equals mapping evaluated points.
///
/// # Errors
///
/// [`Error::ProjectiveDegenerate`] when a control point lands on the
/// horizon or the homogeneous scales change sign across the control
/// polygon.
pub fn apply_projective(curve: &NurbsCurve, map: &Mat3) -> Result<NurbsCurve, Error> {
    let mut control = Vec::with_capacity(curve.control.len());
    let mut weights = Vec::with_capacity(curve.weights.len());
    for (p, &w) in curve.control.iter().zip(&curve.weights) {
        let (x, y, scale) = map.apply_homogeneous(*p);
        if scale.abs() <= 1e-14 * (x.abs() + y.abs() + 1.0) {
            return Err(Error::ProjectiveDegenerate);
        }
        control.push(Point2::new(x / scale, y / scale));
        weights.push(w * scale);
    }
    // A common negative scale cancels in the rational quotient; flip it
    // so the stored weights stay positive.
    if weights.iter().all(|&w| w < 0.0) {
        for w in &mut weights {
            *w = -*w;
        }
    }
    if weights.iter().any(|&w| w <= 0.0) {
        return Err(Error::ProjectiveDegenerate);
    }
    NurbsCurve::new(control, weights, curve.knots.clone(), curve.degree)
}

/// A triangulation whose edges are rational quadratic curves. The
/// combinatorial structure is the base triangulation's; curve `i`
/// replaces edge `i` and runs from the lower-indexed endpoint to the
/// higher.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvTriangulation {
    base: Triangulation,
    curves: Vec<NurbsCurve>,
    bend: f64,
    mid_weight: f64,
}

impl CurvTriangulation {
    pub fn base(&self) -> &Triangulation {
        &self.base
    }

    pub fn curves(&self) -> &[NurbsCurve] {
        &self.curves
    }

    pub fn curve(&self, eid: usize) -> &NurbsCurve {
        &self.curves[eid]
    }

    pub fn bend(&self) -> f64 {
        self.bend
    }

    pub fn mid_weight(&self) -> f64 {
        self.mid_weight
    }
}

/// Bends every edge of `t` into a degree-2 rational curve. The middle
/// control point starts at the edge midpoint and moves `bend` of the way
/// toward the centroid of the incident face with the smaller spoke
/// level (lower face id on ties; the only face for boundary edges), so
/// each curve stays inside the closed face it bows into. `bend = 0`
/// reproduces the straight edges.
///
/// # Errors
///
/// [`Error::InvalidArgument`] when `bend` is outside `[0, 1)` or
/// `mid_weight` is not a positive finite number.
pub fn curvilinearize(
    t: &Triangulation,
    dec: &SpokeDecomposition,
    bend: f64,
    mid_weight: f64,
) -> Result<CurvTriangulation, Error> {
    if !bend.is_finite() || !(0.0..1.0).contains(&bend) {
        return Err(Error::InvalidArgument(alloc::format!("bend {bend} outside [0, 1)")));
    }
    if !mid_weight.is_finite() || mid_weight <= 0.0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "mid weight {mid_weight} must be positive"
        )));
    }
    let knots = clamped_uniform_knots(3, 2);
    let mut curves = Vec::with_capacity(t.edges().len());
    for (eid, &(u, v)) in t.edges().iter().enumerate() {
        let faces = t.edge_faces(eid);
        let face = faces
            .iter()
            .copied()
            .min_by_key(|&f| (dec.levels[f], f))
            .expect("every edge borders a face");
        let c = t.face_centroid(face);
        let m = t.site(u).lerp(t.site(v), 0.5);
        let mid = m.lerp(c, bend);
        curves.push(NurbsCurve::new(
            alloc::vec![t.site(u), mid, t.site(v)],
            alloc::vec![1.0, mid_weight, 1.0],
            knots.clone(),
            2,
        )?);
    }
    Ok(CurvTriangulation { base: t.clone(), curves, bend, mid_weight })
}

/// Chord-sum arc length over `samples` chords of equal parameter width.
/// Refining to a multiple of `samples` never shortens the estimate.
///
/// # Errors
///
/// [`Error::InvalidArgument`] when `samples < 2`.
pub fn curve_arc_length(curve: &NurbsCurve, samples: usize) -> Result<f64, Error> {
    if samples < 2 {
        return Err(Error::InvalidArgument(alloc::format!(
            "arc length needs at least 2 chords, got {samples}"
        )));
    }
    let pts = curve.sample(samples)?;
    Ok(pts.windows(2).map(|w| w[0].dist(w[1])).sum())
}

/// Area of a curvilinear face: the three edge curves are walked in the
/// face's counterclockwise orientation, `samples` chords each, and the
/// resulting polygon is measured by the shoelace rule.
///
/// # Errors
///
/// [`Error::OutOfBounds`] for a missing face id;
/// [`Error::InvalidArgument`] when `samples < 2`.
pub fn curv_triangle_area(
    ct: &CurvTriangulation,
    face: usize,
    samples: usize,
) -> Result<f64, Error> {
    if face >= ct.base.faces().len() {
        return Err(Error::OutOfBounds(alloc::format!(
            "face {face} of {}",
            ct.base.faces().len()
        )));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument(alloc::format!(
            "face sampling needs at least 2 chords, got {samples}"
        )));
    }
    let mut polygon: Vec<Point2> = Vec::with_capacity(3 * samples);
    for (a, b) in ct.base.faces()[face].directed_edges() {
        let eid = ct.base.edge_id(a, b).expect("face edge exists");
        let curve = &ct.curves[eid];
        let (lo, hi) = curve.domain();
        let forward = a <= b;
        // The closing point of each edge is the next edge's start.
        for k in 0..samples {
            let frac = k as f64 / samples as f64;
            let t = if forward {
                lo + (hi - lo) * frac
            } else {
                hi - (hi - lo) * frac
            };
            polygon.push(curve.eval(t)?);
        }
    }
    let mut twice = 0.0;
    for (i, p) in polygon.iter().enumerate() {
        let q = polygon[(i + 1) % polygon.len()];
        twice += p.x * q.y - p.y * q.x;
    }
    Ok(0.5 * twice.abs())
}
