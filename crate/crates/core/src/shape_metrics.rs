//! Geodesic shape features and relative-difference comparison metrics.
//!
//! Two feature extractors feed one comparison pipeline. Triangulation
//! features ride on the edge graph: the graph diameter, plus maximum and
//! mean geodesic distance over opposing boundary-vertex pairs, plus
//! total face area. Mask features come straight from the pixels: support
//! widths swept over equally spaced orientations stand in for the
//! diameters, and the convex hull of the pixel centers approximates the
//! area. Either kind of feature vector can then be compared through
//! [`relative_difference`], [`rd_difference`], and [`rd_pnorm`].
//!
//! Opposing pairs come from splitting the boundary vertices about their
//! centroid twice, horizontally and vertically. The split is strict on
//! the above and right sides, so vertices exactly on a centroid line
//! count as below, respectively left, and each split is a partition.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use libm::{cos, fabs, pow, sin};

use crate::complexes::boundary;
use crate::error::Error;
use crate::geodesics::{distance_matrix, graph_diameter, WeightedGraph};
use crate::geom::{convex_hull, sort_pair, Point2, Triangulation};
use crate::raster::BinaryMask;
use crate::splines::{curv_triangle_area, CurvTriangulation};

/// Geodesic and area features of one shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeFeatures {
    /// Graph diameter; absent for mask-derived features, which have no
    /// edge graph.
    pub gdia: Option<f64>,
    pub dia_max: f64,
    pub dia_mean: f64,
    pub area: f64,
}

/// Boundary vertices split about their centroid, as indices into the
/// input slice. `above` and `below` partition the input, as do `left`
/// and `right`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPartition {
    pub above: Vec<usize>,
    pub below: Vec<usize>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub centroid: Point2,
}

/// Splits vertices by strict comparison against the centroid of the
/// whole set: above means `y > centroid.y`, right means `x > centroid.x`.
///
/// # Errors
///
/// [`Error::DegenerateInput`] when `bv` is empty.
pub fn boundary_vertex_partition(bv: &[Point2]) -> Result<BoundaryPartition, Error> {
    if bv.is_empty() {
        return Err(Error::DegenerateInput("no boundary vertices".into()));
    }
    let mut cx = 0.0;
    let mut cy = 0.0;
    for p in bv {
        cx += p.x;
        cy += p.y;
    }
    let centroid = Point2::new(cx / bv.len() as f64, cy / bv.len() as f64);
    let mut part = BoundaryPartition {
        above: Vec::new(),
        below: Vec::new(),
        left: Vec::new(),
        right: Vec::new(),
        centroid,
    };
    for (i, p) in bv.iter().enumerate() {
        if p.y > centroid.y {
            part.above.push(i);
        } else {
            part.below.push(i);
        }
        if p.x > centroid.x {
            part.right.push(i);
        } else {
            part.left.push(i);
        }
    }
    Ok(part)
}

/// Vertex ids touching at least one boundary edge, ascending.
pub fn boundary_vertices(t: &Triangulation) -> Vec<usize> {
    let b = boundary(t);
    let mut set = BTreeSet::new();
    for &eid in &b.edges {
        let (u, v) = t.edges()[eid];
        set.insert(u);
        set.insert(v);
    }
    set.into_iter().collect()
}

fn features_from_graph<F>(
    t: &Triangulation,
    g: &WeightedGraph,
    mut face_area: F,
) -> Result<ShapeFeatures, Error>
where
    F: FnMut(usize) -> Result<f64, Error>,
{
    let m = distance_matrix(g);
    let dia = graph_diameter(&m)?;

    let bv = boundary_vertices(t);
    let positions: Vec<Point2> = bv.iter().map(|&v| t.site(v)).collect();
    let part = boundary_vertex_partition(&positions)?;
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &r in &part.right {
        for &l in &part.left {
            pairs.insert(sort_pair(bv[r], bv[l]));
        }
    }
    for &a in &part.above {
        for &b in &part.below {
            pairs.insert(sort_pair(bv[a], bv[b]));
        }
    }
    if pairs.is_empty() {
        return Err(Error::DegenerateInput(
            "boundary vertices yield no opposing pairs".into(),
        ));
    }
    let mut dia_max = 0.0_f64;
    let mut sum = 0.0;
    for &(u, v) in &pairs {
        let d = m.get(u, v);
        dia_max = dia_max.max(d);
        sum += d;
    }
    let dia_mean = sum / pairs.len() as f64;

    let mut area = 0.0;
    for f in 0..t.faces().len() {
        area += face_area(f)?;
    }
    Ok(ShapeFeatures { gdia: Some(dia.value), dia_max, dia_mean, area })
}

/// Features of a straight-edged triangulation.
///
/// # Errors
///
/// [`Error::DisconnectedGraph`] when the edge graph has more than one
/// component.
pub fn shape_features_rect(t: &Triangulation) -> Result<ShapeFeatures, Error> {
    let g = WeightedGraph::from_rectilinear(t);
    features_from_graph(t, &g, |f| Ok(t.face_area(f)))
}

/// Features of a curvilinear triangulation; edge lengths and face areas
/// come from `samples`-chord polygonal approximations of the curves.
///
/// # Errors
///
/// [`Error::InvalidArgument`] when `samples < 2`;
/// [`Error::DisconnectedGraph`] when the edge graph has more than one
/// component.
pub fn shape_features_curv(
    ct: &CurvTriangulation,
    samples: usize,
) -> Result<ShapeFeatures, Error> {
    let g = WeightedGraph::from_curvilinear(ct, samples)?;
    features_from_graph(ct.base(), &g, |f| curv_triangle_area(ct, f, samples))
}

/// 8-connected foreground components of `m`, each a row-major sorted
/// pixel list of `(x, y)` coordinates. Components smaller than
/// `min_pixels` are dropped; the rest sort by size descending, then by
/// first pixel ascending.
pub fn connected_components(m: &BinaryMask, min_pixels: usize) -> Vec<Vec<(usize, usize)>> {
    let (w, h) = (m.width(), m.height());
    let mut seen = alloc::vec![false; w * h];
    let mut components: Vec<Vec<(usize, usize)>> = Vec::new();
    for start in 0..w * h {
        if seen[start] || !m.data()[start] {
            continue;
        }
        let mut pixels = Vec::new();
        let mut queue = alloc::vec![start];
        seen[start] = true;
        while let Some(idx) = queue.pop() {
            let (x, y) = (idx % w, idx / w);
            pixels.push((x, y));
            for dy in -1..=1_isize {
                for dx in -1..=1_isize {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let (nx, ny) = (x as isize + dx, y as isize + dy);
                    if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                        continue;
                    }
                    let nidx = ny as usize * w + nx as usize;
                    if !seen[nidx] && m.data()[nidx] {
                        seen[nidx] = true;
                        queue.push(nidx);
                    }
                }
            }
        }
        if pixels.len() >= min_pixels.max(1) {
            pixels.sort_unstable_by_key(|&(x, y)| (y, x));
            components.push(pixels);
        }
    }
    components.sort_by(|a, b| {
        b.len()
            .cmp(&a.len())
            .then_with(|| (a[0].1, a[0].0).cmp(&(b[0].1, b[0].0)))
    });
    components
}

fn polygon_area(points: &[Point2]) -> f64 {
    let mut twice = 0.0;
    for i in 0..points.len() {
        let p = points[i];
        let q = points[(i + 1) % points.len()];
        twice += p.x * q.y - p.y * q.x;
    }
    0.5 * fabs(twice)
}

/// Support width of the pixel set along direction `theta`, treating each
/// pixel as a unit square: the span of the center projections plus the
/// projection width of one square.
fn support_width(pixels: &[(usize, usize)], theta: f64) -> f64 {
    let (ux, uy) = (cos(theta), sin(theta));
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &(x, y) in pixels {
        let proj = x as f64 * ux + y as f64 * uy;
        lo = lo.min(proj);
        hi = hi.max(proj);
    }
    hi - lo + fabs(ux) + fabs(uy)
}

/// Features of a binary mask: orientation-swept support widths as
/// diameters, convex hull area of the pixel centers as area.
///
/// The `keep` largest components (after the `min_pixels` filter) each
/// contribute features, and contributions are summed. A single-pixel
/// component reports every diameter as 1 and area 1; a component whose
/// centers are collinear falls back to its pixel count for area. Mask
/// features carry no graph diameter.
///
/// # Errors
///
/// [`Error::InvalidArgument`] when `orientations` or `keep` is zero;
/// [`Error::DegenerateInput`] when no component survives the filter.
pub fn image_features(
    m: &BinaryMask,
    orientations: usize,
    keep: usize,
    min_pixels: usize,
) -> Result<ShapeFeatures, Error> {
    if orientations == 0 {
        return Err(Error::InvalidArgument("orientations must be positive".into()));
    }
    if keep == 0 {
        return Err(Error::InvalidArgument("keep must be positive".into()));
    }
    let components = connected_components(m, min_pixels);
    if components.is_empty() {
        return Err(Error::DegenerateInput(
            "no component survives the pixel filter".into(),
        ));
    }
    let mut dia_max = 0.0;
    let mut dia_mean = 0.0;
    let mut area = 0.0;
    for pixels in components.iter().take(keep) {
        if pixels.len() == 1 {
            dia_max += 1.0;
            dia_mean += 1.0;
            area += 1.0;
            continue;
        }
        let mut cmax = 0.0_f64;
        let mut csum = 0.0;
        for k in 0..orientations {
            let theta = core::f64::consts::PI * k as f64 / orientations as f64;
            let w = support_width(pixels, theta);
            cmax = cmax.max(w);
            csum += w;
        }
        dia_max += cmax;
        dia_mean += csum / orientations as f64;

        let centers: Vec<Point2> = pixels
            .iter()
            .map(|&(x, y)| Point2::new(x as f64, y as f64))
            .collect();
        area += match convex_hull(&centers) {
            Ok(hull) => {
                let ring: Vec<Point2> = hull.iter().map(|&i| centers[i]).collect();
                polygon_area(&ring)
            }
            Err(_) => pixels.len() as f64,
        };
    }
    Ok(ShapeFeatures { gdia: None, dia_max, dia_mean, area })
}

/// Relative differences of the four shape features, dimensionless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RdVector {
    pub rd_gdia: f64,
    pub rd_dmax: f64,
    pub rd_dmean: f64,
    pub rd_ar: f64,
}

impl RdVector {
    pub fn as_array(&self) -> [f64; 4] {
        [self.rd_gdia, self.rd_dmax, self.rd_dmean, self.rd_ar]
    }

    pub fn from_array(v: [f64; 4]) -> Self {
        RdVector { rd_gdia: v[0], rd_dmax: v[1], rd_dmean: v[2], rd_ar: v[3] }
    }
}

fn rd_component(approx: f64, orig: f64) -> Result<f64, Error> {
    if !orig.is_finite() || orig <= 0.0 {
        return Err(Error::DegenerateInput(alloc::format!(
            "reference feature {orig} must be positive"
        )));
    }
    Ok((approx - orig) / orig)
}

/// Componentwise `(approx - orig) / orig` over the four features.
///
/// A side with no graph diameter substitutes its `dia_max`, so masks can
/// stand as the original in mask-versus-triangulation comparisons.
///
/// # Errors
///
/// [`Error::DegenerateInput`] when any reference feature of `orig` is
/// zero, negative, or not finite.
pub fn relative_difference(
    approx: &ShapeFeatures,
    orig: &ShapeFeatures,
) -> Result<RdVector, Error> {
    let a_gdia = approx.gdia.unwrap_or(approx.dia_max);
    let o_gdia = orig.gdia.unwrap_or(orig.dia_max);
    Ok(RdVector {
        rd_gdia: rd_component(a_gdia, o_gdia)?,
        rd_dmax: rd_component(approx.dia_max, orig.dia_max)?,
        rd_dmean: rd_component(approx.dia_mean, orig.dia_mean)?,
        rd_ar: rd_component(approx.area, orig.area)?,
    })
}

/// Componentwise difference of two rd vectors.
pub fn rd_difference(rd1: &RdVector, rd2: &RdVector) -> RdVector {
    RdVector {
        rd_gdia: rd1.rd_gdia - rd2.rd_gdia,
        rd_dmax: rd1.rd_dmax - rd2.rd_dmax,
        rd_dmean: rd1.rd_dmean - rd2.rd_dmean,
        rd_ar: rd1.rd_ar - rd2.rd_ar,
    }
}

/// p-norm of the componentwise difference. `p` must be at least 1;
/// `f64::INFINITY` gives the maximum absolute component.
///
/// # Errors
///
/// [`Error::InvalidArgument`] when `p < 1` or `p` is NaN.
pub fn rd_pnorm(rd1: &RdVector, rd2: &RdVector, p: f64) -> Result<f64, Error> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "norm order {p} must be at least 1"
        )));
    }
    let diff = rd_difference(rd1, rd2);
    let mags = diff.as_array().map(fabs);
    if p.is_infinite() {
        return Ok(mags.into_iter().fold(0.0, f64::max));
    }
    let sum: f64 = mags.into_iter().map(|m| pow(m, p)).sum();
    Ok(pow(sum, 1.0 / p))
}
