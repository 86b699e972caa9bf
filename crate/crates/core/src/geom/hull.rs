//! Convex hull by monotone chain.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::Error;
use crate::geom::predicates::{orientation, Orientation};
use crate::geom::Point2;

/// Indices of the convex hull of `points`, counterclockwise, starting at
/// the lexicographically smallest point. Collinear points interior to a
/// hull edge are dropped, so no three consecutive hull vertices are
/// collinear. Exact duplicate coordinates keep their lowest index.
///
/// # Errors
///
/// [`Error::DegenerateInput`] when fewer than three distinct points
/// remain or all points are collinear.
pub fn convex_hull(points: &[Point2]) -> Result<Vec<usize>, Error> {
    if let Some(p) = points.iter().find(|p| !p.is_finite()) {
        return Err(Error::DegenerateInput(alloc::format!(
            "non-finite point ({}, {})",
            p.x,
            p.y
        )));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_unstable_by(|&i, &j| {
        let (p, q) = (points[i], points[j]);
        p.x.partial_cmp(&q.x)
            .unwrap()
            .then(p.y.partial_cmp(&q.y).unwrap())
            .then(i.cmp(&j))
    });
    order.dedup_by(|&mut i, &mut j| points[i] == points[j]);
    if order.len() < 3 {
        return Err(Error::DegenerateInput(
            "convex hull needs at least 3 distinct points".to_string(),
        ));
    }

    let turn_ok = |chain: &[usize], next: usize| -> bool {
        let m = chain.len();
        orientation(points[chain[m - 2]], points[chain[m - 1]], points[next])
            == Orientation::CounterClockwise
    };

    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2 && !turn_ok(&lower, i) {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2 && !turn_ok(&upper, i) {
            upper.pop();
        }
        upper.push(i);
    }

    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::DegenerateInput("all points are collinear".to_string()));
    }
    Ok(lower)
}
