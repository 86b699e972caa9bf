//! Corner detection for images that arrive without a site list.
//!
//! Classic Harris measure: central-difference gradients, a 3x3 box sum
//! of the structure tensor, response `det - 0.04 * trace^2`, then 3x3
//! non-maximum suppression. Responses must clear both zero and 1% of
//! the strongest response to count. Survivors order by response
//! descending with the pixel index breaking ties, so the result is
//! deterministic for a fixed image.

use trishape_core::raster::GrayImage;
use trishape_core::{Error, Point2};

const HARRIS_K: f64 = 0.04;
const RELATIVE_THRESHOLD: f64 = 0.01;

/// Harris response at every pixel, row major.
pub fn harris_response(img: &GrayImage) -> Vec<f64> {
    let (w, h) = (img.width(), img.height());
    let mut gx = vec![0.0; w * h];
    let mut gy = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let (xi, yi) = (x as isize, y as isize);
            gx[y * w + x] = (f64::from(img.get_clamped(xi + 1, yi))
                - f64::from(img.get_clamped(xi - 1, yi)))
                / 2.0;
            gy[y * w + x] = (f64::from(img.get_clamped(xi, yi + 1))
                - f64::from(img.get_clamped(xi, yi - 1)))
                / 2.0;
        }
    }
    let mut response = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut xx = 0.0;
            let mut xy = 0.0;
            let mut yy = 0.0;
            for dy in -1..=1_isize {
                for dx in -1..=1_isize {
                    let nx = (x as isize + dx).clamp(0, w as isize - 1) as usize;
                    let ny = (y as isize + dy).clamp(0, h as isize - 1) as usize;
                    let (a, b) = (gx[ny * w + nx], gy[ny * w + nx]);
                    xx += a * a;
                    xy += a * b;
                    yy += b * b;
                }
            }
            let det = xx * yy - xy * xy;
            let trace = xx + yy;
            response[y * w + x] = det - HARRIS_K * trace * trace;
        }
    }
    response
}

/// Detects up to `max_sites` corner points, strongest first.
///
/// # Errors
///
/// [`Error::InvalidArgument`] for images smaller than 3x3 or
/// `max_sites == 0`; [`Error::DegenerateInput`] when no pixel clears
/// the response threshold.
pub fn detect_sites(img: &GrayImage, max_sites: usize) -> Result<Vec<Point2>, Error> {
    let (w, h) = (img.width(), img.height());
    if w < 3 || h < 3 {
        return Err(Error::InvalidArgument(format!(
            "image {w}x{h} is smaller than 3x3"
        )));
    }
    if max_sites == 0 {
        return Err(Error::InvalidArgument("max_sites must be positive".into()));
    }
    let response = harris_response(img);
    let r_max = response.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if r_max <= 0.0 {
        return Err(Error::DegenerateInput(
            "no corner response above zero".into(),
        ));
    }
    let threshold = RELATIVE_THRESHOLD * r_max;
    let mut peaks: Vec<(usize, f64)> = Vec::new();
    for y in 0..h {
        for x in 0..w {
            let idx = y * w + x;
            let r = response[idx];
            if r <= 0.0 || r < threshold {
                continue;
            }
            // A peak beats every neighbor; on an exact tie the earlier
            // pixel in scan order wins and suppresses the later one.
            let mut is_peak = true;
            'nms: for dy in -1..=1_isize {
                for dx in -1..=1_isize {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let (nx, ny) = (x as isize + dx, y as isize + dy);
                    if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                        continue;
                    }
                    let nidx = ny as usize * w + nx as usize;
                    let rn = response[nidx];
                    if rn > r || (rn == r && nidx < idx) {
                        is_peak = false;
                        break 'nms;
                    }
                }
            }
            if is_peak {
                peaks.push((idx, r));
            }
        }
    }
    if peaks.is_empty() {
        return Err(Error::DegenerateInput(
            "suppression removed every candidate".into(),
        ));
    }
    peaks.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    peaks.truncate(max_sites);
    Ok(peaks
        .into_iter()
        .map(|(idx, _)| Point2::new((idx % w) as f64, (idx / w) as f64))
        .collect())
}
