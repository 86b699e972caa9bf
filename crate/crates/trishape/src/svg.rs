//! SVG rendering of triangulations and their spoke decompositions.
//!
//! Faces are filled by spoke level with the Example-palette: level 1
//! yellow, level 2 gray, deeper levels cycling through a fixed list.
//! Straight edges render as line segments. Curved edges render as
//! native quadratic Bezier path segments when the middle control weight
//! is exactly 1 (the curve then is that Bezier), and as sampled
//! polylines otherwise. An optional geodesic vertex path is overlaid in
//! red. Output is a pure function of the inputs, so repeated renders
//! are byte-identical.

use std::fmt::Write as _;

use trishape_core::complexes::SpokeDecomposition;
use trishape_core::splines::CurvTriangulation;
use trishape_core::{Point2, Triangulation};

const CANVAS: f64 = 760.0;
const PAD: f64 = 20.0;
const DEEP_PALETTE: [&str; 5] = ["#7fb3d5", "#7dcea0", "#f1948a", "#c39bd3", "#f7dc6f"];

/// Fill color for a spoke level.
fn level_color(level: usize) -> &'static str {
    match level {
        1 => "yellow",
        2 => "gray",
        deeper => DEEP_PALETTE[(deeper - 3) % DEEP_PALETTE.len()],
    }
}

struct Frame {
    min: Point2,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn new(t: &Triangulation) -> Frame {
        let (min, max) = t.bounding_box();
        let span = (max.x - min.x).max(max.y - min.y).max(1e-12);
        Frame { min, max_y: max.y, scale: CANVAS / span }
    }

    fn x(&self, x: f64) -> f64 {
        PAD + (x - self.min.x) * self.scale
    }

    /// Flips y so larger site coordinates draw higher on the page.
    fn y(&self, y: f64) -> f64 {
        PAD + (self.max_y - y) * self.scale
    }

    fn point(&self, p: Point2) -> (f64, f64) {
        (self.x(p.x), self.y(p.y))
    }
}

fn push_move(out: &mut String, frame: &Frame, p: Point2) {
    let (x, y) = frame.point(p);
    let _ = write!(out, "M {x:.3} {y:.3}");
}

/// Appends the drawing commands for one directed edge, without the
/// leading move.
fn push_edge(
    out: &mut String,
    frame: &Frame,
    t: &Triangulation,
    curv: Option<&CurvTriangulation>,
    u: usize,
    v: usize,
    samples: usize,
) {
    let Some(ct) = curv else {
        let (x, y) = frame.point(t.site(v));
        let _ = write!(out, " L {x:.3} {y:.3}");
        return;
    };
    let eid = t.edge_id(u, v).expect("edge of a face");
    let curve = ct.curve(eid);
    let forward = u <= v;
    if ct.mid_weight() == 1.0 {
        // Unit middle weight makes the curve exactly the quadratic
        // Bezier through its control points.
        let mid = curve.control()[1];
        let (mx, my) = frame.point(mid);
        let (x, y) = frame.point(t.site(v));
        let _ = write!(out, " Q {mx:.3} {my:.3} {x:.3} {y:.3}");
    } else {
        let (lo, hi) = curve.domain();
        for k in 1..=samples {
            let frac = k as f64 / samples as f64;
            let s = if forward { frac } else { 1.0 - frac };
            let p = curve.eval(lo + (hi - lo) * s).expect("in-domain sample");
            let (x, y) = frame.point(p);
            let _ = write!(out, " L {x:.3} {y:.3}");
        }
    }
}

/// Renders `t` with its decomposition, curved edges when `curv` is
/// given, and an optional geodesic vertex path.
pub fn render_svg(
    t: &Triangulation,
    dec: &SpokeDecomposition,
    curv: Option<&CurvTriangulation>,
    geodesic: Option<&[usize]>,
    samples: usize,
) -> String {
    let frame = Frame::new(t);
    let (min, max) = t.bounding_box();
    let width = PAD * 2.0 + (max.x - min.x) * frame.scale;
    let height = PAD * 2.0 + (max.y - min.y) * frame.scale;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.3} {height:.3}\">"
    );

    for (f, tri) in t.faces().iter().enumerate() {
        let [a, b, c] = tri.vertices();
        let mut d = String::new();
        push_move(&mut d, &frame, t.site(a));
        for (u, v) in [(a, b), (b, c), (c, a)] {
            push_edge(&mut d, &frame, t, curv, u, v, samples);
        }
        d.push_str(" Z");
        let _ = writeln!(
            out,
            "  <path class=\"face\" d=\"{d}\" fill=\"{}\" stroke=\"none\"/>",
            level_color(dec.levels[f])
        );
    }

    for &(u, v) in t.edges() {
        let mut d = String::new();
        push_move(&mut d, &frame, t.site(u));
        push_edge(&mut d, &frame, t, curv, u, v, samples);
        let _ = writeln!(
            out,
            "  <path class=\"edge\" d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>"
        );
    }

    if let Some(path) = geodesic {
        if path.len() >= 2 {
            let mut d = String::new();
            push_move(&mut d, &frame, t.site(path[0]));
            for w in path.windows(2) {
                push_edge(&mut d, &frame, t, curv, w[0], w[1], samples);
            }
            let _ = writeln!(
                out,
                "  <path class=\"geodesic\" d=\"{d}\" fill=\"none\" stroke=\"red\" stroke-width=\"4\"/>"
            );
        }
    }

    for (v, site) in t.sites().iter().enumerate() {
        let (x, y) = frame.point(*site);
        if v == dec.nucleus.vertex {
            let _ = writeln!(
                out,
                "  <circle class=\"nucleus\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"6\" fill=\"#d35400\"/>"
            );
        } else {
            let _ = writeln!(
                out,
                "  <circle class=\"site\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3.5\" fill=\"black\"/>"
            );
        }
    }

    out.push_str("</svg>\n");
    out
}
