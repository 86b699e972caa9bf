//! Release gate: eight checks pinning the library's headline behaviors
//! with explicit tolerances. Each prints one summary line on success,
//! so `cargo test --test acceptance -- --nocapture` reads as a
//! checklist.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use trishape::core::complexes::{spoke_chains, SpokeDecomposition};
use trishape::core::geodesics::{distance_matrix, graph_diameter, WeightedGraph};
use trishape::core::geom::{convex_hull, delaunay_triangulate, in_circle_test, InCircle};
use trishape::core::proximity::OpenTriangle;
use trishape::core::raster::BinaryMask;
use trishape::core::shape_metrics::{connected_components, rd_difference, rd_pnorm, RdVector};
use trishape::core::splines::{
    apply_projective, bspline_basis, bspline_point, clamped_uniform_knots, curvilinearize,
    Mat3, NurbsCurve,
};
use trishape::core::tolerance::CHAIN_CAP;
use trishape::core::{Point2, Triangle, Triangulation};

fn random_sites(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point2> {
    (0..n)
        .map(|_| Point2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)))
        .collect()
}

fn random_triangulation(rng: &mut ChaCha8Rng, n: usize) -> Triangulation {
    loop {
        if let Ok(t) = delaunay_triangulate(&random_sites(rng, n)) {
            return t;
        }
    }
}

#[test]
fn a1_reference_graph_is_exact_and_fast() {
    let edges = [
        (0, 1, 2.0),
        (0, 2, 1.0),
        (1, 2, 1.0),
        (1, 3, 3.0),
        (2, 3, 1.0),
    ];
    let g = WeightedGraph::new(4, &edges).unwrap();

    let mut best = Duration::MAX;
    let mut result = None;
    for _ in 0..10 {
        let clock = Instant::now();
        let m = distance_matrix(&g);
        let d = graph_diameter(&m).unwrap();
        best = best.min(clock.elapsed());
        result = Some((m, d));
    }
    let (m, d) = result.unwrap();

    let expected = [
        [0.0, 2.0, 1.0, 2.0],
        [2.0, 0.0, 1.0, 2.0],
        [1.0, 1.0, 0.0, 1.0],
        [2.0, 2.0, 1.0, 0.0],
    ];
    for (i, row) in expected.iter().enumerate() {
        assert_eq!(m.row(i), row, "row {i} must match exactly");
    }
    assert_eq!(d.value, 2.0);
    assert_eq!(d.pair, (0, 1));
    assert!(best < Duration::from_millis(1), "best of 10 runs took {best:?}");
    println!("PASS reference graph: matrix exact, gdia 2 at pair (1,2), best run {best:?}");
}

#[test]
fn a2_rd_arithmetic_reproduces_the_reference_columns() {
    let rect = RdVector::from_array([-0.069, -0.069, -0.372, -0.423]);
    let curv = RdVector::from_array([0.051, 0.051, -0.308, -0.433]);

    let diff = rd_difference(&rect, &curv).as_array();
    let expected = [-0.120, -0.120, -0.064, 0.010];
    for (got, want) in diff.iter().zip(expected) {
        assert!((got - want).abs() <= 5e-4, "component {got} vs {want}");
    }
    let norm = rd_pnorm(&rect, &curv, 2.0).unwrap();
    assert!((norm - 0.182).abs() <= 5e-4, "2-norm {norm} vs 0.182");
    println!(
        "PASS rd arithmetic: diff within 5e-4 of {expected:?}, 2-norm {norm:.6} within 5e-4 of 0.182"
    );
}

fn random_curve(rng: &mut ChaCha8Rng, unit_weights: bool) -> NurbsCurve {
    let degree = rng.gen_range(1..=3usize);
    let n = rng.gen_range(degree + 1..=degree + 5);
    let control: Vec<Point2> = random_sites(rng, n).iter().map(|p| Point2::new(p.x / 2.0, p.y / 2.0)).collect();
    let weights: Vec<f64> = (0..n)
        .map(|_| if unit_weights { 1.0 } else { rng.gen_range(0.25..4.0) })
        .collect();
    let knots = clamped_uniform_knots(n, degree);
    NurbsCurve::new(control, weights, knots, degree).unwrap()
}

fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let vx = b.x - a.x;
    let vy = b.y - a.y;
    let len2 = vx * vx + vy * vy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.x - a.x) * vx + (p.y - a.y) * vy) / len2).clamp(0.0, 1.0)
    };
    p.dist(Point2::new(a.x + t * vx, a.y + t * vy))
}

/// Distance from `p` to the convex hull of a small point set; degenerate
/// hulls fall back to the pairwise segments, whose minimum equals the
/// hull distance for collinear sets.
fn hull_distance(p: Point2, points: &[Point2]) -> f64 {
    if let Ok(hull) = convex_hull(points) {
        let poly: Vec<Point2> = hull.iter().map(|&i| points[i]).collect();
        let sides: Vec<f64> = (0..poly.len())
            .map(|i| {
                let a = poly[i];
                let b = poly[(i + 1) % poly.len()];
                (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
            })
            .collect();
        if sides.iter().all(|&s| s >= -1e-12) || sides.iter().all(|&s| s <= 1e-12) {
            return 0.0;
        }
    }
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.min(segment_distance(p, points[i], points[j]));
        }
    }
    if points.len() == 1 {
        best = p.dist(points[0]);
    }
    best
}

fn random_projective_map(rng: &mut ChaCha8Rng) -> Mat3 {
    loop {
        let affine = Mat3::translation(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
            .mul(&Mat3::rotation(rng.gen_range(0.0..core::f64::consts::TAU)))
            .mul(&Mat3::scaling(rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0)));
        let shear = Mat3([
            [1.0, rng.gen_range(-0.3..0.3), 0.0],
            [rng.gen_range(-0.3..0.3), 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ]);
        let tilt = Mat3([
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [rng.gen_range(-0.02..0.02), rng.gen_range(-0.02..0.02), 1.0],
        ]);
        let map = affine.mul(&shear).mul(&tilt);
        if map.det().abs() > 1e-3 {
            return map;
        }
    }
}

#[test]
fn a3_rational_curve_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBA515);

    // The basis functions sum to one everywhere in the domain.
    let mut worst_unity: f64 = 0.0;
    for _ in 0..100 {
        let degree = rng.gen_range(1..=3usize);
        let n = rng.gen_range(degree + 1..=degree + 6);
        let knots = clamped_uniform_knots(n, degree);
        let (lo, hi) = (knots[degree], knots[knots.len() - 1 - degree]);
        for s in 0..=50 {
            let t = lo + (hi - lo) * s as f64 / 50.0;
            let sum: f64 = (0..n).map(|i| bspline_basis(i, degree, t, &knots).unwrap()).sum();
            worst_unity = worst_unity.max((sum - 1.0).abs());
        }
    }
    assert!(worst_unity <= 1e-12, "partition of unity off by {worst_unity:e}");

    // Unit weights reduce the rational curve to its polynomial form.
    let mut worst_reduction: f64 = 0.0;
    for _ in 0..100 {
        let curve = random_curve(&mut rng, true);
        let (lo, hi) = curve.domain();
        for s in 0..=50 {
            let t = lo + (hi - lo) * s as f64 / 50.0;
            let rational = curve.eval(t).unwrap();
            let plain =
                bspline_point(curve.control(), curve.degree(), curve.knots(), t).unwrap();
            worst_reduction = worst_reduction.max(rational.dist(plain));
        }
    }
    assert!(worst_reduction <= 1e-12, "unit-weight reduction off by {worst_reduction:e}");

    // Every curve point stays within the union of convex hulls of
    // degree+1 successive control points.
    let mut worst_hull: f64 = 0.0;
    for _ in 0..100 {
        let curve = random_curve(&mut rng, false);
        let (lo, hi) = curve.domain();
        let control = curve.control();
        let window = curve.degree() + 1;
        for s in 0..1000 {
            let t = lo + (hi - lo) * s as f64 / 999.0;
            let p = curve.eval(t).unwrap();
            let d = (0..=control.len() - window)
                .map(|i| hull_distance(p, &control[i..i + window]))
                .fold(f64::INFINITY, f64::min);
            worst_hull = worst_hull.max(d);
        }
    }
    assert!(worst_hull <= 1e-9, "hull containment off by {worst_hull:e}");

    // Evaluating then mapping equals mapping then evaluating.
    let mut worst_commute: f64 = 0.0;
    for _ in 0..50 {
        let curve = random_curve(&mut rng, false);
        let (map, mapped) = loop {
            let map = random_projective_map(&mut rng);
            if let Ok(mapped) = apply_projective(&curve, &map) {
                break (map, mapped);
            }
        };
        let (lo, hi) = curve.domain();
        for s in 0..200 {
            let t = lo + (hi - lo) * s as f64 / 199.0;
            let direct = map.apply_point(curve.eval(t).unwrap()).unwrap();
            let through = mapped.eval(t).unwrap();
            worst_commute = worst_commute.max(direct.dist(through));
        }
    }
    assert!(worst_commute <= 1e-9, "projective commutation off by {worst_commute:e}");

    println!(
        "PASS curve properties: unity {worst_unity:.2e}, reduction {worst_reduction:.2e}, \
         hull {worst_hull:.2e}, commutation {worst_commute:.2e}"
    );
}

#[test]
fn a4_curved_edges_stay_inside_the_straight_object() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0417A1);
    let mut points_checked = 0usize;
    for _ in 0..20 {
        let n = rng.gen_range(8..=40);
        let t = random_triangulation(&mut rng, n);
        let dec = SpokeDecomposition::new(&t).unwrap();
        let ct = curvilinearize(&t, &dec, 0.35, 1.0).unwrap();

        let cover: Vec<OpenTriangle> = t
            .faces()
            .iter()
            .map(|&f| OpenTriangle::new(f, 1e-9, t.sites()).unwrap())
            .collect();
        for curve in ct.curves() {
            let (lo, hi) = curve.domain();
            for s in 0..=32 {
                let at = lo + (hi - lo) * s as f64 / 32.0;
                let p = curve.eval(at).unwrap();
                assert!(
                    cover.iter().any(|open| open.contains(t.sites(), p)),
                    "curve point ({}, {}) escapes the face union",
                    p.x,
                    p.y
                );
                points_checked += 1;
            }
        }
    }
    println!(
        "PASS containment: {points_checked} sampled curve points inside the straight faces"
    );
}

fn floyd_warshall(n: usize, edges: &[(usize, usize, f64)]) -> Vec<Vec<f64>> {
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for &(u, v, w) in edges {
        d[u][v] = d[u][v].min(w);
        d[v][u] = d[v][u].min(w);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

fn flood_fill_components(m: &BinaryMask, min_pixels: usize) -> Vec<Vec<(usize, usize)>> {
    let (w, h) = (m.width(), m.height());
    let mut seen = vec![false; w * h];
    let mut components = Vec::new();
    for start_y in 0..h {
        for start_x in 0..w {
            if !m.get(start_x, start_y) || seen[start_y * w + start_x] {
                continue;
            }
            let mut stack = vec![(start_x, start_y)];
            seen[start_y * w + start_x] = true;
            let mut pixels = Vec::new();
            while let Some((x, y)) = stack.pop() {
                pixels.push((x, y));
                for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                        if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                            continue;
                        }
                        let (nx, ny) = (nx as usize, ny as usize);
                        if m.get(nx, ny) && !seen[ny * w + nx] {
                            seen[ny * w + nx] = true;
                            stack.push((nx, ny));
                        }
                    }
                }
            }
            pixels.sort_by_key(|&(x, y)| (y, x));
            if pixels.len() >= min_pixels.max(1) {
                components.push(pixels);
            }
        }
    }
    components.sort_by(|a, b| {
        b.len()
            .cmp(&a.len())
            .then_with(|| (a[0].1, a[0].0).cmp(&(b[0].1, b[0].0)))
    });
    components
}

#[test]
#[allow(clippy::needless_range_loop)]
fn a5_oracle_equivalences_within_the_time_budget() {
    let clock = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x04AC1E);

    // Every face's circumcircle is empty of other sites.
    for _ in 0..100 {
        let n = rng.gen_range(4..=50);
        let t = random_triangulation(&mut rng, n);
        let sites = t.sites();
        for face in t.faces() {
            let [a, b, c] = face.vertices();
            for (s, &p) in sites.iter().enumerate() {
                if s == a || s == b || s == c {
                    continue;
                }
                assert_ne!(
                    in_circle_test(sites[a], sites[b], sites[c], p),
                    InCircle::Inside,
                    "site {s} sits inside the circumcircle of face ({a}, {b}, {c})"
                );
            }
        }
    }
    let delaunay_done = clock.elapsed();

    // All-pairs distances match the cubic recurrence.
    for _ in 0..50 {
        let n = rng.gen_range(2..=50usize);
        let mut pairs = std::collections::BTreeSet::new();
        for _ in 0..rng.gen_range(n..=3 * n) {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                pairs.insert((u.min(v), u.max(v)));
            }
        }
        let edges: Vec<(usize, usize, f64)> = pairs
            .into_iter()
            .map(|(u, v)| (u, v, rng.gen_range(0.1..10.0)))
            .collect();
        let g = WeightedGraph::new(n, &edges).unwrap();
        let fast = distance_matrix(&g);
        let slow = floyd_warshall(n, &edges);
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (fast.get(i, j), slow[i][j]);
                if a.is_infinite() || b.is_infinite() {
                    assert_eq!(a.is_infinite(), b.is_infinite(), "reachability differs at ({i}, {j})");
                } else {
                    assert!((a - b).abs() <= 1e-9, "distance ({i}, {j}): {a} vs {b}");
                }
            }
        }
    }
    let graphs_done = clock.elapsed();

    // Component labeling matches a flood fill.
    for round in 0..100 {
        let w = rng.gen_range(1..=32usize);
        let h = rng.gen_range(1..=32usize);
        let density = rng.gen_range(0.2..0.8);
        let data: Vec<bool> = (0..w * h).map(|_| rng.gen_bool(density)).collect();
        let mask = BinaryMask::new(w, h, data).unwrap();
        let min_pixels = if round % 4 == 0 { rng.gen_range(2..=5) } else { 1 };
        assert_eq!(
            connected_components(&mask, min_pixels),
            flood_fill_components(&mask, min_pixels),
            "component labeling diverged on a {w}x{h} mask"
        );
    }

    let elapsed = clock.elapsed();
    assert!(elapsed < Duration::from_secs(30), "oracle suite took {elapsed:?}");
    println!(
        "PASS oracles: circumcircles {delaunay_done:?}, graphs {:?}, masks {:?}, total {elapsed:?}",
        graphs_done - delaunay_done,
        elapsed - graphs_done
    );
}

/// Four faces around a shared vertex with an outer ring of four more,
/// half hanging off single ring vertices so the boundary mixes levels.
fn two_ring_fixture() -> Triangulation {
    let sites = vec![
        Point2::new(0.0, 0.0),
        Point2::new(2.0, 0.0),
        Point2::new(0.0, 2.0),
        Point2::new(-2.0, 0.0),
        Point2::new(0.0, -2.0),
        Point2::new(2.0, 2.0),
        Point2::new(-2.0, -2.0),
        Point2::new(-1.0, 3.5),
        Point2::new(1.0, 3.5),
        Point2::new(1.0, -3.5),
        Point2::new(-0.5, -3.8),
    ];
    let faces = vec![
        Triangle::new(0, 1, 2),
        Triangle::new(0, 2, 3),
        Triangle::new(0, 3, 4),
        Triangle::new(0, 4, 1),
        Triangle::new(1, 2, 5),
        Triangle::new(3, 4, 6),
        Triangle::new(2, 7, 8),
        Triangle::new(4, 9, 10),
    ];
    Triangulation::new(sites, faces).unwrap()
}

#[test]
fn a6_spoke_structure_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5B0CE5);
    let mut checked = 0;
    let mut chains_seen = 0usize;
    while checked < 20 {
        let n = rng.gen_range(6..=36);
        let t = random_triangulation(&mut rng, n);
        let dec = SpokeDecomposition::new(&t).unwrap();
        let face_count = t.faces().len();

        // Levels partition the faces: every face gets exactly one level,
        // every level up to the maximum is inhabited.
        assert_eq!(dec.levels.len(), face_count);
        assert!(dec.levels.iter().all(|&k| (1..=dec.max_level).contains(&k)));
        for k in 1..=dec.max_level {
            assert!(!dec.faces_at_level(k).is_empty(), "level {k} is empty");
        }

        // Level 1 is exactly the faces touching the nucleus vertex.
        for (f, face) in t.faces().iter().enumerate() {
            let touches = face.vertices().contains(&dec.nucleus.vertex);
            assert_eq!(dec.levels[f] == 1, touches, "face {f} mislabeled");
        }

        // The nerve orders recount the face corners exactly.
        let mut orders = vec![0usize; t.sites().len()];
        for face in t.faces() {
            for v in face.vertices() {
                orders[v] += 1;
            }
        }
        let mut recount = std::collections::BTreeMap::new();
        for &o in orders.iter().filter(|&&o| o > 0) {
            *recount.entry(o).or_insert(0usize) += 1;
        }
        assert_eq!(dec.histogram, recount);
        assert_eq!(dec.nucleus.order, *orders.iter().max().unwrap());

        // Chains cover the same faces as the level sets.
        let chains = spoke_chains(&t, &dec.levels, CHAIN_CAP);
        if chains.truncated {
            continue;
        }
        let mut covered = vec![false; face_count];
        for chain in &chains.chains {
            for (step, &f) in chain.iter().enumerate() {
                assert_eq!(dec.levels[f], step + 1, "chains climb one level per step");
                covered[f] = true;
            }
        }
        assert!(covered.iter().all(|&c| c), "some face appears in no chain");
        chains_seen += chains.chains.len();
        checked += 1;
    }

    let t = two_ring_fixture();
    let dec = SpokeDecomposition::new(&t).unwrap();
    assert_eq!(dec.faces_at_level(1).len(), 4);
    assert_eq!(dec.faces_at_level(2).len(), 4);
    assert_eq!(dec.max_level, 2);
    assert!(!dec.regular, "mixed-level boundary must not be regular");

    println!(
        "PASS spoke structure: 20 triangulations partitioned and covered \
         ({chains_seen} chains), fixture splits 4/4 and is irregular"
    );
}

struct DiskFixture {
    _dir: tempfile::TempDir,
    sites: PathBuf,
    mask: PathBuf,
    root: PathBuf,
}

fn disk_fixture() -> DiskFixture {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().to_path_buf();

    let mut csv = String::from("15.5,15.5\n");
    for k in 0..24 {
        let a = std::f64::consts::TAU * k as f64 / 24.0;
        csv.push_str(&format!("{},{}\n", 15.5 + 11.0 * a.cos(), 15.5 + 11.0 * a.sin()));
    }
    let sites = root.join("ring.csv");
    std::fs::write(&sites, csv).unwrap();

    let mut pgm = String::from("P2\n32 32\n255\n");
    for y in 0..32 {
        let row: Vec<&str> = (0..32)
            .map(|x| {
                let dx = x as f64 - 15.5;
                let dy = y as f64 - 15.5;
                if dx * dx + dy * dy <= 144.0 { "255" } else { "0" }
            })
            .collect();
        pgm.push_str(&row.join(" "));
        pgm.push('\n');
    }
    let mask = root.join("disk.pgm");
    std::fs::write(&mask, pgm).unwrap();

    DiskFixture { _dir: dir, sites, mask, root }
}

fn run_bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_trishape"))
        .args(args)
        .output()
        .expect("binary must spawn")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn rd_side(report: &Value, side: &str) -> [f64; 4] {
    ["rd_gdia", "rd_dmax", "rd_dmean", "rd_ar"]
        .map(|key| report["rd"][side][key].as_f64().unwrap())
}

#[test]
fn a7_disk_pipeline_runs_end_to_end() {
    let fx = disk_fixture();

    let bent = run_bin(&["compare", "--sites", path(&fx.sites), "--mask", path(&fx.mask)]);
    assert!(
        bent.status.success(),
        "compare failed: {}",
        String::from_utf8_lossy(&bent.stderr)
    );
    let report: Value = serde_json::from_slice(&bent.stdout).unwrap();
    for side in ["rect", "curv"] {
        for c in rd_side(&report, side) {
            assert!(c.is_finite(), "{side} rd has a non-finite component");
        }
    }
    let rect_area = report["features"]["rect"]["area"].as_f64().unwrap();
    let curv_area = report["features"]["curv"]["area"].as_f64().unwrap();
    assert!(
        curv_area <= rect_area,
        "bent area {curv_area} exceeds straight area {rect_area}"
    );

    let straight = run_bin(&[
        "compare", "--sites", path(&fx.sites), "--mask", path(&fx.mask), "--bend", "0",
    ]);
    assert!(straight.status.success());
    let report0: Value = serde_json::from_slice(&straight.stdout).unwrap();
    let rect0 = rd_side(&report0, "rect");
    let curv0 = rd_side(&report0, "curv");
    for (r, c) in rect0.iter().zip(curv0) {
        assert!((r - c).abs() <= 1e-9, "zero bend still separates rd: {r} vs {c}");
    }

    println!(
        "PASS disk pipeline: rd finite, zero bend collapses both sides, \
         bent area {curv_area:.3} <= straight area {rect_area:.3}"
    );
}

#[test]
fn a8_compare_and_render_are_deterministic() {
    let fx = disk_fixture();
    let mut reports = Vec::new();
    let mut drawings = Vec::new();
    for round in 0..2 {
        let report = fx.root.join(format!("report{round}.json"));
        let svg = fx.root.join(format!("scene{round}.svg"));
        let compare = run_bin(&[
            "compare",
            "--sites",
            path(&fx.sites),
            "--mask",
            path(&fx.mask),
            "--out",
            path(&report),
        ]);
        let render = run_bin(&["render", "--sites", path(&fx.sites), "--svg", path(&svg)]);
        assert!(compare.status.success() && render.status.success());
        reports.push(std::fs::read(&report).unwrap());
        drawings.push(std::fs::read(&svg).unwrap());
    }
    assert_eq!(reports[0], reports[1], "compare output changed between runs");
    assert_eq!(drawings[0], drawings[1], "render output changed between runs");
    assert!(!reports[0].is_empty() && !drawings[0].is_empty());
    println!(
        "PASS determinism: {}-byte report and {}-byte drawing byte-identical across runs",
        reports[0].len(),
        drawings[0].len()
    );
}
