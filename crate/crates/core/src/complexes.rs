//! Spoke decomposition of a triangulation.
//!
//! The nucleus is the vertex whose star of incident faces is largest.
//! Faces are ranked by how many hops of face intersection separate them
//! from that star: the faces containing the nucleus form level 1, faces
//! intersecting a level-1 face form level 2, and so on. Two faces
//! intersect when they share at least one vertex. The faces of one level
//! form a spoke complex, and maximal ascending sequences of pairwise
//! intersecting faces, one per level, form spoke chains.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::geom::Triangulation;

/// Vertex with the largest face star.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Nucleus {
    pub vertex: usize,
    /// Number of faces incident to the vertex.
    pub order: usize,
    /// True when another vertex reaches the same order and the choice
    /// fell to the lower index.
    pub tied: bool,
}

/// The vertex with the most incident faces; ties go to the lowest vertex
/// index and are reported through [`Nucleus::tied`].
pub fn find_nucleus(t: &Triangulation) -> Nucleus {
    let mut best = 0usize;
    let mut tied = false;
    for v in 1..t.sites().len() {
        let order = t.vertex_faces(v).len();
        if order > t.vertex_faces(best).len() {
            best = v;
            tied = false;
        } else if order == t.vertex_faces(best).len() {
            tied = true;
        }
    }
    Nucleus {
        vertex: best,
        order: t.vertex_faces(best).len(),
        tied,
    }
}

/// Level of every face relative to the nucleus star: level 1 for faces
/// containing `nucleus`, and each further level adds one face
/// intersection (a shared vertex) of distance.
///
/// # Errors
///
/// [`Error::DegenerateInput`] when some face cannot be reached from the
/// nucleus star by face intersections.
pub fn spoke_levels(t: &Triangulation, nucleus: usize) -> Result<Vec<usize>, Error> {
    let nf = t.faces().len();
    let mut levels = alloc::vec![0usize; nf];
    let mut frontier: Vec<usize> = t.vertex_faces(nucleus).to_vec();
    for &f in &frontier {
        levels[f] = 1;
    }
    let mut level = 1usize;
    let mut assigned = frontier.len();
    while !frontier.is_empty() {
        let mut next: Vec<usize> = Vec::new();
        for &f in &frontier {
            for v in t.faces()[f].vertices() {
                for &g in t.vertex_faces(v) {
                    if levels[g] == 0 {
                        levels[g] = level + 1;
                        next.push(g);
                    }
                }
            }
        }
        assigned += next.len();
        frontier = next;
        level += 1;
    }
    if assigned < nf {
        return Err(Error::DegenerateInput(alloc::format!(
            "{} faces unreachable from the nucleus star",
            nf - assigned
        )));
    }
    Ok(levels)
}

/// Boundary structure of a triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    /// Edge ids bordered by exactly one face, ascending.
    pub edges: Vec<usize>,
    /// Face ids owning at least one boundary edge, ascending.
    pub faces: Vec<usize>,
    /// Face ids owning no boundary edge, ascending.
    pub interior_faces: Vec<usize>,
}

/// Splits edges and faces into boundary and interior. A boundary edge
/// belongs to exactly one face; a boundary face owns at least one such
/// edge.
pub fn boundary(t: &Triangulation) -> Boundary {
    let mut edges = Vec::new();
    let mut is_boundary_face = alloc::vec![false; t.faces().len()];
    for eid in 0..t.edges().len() {
        let incident = t.edge_faces(eid);
        if incident.len() == 1 {
            edges.push(eid);
            is_boundary_face[incident[0]] = true;
        }
    }
    let faces = (0..t.faces().len()).filter(|&f| is_boundary_face[f]).collect();
    let interior_faces = (0..t.faces().len()).filter(|&f| !is_boundary_face[f]).collect();
    Boundary { edges, faces, interior_faces }
}

/// True when every boundary face sits on the same spoke level.
pub fn is_regular(levels: &[usize], boundary: &Boundary) -> bool {
    let mut it = boundary.faces.iter();
    match it.next() {
        None => true,
        Some(&first) => it.all(|&f| levels[f] == levels[first]),
    }
}

/// Maximal spoke chains, enumerated depth first by ascending face index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpokeChains {
    /// Each chain starts at a level-1 face and steps one level at a time
    /// through intersecting faces until no extension exists.
    pub chains: Vec<Vec<usize>>,
    /// Set when enumeration stopped at the cap before exhausting all
    /// chains.
    pub truncated: bool,
}

/// Enumerates all maximal spoke chains, stopping after `cap` chains.
///
/// A chain is a sequence of faces of strictly ascending level, starting
/// at level 1, in which consecutive faces share a vertex. Chains are
/// emitted in depth-first order with candidate faces visited by
/// ascending index, so the output is a pure function of the
/// triangulation. [`CHAIN_CAP`] is the conventional cap.
pub fn spoke_chains(t: &Triangulation, levels: &[usize], cap: usize) -> SpokeChains {
    let mut out = SpokeChains { chains: Vec::new(), truncated: false };
    let mut starts: Vec<usize> =
        (0..t.faces().len()).filter(|&f| levels[f] == 1).collect();
    starts.sort_unstable();
    let mut chain: Vec<usize> = Vec::new();
    for f in starts {
        chain.push(f);
        extend_chain(t, levels, cap, &mut chain, &mut out);
        chain.pop();
        if out.truncated {
            break;
        }
    }
    out
}

fn extend_chain(
    t: &Triangulation,
    levels: &[usize],
    cap: usize,
    chain: &mut Vec<usize>,
    out: &mut SpokeChains,
) {
    let last = *chain.last().unwrap();
    let want = levels[last] + 1;
    let mut candidates: Vec<usize> = Vec::new();
    for v in t.faces()[last].vertices() {
        for &g in t.vertex_faces(v) {
            if levels[g] == want && !candidates.contains(&g) {
                candidates.push(g);
            }
        }
    }
    if candidates.is_empty() {
        if out.chains.len() == cap {
            out.truncated = true;
        } else {
            out.chains.push(chain.clone());
        }
        return;
    }
    candidates.sort_unstable();
    for g in candidates {
        chain.push(g);
        extend_chain(t, levels, cap, chain, out);
        chain.pop();
        if out.truncated {
            return;
        }
    }
}

/// Histogram of vertex orders: maps the number of incident faces to how
/// many vertices have that order. Every face contributes three
/// incidences, so the weighted sum of the histogram is three times the
/// face count.
pub fn nerve_order_histogram(t: &Triangulation) -> BTreeMap<usize, usize> {
    let mut histogram = BTreeMap::new();
    for v in 0..t.sites().len() {
        *histogram.entry(t.vertex_faces(v).len()).or_insert(0) += 1;
    }
    histogram
}

/// Full decomposition of a triangulation around its nucleus.
#[derive(Debug, Clone, PartialEq)]
pub struct SpokeDecomposition {
    pub nucleus: Nucleus,
    /// Spoke level of each face, 1-based.
    pub levels: Vec<usize>,
    pub max_level: usize,
    pub boundary: Boundary,
    pub regular: bool,
    pub histogram: BTreeMap<usize, usize>,
}

impl SpokeDecomposition {
    /// Runs nucleus selection, level assignment, boundary extraction,
    /// and regularity in one pass.
    pub fn new(t: &Triangulation) -> Result<Self, Error> {
        let nucleus = find_nucleus(t);
        let levels = spoke_levels(t, nucleus.vertex)?;
        let boundary = boundary(t);
        let regular = is_regular(&levels, &boundary);
        let max_level = levels.iter().copied().max().unwrap_or(0);
        let histogram = nerve_order_histogram(t);
        Ok(SpokeDecomposition { nucleus, levels, max_level, boundary, regular, histogram })
    }

    /// Face ids at level `k`, ascending.
    pub fn faces_at_level(&self, k: usize) -> Vec<usize> {
        (0..self.levels.len()).filter(|&f| self.levels[f] == k).collect()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::geom::{Point2, Triangle};
    use crate::tolerance::CHAIN_CAP;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Four faces around a center, two outer faces glued on opposite fan
    /// edges, two outer faces hanging off single ring vertices. Levels
    /// split 4/4, and the boundary mixes both levels.
    pub(crate) fn two_ring_fixture() -> Triangulation {
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

    /// Two faces chained off the nucleus star plus one face touching the
    /// nucleus only.
    fn three_face_fixture() -> Triangulation {
        let sites = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(1.0, 1.0),
            Point2::new(-1.0, 0.0),
            Point2::new(0.0, -1.0),
        ];
        let faces = vec![
            Triangle::new(0, 1, 2),
            Triangle::new(1, 2, 3),
            Triangle::new(0, 4, 5),
        ];
        Triangulation::new(sites, faces).unwrap()
    }

    /// Fixpoint-relaxation oracle for levels, independent of the
    /// breadth-first pass: seed the nucleus star at 1, then repeatedly
    /// lower every face to one more than its smallest intersecting
    /// neighbor until nothing changes.
    fn levels_by_relaxation(t: &Triangulation, nucleus: usize) -> Vec<usize> {
        let nf = t.faces().len();
        let big = usize::MAX / 2;
        let mut lv = alloc::vec![big; nf];
        for (f, face) in t.faces().iter().enumerate() {
            if face.contains_vertex(nucleus) {
                lv[f] = 1;
            }
        }
        loop {
            let mut changed = false;
            for f in 0..nf {
                for g in 0..nf {
                    if f != g && t.faces()[f].shares_vertex(t.faces()[g]) && lv[g] + 1 < lv[f] {
                        lv[f] = lv[g] + 1;
                        changed = true;
                    }
                }
            }
            if !changed {
                return lv;
            }
        }
    }

    #[test]
    fn strip_levels_match_hand_derivation() {
        // A five-face strip. Vertex 1 wins the nucleus tie at order 3.
        let sites = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(3.0, 0.0),
            Point2::new(0.5, 1.0),
            Point2::new(1.5, 1.0),
            Point2::new(2.5, 1.0),
        ];
        let faces = vec![
            Triangle::new(0, 1, 4),
            Triangle::new(1, 4, 5),
            Triangle::new(1, 2, 5),
            Triangle::new(2, 5, 6),
            Triangle::new(2, 3, 6),
        ];
        let t = Triangulation::new(sites, faces).unwrap();
        let n = find_nucleus(&t);
        assert_eq!((n.vertex, n.order, n.tied), (1, 3, true));
        let levels = spoke_levels(&t, n.vertex).unwrap();
        assert_eq!(levels, vec![1, 1, 1, 2, 2]);
        assert_eq!(levels, levels_by_relaxation(&t, n.vertex));
    }

    #[test]
    fn two_ring_fixture_decomposition() {
        let t = two_ring_fixture();
        let dec = SpokeDecomposition::new(&t).unwrap();
        assert_eq!(dec.nucleus.vertex, 0);
        assert_eq!(dec.nucleus.order, 4);
        assert!(dec.nucleus.tied);
        assert_eq!(dec.levels, vec![1, 1, 1, 1, 2, 2, 2, 2]);
        assert_eq!(dec.max_level, 2);
        assert!(!dec.regular);
        assert_eq!(dec.faces_at_level(1), vec![0, 1, 2, 3]);
        assert_eq!(dec.faces_at_level(2), vec![4, 5, 6, 7]);
        assert_eq!(
            dec.levels,
            levels_by_relaxation(&t, dec.nucleus.vertex)
        );

        // Faces 0 and 3 are enclosed by their neighbors; every other face
        // owns at least one single-face edge.
        assert_eq!(dec.boundary.interior_faces, vec![0, 3]);
        assert_eq!(dec.boundary.faces, vec![1, 2, 4, 5, 6, 7]);
        assert_eq!(dec.boundary.edges.len(), 12);
        for &eid in &dec.boundary.edges {
            assert_eq!(t.edge_faces(eid).len(), 1);
        }
    }

    #[test]
    fn two_ring_fixture_chains() {
        let t = two_ring_fixture();
        let dec = SpokeDecomposition::new(&t).unwrap();
        let chains = spoke_chains(&t, &dec.levels, CHAIN_CAP);
        assert!(!chains.truncated);
        // Canonical face order: 0 (0,1,2), 1 (0,1,4), 2 (0,2,3),
        // 3 (0,3,4), 4 (1,2,5), 5 (2,7,8), 6 (3,4,6), 7 (4,9,10).
        assert_eq!(
            chains.chains,
            vec![
                vec![0, 4],
                vec![0, 5],
                vec![1, 4],
                vec![1, 6],
                vec![1, 7],
                vec![2, 4],
                vec![2, 5],
                vec![2, 6],
                vec![3, 6],
                vec![3, 7],
            ]
        );
    }

    #[test]
    fn three_face_chains_and_regularity() {
        let t = three_face_fixture();
        let dec = SpokeDecomposition::new(&t).unwrap();
        assert_eq!(dec.nucleus.vertex, 0);
        assert!(dec.nucleus.tied);
        // Canonical face order: 0 (0,1,2), 1 (0,4,5), 2 (1,2,3). One
        // two-step chain through the glued pair, one lone star face.
        assert_eq!(dec.levels, vec![1, 1, 2]);
        let chains = spoke_chains(&t, &dec.levels, CHAIN_CAP);
        assert_eq!(chains.chains, vec![vec![0, 2], vec![1]]);
        assert!(!chains.truncated);
        assert!(!dec.regular);
    }

    #[test]
    fn fan_is_regular() {
        // Every face touches the nucleus, so all boundary faces sit at
        // level 1.
        let sites = vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(0.0, 2.0),
            Point2::new(-2.0, 0.0),
            Point2::new(0.0, -2.0),
        ];
        let faces = vec![
            Triangle::new(0, 1, 2),
            Triangle::new(0, 2, 3),
            Triangle::new(0, 3, 4),
            Triangle::new(0, 4, 1),
        ];
        let t = Triangulation::new(sites, faces).unwrap();
        let dec = SpokeDecomposition::new(&t).unwrap();
        assert_eq!(dec.levels, vec![1, 1, 1, 1]);
        assert!(dec.regular);
        assert_eq!(dec.boundary.interior_faces, Vec::<usize>::new());
    }

    #[test]
    fn histogram_counts_incidences() {
        let t = two_ring_fixture();
        let h = nerve_order_histogram(&t);
        let mut expected = BTreeMap::new();
        expected.insert(1, 6);
        expected.insert(3, 2);
        expected.insert(4, 3);
        assert_eq!(h, expected);
        let weighted: usize = h.iter().map(|(order, count)| order * count).sum();
        assert_eq!(weighted, 3 * t.faces().len());
        // The largest order in the histogram is the nucleus order.
        assert_eq!(*h.keys().max().unwrap(), find_nucleus(&t).order);
    }

    #[test]
    fn disconnected_faces_are_rejected() {
        // Two triangles sharing nothing.
        let sites = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(5.0, 5.0),
            Point2::new(6.0, 5.0),
            Point2::new(5.0, 6.0),
        ];
        let faces = vec![Triangle::new(0, 1, 2), Triangle::new(3, 4, 5)];
        let t = Triangulation::new(sites, faces).unwrap();
        let n = find_nucleus(&t);
        assert!(matches!(
            spoke_levels(&t, n.vertex),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn chain_cap_truncates() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sites: Vec<Point2> = (0..30)
            .map(|_| Point2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)))
            .collect();
        let t = crate::geom::delaunay_triangulate(&sites).unwrap();
        let dec = SpokeDecomposition::new(&t).unwrap();
        let full = spoke_chains(&t, &dec.levels, CHAIN_CAP);
        assert!(!full.truncated);
        assert!(full.chains.len() > 3);
        let capped = spoke_chains(&t, &dec.levels, 3);
        assert!(capped.truncated);
        assert_eq!(capped.chains.len(), 3);
        assert_eq!(capped.chains[..], full.chains[..3]);
    }

    #[test]
    fn levels_partition_and_chains_cover() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let n = rng.gen_range(8..=30);
            let sites: Vec<Point2> = (0..n)
                .map(|_| Point2::new(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0)))
                .collect();
            let t = crate::geom::delaunay_triangulate(&sites).unwrap();
            let dec = SpokeDecomposition::new(&t).unwrap();

            // Level 1 exactly at the nucleus star, every face leveled.
            for (f, face) in t.faces().iter().enumerate() {
                assert!(dec.levels[f] >= 1);
                assert_eq!(dec.levels[f] == 1, face.contains_vertex(dec.nucleus.vertex));
            }
            let total: usize = (1..=dec.max_level).map(|k| dec.faces_at_level(k).len()).sum();
            assert_eq!(total, t.faces().len());

            // Chain union covers every face when the cap is not hit.
            let chains = spoke_chains(&t, &dec.levels, CHAIN_CAP);
            assert!(!chains.truncated);
            let mut covered = alloc::vec![false; t.faces().len()];
            for chain in &chains.chains {
                for (k, &f) in chain.iter().enumerate() {
                    assert_eq!(dec.levels[f], k + 1);
                    if k > 0 {
                        assert!(t.faces()[f].shares_vertex(t.faces()[chain[k - 1]]));
                    }
                    covered[f] = true;
                }
            }
            assert!(covered.iter().all(|&c| c));
        }
    }
}
