//! Shortest paths and diameters on weighted edge graphs.
//!
//! Triangulation edges, straight or curved, become an undirected graph
//! with positive lengths. Single-source distances come from a binary-heap
//! Dijkstra with lazy deletion; ties in the heap fall back to the vertex
//! index, so visit order and predecessors are deterministic. The
//! all-pairs matrix is one Dijkstra run per row; rows are independent,
//! and the sequential order used here fixes the output bit for bit.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::Error;
use crate::geom::Triangulation;
use crate::splines::{curve_arc_length, CurvTriangulation};

/// Undirected graph with positive edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    adj: Vec<Vec<(usize, f64)>>,
}

impl WeightedGraph {
    /// Builds a graph on `n` vertices from undirected weighted edges.
    ///
    /// # Errors
    ///
    /// [`Error::OutOfBounds`] for an endpoint outside `0..n`;
    /// [`Error::InvalidArgument`] for a self loop or a weight that is
    /// not a positive finite number.
    pub fn new(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self, Error> {
        let mut adj = alloc::vec![Vec::new(); n];
        for &(u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::OutOfBounds(alloc::format!(
                    "edge ({u}, {v}) on {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(alloc::format!("self loop at {u}")));
            }
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::InvalidArgument(alloc::format!(
                    "edge ({u}, {v}) weight {w} must be positive"
                )));
            }
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        Ok(WeightedGraph { n, adj })
    }

    /// Graph of a triangulation's straight edges, weighted by Euclidean
    /// length.
    pub fn from_rectilinear(t: &Triangulation) -> Self {
        let mut adj = alloc::vec![Vec::new(); t.sites().len()];
        for &(u, v) in t.edges() {
            let w = t.site(u).dist(t.site(v));
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        WeightedGraph { n: t.sites().len(), adj }
    }

    /// Graph of a curvilinear triangulation's edges, weighted by
    /// chord-sum arc length over `samples` chords per edge.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidArgument`] when `samples < 2`.
    pub fn from_curvilinear(ct: &CurvTriangulation, samples: usize) -> Result<Self, Error> {
        let t = ct.base();
        let mut adj = alloc::vec![Vec::new(); t.sites().len()];
        for (eid, &(u, v)) in t.edges().iter().enumerate() {
            let w = curve_arc_length(ct.curve(eid), samples)?;
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        Ok(WeightedGraph { n: t.sites().len(), adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adj[v]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct State {
    cost: f64,
    node: usize,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed cost turns the max-heap into a min-heap; equal costs
        // pop in ascending vertex order.
        other
            .cost
            .partial_cmp(&self.cost)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Distances and predecessors from one source vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPaths {
    pub source: usize,
    /// Distance per vertex, infinite when unreachable.
    pub dist: Vec<f64>,
    /// Previous vertex on one shortest path, none at the source and on
    /// unreachable vertices.
    pub pred: Vec<Option<usize>>,
}

impl ShortestPaths {
    /// Vertex sequence of a shortest path from the source to `v`, or
    /// none when `v` is unreachable.
    pub fn path_to(&self, v: usize) -> Option<Vec<usize>> {
        if !self.dist[v].is_finite() {
            return None;
        }
        let mut path = alloc::vec![v];
        let mut cur = v;
        while let Some(p) = self.pred[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Some(path)
    }
}

/// Single-source shortest paths by Dijkstra's method.
///
/// # Errors
///
/// [`Error::OutOfBounds`] when `source` is not a vertex.
pub fn dijkstra(g: &WeightedGraph, source: usize) -> Result<ShortestPaths, Error> {
    if source >= g.n {
        return Err(Error::OutOfBounds(alloc::format!(
            "source {source} on {} vertices",
            g.n
        )));
    }
    let mut dist = alloc::vec![f64::INFINITY; g.n];
    let mut pred = alloc::vec![None; g.n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(State { cost: 0.0, node: source });
    while let Some(State { cost, node }) = heap.pop() {
        if cost > dist[node] {
            continue;
        }
        for &(next, weight) in &g.adj[node] {
            let candidate = cost + weight;
            if candidate < dist[next] {
                dist[next] = candidate;
                pred[next] = Some(node);
                heap.push(State { cost: candidate, node: next });
            }
        }
    }
    Ok(ShortestPaths { source, dist, pred })
}

/// All-pairs shortest distances, row major, one row per source.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_connected(&self) -> bool {
        self.data.iter().all(|d| d.is_finite())
    }

    /// Number of connected components, read off the finiteness pattern.
    pub fn component_count(&self) -> usize {
        let mut seen = alloc::vec![false; self.n];
        let mut components = 0;
        for i in 0..self.n {
            if !seen[i] {
                components += 1;
                for (j, reached) in seen.iter_mut().enumerate() {
                    if self.get(i, j).is_finite() {
                        *reached = true;
                    }
                }
            }
        }
        components
    }
}

/// Computes the full distance matrix of `g`.
pub fn distance_matrix(g: &WeightedGraph) -> DistanceMatrix {
    let mut data = Vec::with_capacity(g.n * g.n);
    for source in 0..g.n {
        data.extend(dijkstra(g, source).expect("source in range").dist);
    }
    DistanceMatrix { n: g.n, data }
}

/// Largest finite entry of a distance matrix and where it occurs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphDiameter {
    pub value: f64,
    /// Lexicographically smallest vertex pair attaining the value,
    /// ascending within the pair.
    pub pair: (usize, usize),
}

/// Diameter of the graph behind a distance matrix.
///
/// # Errors
///
/// [`Error::DisconnectedGraph`] with the component count when any pair
/// is unreachable.
pub fn graph_diameter(m: &DistanceMatrix) -> Result<GraphDiameter, Error> {
    if !m.is_connected() {
        return Err(Error::DisconnectedGraph { components: m.component_count() });
    }
    let mut best = GraphDiameter { value: 0.0, pair: (0, 0) };
    let mut first = true;
    for i in 0..m.vertex_count() {
        for j in i + 1..m.vertex_count() {
            let d = m.get(i, j);
            if first || d > best.value {
                best = GraphDiameter { value: d, pair: (i, j) };
                first = false;
            }
        }
    }
    Ok(best)
}
