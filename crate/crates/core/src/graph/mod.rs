//! Finite rooted graphs, weighted self-loops and tail attachment.
//!
//! Vertices are labeled `1..=n`. When a tail is attached at the root, its
//! sites continue the labeling as `n + 1, n + 2, ...`.

mod io;

pub use io::{parse_graph, serialize_graph};

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// Undirected, connected, simple graph with optional weighted self-loops.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    loops: BTreeMap<usize, f64>,
    neighbors: Vec<Vec<usize>>,
}

impl FiniteGraph {
    /// Builds a graph on `n` vertices, validating endpoints, duplicates,
    /// loop weights and connectivity.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        loops: impl IntoIterator<Item = (usize, f64)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            check_vertex(n, u)?;
            check_vertex(n, v)?;
            if u == v {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) is a self-loop; use a loop weight instead"
                )));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
        }
        let mut loop_map = BTreeMap::new();
        for (u, weight) in loops {
            check_vertex(n, u)?;
            if !weight.is_finite() {
                return Err(Error::InvalidGraph(format!("loop weight at {u} is not finite")));
            }
            if loop_map.insert(u, weight).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate loop at vertex {u}")));
            }
        }

        let edges: Vec<_> = seen.into_iter().collect();
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &edges {
            neighbors[u - 1].push(v);
            neighbors[v - 1].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        let graph = FiniteGraph { n, edges, loops: loop_map, neighbors };
        if !graph.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(graph)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Edges as sorted pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn loops(&self) -> &BTreeMap<usize, f64> {
        &self.loops
    }

    pub fn loop_weight(&self, u: usize) -> f64 {
        self.loops.get(&u).copied().unwrap_or(0.0)
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[u - 1]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors[u - 1].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Common degree if the graph is regular and loop-free.
    pub fn regular_degree(&self) -> Option<usize> {
        if !self.loops.is_empty() {
            return None;
        }
        let d = self.degree(1);
        (1..=self.n).all(|u| self.degree(u) == d).then_some(d)
    }

    fn is_connected(&self) -> bool {
        let mut visited = vec![false; self.n];
        let mut queue = VecDeque::from([1usize]);
        visited[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if !visited[v - 1] {
                    visited[v - 1] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }
}

fn check_vertex(n: usize, u: usize) -> Result<()> {
    if u == 0 || u > n {
        return Err(Error::InvalidGraph(format!("vertex {u} outside 1..={n}")));
    }
    Ok(())
}

/// A finite graph with a distinguished root vertex (the tail attachment point).
#[derive(Debug, Clone, PartialEq)]
pub struct RootedGraph {
    graph: FiniteGraph,
    root: usize,
}

impl RootedGraph {
    pub fn new(graph: FiniteGraph, root: usize) -> Result<Self> {
        check_vertex(graph.order(), root)?;
        Ok(RootedGraph { graph, root })
    }

    /// Roots the graph at its last vertex.
    pub fn with_default_root(graph: FiniteGraph) -> Self {
        let root = graph.order();
        RootedGraph { graph, root }
    }

    pub fn graph(&self) -> &FiniteGraph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }
}

/// A rooted graph, optionally carrying a semi-infinite path at the root.
#[derive(Debug, Clone, PartialEq)]
pub struct TailedSystem {
    rooted: RootedGraph,
    tail_present: bool,
}

impl TailedSystem {
    pub fn without_tail(rooted: RootedGraph) -> Self {
        TailedSystem { rooted, tail_present: false }
    }

    pub fn rooted(&self) -> &RootedGraph {
        &self.rooted
    }

    pub fn graph(&self) -> &FiniteGraph {
        self.rooted.graph()
    }

    pub fn root(&self) -> usize {
        self.rooted.root()
    }

    pub fn order(&self) -> usize {
        self.rooted.order()
    }

    pub fn tail_present(&self) -> bool {
        self.tail_present
    }
}

/// The marked vertex `w` and the weight `gamma` of its self-loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSpec {
    pub w: usize,
    pub gamma: f64,
}

impl OracleSpec {
    pub fn new(w: usize, gamma: f64) -> Result<Self> {
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidArgument(format!("oracle weight {gamma} must be finite and >= 0")));
        }
        if w == 0 {
            return Err(Error::InvalidArgument("oracle vertex must be >= 1".into()));
        }
        Ok(OracleSpec { w, gamma })
    }

    pub(crate) fn check_against(&self, n: usize) -> Result<()> {
        if self.w > n {
            return Err(Error::InvalidArgument(format!(
                "oracle vertex {} outside 1..={n}",
                self.w
            )));
        }
        Ok(())
    }
}

/// The complete graph `K_n`.
pub fn make_complete(n: usize) -> Result<FiniteGraph> {
    if n < 2 {
        return Err(Error::InvalidOrder(n));
    }
    let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
    FiniteGraph::new(n, edges, [])
}

/// Joins a new conical vertex `n + 1` to every vertex of `g` and roots there.
pub fn make_cone(g: &FiniteGraph) -> RootedGraph {
    let apex = g.order() + 1;
    let edges = g
        .edges()
        .iter()
        .copied()
        .chain((1..apex).map(|u| (u, apex)));
    let loops = g.loops().iter().map(|(&u, &w)| (u, w));
    let graph = FiniteGraph::new(apex, edges, loops).expect("cone of a connected graph is valid");
    RootedGraph { graph, root: apex }
}

/// Attaches a semi-infinite path at the root.
pub fn attach_tail(r: RootedGraph) -> TailedSystem {
    TailedSystem { rooted: r, tail_present: true }
}

/// The infinite lollipop `K_n(P_inf)`, tail at vertex `n`.
pub fn lollipop(n: usize) -> Result<TailedSystem> {
    Ok(attach_tail(RootedGraph::with_default_root(make_complete(n)?)))
}
