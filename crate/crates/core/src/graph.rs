//! Simple undirected graphs with canonical vertex and edge orderings.
//!
//! Vertices are `0..n`. Edges are stored as `(u, v)` with `u < v` and are
//! indexed in lexicographic order of their endpoint pairs, so an edge index
//! is a function of the edge set alone. Adjacency is kept in compressed
//! form with each neighbor list sorted by vertex id.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::arrows::ArrowConfig;
use crate::dsu::DisjointSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    nbrs: Vec<usize>,
    nbr_edges: Vec<usize>,
}

impl Graph {
    /// Builds a graph on vertices `0..n` from an edge list in any order.
    ///
    /// Fails on self-loops, repeated edges and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        let mut seen = HashSet::new();
        for (i, (a, b)) in edges.into_iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge {i} = ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::SelfLoop { line: i + 1, vertex: a as u64 });
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge { line: i + 1, u: a as u64, v: b as u64 });
            }
            list.push(key);
        }
        list.sort_unstable();
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut nbrs = vec![0; 2 * edges.len()];
        let mut nbr_edges = vec![0; 2 * edges.len()];
        // Edges are visited in lexicographic order, so every neighbor list
        // comes out sorted: for vertex x, lower neighbors arrive (as the
        // second endpoint) in increasing order before any higher neighbor.
        for (e, &(u, v)) in edges.iter().enumerate() {
            nbrs[fill[u]] = v;
            nbr_edges[fill[u]] = e;
            fill[u] += 1;
            nbrs[fill[v]] = u;
            nbr_edges[fill[v]] = e;
            fill[v] += 1;
        }
        for v in 0..n {
            let (lo, hi) = (offsets[v], offsets[v + 1]);
            debug_assert!(nbrs[lo..hi].windows(2).all(|w| w[0] < w[1]));
        }
        Graph { n, edges, offsets, nbrs, nbr_edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order; index `e` of the slice is edge id `e`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge ids parallel to [`Graph::neighbors`].
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.nbr_edges[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let nb = self.neighbors(u);
        nb.binary_search(&v).ok().map(|i| self.incident_edges(u)[i])
    }

    /// Product of all vertex degrees as a float (the size of the arrow
    /// configuration space).
    pub fn degree_product(&self) -> f64 {
        (0..self.n).map(|v| self.degree(v) as f64).product()
    }

    /// The spanning subgraph keeping only the listed edges.
    ///
    /// Returns the subgraph and, for each new edge id, the original edge id.
    /// Relative edge order is preserved.
    pub fn spanning_subgraph(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut ids: Vec<usize> = keep.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let edges = ids.iter().map(|&e| self.edges[e]).collect();
        (Graph::from_sorted(self.n, edges), ids)
    }

    /// Number of connected components of the whole graph.
    pub fn component_count(&self) -> usize {
        let mut dsu = DisjointSet::new(self.n);
        let mut comps = self.n;
        for &(u, v) in &self.edges {
            if dsu.union(u, v) {
                comps -= 1;
            }
        }
        comps
    }

    /// Relabels vertices in breadth-first order from vertex 0 (lowest
    /// unvisited vertex for later components), visiting neighbors in id
    /// order. For a graph without isolated vertices the result is a fixed
    /// point of `parse_edge_list(write_edge_list(..))`.
    pub fn canonicalized(&self) -> Graph {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = next;
            next += 1;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        next += 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        Graph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (label[u], label[v])))
            .expect("relabelling preserves simplicity")
    }
}

/// Parses the whitespace-separated `u v` edge-list format.
///
/// Blank lines and lines whose first non-blank character is `#` are
/// skipped. Vertex ids are arbitrary non-negative integers and are
/// renumbered `0..n` in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut seen: HashSet<(u64, u64)> = HashSet::new();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || Error::MalformedLine { line: line_no, text: raw.to_string() };
        let mut tokens = line.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(malformed()),
        };
        let a: u64 = a.parse().map_err(|_| malformed())?;
        let b: u64 = b.parse().map_err(|_| malformed())?;
        if a == b {
            return Err(Error::SelfLoop { line: line_no, vertex: a });
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::DuplicateEdge { line: line_no, u: a, v: b });
        }
        let mut id = |x: u64| {
            let next = ids.len();
            *ids.entry(x).or_insert(next)
        };
        let (u, v) = (id(a), id(b));
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Graph::from_edges(ids.len(), edges)
}

/// Writes the canonical edge list, one `u v` line per edge in id order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(g.m() * 8);
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Checks that `g` carries a bicircular matroid with at least one basis:
/// connected and `m >= n`.
pub fn validate_bicircular_instance(g: &Graph) -> Result<()> {
    if g.n() == 0 || g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let components = g.component_count();
    if components != 1 {
        return Err(Error::Disconnected { components });
    }
    if g.m() < g.n() {
        return Err(Error::TooFewEdges { n: g.n(), m: g.m() });
    }
    Ok(())
}

/// True iff `r` is a basis of the bicircular matroid of `g`: `|r| = n` and
/// every component of `(V, r)` has as many edges as vertices.
pub fn is_basis(g: &Graph, r: &[usize]) -> bool {
    if r.len() != g.n() {
        return false;
    }
    let mut dsu = DisjointSet::new(g.n());
    let mut used = vec![false; g.m()];
    for &e in r {
        if e >= g.m() || used[e] {
            return false;
        }
        used[e] = true;
        let (u, v) = g.edge(e);
        dsu.union(u, v);
    }
    let mut vertices = vec![0usize; g.n()];
    let mut edges = vec![0usize; g.n()];
    for v in 0..g.n() {
        vertices[dsu.find(v)] += 1;
    }
    for &e in r {
        edges[dsu.find(g.edge(e).0)] += 1;
    }
    (0..g.n()).all(|root| vertices[root] == 0 || vertices[root] == edges[root])
}

/// A basis of the bicircular matroid: sorted edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Basis(Vec<usize>);

impl Basis {
    pub fn new(g: &Graph, edges: impl IntoIterator<Item = usize>) -> Option<Basis> {
        let mut ids: Vec<usize> = edges.into_iter().collect();
        ids.sort_unstable();
        is_basis(g, &ids).then_some(Basis(ids))
    }

    pub(crate) fn from_sorted_unchecked(ids: Vec<usize>) -> Basis {
        Basis(ids)
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }
}

/// A directed cycle `v0 -> v1 -> ... -> v(l-1) -> v0` rotated so that the
/// lowest vertex id comes first. Length 2 is allowed and stands for both
/// orientations of one edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedCycle {
    vertices: Vec<usize>,
}

impl DirectedCycle {
    pub fn new(g: &Graph, vertices: &[usize]) -> Result<DirectedCycle> {
        let len = vertices.len();
        if len < 2 {
            return Err(Error::NotACycle(format!("length {len} < 2")));
        }
        let mut seen = HashSet::new();
        for (i, &v) in vertices.iter().enumerate() {
            if v >= g.n() || !seen.insert(v) {
                return Err(Error::NotACycle(format!("vertex {v} repeated or out of range")));
            }
            let w = vertices[(i + 1) % len];
            if w < g.n() && g.edge_between(v, w).is_none() {
                return Err(Error::NotACycle(format!("{v} and {w} are not adjacent")));
            }
        }
        Ok(Self::rotated(vertices))
    }

    pub(crate) fn rotated(vertices: &[usize]) -> DirectedCycle {
        let start = (0..vertices.len()).min_by_key(|&i| vertices[i]).unwrap_or(0);
        let mut v = Vec::with_capacity(vertices.len());
        v.extend_from_slice(&vertices[start..]);
        v.extend_from_slice(&vertices[..start]);
        DirectedCycle { vertices: v }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn start_vertex(&self) -> usize {
        self.vertices[0]
    }

    /// Edge id of every step, in traversal order.
    pub fn edge_ids(&self, g: &Graph) -> Vec<usize> {
        let len = self.vertices.len();
        (0..len)
            .map(|i| {
                g.edge_between(self.vertices[i], self.vertices[(i + 1) % len])
                    .expect("validated cycle")
            })
            .collect()
    }

    pub fn reversed(&self) -> DirectedCycle {
        let mut v = self.vertices.clone();
        v.reverse();
        Self::rotated(&v)
    }
}

/// Orientation sign of a directed cycle of length at least 3.
///
/// A step `u -> v` has sign `+1` when `u < v` and `-1` otherwise. Odd
/// cycles multiply all step signs; even cycles skip the step on the
/// lowest-indexed edge. Exactly one orientation of each cycle gets `+1`,
/// and that orientation is the bad one.
pub fn cycle_orientation_sign(g: &Graph, c: &DirectedCycle) -> Result<i8> {
    if c.len() < 3 {
        return Err(Error::NotACycle("2-cycles carry no orientation sign".into()));
    }
    for (i, &v) in c.vertices.iter().enumerate() {
        let w = c.vertices[(i + 1) % c.len()];
        if v >= g.n() || w >= g.n() || g.edge_between(v, w).is_none() {
            return Err(Error::NotACycle(format!("{v} and {w} are not adjacent")));
        }
    }
    Ok(closed_walk_sign(&c.vertices, &c.edge_ids(g)))
}

/// Sign of the closed walk `vertices[0] -> vertices[1] -> ... -> vertices[0]`
/// where `edges[i]` is the edge of the step leaving `vertices[i]`.
#[inline]
pub(crate) fn closed_walk_sign(vertices: &[usize], edges: &[usize]) -> i8 {
    let len = vertices.len();
    debug_assert_eq!(len, edges.len());
    let skip = if len.is_multiple_of(2) {
        (0..len).min_by_key(|&i| edges[i]).unwrap_or(usize::MAX)
    } else {
        usize::MAX
    };
    let mut negative = false;
    for i in 0..len {
        if i == skip {
            continue;
        }
        let next = if i + 1 == len { vertices[0] } else { vertices[i + 1] };
        if vertices[i] > next {
            negative = !negative;
        }
    }
    if negative {
        -1
    } else {
        1
    }
}

/// The undirected edges underlying the arcs of `sigma`, sorted.
pub fn arrow_support(g: &Graph, sigma: &ArrowConfig) -> Vec<usize> {
    let mut ids: Vec<usize> = (0..g.n())
        .map(|v| g.edge_between(v, sigma.head(v)).expect("arrow follows an edge"))
        .collect();
    ids.sort_unstable();
    ids.dedup();
    ids
}
