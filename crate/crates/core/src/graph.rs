//! Immutable undirected simple graphs and the traversal primitives used by
//! the burning model, the heuristics and the exact solver.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Distance value stored for vertices a BFS never reaches.
pub const UNREACHABLE: u32 = u32::MAX;

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
/// Equality compares structure only, not the name.
#[derive(Debug, Clone)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
    name: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency
    }
}

impl Eq for Graph {}

/// Incremental graph construction that collapses duplicate edges and drops
/// self-loops, counting both so parsers can report them.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adjacency: Vec<Vec<VertexId>>,
    pub self_loops: usize,
    pub duplicates: usize,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adjacency: vec![Vec::new(); n],
            self_loops: 0,
            duplicates: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Adds `{u, v}`. Returns `Ok(false)` when the edge was a self-loop.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        let n = self.adjacency.len();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            self.self_loops += 1;
            return Ok(false);
        }
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        Ok(true)
    }

    pub fn build(mut self) -> Graph {
        let mut half_edges = 0;
        let mut removed = 0;
        for list in &mut self.adjacency {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            removed += before - list.len();
            half_edges += list.len();
        }
        self.duplicates += removed / 2;
        Graph {
            adjacency: self.adjacency,
            edge_count: half_edges / 2,
            name: None,
        }
    }
}

impl Graph {
    /// Builds a graph from an edge iterator. Duplicate edges are collapsed;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut builder = GraphBuilder::new(n);
        for (u, v) in edges {
            if !builder.add_edge(u, v)? {
                return Err(Error::SelfLoop(u));
            }
        }
        Ok(builder.build())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Graph {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.vertex_count() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        } else {
            Ok(())
        }
    }

    /// Subgraph induced by `vertices`, relabelled in the given order.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.neighbors(v)
                .iter()
                .filter_map(move |&w| (index[w] != usize::MAX && index[w] > i).then_some((i, index[w])))
        });
        Graph::from_edges(vertices.len(), edges.collect::<Vec<_>>())
    }

    fn ensure_connected_nonempty(&self) -> Result<()> {
        if self.vertex_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        if !is_connected(self) {
            return Err(Error::Disconnected);
        }
        Ok(())
    }
}

/// Hop distances from a single source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: VertexId,
    pub dist: Vec<u32>,
}

impl DistanceRow {
    pub fn get(&self, v: VertexId) -> Option<u32> {
        match self.dist[v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    /// Largest finite distance in the row.
    pub fn max_finite(&self) -> u32 {
        self.dist.iter().copied().filter(|&d| d != UNREACHABLE).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMetrics {
    pub eccentricity: Vec<u32>,
    pub radius: u32,
    pub diameter: u32,
    /// Sorted ascending.
    pub center: Vec<VertexId>,
}

fn bfs_with_parents(g: &Graph, source: VertexId) -> (Vec<u32>, Vec<VertexId>) {
    let n = g.vertex_count();
    let mut dist = vec![UNREACHABLE; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    (dist, parent)
}

pub fn bfs_distances(g: &Graph, source: VertexId) -> Result<DistanceRow> {
    g.check_vertex(source)?;
    let (dist, _) = bfs_with_parents(g, source);
    Ok(DistanceRow { source, dist })
}

/// `|N_k[v]|`, the closed k-th neighbourhood size (counts `v` itself).
pub fn kth_neighborhood_size(g: &Graph, v: VertexId, k: u32) -> Result<usize> {
    let row = bfs_distances(g, v)?;
    Ok(row.dist.iter().filter(|&&d| d <= k).count())
}

pub fn is_connected(g: &Graph) -> bool {
    if g.vertex_count() == 0 {
        return true;
    }
    let (dist, _) = bfs_with_parents(g, 0);
    dist.iter().all(|&d| d != UNREACHABLE)
}

/// Exact eccentricities from one BFS per vertex.
pub fn metrics(g: &Graph) -> Result<GraphMetrics> {
    g.ensure_connected_nonempty()?;
    let eccentricity: Vec<u32> = (0..g.vertex_count())
        .map(|v| bfs_with_parents(g, v).0.into_iter().max().unwrap_or(0))
        .collect();
    let radius = *eccentricity.iter().min().expect("non-empty");
    let diameter = *eccentricity.iter().max().expect("non-empty");
    let center = (0..g.vertex_count()).filter(|&v| eccentricity[v] == radius).collect();
    Ok(GraphMetrics {
        eccentricity,
        radius,
        diameter,
        center,
    })
}

/// Smallest-id vertex at maximum finite distance.
fn farthest(dist: &[u32]) -> VertexId {
    let mut best = 0;
    for (v, &d) in dist.iter().enumerate() {
        if d != UNREACHABLE && d > dist[best] {
            best = v;
        }
    }
    best
}

fn walk_parents(parent: &[VertexId], from: VertexId, to: VertexId) -> Vec<VertexId> {
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Double-sweep BFS: random start, BFS to the farthest vertex `a`, BFS from
/// `a` to the farthest vertex `b`; returns the BFS shortest path `a..=b`.
pub fn double_bfs_path<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<Vec<VertexId>> {
    g.ensure_connected_nonempty()?;
    let start = rng.gen_range(0..g.vertex_count());
    Ok(double_bfs_path_from(g, start))
}

pub fn double_bfs_path_from(g: &Graph, start: VertexId) -> Vec<VertexId> {
    let (dist, _) = bfs_with_parents(g, start);
    let a = farthest(&dist);
    let (dist, parent) = bfs_with_parents(g, a);
    let b = farthest(&dist);
    walk_parents(&parent, a, b)
}

/// Depth-first search from a random start with shuffled neighbour order.
/// Returns the longest path contained in the resulting DFS tree.
pub fn dfs_long_path<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<Vec<VertexId>> {
    g.ensure_connected_nonempty()?;
    let start = rng.gen_range(0..g.vertex_count());
    Ok(dfs_long_path_from(g, start, rng))
}

pub fn dfs_long_path_from<R: Rng + ?Sized>(g: &Graph, start: VertexId, rng: &mut R) -> Vec<VertexId> {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    // Each frame holds a vertex and its remaining neighbours in visit order.
    let mut stack: Vec<(VertexId, Vec<VertexId>)> = Vec::new();

    let order = |v: VertexId, rng: &mut R| {
        let mut nbrs = g.neighbors(v).to_vec();
        nbrs.shuffle(rng);
        nbrs.reverse();
        nbrs
    };

    visited[start] = true;
    stack.push((start, order(start, rng)));
    while let Some((u, pending)) = stack.last_mut() {
        let u = *u;
        match pending.pop() {
            Some(w) if !visited[w] => {
                visited[w] = true;
                parent[w] = u;
                let nbrs = order(w, rng);
                stack.push((w, nbrs));
            }
            Some(_) => {}
            None => {
                stack.pop();
            }
        }
    }

    let mut tree = vec![Vec::new(); n];
    for (v, &p) in parent.iter().enumerate() {
        if p != usize::MAX {
            tree[p].push(v);
            tree[v].push(p);
        }
    }
    let tree = Graph {
        adjacency: tree,
        edge_count: n.saturating_sub(1),
        name: None,
    };
    let (depth, _) = bfs_with_parents(&tree, start);
    let a = farthest(&depth);
    let (dist, parent) = bfs_with_parents(&tree, a);
    let b = farthest(&dist);
    walk_parents(&parent, a, b)
}

/// Checks that `path` is non-empty, repeats no vertex and follows edges of `g`.
pub fn check_simple_path(g: &Graph, path: &[VertexId]) -> Result<()> {
    if path.is_empty() {
        return Err(Error::NotAPath("empty".into()));
    }
    let mut seen = vec![false; g.vertex_count()];
    for &v in path {
        g.check_vertex(v)?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotAPath(format!("vertex {v} repeated")));
        }
    }
    for pair in path.windows(2) {
        if !g.has_edge(pair[0], pair[1]) {
            return Err(Error::NotAPath(format!("{} and {} are not adjacent", pair[0], pair[1])));
        }
    }
    Ok(())
}
