//! Mixed-multigraph representation and traversal metrics.
//!
//! A [`MixedMultigraph`] is a dense-id vertex set plus a sequence of
//! edges, each either undirected or directed. Parallel edges and (for
//! the data model only) self-loops are allowed. Distances treat every
//! edge as unit weight; undirected edges are traversable both ways.
//!
//! Graph values are immutable once built up; every derived graph
//! (orientation commits, contractions, reversals) is a fresh value.

use std::collections::BTreeSet;

use thiserror::Error;

/// Dense vertex index, `0..n`.
pub type VertexId = usize;
/// Dense edge index, `0..m`, in insertion order.
pub type EdgeId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    /// A radius/diameter query hit an unreachable vertex pair.
    #[error("graph is not strongly connected")]
    DisconnectedGraph,
    /// Contraction of an empty vertex set.
    #[error("cannot contract an empty vertex set")]
    EmptyVertexSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Undirected,
    /// Directed from `endpoints.0` to `endpoints.1`.
    Directed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    /// `(tail, head)` for directed edges; arbitrary but stable order for
    /// undirected ones.
    pub endpoints: (VertexId, VertexId),
    pub kind: EdgeKind,
}

impl Edge {
    pub fn is_self_loop(&self) -> bool {
        self.endpoints.0 == self.endpoints.1
    }

    /// The endpoint opposite to `v`.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.endpoints.0 == v {
            self.endpoints.1
        } else {
            debug_assert_eq!(self.endpoints.1, v);
            self.endpoints.0
        }
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.endpoints.0 == v || self.endpoints.1 == v
    }

    /// Target vertex when walking across this edge out of `from`, if the
    /// edge may be traversed in that direction.
    pub fn target_from(&self, from: VertexId) -> Option<VertexId> {
        match self.kind {
            EdgeKind::Undirected => self.touches(from).then(|| self.other(from)),
            EdgeKind::Directed => (self.endpoints.0 == from).then_some(self.endpoints.1),
        }
    }

    /// Source vertex that can reach `into` across this edge, if any.
    pub fn source_into(&self, into: VertexId) -> Option<VertexId> {
        match self.kind {
            EdgeKind::Undirected => self.touches(into).then(|| self.other(into)),
            EdgeKind::Directed => (self.endpoints.1 == into).then_some(self.endpoints.0),
        }
    }
}

/// A multigraph whose edges may be directed or undirected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedMultigraph {
    n: usize,
    edges: Vec<Edge>,
    /// Incidence lists (edge ids), one per vertex, in insertion order.
    /// Self-loops appear once.
    adj: Vec<Vec<EdgeId>>,
}

impl MixedMultigraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    /// Edge ids incident to `v`, in insertion order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adj[v]
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn add_undirected(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        self.push_edge(u, v, EdgeKind::Undirected)
    }

    pub fn add_directed(&mut self, tail: VertexId, head: VertexId) -> EdgeId {
        self.push_edge(tail, head, EdgeKind::Directed)
    }

    fn push_edge(&mut self, u: VertexId, v: VertexId, kind: EdgeKind) -> EdgeId {
        assert!(u < self.n && v < self.n, "endpoint out of range");
        let id = self.edges.len();
        self.edges.push(Edge {
            id,
            endpoints: (u, v),
            kind,
        });
        self.adj[u].push(id);
        if u != v {
            self.adj[v].push(id);
        }
        id
    }

    pub fn has_self_loop(&self) -> bool {
        self.edges.iter().any(Edge::is_self_loop)
    }

    /// Vertices joined to `v` by at least one edge of any kind.
    pub fn neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.adj[v]
            .iter()
            .map(|&e| self.edges[e].other(v))
            .filter(|&w| w != v)
            .collect()
    }

    /// Commits a direction to the undirected edge `e`: afterwards it is
    /// directed towards `head`.
    pub fn orient_edge(&mut self, e: EdgeId, head: VertexId) {
        let edge = &mut self.edges[e];
        assert_eq!(edge.kind, EdgeKind::Undirected, "edge already directed");
        assert!(edge.touches(head), "head is not an endpoint");
        let tail = edge.other(head);
        edge.endpoints = (tail, head);
        edge.kind = EdgeKind::Directed;
    }

    /// A copy with every directed edge reversed; undirected edges and all
    /// ids are untouched.
    pub fn reversed(&self) -> Self {
        let mut g = self.clone();
        for edge in &mut g.edges {
            if edge.kind == EdgeKind::Directed {
                edge.endpoints = (edge.endpoints.1, edge.endpoints.0);
            }
        }
        g
    }
}

/// Finite or unreachable distances from/to a single vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceVector {
    pub source: VertexId,
    /// `dist[v]` is `None` exactly when `v` is unreachable.
    pub dist: Vec<Option<usize>>,
}

impl DistanceVector {
    pub fn all_finite(&self) -> bool {
        self.dist.iter().all(Option::is_some)
    }

    pub fn max_finite(&self) -> Option<usize> {
        self.dist.iter().copied().flatten().max()
    }
}

fn bfs(
    g: &MixedMultigraph,
    start: VertexId,
    skip_edge: Option<EdgeId>,
    forward: bool,
) -> Vec<Option<usize>> {
    assert!(start < g.vertex_count());
    let mut dist = vec![None; g.vertex_count()];
    dist[start] = Some(0);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x].unwrap();
        for &e in g.incident(x) {
            if Some(e) == skip_edge {
                continue;
            }
            let edge = g.edge(e);
            let next = if forward {
                edge.target_from(x)
            } else {
                edge.source_into(x)
            };
            if let Some(y) = next {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
    }
    dist
}

/// Shortest-path distances from `s` to every vertex.
pub fn distances_from(g: &MixedMultigraph, s: VertexId) -> DistanceVector {
    DistanceVector {
        source: s,
        dist: bfs(g, s, None, true),
    }
}

/// Shortest-path distances from every vertex to `t`.
pub fn distances_to(g: &MixedMultigraph, t: VertexId) -> DistanceVector {
    DistanceVector {
        source: t,
        dist: bfs(g, t, None, false),
    }
}

/// Like [`distances_from`], ignoring one edge instance entirely.
pub(crate) fn distances_from_skipping(
    g: &MixedMultigraph,
    s: VertexId,
    skip: EdgeId,
) -> Vec<Option<usize>> {
    bfs(g, s, Some(skip), true)
}

/// Eccentricity of every vertex: `max(e_out, e_in)`, `None` if either is
/// infinite.
pub fn eccentricities(g: &MixedMultigraph) -> Vec<Option<usize>> {
    let n = g.vertex_count();
    // Full out-distance matrix; e_in(u) reads the transposed column.
    let rows: Vec<Vec<Option<usize>>> = (0..n).map(|v| bfs(g, v, None, true)).collect();
    (0..n)
        .map(|u| {
            let mut ecc = 0usize;
            for v in 0..n {
                match (rows[u][v], rows[v][u]) {
                    (Some(out), Some(inc)) => ecc = ecc.max(out).max(inc),
                    _ => return None,
                }
            }
            Some(ecc)
        })
        .collect()
}

/// Eccentricity of a single vertex, `None` when some pair is unreachable.
pub fn eccentricity(g: &MixedMultigraph, u: VertexId) -> Option<usize> {
    let out = distances_from(g, u);
    let inc = distances_to(g, u);
    if out.all_finite() && inc.all_finite() {
        Some(out.max_finite().unwrap_or(0).max(inc.max_finite().unwrap_or(0)))
    } else {
        None
    }
}

/// Radius and the set of central vertices.
pub fn radius_center(g: &MixedMultigraph) -> Result<(usize, BTreeSet<VertexId>), GraphError> {
    let eccs = eccentricities(g);
    let mut radius = usize::MAX;
    for ecc in &eccs {
        match ecc {
            Some(e) => radius = radius.min(*e),
            None => return Err(GraphError::DisconnectedGraph),
        }
    }
    if g.vertex_count() == 0 {
        return Err(GraphError::DisconnectedGraph);
    }
    let centers = eccs
        .iter()
        .enumerate()
        .filter(|(_, e)| **e == Some(radius))
        .map(|(v, _)| v)
        .collect();
    Ok((radius, centers))
}

pub fn diameter(g: &MixedMultigraph) -> Result<usize, GraphError> {
    let eccs = eccentricities(g);
    let mut diam = 0usize;
    if g.vertex_count() == 0 {
        return Err(GraphError::DisconnectedGraph);
    }
    for ecc in &eccs {
        match ecc {
            Some(e) => diam = diam.max(*e),
            None => return Err(GraphError::DisconnectedGraph),
        }
    }
    Ok(diam)
}

/// True when there is a mixed path from each vertex to every other one.
pub fn is_strongly_connected(g: &MixedMultigraph) -> bool {
    if g.vertex_count() <= 1 {
        return true;
    }
    distances_from(g, 0).all_finite() && distances_to(g, 0).all_finite()
}

/// Cut edges of the underlying undirected multigraph, restricted to the
/// undirected edges of `g`.
///
/// In a strongly connected mixed graph a cut edge is necessarily
/// undirected (a directed cut edge would block all return paths), so this
/// matches the strong-orientability test of [`is_strongly_orientable`].
pub fn bridges(g: &MixedMultigraph) -> BTreeSet<EdgeId> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut timer = 0usize;
    let mut out = BTreeSet::new();

    // Iterative DFS over the underlying multigraph; the entry *edge id* is
    // skipped (not the parent vertex) so parallel edges never register as
    // cut edges.
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (vertex, entry edge, next incident index)
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, entry, ref mut idx)) = stack.last_mut() {
            if *idx < g.incident(v).len() {
                let e = g.incident(v)[*idx];
                *idx += 1;
                if Some(e) == entry {
                    continue;
                }
                let edge = g.edge(e);
                if edge.is_self_loop() {
                    continue;
                }
                let w = edge.other(v);
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, Some(e), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        let e = entry.unwrap();
                        if g.edge(e).kind == EdgeKind::Undirected {
                            out.insert(e);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Boesch–Tindell test: a mixed multigraph has a strong orientation iff
/// it is strongly connected and bridgeless.
pub fn is_strongly_orientable(g: &MixedMultigraph) -> bool {
    is_strongly_connected(g) && bridges(g).is_empty()
}

/// Result of merging a vertex set into one super-vertex.
#[derive(Debug, Clone)]
pub struct ContractionMap {
    pub quotient: MixedMultigraph,
    pub super_vertex: VertexId,
    /// Quotient edge id -> originating edge id.
    pub origin_of_edge: Vec<EdgeId>,
    /// Original vertex -> quotient vertex.
    pub class_of_vertex: Vec<VertexId>,
}

/// Contracts `vset` into a single vertex.
///
/// Edges with both endpoints inside `vset` are dropped; every other edge
/// survives once, with direction preserved relative to the mapped
/// endpoints, and parallel edges are kept. The super-vertex takes the
/// quotient slot of `min(vset)`, so contracting a singleton yields the
/// same graph under the identity edge map.
pub fn contract(
    g: &MixedMultigraph,
    vset: &BTreeSet<VertexId>,
) -> Result<ContractionMap, GraphError> {
    if vset.is_empty() {
        return Err(GraphError::EmptyVertexSet);
    }
    let representative = *vset.iter().next().unwrap();
    let mut class_of_vertex = vec![usize::MAX; g.vertex_count()];
    let mut next = 0usize;
    for v in 0..g.vertex_count() {
        if v == representative || !vset.contains(&v) {
            class_of_vertex[v] = next;
            next += 1;
        }
    }
    for v in vset {
        class_of_vertex[*v] = class_of_vertex[representative];
    }
    let super_vertex = class_of_vertex[representative];

    let mut quotient = MixedMultigraph::new(next);
    let mut origin_of_edge = Vec::new();
    for edge in g.edges() {
        let (a, b) = edge.endpoints;
        if vset.contains(&a) && vset.contains(&b) {
            continue;
        }
        let (ca, cb) = (class_of_vertex[a], class_of_vertex[b]);
        match edge.kind {
            EdgeKind::Undirected => quotient.add_undirected(ca, cb),
            EdgeKind::Directed => quotient.add_directed(ca, cb),
        };
        origin_of_edge.push(edge.id);
    }
    Ok(ContractionMap {
        quotient,
        super_vertex,
        origin_of_edge,
        class_of_vertex,
    })
}

/// Canonical shortest-path predecessor edges for walks into `targets`.
///
/// Given a distance vector from `root` (forward BFS when `forward`,
/// reverse otherwise), picks for every vertex the lexicographically least
/// `(predecessor, edge id)` on some shortest path, then returns the union
/// of the `root -> target` paths as `(edge id, child)` pairs, where
/// `child` is the endpoint farther from the root.
pub(crate) fn shortest_path_tree(
    g: &MixedMultigraph,
    root: VertexId,
    dist: &[Option<usize>],
    targets: &BTreeSet<VertexId>,
    forward: bool,
) -> Vec<(EdgeId, VertexId)> {
    let mut chosen: Vec<Option<(EdgeId, VertexId)>> = vec![None; g.vertex_count()];
    let mut tree: Vec<(EdgeId, VertexId)> = Vec::new();
    let mut in_tree = vec![false; g.vertex_count()];
    in_tree[root] = true;

    let parent_of = |v: VertexId| -> (EdgeId, VertexId) {
        let dv = dist[v].expect("target unreachable from root");
        let mut best: Option<(VertexId, EdgeId)> = None;
        for &e in g.incident(v) {
            let edge = g.edge(e);
            let pred = if forward {
                edge.source_into(v)
            } else {
                edge.target_from(v)
            };
            if let Some(w) = pred {
                if w != v && dist[w] == Some(dv - 1) {
                    let cand = (w, e);
                    if best.is_none() || cand < best.unwrap() {
                        best = Some(cand);
                    }
                }
            }
        }
        let (w, e) = best.expect("no shortest-path predecessor");
        (e, w)
    };

    for &t in targets {
        let mut v = t;
        while !in_tree[v] {
            let (e, w) = match chosen[v] {
                Some(pair) => pair,
                None => {
                    let (e, w) = parent_of(v);
                    chosen[v] = Some((e, w));
                    (e, w)
                }
            };
            tree.push((e, v));
            in_tree[v] = true;
            v = w;
        }
    }
    tree.sort_unstable();
    tree.dedup();
    tree
}
