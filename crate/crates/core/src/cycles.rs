//! Shortest cycles through edges and the cycle statistics used by the
//! orientation engine.
//!
//! "Cycle" here means a closed mixed walk that uses the query edge
//! exactly once and traverses every directed edge head-ward. For a
//! strongly orientable graph of radius `r`, every edge lies on such a
//! cycle of length at most `2r + 1`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{
    distances_from, distances_from_skipping, EdgeId, EdgeKind, MixedMultigraph, VertexId,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleError {
    #[error("edge {edge} lies on no cycle")]
    NoCycle { edge: EdgeId },
    #[error("no edge joins {u} and {v}")]
    NoSuchEdge { u: VertexId, v: VertexId },
}

/// A closed mixed walk through one query edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness {
    pub length: usize,
    /// Edges of the walk in traversal order; the query edge comes first
    /// and occurs exactly once.
    pub edge_ids: Vec<EdgeId>,
}

/// Reconstructs one canonical shortest path `from -> to` as an edge list,
/// preferring the lexicographically least `(vertex, edge)` predecessor at
/// every step. `skip` is excluded from the traversal entirely.
pub(crate) fn shortest_path_edges(
    g: &MixedMultigraph,
    from: VertexId,
    to: VertexId,
    skip: Option<EdgeId>,
) -> Option<Vec<EdgeId>> {
    let dist = match skip {
        Some(e) => distances_from_skipping(g, from, e),
        None => distances_from(g, from).dist,
    };
    dist[to]?;
    let mut path = Vec::with_capacity(dist[to].unwrap());
    let mut v = to;
    while v != from {
        let dv = dist[v].unwrap();
        let mut best: Option<(VertexId, EdgeId)> = None;
        for &e in g.incident(v) {
            if Some(e) == skip {
                continue;
            }
            if let Some(w) = g.edge(e).source_into(v) {
                if w != v && dist[w] == Some(dv - 1) {
                    let cand = (w, e);
                    if best.is_none() || cand < best.unwrap() {
                        best = Some(cand);
                    }
                }
            }
        }
        let (w, e) = best.expect("distance table admits a predecessor");
        path.push(e);
        v = w;
    }
    path.reverse();
    Some(path)
}

/// Length (and one witness walk) of a shortest cycle through edge `e`.
///
/// For a directed edge `p -> q` this is `1 +` the shortest `q -> p`
/// distance. For an undirected edge the better of its two orientations is
/// taken, with the return path avoiding the edge instance itself, so a
/// parallel partner still yields the 2-cycle.
pub fn shortest_cycle_through_edge(
    g: &MixedMultigraph,
    e: EdgeId,
) -> Result<CycleWitness, CycleError> {
    let edge = g.edge(e);
    let (p, q) = edge.endpoints;
    let close = |walk: Option<Vec<EdgeId>>| {
        walk.map(|back| {
            let mut edge_ids = vec![e];
            edge_ids.extend(back);
            CycleWitness {
                length: edge_ids.len(),
                edge_ids,
            }
        })
    };
    let witness = match edge.kind {
        EdgeKind::Directed => close(shortest_path_edges(g, q, p, None)),
        EdgeKind::Undirected => {
            // Traverse e as p->q or q->p, whichever closes shorter; ties
            // prefer the stored endpoint order.
            let forward = distances_from_skipping(g, q, e)[p];
            let backward = distances_from_skipping(g, p, e)[q];
            match (forward, backward) {
                (None, None) => None,
                (Some(f), b) if b.is_none() || f <= b.unwrap() => {
                    close(shortest_path_edges(g, q, p, Some(e)))
                }
                _ => close(shortest_path_edges(g, p, q, Some(e))),
            }
        }
    };
    witness.ok_or(CycleError::NoCycle { edge: e })
}

/// Length of a shortest cycle containing *some* edge between `u` and `v`.
pub fn min_cycle_between(
    g: &MixedMultigraph,
    u: VertexId,
    v: VertexId,
) -> Result<usize, CycleError> {
    let mut best: Option<usize> = None;
    let mut found_edge = false;
    for &e in g.incident(u) {
        if g.edge(e).touches(v) && u != v {
            found_edge = true;
            if let Ok(w) = shortest_cycle_through_edge(g, e) {
                best = Some(best.map_or(w.length, |b| b.min(w.length)));
            }
        }
    }
    if !found_edge {
        return Err(CycleError::NoSuchEdge { u, v });
    }
    best.ok_or(CycleError::NoCycle {
        edge: g.incident(u)[0],
    })
}

/// Sum of [`min_cycle_between`] over all of `neighbors`.
pub fn cycle_length_sum(
    g: &MixedMultigraph,
    u: VertexId,
    neighbors: &BTreeSet<VertexId>,
) -> Result<usize, CycleError> {
    let mut sum = 0usize;
    for &v in neighbors {
        sum += min_cycle_between(g, u, v)?;
    }
    Ok(sum)
}

/// The smallest `k` such that every edge lies on a cycle of length at
/// most `k`; 0 for an edgeless graph.
///
/// For strongly orientable inputs this satisfies `2 <= eta <= 2r + 1`.
pub fn eta(g: &MixedMultigraph) -> Result<usize, CycleError> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if g.edge_count() >= 64 {
            return (0..g.edge_count())
                .into_par_iter()
                .map(|e| shortest_cycle_through_edge(g, e).map(|w| w.length))
                .try_reduce(|| 0, |a, b| Ok(a.max(b)));
        }
    }
    let mut max = 0;
    for e in 0..g.edge_count() {
        max = max.max(shortest_cycle_through_edge(g, e)?.length);
    }
    Ok(max)
}
