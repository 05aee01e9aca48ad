//! Shared helpers for the integration suites. The reference oracles here
//! stay independent of the library's own search paths: radii come from a
//! Floyd-Warshall matrix and orientations from plain bit enumeration.

#![allow(dead_code)]

use mixorient::cycles::CycleWitness;
use mixorient::graph::{EdgeId, EdgeKind, MixedMultigraph, VertexId};
use mixorient::random::random_strongly_orientable;

/// All-pairs distances of the digraph interpretation of `g` (undirected
/// edges count both ways), by Floyd-Warshall.
pub fn fw_distances(g: &MixedMultigraph) -> Vec<Vec<Option<usize>>> {
    let n = g.vertex_count();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for e in g.edges() {
        let (u, v) = e.endpoints;
        if u == v {
            continue;
        }
        d[u][v] = d[u][v].min(1);
        if e.kind == EdgeKind::Undirected {
            d[v][u] = d[v][u].min(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d.into_iter()
        .map(|row| row.into_iter().map(|x| (x < inf).then_some(x)).collect())
        .collect()
}

/// Radius over the Floyd-Warshall matrix, `None` when not strongly
/// connected.
pub fn fw_radius(g: &MixedMultigraph) -> Option<usize> {
    let d = fw_distances(g);
    let n = g.vertex_count();
    let mut radius = None;
    for u in 0..n {
        let mut ecc = 0;
        for v in 0..n {
            ecc = ecc.max(d[u][v]?).max(d[v][u]?);
        }
        radius = Some(radius.map_or(ecc, |r: usize| r.min(ecc)));
    }
    radius
}

pub fn fw_diameter(g: &MixedMultigraph) -> Option<usize> {
    let d = fw_distances(g);
    let n = g.vertex_count();
    let mut diam = 0;
    for u in 0..n {
        for v in 0..n {
            diam = diam.max(d[u][v]?);
        }
    }
    Some(diam)
}

/// Minimum radius over every full orientation of `g`, by enumerating all
/// `2^k` assignments without any pruning. `None` when no orientation is
/// strong.
pub fn naive_oriented_radius(g: &MixedMultigraph) -> Option<usize> {
    let undirected: Vec<EdgeId> = g
        .edges()
        .iter()
        .filter(|e| e.kind == EdgeKind::Undirected)
        .map(|e| e.id)
        .collect();
    assert!(undirected.len() <= 24, "naive oracle would blow up");
    let mut best: Option<usize> = None;
    for bits in 0u64..(1 << undirected.len()) {
        let mut h = g.clone();
        for (j, &e) in undirected.iter().enumerate() {
            let (x, y) = h.edge(e).endpoints;
            h.orient_edge(e, if bits >> j & 1 == 0 { y } else { x });
        }
        if let Some(r) = fw_radius(&h) {
            best = Some(best.map_or(r, |b| b.min(r)));
        }
    }
    best
}

/// Every mixed multigraph on exactly `n` labelled vertices with at most
/// `max_m` edges (as an edge multiset; parallels and both arc directions
/// included, self-loops excluded).
pub fn enumerate_small_graphs(n: usize, max_m: usize) -> Vec<MixedMultigraph> {
    let mut slots: Vec<(usize, usize, EdgeKind)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            slots.push((u, v, EdgeKind::Undirected));
            slots.push((u, v, EdgeKind::Directed));
            slots.push((v, u, EdgeKind::Directed));
        }
    }
    let mut out = Vec::new();
    let mut stack: Vec<(usize, usize, EdgeKind)> = Vec::new();
    fn rec(
        n: usize,
        slots: &[(usize, usize, EdgeKind)],
        from: usize,
        left: usize,
        stack: &mut Vec<(usize, usize, EdgeKind)>,
        out: &mut Vec<MixedMultigraph>,
    ) {
        let mut g = MixedMultigraph::new(n);
        for &(u, v, kind) in stack.iter() {
            match kind {
                EdgeKind::Undirected => g.add_undirected(u, v),
                EdgeKind::Directed => g.add_directed(u, v),
            };
        }
        out.push(g);
        if left == 0 {
            return;
        }
        for i in from..slots.len() {
            stack.push(slots[i]);
            rec(n, slots, i, left - 1, stack, out);
            stack.pop();
        }
    }
    rec(n, &slots, 0, max_m, &mut stack, &mut out);
    out
}

/// Seed-controlled corpus of strongly orientable instances with varied
/// sizes and undirected fractions.
pub fn random_corpus(count: usize, max_n: usize, seed_base: u64) -> Vec<MixedMultigraph> {
    (0..count)
        .map(|i| {
            let n = 1 + i % max_n;
            let frac = (i % 11) as f64 / 10.0;
            random_strongly_orientable(n, frac, seed_base + i as u64)
        })
        .collect()
}

/// Checks that a witness is a closed mixed walk using its query edge
/// (the first entry) exactly once, and that its recorded length matches.
pub fn assert_valid_cycle_witness(g: &MixedMultigraph, query: EdgeId, w: &CycleWitness) {
    assert_eq!(w.length, w.edge_ids.len());
    assert_eq!(w.edge_ids[0], query);
    assert_eq!(
        w.edge_ids.iter().filter(|&&e| e == query).count(),
        1,
        "query edge must appear exactly once"
    );
    let first = g.edge(query);
    let starts = [first.endpoints.0, first.endpoints.1];
    let ok = starts.iter().any(|&start| {
        let mut cur = start;
        for &e in &w.edge_ids {
            match g.edge(e).target_from(cur) {
                Some(next) => cur = next,
                None => return false,
            }
        }
        cur == start
    });
    assert!(ok, "witness is not a traversable closed walk");
}

/// True when every shortest `u -> w` path in `g` starts with edge `e`.
pub fn all_shortest_paths_start_with(
    g: &MixedMultigraph,
    u: VertexId,
    w: VertexId,
    e: EdgeId,
) -> bool {
    let d = fw_distances(g);
    let Some(target) = d[u][w].filter(|&x| x > 0) else {
        return false;
    };
    for &f in g.incident(u) {
        if f == e {
            continue;
        }
        if let Some(x) = g.edge(f).target_from(u) {
            if x != u && d[x][w].map(|t| 1 + t) == Some(target) {
                return false;
            }
        }
    }
    // And e itself must begin some shortest path.
    g.edge(e)
        .target_from(u)
        .and_then(|x| d[x][w])
        .map(|t| 1 + t)
        == Some(target)
}
