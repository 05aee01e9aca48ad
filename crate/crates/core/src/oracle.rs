//! Exact oriented radius by exhaustive search, with forcing-based
//! pruning.
//!
//! An undirected edge is *forced* when one of its two directions already
//! ruins strong orientability; committing the other direction keeps the
//! set of strong orientations intact, so forcing never changes the
//! optimum. After forcing, the remaining `k` free edges are swept through
//! all `2^k` assignments. With the `parallel` feature the sweep is
//! sharded across threads; results are independent of the shard count.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::driver::Orientation;
use crate::graph::{is_strongly_orientable, EdgeId, EdgeKind, MixedMultigraph, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("input graph is not strongly connected and bridgeless")]
    NotStronglyOrientable,
    #[error("self-loops cannot be oriented")]
    SelfLoop,
    #[error("{free} free edges after forcing exceed the cap of {cap}")]
    TooManyFreeEdges { free: usize, cap: usize },
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub oriented_radius: usize,
    /// One orientation attaining the optimum (lowest enumeration index on
    /// ties).
    pub witness: Orientation,
    /// Assignments enumerated, i.e. `2^k` over `k` free edges.
    pub explored: u64,
    /// Edges fixed by forcing before the sweep.
    pub forced_count: usize,
}

/// Commits every undirected edge whose opposite direction would destroy
/// strong orientability, repeating until nothing more is forced.
///
/// The returned graph has the commitments applied; its strong
/// orientations are exactly those of `g`.
pub fn forced_orientations(
    g: &MixedMultigraph,
) -> Result<(MixedMultigraph, BTreeMap<EdgeId, VertexId>), OracleError> {
    if g.has_self_loop() {
        return Err(OracleError::SelfLoop);
    }
    if !is_strongly_orientable(g) {
        return Err(OracleError::NotStronglyOrientable);
    }
    let mut cur = g.clone();
    let mut forced = BTreeMap::new();
    loop {
        let mut changed = false;
        for e in 0..cur.edge_count() {
            if cur.edge(e).kind != EdgeKind::Undirected {
                continue;
            }
            let (x, y) = cur.edge(e).endpoints;
            let viable = |head: VertexId| {
                let mut trial = cur.clone();
                trial.orient_edge(e, head);
                is_strongly_orientable(&trial)
            };
            match (viable(y), viable(x)) {
                (true, false) => {
                    cur.orient_edge(e, y);
                    forced.insert(e, y);
                    changed = true;
                }
                (false, true) => {
                    cur.orient_edge(e, x);
                    forced.insert(e, x);
                    changed = true;
                }
                (true, true) => {}
                (false, false) => unreachable!("input was strongly orientable"),
            }
        }
        if !changed {
            break;
        }
    }
    Ok((cur, forced))
}

/// Digraph flattened for the sweep: fixed arcs plus the free undirected
/// edges, addressed by assignment bits.
struct SweepInstance {
    n: usize,
    fixed: Vec<(VertexId, VertexId)>,
    /// Free edge endpoints; bit 0 orients `.0 -> .1`, bit 1 the reverse.
    free: Vec<(VertexId, VertexId)>,
}

impl SweepInstance {
    fn new(g: &MixedMultigraph, free_ids: &[EdgeId]) -> Self {
        let fixed = g
            .edges()
            .iter()
            .filter(|e| e.kind == EdgeKind::Directed)
            .map(|e| e.endpoints)
            .collect();
        let free = free_ids.iter().map(|&e| g.edge(e).endpoints).collect();
        Self {
            n: g.vertex_count(),
            fixed,
            free,
        }
    }

    /// Radius of the digraph under assignment `bits`, `None` when it is
    /// not strongly connected.
    fn radius_of(&self, bits: u64, scratch: &mut SweepScratch) -> Option<usize> {
        scratch.load(self, bits);
        scratch.radius()
    }
}

/// Reusable adjacency and BFS buffers for one sweep worker.
struct SweepScratch {
    out: Vec<Vec<u32>>,
    inc: Vec<Vec<u32>>,
    dist: Vec<Vec<u32>>,
    queue: Vec<u32>,
}

const UNSEEN: u32 = u32::MAX;

impl SweepScratch {
    fn new(n: usize) -> Self {
        Self {
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            dist: vec![vec![UNSEEN; n]; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn load(&mut self, inst: &SweepInstance, bits: u64) {
        for list in self.out.iter_mut().chain(self.inc.iter_mut()) {
            list.clear();
        }
        let mut arc = |t: VertexId, h: VertexId| {
            self.out[t].push(h as u32);
            self.inc[h].push(t as u32);
        };
        for &(t, h) in &inst.fixed {
            arc(t, h);
        }
        for (j, &(x, y)) in inst.free.iter().enumerate() {
            if bits >> j & 1 == 0 {
                arc(x, y);
            } else {
                arc(y, x);
            }
        }
    }

    fn bfs(&mut self, start: usize, row: usize, reverse: bool) -> usize {
        let dist = &mut self.dist[row];
        dist.fill(UNSEEN);
        dist[start] = 0;
        self.queue.clear();
        self.queue.push(start as u32);
        let mut head = 0;
        let mut reached = 1;
        while head < self.queue.len() {
            let v = self.queue[head] as usize;
            head += 1;
            let next = if reverse { &self.inc[v] } else { &self.out[v] };
            for &w in next {
                let w = w as usize;
                if dist[w] == UNSEEN {
                    dist[w] = dist[v] + 1;
                    self.queue.push(w as u32);
                    reached += 1;
                }
            }
        }
        reached
    }

    fn radius(&mut self) -> Option<usize> {
        let n = self.out.len();
        if n == 0 {
            return None;
        }
        // Cheap strongness test before the full distance matrix.
        if self.bfs(0, 0, false) < n || self.bfs(0, 0, true) < n {
            return None;
        }
        for v in 0..n {
            self.bfs(v, v, false);
        }
        let mut radius = usize::MAX;
        for u in 0..n {
            let mut ecc = 0u32;
            for v in 0..n {
                ecc = ecc.max(self.dist[u][v]).max(self.dist[v][u]);
            }
            radius = radius.min(ecc as usize);
        }
        Some(radius)
    }
}

/// Minimum `(radius, index)` over the enumeration indices in
/// `lo..hi`. Indices are mapped through a Gray code so consecutive
/// assignments differ in one edge.
fn sweep_range(inst: &SweepInstance, lo: u64, hi: u64) -> Option<(usize, u64)> {
    let mut scratch = SweepScratch::new(inst.n);
    let mut best: Option<(usize, u64)> = None;
    for i in lo..hi {
        let bits = i ^ (i >> 1);
        if let Some(radius) = inst.radius_of(bits, &mut scratch) {
            if best.is_none() || (radius, i) < best.unwrap() {
                best = Some((radius, i));
            }
        }
    }
    best
}

fn run_sweep(inst: &SweepInstance, total: u64, parallel: bool) -> Option<(usize, u64)> {
    #[cfg(feature = "parallel")]
    if parallel && total >= 1 << 10 {
        use rayon::prelude::*;
        let shards = (rayon::current_num_threads() as u64 * 8).max(1);
        let step = total.div_ceil(shards);
        return (0..shards)
            .into_par_iter()
            .filter_map(|s| {
                let lo = s * step;
                sweep_range(inst, lo, total.min(lo + step))
            })
            .min();
    }
    let _ = parallel;
    sweep_range(inst, 0, total)
}

fn oriented_radius_with(
    g: &MixedMultigraph,
    max_free: usize,
    parallel: bool,
) -> Result<OracleResult, OracleError> {
    let (reduced, forced) = forced_orientations(g)?;
    let free_ids: Vec<EdgeId> = reduced
        .edges()
        .iter()
        .filter(|e| e.kind == EdgeKind::Undirected)
        .map(|e| e.id)
        .collect();
    if free_ids.len() > max_free {
        return Err(OracleError::TooManyFreeEdges {
            free: free_ids.len(),
            cap: max_free,
        });
    }
    let inst = SweepInstance::new(&reduced, &free_ids);
    let total: u64 = 1 << free_ids.len();
    let (oriented_radius, index) =
        run_sweep(&inst, total, parallel).expect("a strong orientation exists");

    let mut heads = forced.clone();
    let bits = index ^ (index >> 1);
    for (j, &e) in free_ids.iter().enumerate() {
        let (x, y) = reduced.edge(e).endpoints;
        heads.insert(e, if bits >> j & 1 == 0 { y } else { x });
    }
    Ok(OracleResult {
        oriented_radius,
        witness: Orientation {
            source: g.clone(),
            heads,
        },
        explored: total,
        forced_count: forced.len(),
    })
}

/// Exact oriented radius of `g`, provided forcing leaves at most
/// `max_free` undirected edges. Uses the parallel sweep when the
/// `parallel` feature is enabled.
pub fn oriented_radius_exact(
    g: &MixedMultigraph,
    max_free: usize,
) -> Result<OracleResult, OracleError> {
    oriented_radius_with(g, max_free, true)
}

/// [`oriented_radius_exact`] pinned to a single-threaded sweep.
pub fn oriented_radius_exact_sequential(
    g: &MixedMultigraph,
    max_free: usize,
) -> Result<OracleResult, OracleError> {
    oriented_radius_with(g, max_free, false)
}

/// Default cap on free edges (about a million assignments).
pub const DEFAULT_MAX_FREE: usize = 20;
