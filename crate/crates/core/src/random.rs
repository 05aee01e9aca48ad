//! Seeded generation of strongly orientable test instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{bridges, is_strongly_orientable, MixedMultigraph};

/// A random strongly orientable mixed multigraph on `n` vertices,
/// deterministic per seed.
///
/// Starts from a spanning cycle whose directed members all run forward,
/// adds up to `n` extra edges between random distinct pairs, then repairs
/// any residual bridge with an undirected parallel edge. Each edge is
/// undirected with probability `undirected_fraction`, so a fraction of 0
/// yields an already-directed strongly connected graph.
pub fn random_strongly_orientable(
    n: usize,
    undirected_fraction: f64,
    seed: u64,
) -> MixedMultigraph {
    assert!(n >= 1);
    assert!((0.0..=1.0).contains(&undirected_fraction));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = MixedMultigraph::new(n);
    if n >= 2 {
        for v in 0..n {
            let w = (v + 1) % n;
            if rng.gen_bool(undirected_fraction) {
                g.add_undirected(v, w);
            } else {
                g.add_directed(v, w);
            }
        }
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        if n < 2 {
            break;
        }
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        if rng.gen_bool(undirected_fraction) {
            g.add_undirected(u, v);
        } else if rng.gen_bool(0.5) {
            g.add_directed(u, v);
        } else {
            g.add_directed(v, u);
        }
    }
    // The cycle skeleton already guarantees orientability, but stay
    // safe against future skeleton changes.
    while !is_strongly_orientable(&g) {
        match bridges(&g).iter().next() {
            Some(&e) => {
                let (x, y) = g.edge(e).endpoints;
                g.add_undirected(x, y);
            }
            None => {
                let unreachable = crate::graph::distances_from(&g, 0)
                    .dist
                    .iter()
                    .position(Option::is_none)
                    .or_else(|| {
                        crate::graph::distances_to(&g, 0)
                            .dist
                            .iter()
                            .position(Option::is_none)
                    })
                    .expect("not orientable yet bridgeless and strong");
                g.add_undirected(0, unreachable);
            }
        }
    }
    g
}
