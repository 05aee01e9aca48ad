//! Strong orientations of mixed multigraphs with bounded oriented radius.
//!
//! A *mixed multigraph* may contain both undirected and directed edges,
//! including parallel edges. Such a graph can be oriented to a strongly
//! connected digraph exactly when it is strongly connected and has no
//! bridge. This crate orients strongly connected bridgeless mixed
//! multigraphs so that the radius of the result stays within proven
//! bounds: at most `1.5r^2 + r + 1` for an input of radius `r`, and at
//! most `1.5rη − 0.375(η−1)(η−3) − 2r + 1` when every edge lies on a
//! cycle of length at most `η`.
//!
//! The crate also ships a generator for an extremal family of mixed
//! multigraphs whose oriented radius is exactly `r^2 + 3r − 1`, a
//! brute-force oracle that computes exact oriented radii of small
//! instances, a seeded random instance generator, and a line-oriented
//! graph file format shared with the `mixorient` CLI.
//!
//! ```
//! use mixorient::{graph::MixedMultigraph, driver};
//!
//! let mut g = MixedMultigraph::new(4);
//! for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
//!     g.add_undirected(u, v);
//! }
//! let (orientation, report) = driver::strong_orientation(&g).unwrap();
//! assert!(mixorient::graph::is_strongly_connected(&orientation.apply()));
//! assert!(report.radius_after as f64 <= report.bound);
//! ```
//!
//! The `parallel` feature (on by default) lets the brute-force oracle
//! shard its assignment sweep across threads with rayon; without it the
//! crate is fully sequential.

pub mod cycles;
pub mod driver;
pub mod engine;
pub mod family;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod partition;
pub mod random;

pub use driver::{strong_orientation, strong_orientation_eta, verify_orientation, Orientation};
pub use graph::MixedMultigraph;
pub use oracle::oriented_radius_exact;
