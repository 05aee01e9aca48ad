//! Full strong-orientation drivers and orientation verification.
//!
//! [`strong_orientation`] runs `r` phases, numbered `r` down to 1, where
//! `r` is the radius of the input. Phase `i` applies [`orient_out`] or
//! [`orient_in`] around the current centre (whose eccentricity is at most
//! `i`), then contracts the captured vertices into the next centre. The
//! out/in choice follows a balanced split of the phase weights so the
//! out-side and in-side penalties stay within one of each other, which
//! pins the oriented radius below `1.5r^2 + r + 1`.
//!
//! [`strong_orientation_eta`] runs the same loop with weights capped by
//! `eta`, the smallest cycle length covering every edge, for the bound
//! `1.5r·eta − 0.375(eta−1)(eta−3) − 2r + 1`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::cycles;
use crate::engine::{orient_in, orient_out, EngineError, OrientedSubgraph};
use crate::graph::{
    contract, diameter, is_strongly_connected, is_strongly_orientable, radius_center, EdgeId,
    EdgeKind, MixedMultigraph, VertexId,
};
use crate::partition::{phase_plan, phase_plan_eta, PhasePlan};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DriverError {
    #[error("input graph is not strongly connected and bridgeless")]
    NotStronglyOrientable,
    #[error("self-loops cannot be oriented")]
    SelfLoop,
    #[error("eta {eta} outside 3..={}", 2 * r + 1)]
    EtaOutOfRange { r: usize, eta: usize },
    #[error("orientation was built for a different source graph")]
    SourceMismatch,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// A total assignment of directions to the undirected edges of a source
/// graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub source: MixedMultigraph,
    /// Head vertex per undirected edge id of `source`.
    pub heads: BTreeMap<EdgeId, VertexId>,
}

impl Orientation {
    /// True when every undirected source edge has a direction and every
    /// recorded head belongs to its edge.
    pub fn is_total(&self) -> bool {
        self.source.edges().iter().all(|e| match e.kind {
            EdgeKind::Undirected => self.heads.get(&e.id).is_some_and(|&h| e.touches(h)),
            EdgeKind::Directed => !self.heads.contains_key(&e.id),
        })
    }

    /// The oriented digraph: same vertices, same edge ids, every edge
    /// directed.
    pub fn apply(&self) -> MixedMultigraph {
        let mut g = self.source.clone();
        for (&e, &head) in &self.heads {
            g.orient_edge(e, head);
        }
        g
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseMode {
    Out,
    In,
}

/// What one phase did and the per-phase eccentricities it achieved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseReport {
    pub phase_index: usize,
    pub mode: PhaseMode,
    /// Centre vertex in that phase's (contracted) graph.
    pub center: VertexId,
    pub captured_count: usize,
    /// Max distance from the centre inside the phase subgraph.
    pub e_out: usize,
    /// Max distance to the centre inside the phase subgraph.
    pub e_in: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrientationReport {
    pub radius_before: usize,
    pub center: VertexId,
    pub radius_after: usize,
    /// The proven bound on `radius_after` for this input.
    pub bound: f64,
    pub phases: Vec<PhaseReport>,
    /// Measured eta when the eta-driver produced this report.
    pub eta_used: Option<usize>,
}

/// `1.5r^2 + r + 1`, the oriented-radius bound for inputs of radius `r`.
pub fn radius_bound(r: usize) -> f64 {
    let r = r as f64;
    1.5 * r * r + r + 1.0
}

/// `1.5r·eta − 0.375(eta−1)(eta−3) − 2r + 1`, the oriented-radius bound
/// when every edge lies on a cycle of length at most `eta`.
pub fn radius_bound_eta(r: usize, eta: usize) -> Result<f64, DriverError> {
    if !(3..=2 * r + 1).contains(&eta) {
        return Err(DriverError::EtaOutOfRange { r, eta });
    }
    let (rf, ef) = (r as f64, eta as f64);
    Ok(1.5 * rf * ef - 0.375 * (ef - 1.0) * (ef - 3.0) - 2.0 * rf + 1.0)
}

/// `3d^2 + 2d + 2`, the oriented-diameter bound for inputs of diameter
/// `d` (diameter is within a factor two of radius on both sides).
pub fn diameter_bound(d: usize) -> usize {
    3 * d * d + 2 * d + 2
}

struct PhaseLoop {
    /// Current (contracted) graph.
    cur: MixedMultigraph,
    /// Current edge id -> input edge id.
    origin: Vec<EdgeId>,
    /// Input vertex -> current vertex.
    class: Vec<VertexId>,
    center: VertexId,
    heads: BTreeMap<EdgeId, VertexId>,
    phases: Vec<PhaseReport>,
}

impl PhaseLoop {
    fn new(g: &MixedMultigraph, center: VertexId) -> Self {
        Self {
            cur: g.clone(),
            origin: (0..g.edge_count()).collect(),
            class: (0..g.vertex_count()).collect(),
            center,
            heads: BTreeMap::new(),
            phases: Vec::new(),
        }
    }

    fn record(&mut self, g: &MixedMultigraph, sub: &OrientedSubgraph) {
        for (&e_cur, &head_cur) in &sub.assignments {
            let e = self.origin[e_cur];
            let (x, y) = g.edge(e).endpoints;
            let head = if self.class[x] == head_cur {
                x
            } else {
                debug_assert_eq!(self.class[y], head_cur);
                y
            };
            let previous = self.heads.insert(e, head);
            debug_assert!(previous.is_none(), "phases re-oriented edge {e}");
        }
    }

    fn contract_captured(&mut self, captured: &BTreeSet<VertexId>) {
        let cm = contract(&self.cur, captured).expect("captured set is non-empty");
        self.origin = cm
            .origin_of_edge
            .iter()
            .map(|&e_cur| self.origin[e_cur])
            .collect();
        for c in self.class.iter_mut() {
            *c = cm.class_of_vertex[*c];
        }
        self.center = cm.super_vertex;
        self.cur = cm.quotient;
    }

    fn run(&mut self, g: &MixedMultigraph, plan: &PhasePlan) -> Result<(), DriverError> {
        for i in (1..=plan.r).rev() {
            if self.cur.vertex_count() == 1 {
                break;
            }
            let (mode, sub) = if plan.is_out_phase(i) {
                (PhaseMode::Out, orient_out(&self.cur, self.center, i)?)
            } else {
                (PhaseMode::In, orient_in(&self.cur, self.center, i)?)
            };
            self.record(g, &sub);
            self.phases.push(PhaseReport {
                phase_index: i,
                mode,
                center: self.center,
                captured_count: sub.captured.len(),
                e_out: sub.measured_out,
                e_in: sub.measured_in,
            });
            self.contract_captured(&sub.captured);
            // Capturing N[u] shrinks the eccentricity of the new centre
            // below the next phase index.
            debug_assert!(
                self.cur.vertex_count() == 1
                    || crate::graph::eccentricity(&self.cur, self.center)
                        .is_some_and(|e| e < i),
            );
        }
        Ok(())
    }

    /// Step 14 of the loop: everything untouched by any phase points from
    /// its lower endpoint to its higher one.
    fn finish(mut self, g: &MixedMultigraph) -> (BTreeMap<EdgeId, VertexId>, Vec<PhaseReport>) {
        for edge in g.edges() {
            if edge.kind == EdgeKind::Undirected && !self.heads.contains_key(&edge.id) {
                let (x, y) = edge.endpoints;
                self.heads.insert(edge.id, x.max(y));
            }
        }
        (self.heads, self.phases)
    }
}

fn prepare(g: &MixedMultigraph) -> Result<(usize, VertexId), DriverError> {
    if g.has_self_loop() {
        return Err(DriverError::SelfLoop);
    }
    if !is_strongly_orientable(g) {
        return Err(DriverError::NotStronglyOrientable);
    }
    let (radius, centers) = radius_center(g).expect("strongly connected");
    Ok((radius, *centers.iter().next().unwrap()))
}

fn finish_report(
    g: &MixedMultigraph,
    heads: BTreeMap<EdgeId, VertexId>,
    radius_before: usize,
    center: VertexId,
    bound: f64,
    phases: Vec<PhaseReport>,
    eta_used: Option<usize>,
) -> (Orientation, OrientationReport) {
    let orientation = Orientation {
        source: g.clone(),
        heads,
    };
    let digraph = orientation.apply();
    debug_assert!(is_strongly_connected(&digraph));
    let (radius_after, _) = radius_center(&digraph).expect("oriented digraph is strong");
    let report = OrientationReport {
        radius_before,
        center,
        radius_after,
        bound,
        phases,
        eta_used,
    };
    (orientation, report)
}

/// Orients `g` to a strongly connected digraph of radius at most
/// `1.5r^2 + r + 1` for `r` the radius of `g`.
pub fn strong_orientation(
    g: &MixedMultigraph,
) -> Result<(Orientation, OrientationReport), DriverError> {
    let (radius, center) = prepare(g)?;
    let mut state = PhaseLoop::new(g, center);
    if radius > 0 {
        state.run(g, &phase_plan(radius))?;
    }
    let (heads, phases) = state.finish(g);
    Ok(finish_report(
        g,
        heads,
        radius,
        center,
        radius_bound(radius),
        phases,
        None,
    ))
}

/// Orients `g` to a strongly connected digraph of radius at most
/// `1.5r·eta − 0.375(eta−1)(eta−3) − 2r + 1`, where `eta` is measured on
/// the input.
///
/// When every edge already lies on a 2-cycle (`eta = 2`) the orientation
/// just completes all 2-cycles, which preserves every distance.
pub fn strong_orientation_eta(
    g: &MixedMultigraph,
) -> Result<(Orientation, OrientationReport), DriverError> {
    let (radius, center) = prepare(g)?;
    if radius == 0 {
        let (heads, phases) = PhaseLoop::new(g, center).finish(g);
        return Ok(finish_report(g, heads, 0, center, 1.0, phases, None));
    }
    let eta = cycles::eta(g).expect("every edge of an orientable graph lies on a cycle");
    debug_assert!((2..=2 * radius + 1).contains(&eta));

    if eta <= 2 {
        // Every undirected edge has a parallel partner; pairing the
        // bundles orients everything without moving any distance.
        let mut state = PhaseLoop::new(g, center);
        let mut cur = g.clone();
        for u in 0..g.vertex_count() {
            let (next, commits) = crate::engine::normalize_multiedges(&cur, u);
            cur = next;
            state.heads.extend(commits);
        }
        let (heads, phases) = state.finish(g);
        let bound = radius as f64 + 1.375;
        return Ok(finish_report(g, heads, radius, center, bound, phases, Some(eta)));
    }

    let plan = phase_plan_eta(radius, eta).map_err(|_| DriverError::EtaOutOfRange {
        r: radius,
        eta,
    })?;
    let mut state = PhaseLoop::new(g, center);
    state.run(g, &plan)?;
    let (heads, phases) = state.finish(g);
    let bound = radius_bound_eta(radius, eta).expect("eta within range");
    Ok(finish_report(
        g,
        heads,
        radius,
        center,
        bound,
        phases,
        Some(eta),
    ))
}

/// Checks of one orientation against its source graph.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// Every undirected source edge received a direction.
    pub total: bool,
    /// The oriented digraph is strongly connected.
    pub strong: bool,
    pub radius: Option<usize>,
    pub diameter: Option<usize>,
    /// `radius <= 1.5r^2 + r + 1` for `r` the source radius; `None` when
    /// either side is unavailable.
    pub radius_within_bound: Option<bool>,
    /// `diameter <= 3d^2 + 2d + 2` for `d` the source diameter.
    pub diameter_within_bound: Option<bool>,
    pub valid: bool,
}

/// Validates `o` as an orientation of `g`.
pub fn verify_orientation(
    g: &MixedMultigraph,
    o: &Orientation,
) -> Result<VerificationReport, DriverError> {
    if o.source != *g {
        return Err(DriverError::SourceMismatch);
    }
    let total = o.is_total();
    let digraph = o.apply();
    let strong = total && is_strongly_connected(&digraph);
    let (radius, diam) = if strong {
        (
            Some(radius_center(&digraph).expect("strong").0),
            Some(diameter(&digraph).expect("strong")),
        )
    } else {
        (None, None)
    };
    let source_radius = radius_center(g).ok().map(|(r, _)| r);
    let source_diameter = diameter(g).ok();
    Ok(VerificationReport {
        total,
        strong,
        radius,
        diameter: diam,
        radius_within_bound: radius
            .zip(source_radius)
            .map(|(after, before)| after as f64 <= radius_bound(before)),
        diameter_within_bound: diam
            .zip(source_diameter)
            .map(|(after, before)| after <= diameter_bound(before)),
        valid: total && strong,
    })
}
