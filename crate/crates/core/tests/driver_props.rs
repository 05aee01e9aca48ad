//! End-to-end driver properties: per-phase eccentricity bookkeeping, the
//! quadratic and eta bounds, determinism, and verification of outputs.

mod common;

use common::random_corpus;
use mixorient::driver::{
    radius_bound, radius_bound_eta, strong_orientation, strong_orientation_eta,
    verify_orientation, PhaseMode,
};
use mixorient::graph::{diameter, is_strongly_connected, radius_center};
use mixorient::oracle::oriented_radius_exact;
use mixorient::partition::phase_plan;

#[test]
fn per_phase_eccentricities_follow_the_plan() {
    for (idx, g) in random_corpus(200, 10, 4000).iter().enumerate() {
        let (_, report) = strong_orientation(g).unwrap();
        let r = report.radius_before;
        if r == 0 {
            continue;
        }
        let plan = phase_plan(r);
        let mut sum_out = 0usize;
        let mut sum_in = 0usize;
        for phase in &report.phases {
            let i = phase.phase_index;
            let (cap_out, cap_in) = match phase.mode {
                PhaseMode::Out => (2 * i, 4 * i - 1),
                PhaseMode::In => (4 * i - 1, 2 * i),
            };
            assert_eq!(
                phase.mode,
                if plan.is_out_phase(i) {
                    PhaseMode::Out
                } else {
                    PhaseMode::In
                },
                "instance {idx}: phase {i} mode disagrees with plan"
            );
            assert!(
                phase.e_out <= cap_out && phase.e_in <= cap_in,
                "instance {idx}: phase {i} ({:?}) measured ({}, {}) caps ({cap_out}, {cap_in})",
                phase.mode,
                phase.e_out,
                phase.e_in,
            );
            assert!(phase.captured_count >= 1);
            sum_out += phase.e_out;
            sum_in += phase.e_in;
        }
        // The summed per-phase eccentricities bound the final radius and
        // stay within the analytic budget.
        let budget = radius_bound(r);
        assert!(sum_out as f64 <= budget && sum_in as f64 <= budget);
        assert!(report.radius_after <= sum_out.max(sum_in).max(1));
    }
}

#[test]
fn quadratic_bound_holds_and_output_verifies() {
    for (idx, g) in random_corpus(300, 12, 4100).iter().enumerate() {
        let (o, report) = strong_orientation(g).unwrap();
        let digraph = o.apply();
        assert!(is_strongly_connected(&digraph), "instance {idx}");
        assert!(
            (report.radius_after as f64) <= report.bound,
            "instance {idx}: {} > {}",
            report.radius_after,
            report.bound
        );
        let check = verify_orientation(g, &o).unwrap();
        assert!(check.valid, "instance {idx}");
        assert_eq!(check.radius, Some(report.radius_after));
        assert_eq!(check.radius_within_bound, Some(true));
        assert_eq!(check.diameter_within_bound, Some(true));
    }
}

#[test]
fn eta_bound_holds_on_random_corpus() {
    for (idx, g) in random_corpus(300, 12, 4200).iter().enumerate() {
        let (o, report) = strong_orientation_eta(g).unwrap();
        assert!(verify_orientation(g, &o).unwrap().valid, "instance {idx}");
        assert!(
            (report.radius_after as f64) <= report.bound,
            "instance {idx}: {} > {} (eta {:?})",
            report.radius_after,
            report.bound,
            report.eta_used
        );
        if let Some(eta) = report.eta_used {
            if eta >= 3 {
                assert_eq!(report.bound, radius_bound_eta(report.radius_before, eta).unwrap());
            }
        }
    }
}

#[test]
fn drivers_are_deterministic() {
    for g in random_corpus(40, 12, 4300).iter() {
        let (o1, r1) = strong_orientation(g).unwrap();
        let (o2, r2) = strong_orientation(g).unwrap();
        assert_eq!(o1, o2);
        assert_eq!(r1, r2);
        let (e1, re1) = strong_orientation_eta(g).unwrap();
        let (e2, re2) = strong_orientation_eta(g).unwrap();
        assert_eq!(e1, e2);
        assert_eq!(re1, re2);
    }
}

#[test]
fn oracle_never_beats_driver_on_small_instances() {
    let mut compared = 0usize;
    for g in random_corpus(120, 8, 4400).iter() {
        let (_, report) = strong_orientation(g).unwrap();
        if let Ok(oracle) = oriented_radius_exact(g, 14) {
            assert!(
                oracle.oriented_radius <= report.radius_after,
                "oracle {} beat driver {}",
                oracle.oriented_radius,
                report.radius_after
            );
            compared += 1;
        }
    }
    assert!(compared > 60);
}

#[test]
fn oriented_diameter_stays_quadratic() {
    for g in random_corpus(150, 10, 4500).iter() {
        let d_before = diameter(g).unwrap();
        let (o, _) = strong_orientation(g).unwrap();
        let d_after = diameter(&o.apply()).unwrap();
        assert!(d_after <= 3 * d_before * d_before + 2 * d_before + 2);
    }
}

#[test]
fn oriented_radius_never_below_source_radius() {
    // Orienting removes traversals, so the radius cannot shrink.
    for g in random_corpus(100, 10, 4600).iter() {
        let (r, _) = radius_center(g).unwrap();
        let (_, report) = strong_orientation(g).unwrap();
        assert!(report.radius_after >= r);
    }
}
