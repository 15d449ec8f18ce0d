//! Randomized invariants. Each property states a structural fact that must
//! hold across its whole parameter domain, not just at the anchored points
//! the unit and acceptance suites pin down.

use proptest::prelude::*;
use std::f64::consts::PI;

use qgeom_core::dynamics::{
    brachistochrone_time, fs_distance, fs_distance_min, speed, speed_max,
};
use qgeom_core::entangle::{
    aa_phase_ent, curvature_ent, entanglement, reachable_max, reduced_entanglement,
    theta_from_entanglement, EntCoord,
};
use qgeom_core::geometry::metric_full;
use qgeom_core::phases::total_phase_numeric;
use qgeom_core::statevector::{build_initial_state, evolve, EnsembleParams};
use qgeom_core::sweep::{
    parse_csv, render_csv, run_sweep, GridAxis, Param, Pinned, Quantity, SweepConfig,
};

proptest! {
    /// Unitary evolution preserves the norm and composes additively in time.
    #[test]
    fn evolution_is_unitary_and_additive(
        n in 1u32..=10,
        theta in 0.0..PI,
        phi in -3.0..3.0f64,
        j in prop_oneof![Just(-1.0), Just(0.5), Just(2.0)],
        t1 in -5.0..5.0f64,
        t2 in -5.0..5.0f64,
    ) {
        let params = EnsembleParams::new(n, j, theta, phi).unwrap();
        let state = build_initial_state(&params).unwrap();
        let once = evolve(&evolve(&state, j, t1), j, t2);
        let joint = evolve(&state, j, t1 + t2);
        prop_assert!((once.norm_sq() - 1.0).abs() <= 1e-12);
        for (a, b) in once.amplitudes().iter().zip(joint.amplitudes()) {
            prop_assert!((a - b).norm() <= 1e-12);
        }
    }

    /// The full parameter-space metric is positive semi-definite: positive
    /// time-time component away from the poles, and a non-negative
    /// (φ, χ)-block determinant.
    #[test]
    fn metric_is_positive_semidefinite(
        n in 2u32..=16,
        theta in 0.05..(PI - 0.05),
    ) {
        let g = metric_full(n, theta).unwrap();
        prop_assert!(g.g_tt > 0.0);
        prop_assert!(g.g_pp >= 0.0);
        prop_assert!(g.g_cc >= 0.0);
        let minor = g.g_pp * g.g_cc - g.g_pc * g.g_pc;
        let scale = (g.g_pp * g.g_cc).max(1.0);
        prop_assert!(minor >= -1e-9 * scale, "minor = {minor}");
    }

    /// The closed-form total phase is independent of the azimuthal gauge:
    /// two ensembles differing only in φ accumulate the same overlap phase.
    #[test]
    fn total_phase_ignores_azimuth(
        n in 1u32..=6,
        theta in 0.05..(PI - 0.05),
        chi in -6.0..6.0f64,
        phi_a in -3.0..3.0f64,
        phi_b in -3.0..3.0f64,
    ) {
        let a = EnsembleParams::new(n, 1.0, theta, phi_a).unwrap();
        let b = EnsembleParams::new(n, 1.0, theta, phi_b).unwrap();
        match (total_phase_numeric(&a, chi), total_phase_numeric(&b, chi)) {
            (Ok(pa), Ok(pb)) => prop_assert!((pa - pb).abs() <= 1e-9),
            // Vanishing overlap: undefined for every gauge alike.
            (Err(_), Err(_)) => {}
            (pa, pb) => prop_assert!(false, "gauge-dependent definedness: {pa:?} vs {pb:?}"),
        }
    }

    /// Physical evolutions never leave the reachable entanglement band, and
    /// the reduced-coordinate map inverts back to the polar angle.
    #[test]
    fn entanglement_stays_reachable_and_inverts(
        theta in 0.01..std::f64::consts::FRAC_PI_2,
        chi in prop_oneof![0.05..3.0f64, -3.0..-0.05f64],
    ) {
        let e = entanglement(theta, chi);
        prop_assert!(e >= 0.0);
        prop_assert!(e <= reachable_max(chi) + 1e-12);
        let coord = EntCoord::new(e, chi).unwrap();
        if let Ok(recovered) = theta_from_entanglement(coord) {
            prop_assert!((recovered - theta).abs() <= 1e-6, "theta {theta} -> {recovered}");
        }
        if let Ok(e_r) = reduced_entanglement(coord) {
            prop_assert!((e_r.value() - theta.sin().powi(2)).abs() <= 1e-9);
        }
    }

    /// On the reachable chart the entanglement-coordinate curvature stays
    /// within its closed-form range [0, 10]: the negative band of the
    /// formula lies entirely beyond the reachability bound.
    #[test]
    fn reachable_curvature_is_bounded(
        theta in 0.01..PI,
        chi in 0.05..(PI - 0.05),
    ) {
        let coord = EntCoord::new(entanglement(theta, chi), chi).unwrap();
        if let Ok(r) = curvature_ent(coord) {
            prop_assert!(r >= -1e-9, "r = {r}");
            prop_assert!(r <= 10.0 + 1e-9, "r = {r}");
        }
    }

    /// The cyclic phase in entanglement coordinates lies in [−π, 0].
    #[test]
    fn ent_cyclic_phase_range(
        theta in 0.01..PI,
        chi in 0.05..(PI - 0.05),
    ) {
        let coord = EntCoord::new(entanglement(theta, chi), chi).unwrap();
        if let Ok(phase) = aa_phase_ent(coord) {
            prop_assert!(phase <= 1e-12, "phase = {phase}");
            prop_assert!(phase >= -PI - 1e-12, "phase = {phase}");
        }
    }

    /// Extremal bounds: path length is speed × time, nothing travels faster
    /// than the optimal-angle speed (so no path — the optimal-angle one
    /// included — outruns speed_max · t), and the optimal-angle transit
    /// never takes longer than the actual one.
    #[test]
    fn extremal_bounds_hold(
        n in 2u32..=24,
        theta in 0.0..PI,
        chi in 0.01..8.0f64,
        j in 0.25..4.0f64,
    ) {
        let t = chi / j;
        let s = fs_distance(n, theta, chi);
        let v_max = speed_max(n, j).unwrap();
        prop_assert!((s - speed(n, theta, j) * t).abs() <= 1e-12 * (1.0 + s));
        prop_assert!(s <= v_max * t * (1.0 + 1e-12));
        prop_assert!(fs_distance_min(n, chi).unwrap() <= v_max * t * (1.0 + 1e-12));
        prop_assert!(speed(n, theta, j) <= v_max * (1.0 + 1e-12));
        prop_assert!(brachistochrone_time(n, t).unwrap() <= t + 1e-12);
    }

    /// A rendered sweep survives a CSV round trip: parsing the text recovers
    /// the exact column set, and re-rendering reproduces identical bytes.
    #[test]
    fn csv_round_trip_is_exact(
        quantity in prop_oneof![
            Just(Quantity::Curvature),
            Just(Quantity::Speed),
            Just(Quantity::Entanglement),
        ],
        n in 2u32..=6,
        count in 2usize..=9,
        start in 0.3..0.6f64,
        span in 0.5..1.5f64,
    ) {
        let (pinned, param) = match quantity {
            Quantity::Entanglement => (
                Pinned { chi: Some(1.0), ..Pinned::default() },
                Param::Theta,
            ),
            Quantity::Speed => (
                Pinned { n: Some(n), j: Some(1.0), ..Pinned::default() },
                Param::Theta,
            ),
            _ => (Pinned { n: Some(n), ..Pinned::default() }, Param::Theta),
        };
        let config = SweepConfig {
            quantity,
            pinned,
            grids: vec![GridAxis { param, start, stop: start + span, count }],
        };
        let table = run_sweep(&config).unwrap();
        let text = render_csv(&table);
        let (columns, rows) = parse_csv(&text).unwrap();
        prop_assert_eq!(&columns, &table.columns);
        prop_assert_eq!(rows.len(), table.rows.len());
        let reassembled = qgeom_core::sweep::Table {
            columns,
            rows,
            meta: table.meta.clone(),
        };
        prop_assert_eq!(render_csv(&reassembled), text);
    }
}
