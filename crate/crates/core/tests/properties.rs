use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;

use qslforge::evolution::{eigenvalue_trajectories, MatrixNorm, TimeNorm};
use qslforge::io::{load_gate, save_gate};
use qslforge::random::{haar_unitary, random_hermitian, random_schedule, random_state, trial_rng};
use qslforge::{
    aligning_phase, arc_length, cost, energy_stats, evolve_exp, fidelity_up_to_phase,
    hermitian_spectrum, min_cost, op_norm, optimal_protocol, phase_volume, propagator,
    rotation_params, schatten_norm, shift_ground, su2_normalize, tau_qsl_schatten, tau_qsl_state,
    tau_qsl_state_independent, unitary_log, unitary_spectrum, CMatrix, PhaseBranch, UnitaryGate,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn hermitian_from(entries: &[(f64, f64)], d: usize) -> CMatrix {
    let a = CMatrix::from_fn(d, d, |i, j| {
        let (re, im) = entries[i * d + j];
        c(re, im)
    });
    (&a + a.adjoint()) * c(0.5, 0.0)
}

fn hermitian_strategy() -> impl Strategy<Value = CMatrix> {
    (2usize..=8).prop_flat_map(|d| {
        prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), d * d).prop_map(move |e| hermitian_from(&e, d))
    })
}

/// Eigenvalues of `H = A + iB` from the real symmetric embedding
/// `[[A, -B], [B, A]]`, whose spectrum is that of `H` with each value doubled.
fn embedded_eigenvalues(h: &CMatrix) -> Vec<f64> {
    let d = h.nrows();
    let real = DMatrix::from_fn(2 * d, 2 * d, |i, j| {
        let z = h[(i % d, j % d)];
        match (i < d, j < d) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut values: Vec<f64> = real.symmetric_eigen().eigenvalues.iter().cloned().collect();
    values.sort_by(f64::total_cmp);
    values.into_iter().step_by(2).collect()
}

fn dims() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![2usize, 3, 4, 8])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn jacobi_matches_nalgebra(h in hermitian_strategy()) {
        let spectrum = hermitian_spectrum(&h).unwrap();
        let oracle = embedded_eigenvalues(&h);
        let scale = h.norm().max(1.0);
        for (ours, theirs) in spectrum.eigenvalues.iter().zip(&oracle) {
            prop_assert!((ours - theirs).abs() <= 1e-9 * scale, "{ours} vs {theirs}");
        }
    }

    #[test]
    fn hermitian_reconstruction(h in hermitian_strategy()) {
        let spectrum = hermitian_spectrum(&h).unwrap();
        let d = h.nrows() as f64;
        let v = &spectrum.eigenvectors;
        prop_assert!((v.adjoint() * v - CMatrix::identity(h.nrows(), h.nrows())).norm() <= 1e-9 * d);
        prop_assert!((spectrum.reconstruct() - &h).norm() <= 1e-8 * h.norm().max(1e-300));
        prop_assert!(spectrum.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn norm_relations(h in hermitian_strategy(), p in 1.0..8.0f64) {
        let spectrum = hermitian_spectrum(&h).unwrap();
        let op = op_norm(&h).unwrap();
        let sp = schatten_norm(&h, p).unwrap();
        prop_assert!(sp >= op - 1e-12 * op.max(1.0));
        prop_assert!(spectrum.spread() <= 2.0 * sp + 1e-12 * sp.max(1.0));
        prop_assert!(spectrum.spread() / 2.0 <= op + 1e-12 * op.max(1.0));
        prop_assert_eq!(schatten_norm(&h, f64::INFINITY).unwrap(), op);
        if spectrum.ground() <= 0.0 && spectrum.top() >= 0.0 {
            prop_assert!(op <= spectrum.spread() + 1e-12 * op.max(1.0));
        }
    }

    #[test]
    fn traceless_norm_chain(h in hermitian_strategy()) {
        let d = h.nrows();
        let shift = h.trace() / c(d as f64, 0.0);
        let traceless = &h - CMatrix::identity(d, d) * shift;
        let spectrum = hermitian_spectrum(&traceless).unwrap();
        let op = spectrum.op_norm();
        prop_assert!(spectrum.spread() / 2.0 <= op + 1e-12 * op.max(1.0));
        prop_assert!(op <= spectrum.spread() + 1e-12 * op.max(1.0));
    }

    #[test]
    fn popoviciu(seed in any::<u64>(), d in dims()) {
        let mut rng = trial_rng(seed, 0);
        let h = random_hermitian(d, 2.0, &mut rng);
        let psi = random_state(d, &mut rng);
        let stats = energy_stats(&h, &psi).unwrap();
        prop_assert!(stats.stddev <= stats.spread / 2.0 + 1e-12 * stats.spread.max(1.0));
    }

    #[test]
    fn unitary_spectrum_reconstructs(seed in any::<u64>(), d in dims()) {
        let g = haar_unitary(d, &mut trial_rng(seed, 1));
        let spectrum = unitary_spectrum(&g).unwrap();
        let v = &spectrum.eigenvectors;
        prop_assert!((v.adjoint() * v - CMatrix::identity(d, d)).norm() <= 1e-9 * d as f64);
        prop_assert!((spectrum.reconstruct() - g.matrix()).norm() <= 1e-8 * d as f64);
        prop_assert!(spectrum.eigenphases.iter().all(|&t| t > -PI && t <= PI));
    }

    #[test]
    fn exp_then_spectrum_gives_minus_energies(seed in any::<u64>(), d in dims(), dt in 0.1..2.0f64) {
        let mut rng = trial_rng(seed, 2);
        let h = random_hermitian(d, 1.0, &mut rng);
        let u = UnitaryGate::new(evolve_exp(&h, dt, 1.0).unwrap()).unwrap();
        let mut expected: Vec<f64> = hermitian_spectrum(&h).unwrap().eigenvalues.iter()
            .map(|e| Complex64::from_polar(1.0, -e * dt).arg())
            .collect();
        expected.sort_by(f64::total_cmp);
        let phases = unitary_spectrum(&u).unwrap().eigenphases;
        for (a, b) in phases.iter().zip(&expected) {
            let diff = (a - b).rem_euclid(2.0 * PI);
            prop_assert!(diff.min(2.0 * PI - diff) <= 1e-8);
        }
    }

    #[test]
    fn log_round_trip_in_branch_safe_region(seed in any::<u64>(), d in dims(), tau in 0.2..2.0f64) {
        let mut rng = trial_rng(seed, 3);
        let mut h = random_hermitian(d, 1.0, &mut rng);
        let largest = op_norm(&h).unwrap();
        if largest > 0.0 {
            h *= c(0.9 * PI / (largest * tau), 0.0) * c(rng_fraction(seed), 0.0);
        }
        let g = UnitaryGate::new(evolve_exp(&h, tau, 1.0).unwrap()).unwrap();
        let back = unitary_log(&g, tau, 1.0, PhaseBranch::Principal).unwrap();
        prop_assert!((&back - &h).norm() <= 1e-7 * h.norm().max(1e-12));
    }

    #[test]
    fn arc_is_phase_invariant(seed in any::<u64>(), d in dims(), phi in -PI..PI) {
        let g = haar_unitary(d, &mut trial_rng(seed, 4));
        let l = arc_length(&g).unwrap();
        prop_assert!((0.0..2.0 * PI).contains(&l));
        prop_assert!((arc_length(&g.with_global_phase(phi)).unwrap() - l).abs() <= 1e-10);
        prop_assert!((min_cost(&g.with_global_phase(phi), 1.0).unwrap() - min_cost(&g, 1.0).unwrap()).abs() <= 1e-10);
    }

    #[test]
    fn arc_is_zero_only_for_phase_multiples_of_identity(d in dims(), phi in -PI..PI, eps in 1e-6..1.0f64) {
        let scalar = UnitaryGate::new(CMatrix::identity(d, d) * Complex64::from_polar(1.0, phi)).unwrap();
        prop_assert!(arc_length(&scalar).unwrap() <= 1e-12);
        let mut diag = DVector::from_element(d, Complex64::from_polar(1.0, phi));
        diag[d - 1] = Complex64::from_polar(1.0, phi + eps);
        let split = UnitaryGate::new(CMatrix::from_diagonal(&diag)).unwrap();
        prop_assert!((arc_length(&split).unwrap() - eps).abs() <= 1e-8);
    }

    #[test]
    fn su2_normalization(seed in any::<u64>()) {
        let g = haar_unitary(2, &mut trial_rng(seed, 5));
        let (n, phase) = su2_normalize(&g).unwrap();
        prop_assert!((n.determinant() - c(1.0, 0.0)).norm() <= 1e-9);
        prop_assert!(n.matrix()[(0, 0)].re >= -1e-12);
        prop_assert!((n.matrix() * Complex64::from_polar(1.0, phase) - g.matrix()).norm() <= 1e-9);
    }

    #[test]
    fn rotation_rebuilds_gate(seed in any::<u64>()) {
        let g = haar_unitary(2, &mut trial_rng(seed, 6));
        let (n, _) = su2_normalize(&g).unwrap();
        let rot = rotation_params(&g).unwrap();
        let norm = rot.axis.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((norm - 1.0).abs() <= 1e-10);
        prop_assert!((0.0..=PI).contains(&rot.angle));
        prop_assert!((rot.matrix() - n.matrix()).norm() <= 1e-9);
        prop_assert!((rot.angle - arc_length(&n).unwrap()).abs() <= 1e-9);
    }

    #[test]
    fn gate_json_round_trip(seed in any::<u64>(), d in dims()) {
        let g = haar_unitary(d, &mut trial_rng(seed, 7));
        let mut buf = Vec::new();
        save_gate(&g, &mut buf).unwrap();
        let back = load_gate(buf.as_slice()).unwrap();
        prop_assert!((back.matrix() - g.matrix()).iter().all(|z| z.norm() <= 1e-12));
    }

    #[test]
    fn propagation_stays_unitary(seed in any::<u64>(), d in dims()) {
        let schedule = random_schedule(d, 32, 1.0, &mut trial_rng(seed, 8));
        let u = propagator(&schedule).unwrap();
        prop_assert!((u.adjoint() * &u - CMatrix::identity(d, d)).norm() <= 1e-9 * d as f64);
    }

    #[test]
    fn unit_fidelity_means_phase_equivalence(seed in any::<u64>(), d in dims(), phi in -PI..PI) {
        let g = haar_unitary(d, &mut trial_rng(seed, 9));
        let u = g.matrix() * Complex64::from_polar(1.0, phi);
        prop_assert!((fidelity_up_to_phase(&u, &g).unwrap() - 1.0).abs() <= 1e-12);
        let best = aligning_phase(&u, &g).unwrap();
        prop_assert!((&u - g.matrix() * Complex64::from_polar(1.0, best)).norm() <= 1e-7);
    }

    #[test]
    fn state_limit_hierarchy(seed in any::<u64>(), d in dims(), theta in 0.01..(PI / 2.0)) {
        let mut rng = trial_rng(seed, 10);
        let h = random_hermitian(d, 1.5, &mut rng);
        let psi = random_state(d, &mut rng);
        let unified = tau_qsl_state(&h, &psi, theta, 1.0).unwrap().unified;
        let spread = tau_qsl_state_independent(&h, theta, 1.0).unwrap().mandelstam_tamm;
        let schatten = tau_qsl_schatten(&h, theta, f64::INFINITY, 1.0).unwrap();
        prop_assert!(unified >= spread - 1e-10 * spread.max(1.0));
        prop_assert!(spread >= schatten - 1e-10 * schatten.max(1.0));
    }

    #[test]
    fn sandwich_and_trajectory_area(seed in any::<u64>(), d in dims()) {
        let schedule = random_schedule(d, 16, 1.0, &mut trial_rng(seed, 11));
        let a = phase_volume(&schedule).unwrap();
        let c1 = cost(&schedule, MatrixNorm::Operator, TimeNorm::L1).unwrap();
        prop_assert!(a / 2.0 <= c1 + 1e-10);
        let shifted = shift_ground(&schedule).unwrap();
        prop_assert!(cost(&shifted, MatrixNorm::Operator, TimeNorm::L1).unwrap() <= a + 1e-10);
        let trajectory = eigenvalue_trajectories(&schedule, 3).unwrap();
        prop_assert!((trajectory.integrated_spread() - a).abs() <= 1e-10 * a.max(1.0));
    }
}

fn rng_fraction(seed: u64) -> f64 {
    0.1 + 0.9 * ((seed % 1000) as f64 / 1000.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn constant_protocol_attains_minimum(seed in any::<u64>(), d in prop::sample::select(vec![2usize, 4, 8]), tau in 0.1..3.0f64) {
        let g = haar_unitary(d, &mut trial_rng(seed, 12));
        let l = arc_length(&g).unwrap();
        let result = optimal_protocol(&g, tau, 1.0, None, false).unwrap();
        prop_assert!((phase_volume(&result.schedule).unwrap() - l).abs() <= 1e-8);
        prop_assert!((cost(&result.schedule, MatrixNorm::Operator, TimeNorm::L1).unwrap() - l / 2.0).abs() <= 1e-8);
        let u = propagator(&result.schedule).unwrap();
        prop_assert!(fidelity_up_to_phase(&u, &g).unwrap() >= 1.0 - 1e-8);
    }

    #[test]
    fn single_qubit_lower_bound_for_allowed_schedules(seed in any::<u64>()) {
        let schedule = random_schedule(2, 8, 1.0, &mut trial_rng(seed, 13));
        let g = UnitaryGate::new(propagator(&schedule).unwrap()).unwrap();
        let alpha = rotation_params(&g).unwrap().angle;
        let c1 = cost(&schedule, MatrixNorm::Operator, TimeNorm::L1).unwrap();
        prop_assert!(c1 >= alpha / 2.0 - 1e-8);
        let report = qslforge::qubit::gate_speed_limit(&g, &schedule).unwrap();
        prop_assert!(report.satisfied, "{report:?}");
    }
}
