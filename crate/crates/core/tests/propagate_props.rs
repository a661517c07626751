mod common;

use common::{dense_eigen, dense_lollipop, uniform};
use num_complex::Complex64;
use proptest::prelude::*;
use tailwalk::experiments::{predicted_time, run_search, Placement};
use tailwalk::graph::{lollipop, OracleSpec};
use tailwalk::operator::{assemble, principal_state, QuantumState};
use tailwalk::propagate::{default_grid, evolve, fidelity_curve, Evolution};

fn random_state(size: usize, n: usize, seed: u64) -> QuantumState {
    let amps = (0..size)
        .map(|i| {
            let k = (i as u64).wrapping_mul(2654435761).wrapping_add(seed) % 1000;
            Complex64::new(k as f64 / 500.0 - 1.0, ((k * 7) % 13) as f64 / 13.0 - 0.5)
        })
        .collect();
    QuantumState::new(amps, n).normalized()
}

fn energy(h: &tailwalk::operator::TruncatedHamiltonian, psi: &QuantumState) -> f64 {
    let hp = h.apply(psi.amplitudes());
    psi.amplitudes().iter().zip(&hp).map(|(a, b)| a.conj() * b).sum::<Complex64>().re
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn unitary_composable_and_energy_conserving(
        n in 2usize..12,
        gamma in 0.0f64..15.0,
        tail in 1usize..20,
        s in 0.0f64..3.0,
        t in 0.0f64..3.0,
        seed in 0u64..10_000,
    ) {
        let h = assemble(&lollipop(n).unwrap(), Some(&OracleSpec::new(1, gamma).unwrap()), tail).unwrap();
        let psi = random_state(h.size(), n, seed);
        let at_s = evolve(&h, &psi, s).unwrap();
        prop_assert!((at_s.norm() - 1.0).abs() <= 1e-10);
        let composed = evolve(&h, &at_s.normalized(), t).unwrap();
        let direct = evolve(&h, &psi, s + t).unwrap();
        let gap = composed.amplitudes().iter().zip(direct.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(gap <= 1e-9);
        prop_assert!((energy(&h, &direct) - energy(&h, &psi)).abs() <= 1e-9 * (1.0 + h.norm_bound()));
    }
}

#[test]
fn evolution_matches_dense_oracle() {
    let (n, tail) = (12usize, 40usize);
    let h = assemble(&lollipop(n).unwrap(), Some(&OracleSpec::new(3, 7.5).unwrap()), tail).unwrap();
    let psi = principal_state(&tailwalk::graph::make_complete(n).unwrap(), n + tail).unwrap();
    let oracle = dense_eigen(&dense_lollipop(n, Some((3, 7.5)), tail));
    for t in [0.1, 0.7, 2.3] {
        let ours = evolve(&h, &psi, t).unwrap();
        let theirs = oracle.evolve(&uniform(n, n + tail), t);
        for (a, b) in ours.amplitudes().iter().zip(&theirs) {
            assert!((a - b).norm() <= 1e-11);
        }
    }
}

#[test]
fn doubling_the_tail_leaves_fidelity_unchanged() {
    let n = 64;
    let sys = lollipop(n).unwrap();
    let oracle = OracleSpec::new(1, n as f64).unwrap();
    let grid = default_grid(predicted_time(n));
    let (curve, _) = fidelity_curve(&sys, Some(&oracle), 1, &grid).unwrap();
    assert!(curve.max_leakage() <= 1e-8);
    let long = 2 * curve.tail_len;
    let h = assemble(&sys, Some(&oracle), long).unwrap();
    let evo = Evolution::new(&h, &principal_state(sys.graph(), n + long).unwrap(), 1).unwrap();
    for (&t, &f) in curve.times.iter().zip(&curve.values) {
        assert!((evo.fidelity(t) - f).abs() <= 1e-6);
    }
}

#[test]
fn fidelity_curve_stays_in_unit_interval() {
    let n = 32;
    let (curve, _) = fidelity_curve(
        &lollipop(n).unwrap(),
        Some(&OracleSpec::new(n, n as f64).unwrap()),
        n,
        &default_grid(predicted_time(n)),
    )
    .unwrap();
    assert!(curve.values.iter().all(|&f| (0.0..=1.0 + 1e-12).contains(&f)));
    assert!(curve.times.windows(2).all(|p| p[1] > p[0]));
}

#[test]
fn no_oracle_means_no_search() {
    let n = 256;
    let grid = default_grid(predicted_time(n));
    let (curve, _) = fidelity_curve(&lollipop(n).unwrap(), None, 1, &grid).unwrap();
    let best = curve.values.iter().copied().fold(0.0, f64::max);
    assert!(best <= 0.2, "{best}");
}

#[test]
fn peak_fidelity_improves_with_order() {
    let f: Vec<f64> = [64usize, 256, 1024]
        .into_iter()
        .map(|n| run_search(n, n as f64, Placement::CliqueVertex).unwrap().f_star)
        .collect();
    assert!(f[0] >= 0.9 && f[1] > f[0] && f[2] > f[1], "{f:?}");
    let root = run_search(256, 256.0, Placement::Root).unwrap();
    let clique = run_search(256, 256.0, Placement::CliqueVertex).unwrap();
    assert!((root.f_star - clique.f_star).abs() <= 0.05);
}
