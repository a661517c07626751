mod common;

use common::{dense_eigenvalues, dense_lollipop};
use proptest::prelude::*;
use tailwalk::graph::{attach_tail, lollipop, make_complete, make_cone, FiniteGraph, OracleSpec, RootedGraph};
use tailwalk::jost::point_spectrum;
use tailwalk::operator::{assemble, QuantumState};
use tailwalk::reduction::reduce;

fn off_block(n: usize, gamma: f64, w: usize, tail: usize) -> f64 {
    let sys = lollipop(n).unwrap();
    let oracle = OracleSpec::new(w, gamma).unwrap();
    let dec = reduce(&sys, Some(&oracle)).unwrap();
    let b = dec.block_form(tail);
    let split = dec.complement_values().len();
    let mut worst: f64 = 0.0;
    for i in 0..split {
        for k in split..b.nrows() {
            worst = worst.max(b[(i, k)].abs());
        }
    }
    worst
}

#[test]
fn block_form_is_block_diagonal() {
    for n in [4usize, 9, 16, 33, 64] {
        assert!(off_block(n, n as f64, 1, 64) <= 1e-10, "n={n}");
        assert!(off_block(n, n as f64 + 1.0, n, 64) <= 1e-10, "n={n} root");
    }
}

/// Complement eigenvalues together with bound states must account for every
/// dense eigenvalue of a long truncation outside the band.
#[test]
fn eigenvalues_outside_band_match_dense() {
    for n in [8usize, 16, 32] {
        let gamma = n as f64;
        let dec = reduce(&lollipop(n).unwrap(), Some(&OracleSpec::new(1, gamma).unwrap())).unwrap();
        let mut ours: Vec<f64> = point_spectrum(dec.jacobi()).unwrap().states.iter().map(|s| s.lambda).collect();
        ours.extend(dec.complement_values().iter().copied().filter(|l| l.abs() > 2.0));
        ours.sort_by(f64::total_cmp);
        let dense: Vec<f64> = dense_eigenvalues(&dense_lollipop(n, Some((1, gamma)), 4 * n))
            .into_iter()
            .filter(|l| l.abs() > 2.0 + 1e-6)
            .collect();
        assert_eq!(ours.len(), dense.len(), "n={n}");
        for (a, b) in ours.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-8, "n={n}: {a} vs {b}");
        }
    }
}

#[test]
fn cone_of_cycle_reduces_to_short_jacobi() {
    let edges: Vec<_> = (1..=8).map(|v| (v, v % 8 + 1)).collect();
    let cycle = FiniteGraph::new(8, edges, []).unwrap();
    let dec = reduce(&attach_tail(make_cone(&cycle)), None).unwrap();
    // Apex and the uniform cycle vector.
    assert_eq!(dec.graph_supported_dim(), 2);
    assert_eq!(dec.complement_values().len(), 7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basis_is_orthonormal_and_coords_round_trip(n in 4usize..40, w_root in any::<bool>(), extra in -2.0f64..2.0, seed in 0u64..1000) {
        let w = if w_root { n } else { 1 };
        let dec = reduce(&lollipop(n).unwrap(), Some(&OracleSpec::new(w, n as f64 + extra).unwrap())).unwrap();
        let tail = 8;
        let q = dec.full_basis(tail);
        let gram = q.transpose() * &q;
        for i in 0..gram.nrows() {
            for k in 0..gram.ncols() {
                let expect = if i == k { 1.0 } else { 0.0 };
                prop_assert!((gram[(i, k)] - expect).abs() < 1e-10);
            }
        }
        // A state supported in the Jacobi subspace survives the round trip.
        let dim = dec.jacobi_dim(tail);
        let coords: Vec<num_complex::Complex64> = (0..dim)
            .map(|k| num_complex::Complex64::new(((k as u64 * 7 + seed) % 11) as f64 - 5.0, (k % 3) as f64))
            .collect();
        let state = dec.from_jacobi_coords(&coords, tail);
        let back = dec.to_jacobi_coords(&state).unwrap();
        prop_assert!(back.complement_norm_sqr() < 1e-20 * (1.0 + back.jacobi_norm_sqr()));
        for (a, b) in back.jacobi.iter().zip(&coords) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn reduced_operator_matches_assembled(n in 3usize..24, gamma in 0.5f64..30.0) {
        let sys = lollipop(n).unwrap();
        let oracle = OracleSpec::new(1, gamma).unwrap();
        let dec = reduce(&sys, Some(&oracle)).unwrap();
        let tail = 6;
        let h = assemble(&sys, Some(&oracle), tail).unwrap();
        // <e_root, H e_root> in both pictures.
        let e = QuantumState::basis(n, h.size(), n).unwrap();
        let he = h.apply(e.amplitudes());
        let direct = he[n - 1].re;
        let coords = dec.to_jacobi_coords(&e).unwrap();
        let k = dec.jacobi().horizon() - 1;
        prop_assert!((coords.jacobi[k - 1].norm() - 1.0).abs() < 1e-12);
        prop_assert!((dec.jacobi().b(k) - direct).abs() < 1e-10);
    }
}

#[test]
fn clique_without_oracle_has_one_graph_vector_per_orbit() {
    let dec = reduce(&attach_tail(RootedGraph::with_default_root(make_complete(10).unwrap())), None).unwrap();
    assert_eq!(dec.graph_supported_dim(), 2);
}
