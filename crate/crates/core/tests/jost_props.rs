mod common;

use common::{dense_eigenvalues, dense_lollipop};
use faer::Mat;
use proptest::prelude::*;
use tailwalk::experiments::{lollipop_system, Placement};
use tailwalk::graph::OracleSpec;
use tailwalk::jost::{jost_polynomials, point_spectrum};
use tailwalk::reduction::{reduce, EventuallyFreeJacobi};

fn lollipop_jacobi(n: usize, gamma: f64, placement: Placement) -> EventuallyFreeJacobi {
    let (sys, w) = lollipop_system(n, placement).unwrap();
    reduce(&sys, Some(&OracleSpec::new(w, gamma).unwrap())).unwrap().jacobi().clone()
}

fn monic(c: &[f64]) -> Vec<f64> {
    let lead = *c.last().unwrap();
    c.iter().map(|v| v / lead).collect()
}

fn assert_proportional(ours: &[f64], expected: &[f64]) {
    assert_eq!(ours.len(), expected.len(), "{ours:?} vs {expected:?}");
    for (a, b) in monic(ours).iter().zip(monic(expected)) {
        assert!((a - b).abs() <= 1e-10, "{ours:?} vs {expected:?}");
    }
}

#[test]
fn smallest_lollipop_coefficients() {
    let y0 = |p| jost_polynomials(&lollipop_jacobi(4, 4.0, p)).unwrap()[0].coeffs().to_vec();
    assert_proportional(&y0(Placement::CliqueVertex), &[1.0, -5.0, 1.0, 0.0, -2.0]);
    assert_proportional(&y0(Placement::Root), &[1.0, -6.0, 6.0, -4.0]);
}

#[test]
fn closed_forms_hold_for_all_small_orders() {
    for n in 4..=64usize {
        for gamma in [n as f64, n as f64 + 1.5, 0.5 * n as f64] {
            let (nf, g) = (n as f64, gamma);
            let quartic = [1.0, 3.0 - nf - g, (nf - 3.0) * g + 5.0 - 2.0 * nf, (nf - 3.0) * g + 4.0 - 2.0 * nf, 2.0 - nf];
            let cubic = [1.0, 2.0 - nf - g, (nf - 2.0) * (g - 1.0), -g];
            let ours = jost_polynomials(&lollipop_jacobi(n, g, Placement::CliqueVertex)).unwrap();
            let mut expected = quartic.to_vec();
            while expected.last() == Some(&0.0) {
                expected.pop();
            }
            assert_proportional(ours[0].coeffs(), &expected);
            let ours = jost_polynomials(&lollipop_jacobi(n, g, Placement::Root)).unwrap();
            assert_proportional(ours[0].coeffs(), &cubic);
        }
    }
}

#[test]
fn bound_states_satisfy_recurrence_and_decay() {
    for n in [8usize, 32, 128] {
        for placement in [Placement::CliqueVertex, Placement::Root] {
            let j = lollipop_jacobi(n, n as f64, placement);
            for s in point_spectrum(&j).unwrap().states {
                assert!(s.eigen_residual(&j, j.horizon() + 30) <= 1e-10 * s.lambda.abs().max(1.0));
                assert!(s.x.abs() < 1.0 && s.x != 0.0);
                assert_eq!(s.lambda, s.x + 1.0 / s.x);
                assert_eq!(s.tail_ratio, s.x);
                let k = j.horizon();
                for step in 0..10 {
                    let ratio = s.raw(k + step + 1) / s.raw(k + step);
                    assert!((ratio - s.x).abs() <= 1e-12);
                }
            }
        }
    }
}

#[test]
fn dense_jacobi_cross_check() {
    for n in [16usize, 64] {
        let j = lollipop_jacobi(n, n as f64, Placement::Root);
        let dense = dense_eigenvalues(&j.truncated(4 * n));
        let outside: Vec<f64> = dense.into_iter().filter(|l| l.abs() > 2.05).collect();
        let ours = point_spectrum(&j).unwrap().states;
        assert_eq!(ours.len(), outside.len());
        for s in &ours {
            assert!(outside.iter().any(|d| (d - s.lambda).abs() <= 1e-6));
        }
        // And against the unreduced operator.
        let full = dense_eigenvalues(&dense_lollipop(n, Some((n, n as f64)), 4 * n));
        assert!((full[full.len() - 1] - ours[0].lambda).abs() <= 1e-6);
    }
}

fn arb_jacobi() -> impl Strategy<Value = EventuallyFreeJacobi> {
    (1usize..5).prop_flat_map(|k| {
        (proptest::collection::vec(-3.0f64..3.0, k), proptest::collection::vec(0.3f64..2.0, k - 1)).prop_map(
            |(b, a)| EventuallyFreeJacobi::new(b, a).unwrap(),
        )
    })
}

fn dense_truncation(j: &EventuallyFreeJacobi, size: usize) -> Mat<f64> {
    j.truncated(size)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn point_spectrum_matches_long_truncation(j in arb_jacobi()) {
        let ours = point_spectrum(&j).unwrap().states;
        let dense = dense_eigenvalues(&dense_truncation(&j, 240));
        for s in ours.iter().filter(|s| s.lambda.abs() > 2.1) {
            prop_assert!(dense.iter().any(|d| (d - s.lambda).abs() <= 1e-8), "missing {}", s.lambda);
        }
        for d in dense.iter().filter(|d| d.abs() > 2.1) {
            prop_assert!(ours.iter().any(|s| (d - s.lambda).abs() <= 1e-8), "extra {}", d);
        }
        for pair in ours.windows(2) {
            prop_assert!(pair[0].lambda > pair[1].lambda);
        }
    }

    #[test]
    fn bound_states_are_unit_and_orthogonal(j in arb_jacobi()) {
        let states = point_spectrum(&j).unwrap().states;
        let len = 600;
        for (i, s) in states.iter().enumerate() {
            if s.x.abs() > 0.9 {
                continue;
            }
            let v = s.normalized(len);
            prop_assert!((v.iter().map(|c| c * c).sum::<f64>() - 1.0).abs() < 1e-9);
            for t in &states[i + 1..] {
                if t.x.abs() > 0.9 {
                    continue;
                }
                let dot: f64 = v.iter().zip(t.normalized(len)).map(|(a, b)| a * b).sum();
                prop_assert!(dot.abs() < 1e-8);
            }
        }
    }
}
