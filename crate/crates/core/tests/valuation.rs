mod common;

use common::{naive_princerank, naive_utility, permutation, safe_params, structure};
use princerank_core::tactics::{enumerate_triads, structure_from_patterns, DiscretePattern};
use princerank_core::valuation::{growth_bound, tail_bound};
use princerank_core::{
    color_for, princerank, rank_structures, utility, ModelParams, PowerStructure, Rgb,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn utility_matches_oracle(s in prop::collection::vec(0.0f64..100.0, 1..8), alpha in 2.0f64..4.0) {
        let p = ModelParams { alpha, ..ModelParams::default() };
        for (a, b) in utility(&s, &p).iter().zip(naive_utility(&s, alpha)) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn princerank_matches_naive_sum_at_its_horizon(ps in structure(1, 4)) {
        let p = safe_params();
        let pr = princerank(&ps, &p, 1e-10).unwrap();
        let oracle = naive_princerank(&ps, &p, pr.horizon);
        for (a, b) in pr.values.iter().zip(&oracle) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()), "{a} vs {b}");
        }
    }

    #[test]
    fn doubling_horizon_stays_within_certificate(ps in structure(1, 4)) {
        let p = safe_params();
        let pr = princerank(&ps, &p, 1e-9).unwrap();
        let long = naive_princerank(&ps, &p, 2 * pr.horizon + 1);
        for (a, b) in pr.values.iter().zip(&long) {
            prop_assert!((a - b).abs() <= pr.tail_bound + 1e-13);
        }
        prop_assert!(pr.tail_bound <= 1e-9);
    }

    #[test]
    fn princerank_is_permutation_equivariant(
        (ps, perm) in structure(1, 5).prop_flat_map(|ps| {
            let n = ps.n();
            (Just(ps), permutation(n))
        })
    ) {
        let p = safe_params();
        let base = princerank(&ps, &p, 1e-10).unwrap().values;
        let moved = princerank(&ps.permuted(&perm), &p, 1e-10).unwrap().values;
        let u0 = utility(ps.sizes(), &p);
        let sizes1: Vec<f64> = {
            let mut v = vec![0.0; ps.n()];
            for (k, &to) in perm.iter().enumerate() {
                v[to] = ps.sizes()[k];
            }
            v
        };
        let u1 = utility(&sizes1, &p);
        for (k, &to) in perm.iter().enumerate() {
            prop_assert!((base[k] - moved[to]).abs() <= 1e-11);
            prop_assert!((u0[k] - u1[to]).abs() <= 1e-12);
        }
    }

    #[test]
    fn values_are_nonnegative(ps in structure(1, 5)) {
        let pr = princerank(&ps, &safe_params(), 1e-10).unwrap();
        prop_assert!(pr.values.iter().all(|&v| v >= 0.0 && v.is_finite()));
    }

    #[test]
    fn neutral_world_closed_form(sizes in prop::collection::vec(0.0f64..10.0, 1..6)) {
        let p = ModelParams::default();
        let ps = PowerStructure::isolated(sizes.clone());
        let pr = princerank(&ps, &p, 1e-10).unwrap();
        let u = naive_utility(&sizes, p.alpha);
        for (v, ui) in pr.values.iter().zip(u) {
            prop_assert!((v - p.delta * ui).abs() <= pr.tail_bound + 1e-13);
        }
    }

    #[test]
    fn pattern_growth_bound_is_closed_form(
        signs in prop::collection::vec(prop::collection::vec(0u8..3, 4), 4)
    ) {
        let p = ModelParams::default();
        let patterns: Vec<DiscretePattern> = signs
            .iter()
            .enumerate()
            .map(|(j, row)| {
                let stances = row
                    .iter()
                    .enumerate()
                    .map(|(i, &d)| if i == j { princerank_core::tactics::Stance::Neutral } else { princerank_core::tactics::Stance::ALL[d as usize] })
                    .collect();
                DiscretePattern::new(j, stances).unwrap()
            })
            .collect();
        let ps = structure_from_patterns(vec![1.0; 4], &patterns, p.rho).unwrap();
        let g = growth_bound(&ps, &p);
        prop_assert!(g <= p.growth_factor() + 1e-12);
        let mut sizes = ps.sizes().to_vec();
        for _ in 0..20 {
            let next = common::naive_step(&ps.with_sizes(sizes.clone()).unwrap(), &p);
            prop_assert!(next.iter().sum::<f64>() <= g * sizes.iter().sum::<f64>() * (1.0 + 1e-12));
            sizes = next;
        }
    }
}

#[test]
fn triad_argmax_is_tolerance_invariant() {
    let p = ModelParams::default();
    let candidates: Vec<(String, PowerStructure)> = enumerate_triads(&p)
        .into_iter()
        .enumerate()
        .map(|(k, t)| (format!("t{k:02}"), t.structure))
        .collect();
    let orders: Vec<Vec<usize>> = [1e-12, 1e-11, 1e-10, 1e-9]
        .into_iter()
        .map(|tol| rank_structures(&candidates, 0, &p, tol).unwrap().order)
        .collect();
    for o in &orders[1..] {
        assert_eq!(o[0], orders[0][0]);
    }
}

#[test]
fn tail_bound_shrinks_with_horizon() {
    let ps = enumerate_triads(&ModelParams::default()).remove(5).structure;
    let p = ModelParams::default();
    let mut prev = f64::INFINITY;
    for h in [0, 10, 100, 400] {
        let b = tail_bound(&ps, &p, h).unwrap();
        assert!(b < prev);
        prev = b;
    }
}

#[test]
fn color_ramp_endpoints() {
    assert_eq!(color_for(0.0, 0.0, 1.0), Rgb(0, 114, 178));
    assert_eq!(color_for(1.0, 0.0, 1.0), Rgb(240, 228, 66));
    assert_eq!(color_for(0.5, 0.0, 1.0), Rgb(0, 158, 115));
    assert_eq!(color_for(7.0, 0.0, 1.0), color_for(1.0, 0.0, 1.0));
    assert_eq!(color_for(3.0, 2.0, 2.0), Rgb(0, 158, 115));
}
