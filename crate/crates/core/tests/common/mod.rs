#![allow(dead_code)]

use princerank_core::{ModelParams, PowerStructure};
use proptest::prelude::*;

/// Random valid structure with `lo..=hi` agents. Some sizes are zero and
/// some columns push receivers below zero, so clamping gets exercised.
pub fn structure(lo: usize, hi: usize) -> impl Strategy<Value = PowerStructure> {
    (lo..=hi).prop_flat_map(|n| {
        let sizes = prop::collection::vec(prop_oneof![1 => Just(0.0), 6 => 0.01f64..5.0], n);
        let raw = prop::collection::vec(prop::collection::vec(-1.0f64..1.0, n), n);
        (sizes, raw).prop_map(move |(sizes, raw)| {
            let columns = raw
                .into_iter()
                .enumerate()
                .map(|(j, mut c)| {
                    c[j] = c[j].abs() + 0.05;
                    let norm: f64 = c.iter().map(|v| v.abs()).sum();
                    c.iter().map(|v| v / norm).collect()
                })
                .collect();
            PowerStructure::new(sizes, columns).unwrap()
        })
    })
}

/// Reference parameters with a discount low enough that every column
/// normalization keeps the tail summable.
pub fn safe_params() -> ModelParams {
    ModelParams { delta: 0.5, ..ModelParams::default() }
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Naive law of motion over the full index pair set.
#[allow(clippy::needless_range_loop)]
pub fn naive_step(ps: &PowerStructure, p: &ModelParams) -> Vec<f64> {
    let n = ps.n();
    let mut out = vec![0.0; n];
    for i in 0..n {
        let mut acc = 0.0;
        for j in 0..n {
            let t = ps.tactic(i, j);
            let m = if i == j {
                p.lambda
            } else if t >= 0.0 {
                p.beta
            } else {
                p.mu
            };
            acc += m * t * ps.sizes()[j];
        }
        out[i] = if acc < 0.0 { 0.0 } else { acc };
    }
    out
}

pub fn naive_utility(s: &[f64], alpha: f64) -> Vec<f64> {
    let d: f64 = s.iter().map(|x| x * x).sum();
    s.iter().map(|&x| if d == 0.0 { 0.0 } else { x.powf(alpha) / d }).collect()
}

/// Discounted utility sum over a fixed horizon, no rescaling.
pub fn naive_princerank(ps: &PowerStructure, p: &ModelParams, horizon: usize) -> Vec<f64> {
    let mut cur = ps.clone();
    let mut acc = vec![0.0; ps.n()];
    for t in 1..=horizon {
        let next = naive_step(&cur, p);
        let u = naive_utility(&next, p.alpha);
        let w = (1.0 - p.delta) * p.delta.powi(t as i32);
        for (a, v) in acc.iter_mut().zip(u) {
            *a += w * v;
        }
        cur = cur.with_sizes(next).unwrap();
    }
    acc
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}
