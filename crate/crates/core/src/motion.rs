//! The law of motion: one step of power flow, and trajectories under fixed tactics.

use alloc::vec;
use alloc::vec::Vec;

use crate::params::ModelParams;
use crate::structure::PowerStructure;

/// Multiplier applied to an allocation of `value` from agent `actor` to
/// agent `receiver`: `lambda` on the diagonal, `beta` for constructive and
/// `mu` for destructive allocations.
#[inline]
pub fn multiplier(params: &ModelParams, receiver: usize, actor: usize, value: f64) -> f64 {
    if receiver == actor {
        params.lambda
    } else if value >= 0.0 {
        params.beta
    } else {
        params.mu
    }
}

/// Sizes after one application of the law of motion.
///
/// `s'_i = sum_j m_ij * T_ij * s_j`, then negative results are set to 0.
/// Clamping happens after the whole product, never inside it. The structure
/// is expected to pass [`validate_structure`](crate::validate_structure).
pub fn step(ps: &PowerStructure, params: &ModelParams) -> Vec<f64> {
    let mut out = vec![0.0; ps.n()];
    advance(ps, ps.sizes(), params, &mut out);
    out
}

/// Applies the law of motion to `sizes` (instead of `ps.sizes()`), writing into `out`.
pub(crate) fn advance(ps: &PowerStructure, sizes: &[f64], params: &ModelParams, out: &mut [f64]) {
    let n = ps.n();
    debug_assert_eq!(sizes.len(), n);
    debug_assert_eq!(out.len(), n);
    out.iter_mut().for_each(|v| *v = 0.0);
    for (actor, column) in ps.columns().enumerate().take(n) {
        let s = sizes[actor];
        if s == 0.0 {
            continue;
        }
        for (receiver, &t) in column.iter().enumerate() {
            if t != 0.0 {
                out[receiver] += multiplier(params, receiver, actor, t) * t * s;
            }
        }
    }
    for v in out.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
}

/// Size vectors over time under constant tactics; `states[0]` is the start.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<Vec<f64>>,
    pub params: ModelParams,
}

impl Trajectory {
    /// Number of steps taken (one less than the number of states).
    pub fn horizon(&self) -> usize {
        self.states.len().saturating_sub(1)
    }

    pub fn agents(&self) -> usize {
        self.states.first().map_or(0, Vec::len)
    }

    pub fn totals(&self) -> impl Iterator<Item = f64> + '_ {
        self.states.iter().map(|s| s.iter().sum())
    }
}

/// Iterates [`step`] `horizon` times with the tactic matrix held fixed.
pub fn simulate(ps: &PowerStructure, params: &ModelParams, horizon: usize) -> Trajectory {
    let n = ps.n();
    let mut states = Vec::with_capacity(horizon + 1);
    states.push(ps.sizes().to_vec());
    for t in 0..horizon {
        let mut next = vec![0.0; n];
        advance(ps, &states[t], params, &mut next);
        states.push(next);
    }
    Trajectory { states, params: *params }
}
