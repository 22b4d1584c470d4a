//! Utility, PrinceRank and preference orderings over structures.
//!
//! PrinceRank is `U_i = (1 - delta) * sum_{t >= 1} delta^t * u_i(t)` along the
//! trajectory with tactics held fixed. The infinite sum is truncated at the
//! first horizon `H` whose tail bound drops below the requested tolerance.
//!
//! The tail bound uses two facts. Total power grows by at most a factor `g`
//! per step, where `g` is the largest total positive multiplier any column can
//! apply to its owner's power (for pattern-weighted tactics this is
//! `lambda * rho + (1 - rho) * beta`). And `u_i <= s_i^(alpha - 2) <= S^(alpha - 2)`
//! for the total `S`. Hence
//! `tail(H) <= (1 - delta) * S(0)^(alpha - 2) * sum_{t > H} (delta * g^(alpha - 2))^t`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::motion::advance;
use crate::params::{discount_ratio, ModelParams};
use crate::structure::{validate_structure, PowerStructure};
use crate::{Error, Result};

/// Hard cap on the truncation horizon.
pub const HORIZON_CAP: usize = 10_000;

/// Absolute error used when callers have no reason to pick another.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

// Trajectories are rescaled outside this band so `s^alpha` cannot overflow
// on long horizons.
const RESCALE_HIGH: f64 = 1e30;
const RESCALE_LOW: f64 = 1e-30;

/// `u_i = s_i^alpha / sum_j s_j^2`; all zero when every size is zero.
pub fn utility(sizes: &[f64], params: &ModelParams) -> Vec<f64> {
    let mut out = vec![0.0; sizes.len()];
    utility_into(sizes, params.alpha, &mut out);
    out
}

fn utility_into(sizes: &[f64], alpha: f64, out: &mut [f64]) {
    let denom: f64 = sizes.iter().map(|s| s * s).sum();
    if denom == 0.0 {
        out.iter_mut().for_each(|u| *u = 0.0);
        return;
    }
    for (u, &s) in out.iter_mut().zip(sizes) {
        *u = if s > 0.0 { libm::pow(s, alpha) / denom } else { 0.0 };
    }
}

/// Certified PrinceRank values for every agent.
#[derive(Debug, Clone, PartialEq)]
pub struct PrinceRank {
    pub values: Vec<f64>,
    /// Last time step included in the sum.
    pub horizon: usize,
    /// Upper bound on `|values[i] - exact|` for every agent.
    pub tail_bound: f64,
}

/// Largest factor by which one step can multiply total power under `ps`.
pub fn growth_bound(ps: &PowerStructure, params: &ModelParams) -> f64 {
    let lambda = params.lambda.max(0.0);
    ps.columns()
        .take(ps.n())
        .enumerate()
        .map(|(actor, column)| {
            column
                .iter()
                .enumerate()
                .map(|(receiver, &t)| {
                    if receiver == actor {
                        lambda * t.max(0.0)
                    } else {
                        params.beta * t.max(0.0)
                    }
                })
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
}

struct TailModel {
    coefficient: f64,
    ratio: f64,
}

impl TailModel {
    fn new(ps: &PowerStructure, params: &ModelParams) -> Result<Self> {
        let guard = params.discount_ratio();
        if !(guard < 1.0) {
            return Err(Error::DivergentDiscount { ratio: guard });
        }
        let ratio = discount_ratio(params.delta, growth_bound(ps, params), params.alpha);
        if !(ratio < 1.0) {
            return Err(Error::DivergentDiscount { ratio });
        }
        let total = ps.total_size();
        let coefficient = (1.0 - params.delta) * libm::pow(total, params.alpha - 2.0);
        Ok(Self { coefficient, ratio })
    }

    /// Bound on the discounted utility accrued after step `horizon`.
    fn bound(&self, horizon: usize) -> f64 {
        if self.coefficient == 0.0 || self.ratio == 0.0 {
            return 0.0;
        }
        let exponent = (horizon + 1) as f64;
        self.coefficient * libm::exp(exponent * libm::log(self.ratio)) / (1.0 - self.ratio)
    }

    fn horizon_for(&self, tolerance: f64) -> Result<usize> {
        if self.bound(0) <= tolerance {
            return Ok(0);
        }
        let estimate = libm::log(tolerance * (1.0 - self.ratio) / self.coefficient)
            / libm::log(self.ratio);
        let estimate = libm::ceil(estimate).max(1.0) - 1.0;
        if !estimate.is_finite() || estimate > (HORIZON_CAP + 1) as f64 {
            return Err(Error::HorizonCapReached {
                needed: if estimate.is_finite() { estimate as u64 } else { u64::MAX },
                cap: HORIZON_CAP,
            });
        }
        let mut h = estimate as usize;
        while self.bound(h) > tolerance {
            h += 1;
        }
        while h > 0 && self.bound(h - 1) <= tolerance {
            h -= 1;
        }
        if h > HORIZON_CAP {
            return Err(Error::HorizonCapReached { needed: h as u64, cap: HORIZON_CAP });
        }
        Ok(h)
    }
}

/// PrinceRank of every agent, within `tolerance` of the infinite discounted sum.
pub fn princerank(ps: &PowerStructure, params: &ModelParams, tolerance: f64) -> Result<PrinceRank> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::InvalidTolerance(tolerance));
    }
    validate_structure(ps, params).into_result()?;
    let tail = TailModel::new(ps, params)?;
    let horizon = tail.horizon_for(tolerance)?;
    Ok(PrinceRank {
        values: discounted_sum(ps, params, horizon),
        horizon,
        tail_bound: tail.bound(horizon),
    })
}

/// Tail bound that applies when the sum is cut after `horizon` steps.
pub fn tail_bound(ps: &PowerStructure, params: &ModelParams, horizon: usize) -> Result<f64> {
    validate_structure(ps, params).into_result()?;
    Ok(TailModel::new(ps, params)?.bound(horizon))
}

/// The discounted sum cut after exactly `horizon` steps, with no certification.
pub fn princerank_truncated(ps: &PowerStructure, params: &ModelParams, horizon: usize) -> Vec<f64> {
    discounted_sum(ps, params, horizon)
}

fn discounted_sum(ps: &PowerStructure, params: &ModelParams, horizon: usize) -> Vec<f64> {
    let n = ps.n();
    let mut acc = vec![0.0; n];
    let mut current = ps.sizes().to_vec();
    let mut next = vec![0.0; n];
    let mut u = vec![0.0; n];
    // Sizes are tracked as `exp(log_scale) * current`; the step map is
    // positively homogeneous, so rescaling commutes with it.
    let mut log_scale = 0.0;
    let mut discount = 1.0;
    let keep = 1.0 - params.delta;
    for _ in 0..horizon {
        advance(ps, &current, params, &mut next);
        core::mem::swap(&mut current, &mut next);
        discount *= params.delta;

        let total: f64 = current.iter().sum();
        if total == 0.0 {
            break;
        }
        if !(RESCALE_LOW..=RESCALE_HIGH).contains(&total) {
            current.iter_mut().for_each(|s| *s /= total);
            log_scale += libm::log(total);
        }
        utility_into(&current, params.alpha, &mut u);
        let weight = if log_scale == 0.0 {
            keep * discount
        } else {
            keep * libm::exp(libm::log(discount) + (params.alpha - 2.0) * log_scale)
        };
        for (a, ui) in acc.iter_mut().zip(&u) {
            *a += weight * ui;
        }
    }
    acc
}

/// Candidates ordered by one agent's PrinceRank.
#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    pub ids: Vec<String>,
    pub focal: usize,
    pub values: Vec<f64>,
    /// Indices into `ids`/`values`, best first.
    pub order: Vec<usize>,
}

impl RankReport {
    pub fn ranked(&self) -> impl Iterator<Item = (&str, f64)> + '_ {
        self.order.iter().map(|&k| (self.ids[k].as_str(), self.values[k]))
    }
}

/// Orders candidates by `focal`'s PrinceRank, highest first; exact ties go
/// to the lexicographically smaller identifier.
pub fn rank_structures(
    candidates: &[(String, PowerStructure)],
    focal: usize,
    params: &ModelParams,
    tolerance: f64,
) -> Result<RankReport> {
    let mut values = Vec::with_capacity(candidates.len());
    for (_, ps) in candidates {
        ps.check_index(focal)?;
        values.push(princerank(ps, params, tolerance)?.values[focal]);
    }
    let ids: Vec<String> = candidates.iter().map(|(id, _)| id.clone()).collect();
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&a, &b| match values[b].total_cmp(&values[a]) {
        Ordering::Equal => ids[a].cmp(&ids[b]),
        other => other,
    });
    Ok(RankReport { ids, focal, values, order })
}

/// An sRGB color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl core::fmt::Display for Rgb {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "#{:02x}{:02x}{:02x}", self.0, self.1, self.2)
    }
}

pub const LOW_COLOR: Rgb = Rgb(0, 114, 178);
pub const MID_COLOR: Rgb = Rgb(0, 158, 115);
pub const HIGH_COLOR: Rgb = Rgb(240, 228, 66);

/// Blue-green-yellow color for `value` within the displayed range `[lo, hi]`.
pub fn color_for(value: f64, lo: f64, hi: f64) -> Rgb {
    if !(hi > lo) {
        return MID_COLOR;
    }
    let x = ((value - lo) / (hi - lo)).clamp(0.0, 1.0);
    let (from, to, t) = if x <= 0.5 {
        (LOW_COLOR, MID_COLOR, x * 2.0)
    } else {
        (MID_COLOR, HIGH_COLOR, (x - 0.5) * 2.0)
    };
    let mix = |a: u8, b: u8| -> u8 {
        let v = a as f64 + (b as f64 - a as f64) * t;
        libm::round(v).clamp(0.0, 255.0) as u8
    };
    Rgb(mix(from.0, to.0), mix(from.1, to.1), mix(from.2, to.2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn params() -> ModelParams {
        ModelParams::default()
    }

    #[test]
    fn symmetric_utility() {
        let u = utility(&[1.0, 1.0, 1.0], &params());
        for v in u {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn asymmetric_utility() {
        // 2^2.25 / 5 and 1 / 5
        let u = utility(&[2.0, 1.0], &params());
        assert!((u[0] - 0.951_365_692_002_16).abs() < 1e-12, "{}", u[0]);
        assert!((u[1] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn dead_world_has_no_utility() {
        assert_eq!(utility(&[0.0, 0.0], &params()), vec![0.0, 0.0]);
    }

    #[test]
    fn unit_alpha_two_shares_sum_to_one() {
        let p = ModelParams { alpha: 2.0, ..params() };
        let total: f64 = utility(&[3.0, 3.0, 3.0, 3.0], &p).iter().sum();
        assert!((total - 1.0).abs() < 1e-15);
    }

    #[test]
    fn static_structure_has_closed_form() {
        let ps = PowerStructure::isolated(vec![2.0, 1.0, 1.0]);
        let u = utility(ps.sizes(), &params());
        let pr = princerank(&ps, &params(), 1e-12).unwrap();
        for (v, ui) in pr.values.iter().zip(&u) {
            assert!((v - 0.9 * ui).abs() <= pr.tail_bound + 1e-15);
        }
    }

    #[test]
    fn dead_agent_scores_zero() {
        let ps = PowerStructure::new(
            vec![0.0, 1.0],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        )
        .unwrap();
        assert_eq!(princerank(&ps, &params(), 1e-9).unwrap().values[0], 0.0);
    }

    #[test]
    fn empty_world_needs_no_steps() {
        let ps = PowerStructure::isolated(vec![0.0, 0.0]);
        let pr = princerank(&ps, &params(), 1e-9).unwrap();
        assert_eq!(pr.horizon, 0);
        assert_eq!(pr.values, vec![0.0, 0.0]);
    }

    #[test]
    fn tighter_tolerance_moves_values_little() {
        let ps = PowerStructure::new(
            vec![1.0, 2.0, 0.5],
            vec![
                vec![0.9, 0.05, -0.05],
                vec![0.1, 0.9, 0.0],
                vec![0.0, -0.1, 0.9],
            ],
        )
        .unwrap();
        let loose = princerank(&ps, &params(), 1e-9).unwrap();
        let tight = princerank(&ps, &params(), 1e-12).unwrap();
        assert!(tight.horizon > loose.horizon);
        for (a, b) in loose.values.iter().zip(&tight.values) {
            assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn divergent_discount_is_an_error() {
        // Self-allocation 0.5 with beta 3 gives g = 0.5 + 1.5 = 2, and
        // 0.9 * 2^0.25 > 1 even though the parameters alone are admissible.
        let p = ModelParams { beta: 3.0, mu: 4.0, ..params() };
        assert!(p.is_valid());
        let ps = PowerStructure::new(
            vec![1.0, 1.0],
            vec![vec![0.5, 0.5], vec![0.5, 0.5]],
        )
        .unwrap();
        assert!(matches!(
            princerank(&ps, &p, 1e-9),
            Err(Error::DivergentDiscount { .. })
        ));
    }

    #[test]
    fn horizon_cap_is_enforced() {
        // ratio 0.999 needs tens of thousands of steps at this tolerance
        let p = ModelParams { delta: 0.999, alpha: 2.0, ..params() };
        let ps = PowerStructure::isolated(vec![1.0, 1.0]);
        assert!(matches!(
            princerank(&ps, &p, 1e-15),
            Err(Error::HorizonCapReached { .. })
        ));
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let ps = PowerStructure::isolated(vec![-1.0]);
        assert!(matches!(
            princerank(&ps, &params(), 1e-9),
            Err(Error::InvalidStructure(_))
        ));
        let ok = PowerStructure::isolated(vec![1.0]);
        assert!(matches!(
            princerank(&ok, &params(), 0.0),
            Err(Error::InvalidTolerance(_))
        ));
    }

    #[test]
    fn long_horizons_do_not_overflow() {
        // Mutual help grows ~1.1x per step; at delta 0.97 the horizon runs
        // into the thousands and raw sizes would pass f64::MAX.
        let p = ModelParams { delta: 0.97, ..params() };
        let ps = PowerStructure::new(
            vec![1.0, 1.0],
            vec![vec![0.9, 0.1], vec![0.1, 0.9]],
        )
        .unwrap();
        let pr = princerank(&ps, &p, 1e-9).unwrap();
        assert!(pr.horizon > 2_000);
        assert!(pr.values.iter().all(|v| v.is_finite() && *v > 0.0));
    }

    #[test]
    fn ranking_breaks_ties_by_id() {
        let ps = PowerStructure::isolated(vec![1.0, 1.0]);
        let candidates = vec![("b".to_string(), ps.clone()), ("a".to_string(), ps)];
        let report = rank_structures(&candidates, 0, &params(), 1e-9).unwrap();
        assert_eq!(report.order, vec![1, 0]);
    }

    #[test]
    fn single_candidate_ranks_first() {
        let ps = PowerStructure::isolated(vec![1.0, 1.0]);
        let report =
            rank_structures(&[("only".to_string(), ps)], 1, &params(), 1e-9).unwrap();
        assert_eq!(report.order, vec![0]);
    }

    #[test]
    fn ranking_checks_focal_index() {
        let ps = PowerStructure::isolated(vec![1.0, 1.0]);
        assert!(matches!(
            rank_structures(&[("x".to_string(), ps)], 2, &params(), 1e-9),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        ));
    }

    #[test]
    fn color_stops() {
        assert_eq!(color_for(0.0, 0.0, 1.0), LOW_COLOR);
        assert_eq!(color_for(1.0, 0.0, 1.0), HIGH_COLOR);
        assert_eq!(color_for(0.5, 0.0, 1.0), MID_COLOR);
        assert_eq!(color_for(3.0, 3.0, 3.0), MID_COLOR);
        assert_eq!(color_for(-2.0, 2.0, 6.0), color_for(2.0, 2.0, 6.0));
        assert_eq!(HIGH_COLOR.to_string(), "#f0e442");
    }
}
