//! Model parameters and their admissible ranges.

use alloc::vec::Vec;
use core::fmt;

/// The six global parameters shared by every agent.
///
/// `beta`, `mu` and `lambda` set the multipliers of the law of motion,
/// `alpha` shapes utility, `rho` is the share of power an agent always keeps
/// when its tactic is built from a discrete pattern, and `delta` discounts
/// future utility.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(deny_unknown_fields)
)]
pub struct ModelParams {
    /// Constructive multiplier.
    pub beta: f64,
    /// Destructive multiplier.
    pub mu: f64,
    /// Decay multiplier applied to self-allocation.
    pub lambda: f64,
    /// Utility exponent.
    pub alpha: f64,
    /// Self-allocation fraction.
    pub rho: f64,
    /// Discount rate.
    pub delta: f64,
}

impl ModelParams {
    /// The reference parameter set: beta 2, mu 3, lambda 1, alpha 2.25,
    /// rho 0.9, delta 0.9.
    pub const REFERENCE: ModelParams = ModelParams {
        beta: 2.0,
        mu: 3.0,
        lambda: 1.0,
        alpha: 2.25,
        rho: 0.9,
        delta: 0.9,
    };

    /// Per-step growth bound `lambda * rho + (1 - rho) * beta` for structures
    /// whose every agent keeps at least `rho` of its power.
    pub fn growth_factor(&self) -> f64 {
        self.lambda * self.rho + (1.0 - self.rho) * self.beta
    }

    /// `delta * g^(alpha - 2)`; discounted utility converges when this is below 1.
    pub fn discount_ratio(&self) -> f64 {
        discount_ratio(self.delta, self.growth_factor(), self.alpha)
    }

    pub fn violations(&self) -> Vec<ParamViolation> {
        let mut out = Vec::new();
        let all_finite = [self.beta, self.mu, self.lambda, self.alpha, self.rho, self.delta]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite {
            out.push(ParamViolation::NonFinite);
            return out;
        }
        if !(self.beta > 1.0) {
            out.push(ParamViolation::Beta(self.beta));
        }
        if !(self.mu > self.beta) {
            out.push(ParamViolation::Mu { mu: self.mu, beta: self.beta });
        }
        if !(self.lambda <= 1.0) {
            out.push(ParamViolation::Lambda(self.lambda));
        }
        if !(self.alpha >= 2.0) {
            out.push(ParamViolation::Alpha(self.alpha));
        }
        if !(self.rho > 0.0 && self.rho <= 1.0) {
            out.push(ParamViolation::Rho(self.rho));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            out.push(ParamViolation::Delta(self.delta));
        }
        if out.is_empty() {
            let ratio = self.discount_ratio();
            if !(ratio < 1.0) {
                out.push(ParamViolation::Divergent { ratio });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// Non-fatal observations about the parameter set.
    pub fn warnings(&self) -> Vec<ParamWarning> {
        let mut out = Vec::new();
        if self.alpha == 2.0 {
            out.push(ParamWarning::AlphaAtBoundary);
        }
        out
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        Self::REFERENCE
    }
}

pub(crate) fn discount_ratio(delta: f64, growth: f64, alpha: f64) -> f64 {
    delta * libm::pow(growth.max(0.0), alpha - 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamViolation {
    NonFinite,
    Beta(f64),
    Mu { mu: f64, beta: f64 },
    Lambda(f64),
    Alpha(f64),
    Rho(f64),
    Delta(f64),
    /// Convergence guard for the discounted sum.
    Divergent { ratio: f64 },
}

impl fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamViolation::NonFinite => write!(f, "parameters must be finite"),
            ParamViolation::Beta(v) => write!(f, "beta must exceed 1 (got {v})"),
            ParamViolation::Mu { mu, beta } => {
                write!(f, "mu must exceed beta (got mu {mu}, beta {beta})")
            }
            ParamViolation::Lambda(v) => write!(f, "lambda must not exceed 1 (got {v})"),
            ParamViolation::Alpha(v) => write!(f, "alpha must be at least 2 (got {v})"),
            ParamViolation::Rho(v) => write!(f, "rho must lie in (0, 1] (got {v})"),
            ParamViolation::Delta(v) => write!(f, "delta must lie in (0, 1) (got {v})"),
            ParamViolation::Divergent { ratio } => {
                write!(f, "delta * g^(alpha - 2) = {ratio} must be below 1")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamWarning {
    /// Accepted, but utility is then a pure relative-share measure with no
    /// premium on absolute growth.
    AlphaAtBoundary,
}

impl fmt::Display for ParamWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamWarning::AlphaAtBoundary => {
                write!(f, "alpha = 2 sits on the boundary; utility expects alpha > 2")
            }
        }
    }
}
