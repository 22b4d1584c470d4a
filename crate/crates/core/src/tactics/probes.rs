//! Single-relation what-ifs: would an agent start a fight, or walk away
//! from a relation it is already in?

use alloc::vec::Vec;

use super::{weight_pattern, DiscretePattern, Stance};
use crate::params::ModelParams;
use crate::structure::{validate_structure, PowerStructure};
use crate::valuation::princerank;
use crate::{Error, Result};

/// How the target responds when an aggressor turns on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engagement {
    /// Only the aggressor's column changes.
    Unilateral,
    /// The target answers in kind: both stances toward each other become
    /// negative. No further countermoves are modeled.
    #[default]
    Fight,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tension {
    pub aggressor: usize,
    pub target: usize,
    /// Aggressor's PrinceRank with the fight minus without it.
    pub gain: f64,
}

/// `actor`'s column re-weighted after setting its stance toward `toward`.
fn restance(
    ps: &PowerStructure,
    actor: usize,
    toward: usize,
    stance: Stance,
    rho: f64,
) -> PowerStructure {
    let pattern = DiscretePattern::project(ps.column(actor), actor).with_stance(toward, stance);
    ps.clone().with_column(actor, &weight_pattern(&pattern, rho))
}

fn stance_toward(ps: &PowerStructure, actor: usize, toward: usize) -> Stance {
    Stance::of(ps.tactic(toward, actor))
}

/// Pairs where an agent raises its PrinceRank by starting a fight, best gain
/// first. The target fights back; see [`latent_tension_with`] for the
/// one-sided variant.
pub fn latent_tension(ps: &PowerStructure, params: &ModelParams, tolerance: f64) -> Result<Vec<Tension>> {
    latent_tension_with(ps, params, Engagement::Fight, tolerance)
}

/// Every ordered pair of living agents where turning the aggressor's stance
/// negative raises its PrinceRank by more than the valuation error.
pub fn latent_tension_with(
    ps: &PowerStructure,
    params: &ModelParams,
    engagement: Engagement,
    tolerance: f64,
) -> Result<Vec<Tension>> {
    validate_structure(ps, params).into_result()?;
    let base = princerank(ps, params, tolerance)?.values;
    let n = ps.n();
    let alive = |k: usize| ps.sizes()[k] > 0.0;
    let mut out = Vec::new();
    for aggressor in (0..n).filter(|&k| alive(k)) {
        for target in (0..n).filter(|&k| k != aggressor && alive(k)) {
            if stance_toward(ps, aggressor, target) == Stance::Negative {
                continue;
            }
            let mut fought = restance(ps, aggressor, target, Stance::Negative, params.rho);
            if engagement == Engagement::Fight
                && stance_toward(ps, target, aggressor) != Stance::Negative
            {
                fought = restance(&fought, target, aggressor, Stance::Negative, params.rho);
            }
            let gain = princerank(&fought, params, tolerance)?.values[aggressor] - base[aggressor];
            if gain > 2.0 * tolerance {
                out.push(Tension { aggressor, target, gain });
            }
        }
    }
    out.sort_by(|a, b| {
        b.gain
            .total_cmp(&a.gain)
            .then(a.aggressor.cmp(&b.aggressor))
            .then(a.target.cmp(&b.target))
    });
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgePreference {
    Keep,
    Drop,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeVerdict {
    pub agent: usize,
    /// PrinceRank with the relation as it is.
    pub kept: f64,
    /// PrinceRank after this agent alone turns neutral toward the other.
    pub dropped: f64,
    pub preference: EdgePreference,
}

/// Whether each endpoint of the `i`-`j` relation would rather keep its own
/// stance toward the other or go neutral, the other side unchanged.
pub fn edge_sustainable(
    ps: &PowerStructure,
    i: usize,
    j: usize,
    params: &ModelParams,
    tolerance: f64,
) -> Result<[EdgeVerdict; 2]> {
    ps.check_index(i)?;
    ps.check_index(j)?;
    if i == j
        || (stance_toward(ps, i, j) == Stance::Neutral
            && stance_toward(ps, j, i) == Stance::Neutral)
    {
        return Err(Error::NoRelation { i, j });
    }
    validate_structure(ps, params).into_result()?;
    let base = princerank(ps, params, tolerance)?.values;
    let verdict = |agent: usize, other: usize| -> Result<EdgeVerdict> {
        let kept = base[agent];
        let dropped = if stance_toward(ps, agent, other) == Stance::Neutral {
            kept
        } else {
            let alt = restance(ps, agent, other, Stance::Neutral, params.rho);
            princerank(&alt, params, tolerance)?.values[agent]
        };
        let preference = if dropped - kept > 2.0 * tolerance {
            EdgePreference::Drop
        } else {
            EdgePreference::Keep
        };
        Ok(EdgeVerdict { agent, kept, dropped, preference })
    };
    Ok([verdict(i, j)?, verdict(j, i)?])
}
