use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{enumerate_patterns, odometer, weight_pattern, DiscretePattern, Stance, DEFAULT_CAP};
use crate::params::ModelParams;
use crate::structure::{validate_structure, PowerStructure};
use crate::valuation::{princerank, DEFAULT_TOLERANCE};
use crate::{Error, Result};

pub const DEFAULT_RESTARTS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    Exhaustive,
    /// Steepest-ascent single-stance flips from `restarts` random starts
    /// drawn from a ChaCha8 stream seeded with `seed`.
    HillClimb { restarts: usize, seed: u64 },
}

impl SearchMethod {
    /// Exhaustive when the whole space of `n`-agent tactic matrices fits
    /// under `cap`, hill-climbing otherwise.
    pub fn auto(n: usize, cap: u64, seed: u64) -> Self {
        match matrix_count(n) {
            Some(count) if count <= cap as u128 => SearchMethod::Exhaustive,
            _ => SearchMethod::HillClimb { restarts: DEFAULT_RESTARTS, seed },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub tolerance: f64,
    pub cap: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { tolerance: DEFAULT_TOLERANCE, cap: DEFAULT_CAP }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    /// The winning structure, tactics weighted.
    pub best: PowerStructure,
    /// The searched patterns: the focal agent's alone for a best response,
    /// every agent's for a structural ideal.
    pub patterns: Vec<DiscretePattern>,
    /// Focal agent's PrinceRank under `best`.
    pub value: f64,
    /// Number of candidate structures valued.
    pub evaluated: u64,
    pub method: SearchMethod,
}

/// Number of whole discrete tactic matrices for `n` agents, `3^(n(n-1))`.
fn matrix_count(n: usize) -> Option<u128> {
    let slots = n.checked_mul(n.checked_sub(1)?)?;
    3u128.checked_pow(u32::try_from(slots).ok()?)
}

fn value_of(ps: &PowerStructure, focal: usize, params: &ModelParams, cfg: &SearchConfig) -> Result<f64> {
    Ok(princerank(ps, params, cfg.tolerance)?.values[focal])
}

/// The focal agent's best discrete tactic with every other column held fixed.
///
/// Every pattern is tried; the first one in enumeration order wins ties.
pub fn best_response(
    ps: &PowerStructure,
    focal: usize,
    params: &ModelParams,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    ps.check_index(focal)?;
    validate_structure(ps, params).into_result()?;
    let patterns = enumerate_patterns(ps.n(), focal, cfg.cap)?;
    let mut candidate = ps.clone();
    let mut best: Option<(usize, f64)> = None;
    for (k, pattern) in patterns.iter().enumerate() {
        candidate.set_column(focal, &weight_pattern(pattern, params.rho));
        let v = value_of(&candidate, focal, params, cfg)?;
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((k, v));
        }
    }
    let (k, value) = best.expect("at least one pattern");
    candidate.set_column(focal, &weight_pattern(&patterns[k], params.rho));
    Ok(SearchOutcome {
        best: candidate,
        patterns: vec![patterns[k].clone()],
        value,
        evaluated: patterns.len() as u64,
        method: SearchMethod::Exhaustive,
    })
}

/// The tactic matrix over `n` unit-size agents that maximizes `focal`'s
/// PrinceRank.
pub fn structural_ideal(
    n: usize,
    focal: usize,
    params: &ModelParams,
    method: SearchMethod,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    if focal >= n {
        return Err(Error::IndexOutOfRange { index: focal, len: n });
    }
    match method {
        SearchMethod::Exhaustive => exhaustive_ideal(n, focal, params, cfg),
        SearchMethod::HillClimb { restarts, seed } => {
            hill_climb_ideal(n, focal, params, restarts, seed, cfg)
        }
    }
}

fn exhaustive_ideal(
    n: usize,
    focal: usize,
    params: &ModelParams,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    let count = matrix_count(n).unwrap_or(u128::MAX);
    if count > cfg.cap as u128 {
        return Err(Error::SizeLimit { count, cap: cfg.cap });
    }
    let per_agent: Vec<Vec<DiscretePattern>> = (0..n)
        .map(|j| enumerate_patterns(n, j, cfg.cap))
        .collect::<Result<_>>()?;
    let columns: Vec<Vec<Vec<f64>>> = per_agent
        .iter()
        .map(|ps| ps.iter().map(|p| weight_pattern(p, params.rho)).collect())
        .collect();
    let options = per_agent[0].len();

    let mut candidate = PowerStructure::isolated(vec![1.0; n]);
    let mut digits = vec![0usize; n];
    let mut best: Option<(Vec<usize>, f64)> = None;
    let mut evaluated = 0u64;
    loop {
        for (j, &d) in digits.iter().enumerate() {
            candidate.set_column(j, &columns[j][d]);
        }
        let v = value_of(&candidate, focal, params, cfg)?;
        evaluated += 1;
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((digits.clone(), v));
        }
        if !odometer(&mut digits, options) {
            break;
        }
    }
    let (choice, value) = best.expect("at least one matrix");
    let patterns: Vec<DiscretePattern> =
        choice.iter().enumerate().map(|(j, &d)| per_agent[j][d].clone()).collect();
    for (j, &d) in choice.iter().enumerate() {
        candidate.set_column(j, &columns[j][d]);
    }
    Ok(SearchOutcome {
        best: candidate,
        patterns,
        value,
        evaluated,
        method: SearchMethod::Exhaustive,
    })
}

struct Climber<'a> {
    n: usize,
    focal: usize,
    params: &'a ModelParams,
    cfg: &'a SearchConfig,
    evaluated: u64,
}

impl Climber<'_> {
    fn build(&self, patterns: &[DiscretePattern]) -> PowerStructure {
        let columns = patterns.iter().map(|p| weight_pattern(p, self.params.rho)).collect();
        PowerStructure::new(vec![1.0; self.n], columns).expect("square by construction")
    }

    fn value(&mut self, patterns: &[DiscretePattern]) -> Result<f64> {
        self.evaluated += 1;
        value_of(&self.build(patterns), self.focal, self.params, self.cfg)
    }

    /// Steepest ascent until no single flip strictly improves.
    fn climb(&mut self, mut patterns: Vec<DiscretePattern>) -> Result<(Vec<DiscretePattern>, f64)> {
        let mut current = self.value(&patterns)?;
        loop {
            let mut best_move: Option<(usize, usize, Stance, f64)> = None;
            for j in 0..self.n {
                let slots: Vec<usize> = patterns[j].slots().collect();
                for i in slots {
                    let here = patterns[j].stance(i);
                    for s in Stance::ALL.into_iter().filter(|&s| s != here) {
                        let mut trial = patterns.clone();
                        trial[j] = trial[j].clone().with_stance(i, s);
                        let v = self.value(&trial)?;
                        let beats = best_move.map_or(current, |m| m.3);
                        if v > beats {
                            best_move = Some((j, i, s, v));
                        }
                    }
                }
            }
            match best_move {
                Some((j, i, s, v)) => {
                    patterns[j] = patterns[j].clone().with_stance(i, s);
                    current = v;
                }
                None => return Ok((patterns, current)),
            }
        }
    }
}

fn random_patterns(n: usize, rng: &mut ChaCha8Rng) -> Vec<DiscretePattern> {
    (0..n)
        .map(|j| {
            let stances = (0..n)
                .map(|i| {
                    if i == j {
                        Stance::Neutral
                    } else {
                        Stance::ALL[(rng.next_u32() % 3) as usize]
                    }
                })
                .collect();
            DiscretePattern { owner: j, stances }
        })
        .collect()
}

fn hill_climb_ideal(
    n: usize,
    focal: usize,
    params: &ModelParams,
    restarts: usize,
    seed: u64,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut climber = Climber { n, focal, params, cfg, evaluated: 0 };
    let mut best: Option<(Vec<DiscretePattern>, f64)> = None;
    for _ in 0..restarts.max(1) {
        let start = random_patterns(n, &mut rng);
        let (patterns, v) = climber.climb(start)?;
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((patterns, v));
        }
    }
    let (patterns, value) = best.expect("at least one restart");
    Ok(SearchOutcome {
        best: climber.build(&patterns),
        patterns,
        value,
        evaluated: climber.evaluated,
        method: SearchMethod::HillClimb { restarts: restarts.max(1), seed },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tactics::structure_from_patterns;

    fn params() -> ModelParams {
        ModelParams::default()
    }

    #[test]
    fn auto_method_respects_cap() {
        assert_eq!(SearchMethod::auto(3, DEFAULT_CAP, 0), SearchMethod::Exhaustive);
        assert_eq!(SearchMethod::auto(4, DEFAULT_CAP, 0), SearchMethod::Exhaustive);
        assert!(matches!(SearchMethod::auto(5, DEFAULT_CAP, 7), SearchMethod::HillClimb { seed: 7, .. }));
    }

    #[test]
    fn exhaustive_refuses_beyond_cap() {
        let cfg = SearchConfig { cap: 100, ..SearchConfig::default() };
        assert!(matches!(
            structural_ideal(3, 0, &params(), SearchMethod::Exhaustive, &cfg),
            Err(Error::SizeLimit { count: 729, cap: 100 })
        ));
    }

    #[test]
    fn dead_focal_stays_neutral() {
        // nobody gives to agent 0, so it can never be revived
        let ps = structure_from_patterns(
            vec![0.0, 1.0],
            &[DiscretePattern::neutral(2, 0), DiscretePattern::neutral(2, 1)],
            0.9,
        )
        .unwrap();
        let out = best_response(&ps, 0, &params(), &SearchConfig::default()).unwrap();
        assert!(out.patterns[0].is_all_neutral());
        assert_eq!(out.value, 0.0);
        assert_eq!(out.evaluated, 3);
    }

    #[test]
    fn focal_index_is_checked() {
        let ps = PowerStructure::isolated(vec![1.0, 1.0]);
        assert!(best_response(&ps, 2, &params(), &SearchConfig::default()).is_err());
        assert!(structural_ideal(2, 2, &params(), SearchMethod::Exhaustive, &SearchConfig::default())
            .is_err());
    }

    #[test]
    fn hill_climb_is_deterministic() {
        let m = SearchMethod::HillClimb { restarts: 4, seed: 11 };
        let a = structural_ideal(3, 0, &params(), m, &SearchConfig::default()).unwrap();
        let b = structural_ideal(3, 0, &params(), m, &SearchConfig::default()).unwrap();
        assert_eq!(a, b);
    }
}
