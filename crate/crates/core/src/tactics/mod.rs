//! Discrete tactics and the searches built on them.
//!
//! A discrete tactic assigns every counterpart one of three stances. It is
//! turned into a tactic column by [`weight_pattern`]: the agent keeps `rho`
//! and splits the rest equally, in magnitude, over its non-neutral stances.

mod probes;
mod search;
mod triads;

pub use probes::{
    edge_sustainable, latent_tension, latent_tension_with, EdgePreference, EdgeVerdict,
    Engagement, Tension,
};
pub use search::{
    best_response, structural_ideal, SearchConfig, SearchMethod, SearchOutcome,
    DEFAULT_RESTARTS,
};
pub use triads::{enumerate_triads, triad_structure, Triad};

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::structure::PowerStructure;
use crate::{Error, Result};

/// Default cap on enumerated candidates, `3^15`.
pub const DEFAULT_CAP: u64 = 14_348_907;

/// Magnitudes at or below this count as neutral when projecting a column.
pub const NEUTRAL_EPSILON: f64 = 1e-12;

/// An agent's attitude toward one counterpart. The derived order
/// (neutral, positive, negative) is the enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(rename_all = "lowercase")
)]
pub enum Stance {
    Neutral,
    Positive,
    Negative,
}

impl Stance {
    pub const ALL: [Stance; 3] = [Stance::Neutral, Stance::Positive, Stance::Negative];

    /// Stance of a tactic entry.
    pub fn of(value: f64) -> Stance {
        if value > NEUTRAL_EPSILON {
            Stance::Positive
        } else if value < -NEUTRAL_EPSILON {
            Stance::Negative
        } else {
            Stance::Neutral
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Stance::Neutral => 0.0,
            Stance::Positive => 1.0,
            Stance::Negative => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Stance::Neutral => '0',
            Stance::Positive => '+',
            Stance::Negative => '-',
        }
    }

    pub fn is_active(self) -> bool {
        self != Stance::Neutral
    }
}

impl fmt::Display for Stance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stance::Neutral => "neutral",
            Stance::Positive => "positive",
            Stance::Negative => "negative",
        };
        f.write_str(name)
    }
}

/// Sign-only tactic of one agent; its own entry is always neutral.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscretePattern {
    owner: usize,
    stances: Vec<Stance>,
}

impl DiscretePattern {
    pub fn new(owner: usize, stances: Vec<Stance>) -> Result<Self> {
        if owner >= stances.len() {
            return Err(Error::IndexOutOfRange { index: owner, len: stances.len() });
        }
        if stances[owner] != Stance::Neutral {
            return Err(Error::SelfStance(owner));
        }
        Ok(Self { owner, stances })
    }

    pub fn neutral(n: usize, owner: usize) -> Self {
        assert!(owner < n, "owner out of range");
        Self { owner, stances: vec![Stance::Neutral; n] }
    }

    /// Discrete projection of a tactic column.
    pub fn project(column: &[f64], owner: usize) -> Self {
        let stances = column
            .iter()
            .enumerate()
            .map(|(i, &v)| if i == owner { Stance::Neutral } else { Stance::of(v) })
            .collect();
        Self { owner, stances }
    }

    pub fn owner(&self) -> usize {
        self.owner
    }

    pub fn len(&self) -> usize {
        self.stances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stances.is_empty()
    }

    pub fn stances(&self) -> &[Stance] {
        &self.stances
    }

    pub fn stance(&self, toward: usize) -> Stance {
        self.stances[toward]
    }

    /// Same pattern with the stance toward `toward` replaced.
    ///
    /// # Panics
    ///
    /// If `toward` is the owner and `stance` is not neutral.
    pub fn with_stance(mut self, toward: usize, stance: Stance) -> Self {
        assert!(toward != self.owner || stance == Stance::Neutral);
        self.stances[toward] = stance;
        self
    }

    pub fn active_count(&self) -> usize {
        self.stances.iter().filter(|s| s.is_active()).count()
    }

    pub fn is_all_neutral(&self) -> bool {
        self.active_count() == 0
    }

    pub(crate) fn slots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| i != self.owner)
    }
}

impl fmt::Display for DiscretePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.stances.iter().enumerate() {
            if i == self.owner {
                f.write_str("*")?;
            } else {
                write!(f, "{}", s.symbol())?;
            }
        }
        f.write_str("]")
    }
}

/// Number of patterns for one agent among `n`, or `None` on overflow.
fn pattern_count(n: usize) -> Option<u128> {
    3u128.checked_pow(u32::try_from(n.checked_sub(1)?).ok()?)
}

/// Every pattern for `owner` among `n` agents, in lexicographic order over
/// the non-self slots (lowest agent index most significant; neutral,
/// positive, negative per slot).
pub fn enumerate_patterns(n: usize, owner: usize, cap: u64) -> Result<Vec<DiscretePattern>> {
    if owner >= n {
        return Err(Error::IndexOutOfRange { index: owner, len: n });
    }
    let count = pattern_count(n).unwrap_or(u128::MAX);
    if count > cap as u128 {
        return Err(Error::SizeLimit { count, cap });
    }
    let slots: Vec<usize> = (0..n).filter(|&i| i != owner).collect();
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0usize; slots.len()];
    loop {
        let mut stances = vec![Stance::Neutral; n];
        for (&slot, &d) in slots.iter().zip(&digits) {
            stances[slot] = Stance::ALL[d];
        }
        out.push(DiscretePattern { owner, stances });
        if !odometer(&mut digits, 3) {
            break;
        }
    }
    Ok(out)
}

/// Advances a big-endian base-`base` counter; `false` once it wraps around.
pub(crate) fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Tactic column for a pattern: `rho` on the diagonal and `(1 - rho) / k`
/// toward each of the `k` non-neutral counterparts, signed by stance. With no
/// active stance the agent keeps everything.
pub fn weight_pattern(pattern: &DiscretePattern, rho: f64) -> Vec<f64> {
    let mut column = vec![0.0; pattern.len()];
    let active = pattern.active_count();
    if active == 0 {
        column[pattern.owner] = 1.0;
        return column;
    }
    column[pattern.owner] = rho;
    let share = (1.0 - rho) / active as f64;
    for (value, stance) in column.iter_mut().zip(&pattern.stances) {
        if stance.is_active() {
            *value = stance.sign() * share;
        }
    }
    column
}

/// Structure whose every column comes from a weighted pattern.
pub fn structure_from_patterns(
    sizes: Vec<f64>,
    patterns: &[DiscretePattern],
    rho: f64,
) -> Result<PowerStructure> {
    let n = sizes.len();
    if patterns.len() != n || patterns.iter().any(|p| p.len() != n) {
        return Err(Error::Shape { expected: n, found: patterns.iter().map(|p| p.len()).sum() });
    }
    let mut ordered: Vec<Option<&DiscretePattern>> = vec![None; n];
    for p in patterns {
        ordered[p.owner] = Some(p);
    }
    let columns = ordered
        .into_iter()
        .enumerate()
        .map(|(j, p)| match p {
            Some(p) => weight_pattern(p, rho),
            None => weight_pattern(&DiscretePattern::neutral(n, j), rho),
        })
        .collect();
    PowerStructure::new(sizes, columns)
}

/// Discrete projection of every column.
pub fn patterns_of(ps: &PowerStructure) -> Vec<DiscretePattern> {
    (0..ps.n()).map(|j| DiscretePattern::project(ps.column(j), j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn pattern_counts() {
        for (n, count) in [(1, 1), (2, 3), (3, 9), (5, 81)] {
            assert_eq!(enumerate_patterns(n, 0, DEFAULT_CAP).unwrap().len(), count);
        }
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let ps = enumerate_patterns(3, 1, DEFAULT_CAP).unwrap();
        let rendered: Vec<_> = ps.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            rendered,
            ["[0*0]", "[0*+]", "[0*-]", "[+*0]", "[+*+]", "[+*-]", "[-*0]", "[-*+]", "[-*-]"]
        );
        let mut sorted = ps.clone();
        sorted.sort();
        assert_eq!(sorted, ps);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_patterns(5, 0, 80),
            Err(Error::SizeLimit { count: 81, cap: 80 })
        ));
        assert!(enumerate_patterns(200, 0, DEFAULT_CAP).is_err());
    }

    #[test]
    fn neutral_pattern_keeps_everything() {
        let p = DiscretePattern::neutral(3, 1);
        assert_eq!(weight_pattern(&p, 0.9), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn equal_split_over_active_slots() {
        let p = DiscretePattern::new(0, vec![Stance::Neutral, Stance::Positive, Stance::Negative])
            .unwrap();
        let c = weight_pattern(&p, 0.9);
        assert!((c[0] - 0.9).abs() < 1e-15);
        assert!((c[1] - 0.05).abs() < 1e-15);
        assert!((c[2] + 0.05).abs() < 1e-15);
    }

    #[test]
    fn self_stance_must_be_neutral() {
        assert!(matches!(
            DiscretePattern::new(1, vec![Stance::Neutral, Stance::Positive]),
            Err(Error::SelfStance(1))
        ));
    }

    #[test]
    fn projection_round_trips_weighting() {
        for p in enumerate_patterns(4, 2, DEFAULT_CAP).unwrap() {
            assert_eq!(DiscretePattern::project(&weight_pattern(&p, 0.9), 2), p);
        }
    }
}
