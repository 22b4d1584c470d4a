//! Side-by-side PrinceRank of two scenarios over the same agents.

use std::fmt::{self, Write as _};

use princerank_core::{princerank, ModelParams};

use crate::corpus::{unity_aggression, unity_presence};
use crate::scenario::ScenarioDoc;
use crate::ScenarioError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    First,
    Second,
    /// The focal values differ by no more than the valuation error.
    Indifferent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub first_id: String,
    pub second_id: String,
    /// 0-based.
    pub focal: usize,
    pub first_sizes: Vec<f64>,
    pub second_sizes: Vec<f64>,
    pub first: Vec<f64>,
    pub second: Vec<f64>,
    /// `second - first`, per agent.
    pub deltas: Vec<f64>,
    pub verdict: Verdict,
}

/// Values both scenarios for every agent and says which one `focal` (0-based)
/// prefers. Each document's own parameters apply unless `params` overrides
/// them.
pub fn compare(
    a: &ScenarioDoc,
    b: &ScenarioDoc,
    focal: usize,
    params: Option<&ModelParams>,
    tolerance: f64,
) -> Result<CompareReport, ScenarioError> {
    if a.n() != b.n() {
        return Err(ScenarioError::AgentCountMismatch { first: a.n(), second: b.n() });
    }
    if focal >= a.n() {
        return Err(princerank_core::Error::IndexOutOfRange { index: focal, len: a.n() }.into());
    }
    let value = |doc: &ScenarioDoc| -> Result<_, ScenarioError> {
        let mut doc = doc.clone();
        if let Some(p) = params {
            doc.params = *p;
        }
        let ps = doc.structure()?;
        Ok(princerank(&ps, &doc.params, tolerance)?)
    };
    let (ra, rb) = (value(a)?, value(b)?);
    let deltas: Vec<f64> = rb.values.iter().zip(&ra.values).map(|(y, x)| y - x).collect();
    let d = deltas[focal];
    let verdict = if d.abs() <= ra.tail_bound + rb.tail_bound {
        Verdict::Indifferent
    } else if d > 0.0 {
        Verdict::Second
    } else {
        Verdict::First
    };
    Ok(CompareReport {
        first_id: a.id.clone(),
        second_id: b.id.clone(),
        focal,
        first_sizes: a.sizes.clone(),
        second_sizes: b.sizes.clone(),
        first: ra.values,
        second: rb.values,
        deltas,
        verdict,
    })
}

impl CompareReport {
    pub fn preferred(&self) -> Option<&str> {
        match self.verdict {
            Verdict::First => Some(&self.first_id),
            Verdict::Second => Some(&self.second_id),
            Verdict::Indifferent => None,
        }
    }

    pub fn verdict_line(&self) -> String {
        match self.preferred() {
            Some(id) => format!("agent {} prefers {id}", self.focal + 1),
            None => format!("agent {} is indifferent", self.focal + 1),
        }
    }

    /// One row per agent: the second scenario's size and value, and the
    /// change from the first.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("agent,size,princerank,delta\n");
        for k in 0..self.deltas.len() {
            let _ = writeln!(
                out,
                "{},{},{:.12e},{:.12e}",
                k + 1,
                self.second_sizes[k],
                self.second[k],
                self.deltas[k]
            );
        }
        out
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "first:  {}", self.first_id)?;
        writeln!(f, "second: {}", self.second_id)?;
        writeln!(f, "{:>5}  {:>14}  {:>14}  {:>14}", "agent", "first", "second", "delta")?;
        for k in 0..self.deltas.len() {
            let mark = if k == self.focal { "*" } else { " " };
            writeln!(
                f,
                "{:>4}{mark}  {:>14.9}  {:>14.9}  {:>+14.9}",
                k + 1,
                self.first[k],
                self.second[k],
                self.deltas[k]
            )?;
        }
        writeln!(f, "{}", self.verdict_line())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnityVariant {
    /// A large agent exists but leaves everyone alone.
    Presence,
    /// The large agent attacks the two small agents that may unite.
    Aggression,
}

/// Gain factors from uniting for agent 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnityFactors {
    /// `U_b / U_a`: all agents unit size.
    pub equal: f64,
    /// `U_d / U_c`: agent 4 has the dominant size.
    pub dominant: f64,
}

/// Builds structures (a) through (d) of `variant` and returns agent 1's gain
/// factors from uniting, without and with a dominant agent of size
/// `dominant`.
pub fn unification_experiment(
    variant: UnityVariant,
    dominant: f64,
    params: &ModelParams,
) -> Result<UnityFactors, ScenarioError> {
    let build = match variant {
        UnityVariant::Presence => unity_presence,
        UnityVariant::Aggression => unity_aggression,
    };
    let value = |d: f64, united: bool| -> Result<f64, ScenarioError> {
        let mut doc = build(d, united);
        doc.params = *params;
        let ps = doc.structure()?;
        Ok(princerank(&ps, params, princerank_core::DEFAULT_TOLERANCE)?.values[0])
    };
    Ok(UnityFactors {
        equal: value(1.0, true)? / value(1.0, false)?,
        dominant: value(dominant, true)? / value(dominant, false)?,
    })
}
