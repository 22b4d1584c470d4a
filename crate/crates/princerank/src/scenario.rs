//! JSON scenario documents.
//!
//! Agents are numbered from 1 in documents; the structure they materialize
//! into is indexed from 0 as usual.
//!
//! An edge `{from, to, sign}` sets `from`'s stance toward `to`. Edges without
//! a weight split `1 - rho` equally between them. An explicit weight is the
//! signed tactic entry itself; when an actor mixes both kinds, the implicit
//! edges share what is left of `1 - rho`, and when it only has explicit edges
//! it keeps the remainder of 1 for itself.

use std::collections::BTreeSet;

use princerank_core::{validate_structure, ModelParams, PowerStructure};
use serde::{Deserialize, Serialize};

use crate::ScenarioError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub sign: Sign,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

impl Edge {
    pub fn new(from: usize, to: usize, sign: Sign) -> Self {
        Self { from, to, sign, weight: None }
    }

    pub fn weighted(from: usize, to: usize, weight: f64) -> Self {
        let sign = if weight < 0.0 { Sign::Negative } else { Sign::Positive };
        Self { from, to, sign, weight: Some(weight) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    pub id: String,
    pub description: String,
    pub params: ModelParams,
    pub sizes: Vec<f64>,
    pub edges: Vec<Edge>,
    pub tags: Vec<String>,
}

impl ScenarioDoc {
    pub fn n(&self) -> usize {
        self.sizes.len()
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Builds and validates the power structure the document describes.
    pub fn structure(&self) -> Result<PowerStructure, ScenarioError> {
        self.check_params()?;
        let n = self.sizes.len();
        if n == 0 {
            return Err(invalid("sizes", "at least one agent is required"));
        }
        for (k, &s) in self.sizes.iter().enumerate() {
            if !s.is_finite() || s < 0.0 {
                return Err(invalid(format!("sizes[{k}]"), format!("must be finite and nonnegative, got {s}")));
            }
        }
        self.check_edges()?;
        let columns = (0..n).map(|j| self.column(j)).collect::<Result<Vec<_>, _>>()?;
        let ps = PowerStructure::new(self.sizes.clone(), columns)?;
        let report = validate_structure(&ps, &self.params);
        if !report.is_ok() {
            return Err(invalid("structure", report.to_string()));
        }
        Ok(ps)
    }

    fn check_params(&self) -> Result<(), ScenarioError> {
        match self.params.violations().first() {
            Some(v) => Err(invalid("params", v.to_string())),
            None => Ok(()),
        }
    }

    fn check_edges(&self) -> Result<(), ScenarioError> {
        let n = self.sizes.len();
        let mut seen = BTreeSet::new();
        for (k, e) in self.edges.iter().enumerate() {
            let field = |f: &str| format!("edges[{k}].{f}");
            if e.from == 0 || e.from > n {
                return Err(invalid(field("from"), format!("agent {} not in 1..={n}", e.from)));
            }
            if e.to == 0 || e.to > n {
                return Err(invalid(field("to"), format!("agent {} not in 1..={n}", e.to)));
            }
            if e.from == e.to {
                return Err(invalid(field("to"), "an agent has no edge to itself"));
            }
            if !seen.insert((e.from, e.to)) {
                return Err(invalid(field("to"), format!("duplicate edge {} -> {}", e.from, e.to)));
            }
            if let Some(w) = e.weight {
                if !w.is_finite() || w == 0.0 {
                    return Err(invalid(field("weight"), format!("must be finite and nonzero, got {w}")));
                }
                if w.signum() != e.sign.value() {
                    return Err(invalid(field("weight"), format!("sign of {w} contradicts {:?}", e.sign)));
                }
            }
        }
        Ok(())
    }

    /// Tactic column of agent `j` (0-based).
    fn column(&self, j: usize) -> Result<Vec<f64>, ScenarioError> {
        let n = self.sizes.len();
        let rho = self.params.rho;
        let mut column = vec![0.0; n];
        let own: Vec<&Edge> = self.edges.iter().filter(|e| e.from == j + 1).collect();
        let explicit: f64 = own.iter().filter_map(|e| e.weight).map(f64::abs).sum();
        let implicit = own.iter().filter(|e| e.weight.is_none()).count();
        let field = || format!("edges (agent {})", j + 1);

        let (share, keep) = if implicit > 0 {
            let share = (1.0 - rho - explicit) / implicit as f64;
            if share <= 0.0 {
                return Err(invalid(
                    field(),
                    format!("explicit weights {explicit} leave nothing of {} for unweighted edges", 1.0 - rho),
                ));
            }
            (share, rho)
        } else if own.is_empty() {
            (0.0, 1.0)
        } else {
            (0.0, 1.0 - explicit)
        };
        if keep < -princerank_core::NORM_TOLERANCE {
            return Err(invalid(
                field(),
                format!("explicit weights sum to {explicit}; with the kept remainder the column norm exceeds 1"),
            ));
        }
        column[j] = keep.max(0.0);
        for e in own {
            column[e.to - 1] = e.weight.unwrap_or(e.sign.value() * share);
        }
        Ok(column)
    }
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Validation { field: field.into(), message: message.into() }
}

/// Parses a document and materializes its structure.
pub fn parse_scenario(text: &str) -> Result<(ScenarioDoc, PowerStructure), ScenarioError> {
    let doc: ScenarioDoc = serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let ps = doc.structure()?;
    Ok((doc, ps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(edges: Vec<Edge>) -> ScenarioDoc {
        ScenarioDoc {
            id: "t".into(),
            description: String::new(),
            params: ModelParams::default(),
            sizes: vec![1.0, 1.0, 1.0],
            edges,
            tags: vec![],
        }
    }

    #[test]
    fn minimal_doc_is_identity() {
        let text = r#"{"id":"x","description":"","params":{"beta":2,"mu":3,"lambda":1,"alpha":2.25,"rho":0.9,"delta":0.9},"sizes":[1,1],"edges":[],"tags":[]}"#;
        let (_, ps) = parse_scenario(text).unwrap();
        assert_eq!(ps.tactics(), &[1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn unweighted_edges_split_equally() {
        let ps = doc(vec![Edge::new(1, 2, Sign::Positive), Edge::new(1, 3, Sign::Negative)])
            .structure()
            .unwrap();
        let expected = [0.9, 0.05, -0.05];
        assert!(ps.column(0).iter().zip(expected).all(|(a, b)| (a - b).abs() < 1e-15));
        assert_eq!(ps.column(1), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn explicit_weights_keep_remainder() {
        let ps = doc(vec![Edge::weighted(1, 2, 0.05), Edge::weighted(1, 3, -0.05)])
            .structure()
            .unwrap();
        assert!((ps.tactic(0, 0) - 0.9).abs() < 1e-15);
        assert_eq!(ps.tactic(2, 0), -0.05);
    }

    #[test]
    fn mixed_weights_share_the_rest() {
        let ps = doc(vec![Edge::weighted(1, 2, 0.06), Edge::new(1, 3, Sign::Positive)])
            .structure()
            .unwrap();
        assert!((ps.tactic(2, 0) - 0.04).abs() < 1e-15);
        assert_eq!(ps.tactic(0, 0), 0.9);
    }

    #[test]
    fn overweight_column_is_rejected() {
        let err = doc(vec![Edge::weighted(1, 2, 0.7), Edge::weighted(1, 3, -0.5)])
            .structure()
            .unwrap_err();
        assert!(matches!(err, ScenarioError::Validation { ref field, .. } if field == "edges (agent 1)"));
    }

    #[test]
    fn weight_sign_must_agree() {
        let mut e = Edge::weighted(1, 2, 0.05);
        e.sign = Sign::Negative;
        let err = doc(vec![e]).structure().unwrap_err();
        assert!(matches!(err, ScenarioError::Validation { ref field, .. } if field == "edges[0].weight"));
    }

    #[test]
    fn edges_are_range_checked() {
        for (e, f) in [
            (Edge::new(0, 2, Sign::Positive), "edges[0].from"),
            (Edge::new(1, 4, Sign::Positive), "edges[0].to"),
            (Edge::new(2, 2, Sign::Positive), "edges[0].to"),
        ] {
            let err = doc(vec![e]).structure().unwrap_err();
            assert!(matches!(err, ScenarioError::Validation { ref field, .. } if field == f), "{err}");
        }
        let err = doc(vec![Edge::new(1, 2, Sign::Positive), Edge::new(1, 2, Sign::Negative)])
            .structure()
            .unwrap_err();
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn bad_sizes_and_params() {
        let mut d = doc(vec![]);
        d.sizes[1] = -1.0;
        assert!(matches!(d.structure(), Err(ScenarioError::Validation { ref field, .. }) if field == "sizes[1]"));
        let mut d = doc(vec![]);
        d.params.delta = 1.5;
        assert!(matches!(d.structure(), Err(ScenarioError::Validation { ref field, .. }) if field == "params"));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_scenario("{\n  \"id\": \"x\",\n  \"bogus\": 1\n}").unwrap_err();
        match err {
            ScenarioError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let d = doc(vec![Edge::weighted(1, 2, 0.1 / 3.0), Edge::new(3, 1, Sign::Negative)]);
        let (back, _) = parse_scenario(&d.to_json()).unwrap();
        assert_eq!(back, d);
    }
}
