//! Sizes plus tactic matrix, and the constraints they must satisfy.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::params::{ModelParams, ParamViolation};
use crate::{Error, Result, NORM_TOLERANCE};

/// Agent sizes together with the weighted, signed tactic matrix.
///
/// Column `j` is agent `j`'s outgoing tactic; entry `(i, j)` is what agent `j`
/// allocates toward agent `i`. Storage is column-major so a tactic is a
/// contiguous slice.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerStructure {
    sizes: Vec<f64>,
    tactics: Vec<f64>,
}

impl PowerStructure {
    /// Builds a structure from sizes and one tactic column per agent.
    pub fn new(sizes: Vec<f64>, columns: Vec<Vec<f64>>) -> Result<Self> {
        let n = sizes.len();
        if columns.len() != n || columns.iter().any(|c| c.len() != n) {
            return Err(Error::Shape {
                expected: n,
                found: columns.iter().map(Vec::len).sum(),
            });
        }
        Ok(Self { sizes, tactics: columns.concat() })
    }

    /// Builds a structure from a column-major `n * n` tactic buffer.
    pub fn from_column_major(sizes: Vec<f64>, tactics: Vec<f64>) -> Result<Self> {
        let n = sizes.len();
        if tactics.len() != n * n {
            return Err(Error::Shape { expected: n, found: tactics.len() });
        }
        Ok(Self { sizes, tactics })
    }

    /// Every agent keeps all of its power.
    pub fn isolated(sizes: Vec<f64>) -> Self {
        let n = sizes.len();
        let mut tactics = vec![0.0; n * n];
        for j in 0..n {
            tactics[j * n + j] = 1.0;
        }
        Self { sizes, tactics }
    }

    pub fn n(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[f64] {
        &self.sizes
    }

    /// Allocation of agent `actor` toward agent `receiver`.
    pub fn tactic(&self, receiver: usize, actor: usize) -> f64 {
        self.tactics[actor * self.n() + receiver]
    }

    /// Agent `actor`'s full tactic column.
    pub fn column(&self, actor: usize) -> &[f64] {
        let n = self.n();
        &self.tactics[actor * n..(actor + 1) * n]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[f64]> {
        self.tactics.chunks_exact(self.n().max(1))
    }

    /// Column-major view of the tactic matrix.
    pub fn tactics(&self) -> &[f64] {
        &self.tactics
    }

    /// Replaces agent `actor`'s tactic.
    ///
    /// # Panics
    ///
    /// If `column` is not `n` long or `actor` is out of range.
    pub fn set_column(&mut self, actor: usize, column: &[f64]) {
        let n = self.n();
        assert_eq!(column.len(), n, "tactic column must have one entry per agent");
        self.tactics[actor * n..(actor + 1) * n].copy_from_slice(column);
    }

    pub fn with_column(mut self, actor: usize, column: &[f64]) -> Self {
        self.set_column(actor, column);
        self
    }

    /// Same tactics, different sizes.
    pub fn with_sizes(&self, sizes: Vec<f64>) -> Result<Self> {
        Self::from_column_major(sizes, self.tactics.clone())
    }

    pub fn total_size(&self) -> f64 {
        self.sizes.iter().sum()
    }

    pub fn check_index(&self, agent: usize) -> Result<()> {
        if agent < self.n() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: agent, len: self.n() })
        }
    }

    /// Relabels agents: old agent `k` becomes agent `perm[k]`.
    ///
    /// # Panics
    ///
    /// If `perm` is not a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let mut seen = vec![false; n];
        for &p in perm {
            assert!(p < n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let mut sizes = vec![0.0; n];
        let mut tactics = vec![0.0; n * n];
        for j in 0..n {
            sizes[perm[j]] = self.sizes[j];
            for i in 0..n {
                tactics[perm[j] * n + perm[i]] = self.tactic(i, j);
            }
        }
        Self { sizes, tactics }
    }
}

/// One broken constraint, naming the offending agent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    NegativeSize { agent: usize, size: f64 },
    NonFiniteSize { agent: usize },
    NonFiniteTactic { receiver: usize, actor: usize },
    ColumnNorm { agent: usize, sum: f64 },
    OutOfUnitRange { receiver: usize, actor: usize, value: f64 },
    DestructiveSelf { agent: usize, value: f64 },
    Param(ParamViolation),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeSize { agent, size } => {
                write!(f, "negative size agent {agent}: {size}")
            }
            Violation::NonFiniteSize { agent } => write!(f, "non-finite size agent {agent}"),
            Violation::NonFiniteTactic { receiver, actor } => {
                write!(f, "non-finite tactic entry ({receiver}, {actor})")
            }
            Violation::ColumnNorm { agent, sum } => {
                write!(f, "column-norm agent {agent}: absolute sum {sum}")
            }
            Violation::OutOfUnitRange { receiver, actor, value } => {
                write!(f, "tactic entry ({receiver}, {actor}) outside [-1, 1]: {value}")
            }
            Violation::DestructiveSelf { agent, value } => {
                write!(f, "destructive self-allocation agent {agent}: {value}")
            }
            Violation::Param(p) => write!(f, "parameter: {p}"),
        }
    }
}

/// Outcome of [`validate_structure`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidStructure(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks sizes, tactic columns and parameters, collecting every violation.
///
/// A column must have absolute sum 1 (within [`NORM_TOLERANCE`]) unless its
/// agent has size exactly 0 and the column is all zero.
pub fn validate_structure(ps: &PowerStructure, params: &ModelParams) -> ValidationReport {
    let n = ps.n();
    let mut violations = Vec::new();

    for (agent, &size) in ps.sizes().iter().enumerate() {
        if !size.is_finite() {
            violations.push(Violation::NonFiniteSize { agent });
        } else if size < 0.0 {
            violations.push(Violation::NegativeSize { agent, size });
        }
    }

    for actor in 0..n {
        let column = ps.column(actor);
        let mut finite = true;
        for (receiver, &value) in column.iter().enumerate() {
            if !value.is_finite() {
                violations.push(Violation::NonFiniteTactic { receiver, actor });
                finite = false;
            } else if value.abs() > 1.0 + NORM_TOLERANCE {
                violations.push(Violation::OutOfUnitRange { receiver, actor, value });
            }
        }
        if !finite {
            continue;
        }
        let sum: f64 = column.iter().map(|v| v.abs()).sum();
        let dead_and_empty = ps.sizes()[actor] == 0.0 && sum == 0.0;
        if !dead_and_empty && (sum - 1.0).abs() > NORM_TOLERANCE {
            violations.push(Violation::ColumnNorm { agent: actor, sum });
        }
        let own = column[actor];
        if own < 0.0 {
            violations.push(Violation::DestructiveSelf { agent: actor, value: own });
        }
    }

    violations.extend(params.violations().into_iter().map(Violation::Param));
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn params() -> ModelParams {
        ModelParams::default()
    }

    #[test]
    fn identity_columns_are_valid() {
        let ps = PowerStructure::isolated(vec![10.0, 10.0]);
        assert!(validate_structure(&ps, &params()).is_ok());
    }

    #[test]
    fn short_column_is_reported() {
        let ps = PowerStructure::new(vec![10.0, 10.0], vec![vec![1.0, 0.0], vec![0.0, 0.9]])
            .unwrap();
        let report = validate_structure(&ps, &params());
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].to_string().starts_with("column-norm agent 1"));
    }

    #[test]
    fn negative_size_is_reported() {
        let ps = PowerStructure::isolated(vec![-1.0, 1.0]);
        let report = validate_structure(&ps, &params());
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].to_string().starts_with("negative size agent 0"));
    }

    #[test]
    fn dead_agent_may_have_empty_column() {
        let ps = PowerStructure::new(vec![0.0, 1.0], vec![vec![0.0, 0.0], vec![0.0, 1.0]])
            .unwrap();
        assert!(validate_structure(&ps, &params()).is_ok());
        let alive = ps.with_sizes(vec![0.5, 1.0]).unwrap();
        assert!(!validate_structure(&alive, &params()).is_ok());
    }

    #[test]
    fn self_attack_is_reported() {
        let ps = PowerStructure::new(vec![1.0, 1.0], vec![vec![-0.5, 0.5], vec![0.0, 1.0]])
            .unwrap();
        let report = validate_structure(&ps, &params());
        assert!(matches!(
            report.violations.as_slice(),
            [Violation::DestructiveSelf { agent: 0, .. }]
        ));
    }

    #[test]
    fn bad_params_are_folded_in() {
        let ps = PowerStructure::isolated(vec![1.0]);
        let p = ModelParams { mu: 1.5, ..params() };
        let report = validate_structure(&ps, &p);
        assert!(matches!(report.violations.as_slice(), [Violation::Param(_)]));
    }

    #[test]
    fn shape_is_checked_on_construction() {
        assert!(PowerStructure::new(vec![1.0, 1.0], vec![vec![1.0, 0.0]]).is_err());
        assert!(PowerStructure::from_column_major(vec![1.0], vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn permutation_moves_rows_and_columns() {
        let ps = PowerStructure::new(
            vec![1.0, 2.0, 3.0],
            vec![vec![0.9, 0.1, 0.0], vec![0.0, 1.0, 0.0], vec![-0.1, 0.0, 0.9]],
        )
        .unwrap();
        let q = ps.permuted(&[2, 0, 1]);
        assert_eq!(q.sizes(), &[2.0, 3.0, 1.0]);
        for i in 0..3 {
            for j in 0..3 {
                let (pi, pj) = ([2, 0, 1][i], [2, 0, 1][j]);
                assert_eq!(q.tactic(pi, pj), ps.tactic(i, j));
            }
        }
    }
}
