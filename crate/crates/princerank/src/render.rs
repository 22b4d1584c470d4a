//! DOT graphs of power structures and CSV tables of trajectories.
//!
//! Node area grows linearly with size. Constructive edges are solid and
//! destructive ones dashed; a pair of agents with the same stance toward each
//! other shares one undirected edge. Self-allocation is not drawn.

use std::f64::consts::PI;
use std::fmt::Write as _;

use princerank_core::tactics::Stance;
use princerank_core::{color_for, princerank, ModelParams, PowerStructure, Trajectory, DEFAULT_TOLERANCE};

use crate::ScenarioError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    /// Fill nodes on a ramp from lowest to highest PrinceRank.
    pub color_by_princerank: bool,
    /// Node area, in square inches, per unit of size.
    pub size_scale: f64,
    pub show_labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self { color_by_princerank: true, size_scale: 0.5, show_labels: true }
    }
}

fn stance(ps: &PowerStructure, from: usize, to: usize) -> Stance {
    Stance::of(ps.tactic(to, from))
}

fn style(s: Stance) -> &'static str {
    if s == Stance::Negative { "dashed" } else { "solid" }
}

pub fn to_dot(
    ps: &PowerStructure,
    params: &ModelParams,
    opts: &RenderOptions,
) -> Result<String, ScenarioError> {
    if !(opts.size_scale > 0.0 && opts.size_scale.is_finite()) {
        return Err(ScenarioError::Validation {
            field: "size_scale".into(),
            message: format!("must be positive, got {}", opts.size_scale),
        });
    }
    let fills = if opts.color_by_princerank {
        let values = princerank(ps, params, DEFAULT_TOLERANCE)?.values;
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Some(values.iter().map(|&v| color_for(v, lo, hi)).collect::<Vec<_>>())
    } else {
        princerank_core::validate_structure(ps, params).into_result()?;
        None
    };

    let n = ps.n();
    let mut out = String::from("digraph power {\n");
    out.push_str("  node [shape=circle, fixedsize=true];\n");
    for k in 0..n {
        let diameter = 2.0 * (opts.size_scale * ps.sizes()[k] / PI).sqrt();
        let label = if opts.show_labels { (k + 1).to_string() } else { String::new() };
        let _ = write!(out, "  n{} [label=\"{label}\", width={diameter:.4}", k + 1);
        if let Some(f) = &fills {
            let _ = write!(out, ", style=filled, fillcolor=\"{}\"", f[k]);
        }
        out.push_str("];\n");
    }
    for from in 0..n {
        for to in (0..n).filter(|&t| t != from) {
            let s = stance(ps, from, to);
            if !s.is_active() {
                continue;
            }
            let symmetric = stance(ps, to, from) == s;
            if symmetric && to < from {
                continue;
            }
            let _ = write!(out, "  n{} -> n{} [style={}", from + 1, to + 1, style(s));
            if symmetric {
                out.push_str(", dir=none");
            }
            out.push_str("];\n");
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// `v` rounded to nine significant digits, shortest form.
fn sig9(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.8e}").parse().expect("float formatting round-trips");
    let exp = rounded.abs().log10().floor();
    if (-5.0..16.0).contains(&exp) {
        rounded.to_string()
    } else {
        format!("{rounded:e}")
    }
}

/// One row per time step, nine significant digits per value.
pub fn trajectory_csv(tr: &Trajectory) -> String {
    let n = tr.agents();
    let mut out = String::from("t");
    for k in 0..n {
        let _ = write!(out, ",agent_{k}");
    }
    out.push('\n');
    for (t, state) in tr.states.iter().enumerate() {
        out.push_str(&t.to_string());
        for v in state {
            out.push(',');
            out.push_str(&sig9(*v));
        }
        out.push('\n');
    }
    out
}
