//! The `princerank` command line.
//!
//! Agents are numbered from 1 on the command line. Exit status is 0 on
//! success, 1 when a scenario, parameter set or file is bad, and 2 on usage
//! errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use princerank_core::tactics::{
    latent_tension_with, structural_ideal, Engagement, SearchConfig, SearchMethod, DEFAULT_CAP,
    DEFAULT_RESTARTS,
};
use princerank_core::tactics::enumerate_triads;
use princerank_core::{princerank, rank_structures, simulate, ModelParams, PowerStructure, DEFAULT_TOLERANCE};

use crate::compare::{compare, unification_experiment, UnityVariant};
use crate::corpus::{corpus, corpus_get};
use crate::render::{to_dot, trajectory_csv, RenderOptions};
use crate::scenario::{parse_scenario, ScenarioDoc};
use crate::ScenarioError;

#[derive(Debug, Parser)]
#[command(name = "princerank", version, about = "Signed power-flow structures and their PrinceRank")]
pub struct Cli {
    #[command(flatten)]
    pub params: ParamArgs,

    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Absolute error allowed on every PrinceRank value.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,

    /// Largest number of candidates an exhaustive search may enumerate.
    #[arg(long, global = true, env = "PRINCERANK_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: u64,

    #[command(subcommand)]
    pub command: Command,
}

/// Overrides for the model parameters; unset ones come from the scenario, or
/// from the reference set when there is none.
#[derive(Debug, Clone, Copy, Default, Args)]
pub struct ParamArgs {
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true)]
    pub rho: Option<f64>,
    #[arg(long, global = true)]
    pub delta: Option<f64>,
}

impl ParamArgs {
    pub fn apply(&self, mut p: ModelParams) -> ModelParams {
        let fields = [
            (self.beta, &mut p.beta),
            (self.mu, &mut p.mu),
            (self.lambda, &mut p.lambda),
            (self.alpha, &mut p.alpha),
            (self.rho, &mut p.rho),
            (self.delta, &mut p.delta),
        ];
        for (value, slot) in fields {
            if let Some(v) = value {
                *slot = v;
            }
        }
        p
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the law of motion and print the size trajectory as CSV.
    Simulate {
        /// `corpus:ID`, a JSON file, or a bare corpus id.
        scenario: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        /// CSV destination, `-` for standard output (the default).
        #[arg(long)]
        out_csv: Option<PathBuf>,
        /// Also write one DOT file per step into this directory.
        #[arg(long)]
        out_dot_dir: Option<PathBuf>,
    },
    /// Order scenarios by one agent's PrinceRank.
    Rank {
        #[arg(required = true)]
        scenarios: Vec<String>,
        #[arg(long, default_value_t = 1)]
        agent: usize,
    },
    /// The 18 three-agent structures with reciprocal relations, best first.
    Triads {
        #[arg(long, default_value_t = 1)]
        agent: usize,
    },
    /// Best tactic matrix over unit-size agents for one of them.
    Ideal {
        #[arg(long, default_value_t = 3)]
        agents: usize,
        #[arg(long, default_value_t = 1)]
        agent: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
    },
    /// Pairs where starting a fight pays off for the aggressor.
    Tension {
        scenario: String,
        /// The target does not fight back.
        #[arg(long)]
        unilateral: bool,
    },
    /// PrinceRank of every agent in two scenarios and which one an agent prefers.
    Compare {
        first: String,
        second: String,
        #[arg(long, default_value_t = 1)]
        agent: usize,
        /// Also write a CSV report, `-` for standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Write a DOT graph of a scenario.
    Render {
        scenario: String,
        #[arg(long, default_value = "-")]
        dot: PathBuf,
        #[arg(long)]
        no_color: bool,
        #[arg(long)]
        no_labels: bool,
        #[arg(long, default_value_t = 0.5)]
        size_scale: f64,
    },
    /// Gain from uniting, with and without a dominant agent.
    Unity {
        #[arg(long, value_enum, default_value_t = Variant::Presence)]
        variant: Variant,
        #[arg(long, default_value_t = 3.0)]
        dominant: f64,
    },
    /// List the builtin scenarios.
    Corpus {
        /// Print every agent's PrinceRank.
        #[arg(long)]
        values: bool,
        /// Write every scenario as a JSON file into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Exhaustive,
    HillClimb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Presence,
    Aggression,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

impl From<princerank_core::Error> for CliError {
    fn from(e: princerank_core::Error) -> Self {
        CliError::Scenario(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let to_out = !e.use_stderr();
            let text = e.render().to_string();
            let _ = if to_out { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if to_out { 0 } else { 2 };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Loads `corpus:ID`, a scenario file, or a bare corpus id.
pub fn load_scenario(reference: &str) -> Result<ScenarioDoc, CliError> {
    if let Some(id) = reference.strip_prefix("corpus:") {
        return Ok(corpus_get(id)?);
    }
    let path = Path::new(reference);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        return Ok(parse_scenario(&text)?.0);
    }
    Ok(corpus_get(reference)?)
}

fn agent_index(agent: usize, n: usize) -> Result<usize, CliError> {
    if agent == 0 {
        return Err(CliError::Usage("agents are numbered from 1".into()));
    }
    if agent > n {
        return Err(princerank_core::Error::IndexOutOfRange { index: agent, len: n }.into());
    }
    Ok(agent - 1)
}

fn emit(path: &Path, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let io_err = |source| CliError::Io { path: path.into(), source };
    if path == Path::new("-") {
        out.write_all(text.as_bytes()).map_err(io_err)
    } else {
        fs::write(path, text).map_err(io_err)
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

/// The document with overrides applied, and its structure.
fn prepare(cli: &Cli, reference: &str) -> Result<(ScenarioDoc, PowerStructure), CliError> {
    let mut doc = load_scenario(reference)?;
    doc.params = cli.params.apply(doc.params);
    let ps = doc.structure()?;
    Ok((doc, ps))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let reference = cli.params.apply(ModelParams::default());
    let cfg = SearchConfig { tolerance: cli.tolerance, cap: cli.cap };
    match &cli.command {
        Command::Simulate { scenario, steps, out_csv, out_dot_dir } => {
            let (doc, ps) = prepare(cli, scenario)?;
            let tr = simulate(&ps, &doc.params, *steps);
            if let Some(dir) = out_dot_dir {
                fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
                for (t, sizes) in tr.states.iter().enumerate() {
                    let at = ps.with_sizes(sizes.clone())?;
                    let dot = to_dot(&at, &doc.params, &RenderOptions::default())?;
                    emit(&dir.join(format!("t{t:04}.dot")), &dot, out)?;
                }
            }
            let csv = trajectory_csv(&tr);
            match out_csv {
                Some(path) => emit(path, &csv, out),
                None if out_dot_dir.is_none() => write_out(out, &csv),
                None => Ok(()),
            }
        }
        Command::Rank { scenarios, agent } => {
            let mut rows = Vec::new();
            for s in scenarios {
                let (doc, ps) = prepare(cli, s)?;
                let focal = agent_index(*agent, ps.n())?;
                let pr = princerank(&ps, &doc.params, cli.tolerance)?;
                rows.push((doc.id, pr.values[focal]));
            }
            rows.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            let mut text = format!("{:>4}  {:>16}  scenario\n", "rank", "princerank");
            for (k, (id, v)) in rows.iter().enumerate() {
                text.push_str(&format!("{:>4}  {v:>16.12}  {id}\n", k + 1));
            }
            write_out(out, &text)
        }
        Command::Triads { agent } => {
            let focal = agent_index(*agent, 3)?;
            reference_ok(&reference)?;
            let triads = enumerate_triads(&reference);
            let candidates: Vec<(String, PowerStructure)> = triads
                .iter()
                .map(|t| {
                    let code: String = t.relations.iter().map(|s| s.symbol()).collect();
                    (code, t.structure.clone())
                })
                .collect();
            let report = rank_structures(&candidates, focal, &reference, cli.tolerance)?;
            let mut text = format!("{:>4}  1-2 1-3 2-3  {:>16}\n", "rank", "princerank");
            for (k, (code, v)) in report.ranked().enumerate() {
                let c: Vec<char> = code.chars().collect();
                text.push_str(&format!("{:>4}   {}   {}   {}   {v:>16.12}\n", k + 1, c[0], c[1], c[2]));
            }
            write_out(out, &text)
        }
        Command::Ideal { agents, agent, method, restarts } => {
            let focal = agent_index(*agent, *agents)?;
            reference_ok(&reference)?;
            let method = match method {
                Method::Auto => SearchMethod::auto(*agents, cli.cap, cli.seed),
                Method::Exhaustive => SearchMethod::Exhaustive,
                Method::HillClimb => SearchMethod::HillClimb { restarts: *restarts, seed: cli.seed },
            };
            let found = structural_ideal(*agents, focal, &reference, method, &cfg)?;
            let mut text = match found.method {
                SearchMethod::Exhaustive => "method: exhaustive\n".to_owned(),
                SearchMethod::HillClimb { restarts, seed } => {
                    format!("method: hill-climb (restarts {restarts}, seed {seed})\n")
                }
            };
            text.push_str(&format!("evaluated: {}\nprincerank: {:.12}\n", found.evaluated, found.value));
            for (j, p) in found.patterns.iter().enumerate() {
                text.push_str(&format!("agent {}: {p}\n", j + 1));
            }
            write_out(out, &text)
        }
        Command::Tension { scenario, unilateral } => {
            let (doc, ps) = prepare(cli, scenario)?;
            let engagement = if *unilateral { Engagement::Unilateral } else { Engagement::Fight };
            let found = latent_tension_with(&ps, &doc.params, engagement, cli.tolerance)?;
            let mut text = String::new();
            if found.is_empty() {
                text.push_str("no latent tension\n");
            } else {
                text.push_str(&format!("{:>9}  {:>6}  {:>16}\n", "aggressor", "target", "gain"));
                for t in found {
                    text.push_str(&format!("{:>9}  {:>6}  {:>16.12}\n", t.aggressor + 1, t.target + 1, t.gain));
                }
            }
            write_out(out, &text)
        }
        Command::Compare { first, second, agent, csv } => {
            let a = load_scenario(first)?;
            let b = load_scenario(second)?;
            let focal = agent_index(*agent, a.n())?;
            let (mut a, mut b) = (a, b);
            a.params = cli.params.apply(a.params);
            b.params = cli.params.apply(b.params);
            let report = compare(&a, &b, focal, None, cli.tolerance)?;
            write_out(out, &report.to_string())?;
            if let Some(path) = csv {
                emit(path, &report.to_csv(), out)?;
            }
            Ok(())
        }
        Command::Render { scenario, dot, no_color, no_labels, size_scale } => {
            let (doc, ps) = prepare(cli, scenario)?;
            let opts = RenderOptions {
                color_by_princerank: !no_color,
                size_scale: *size_scale,
                show_labels: !no_labels,
            };
            emit(dot, &to_dot(&ps, &doc.params, &opts)?, out)
        }
        Command::Unity { variant, dominant } => {
            if dominant.is_nan() || *dominant <= 1.0 {
                return Err(CliError::Usage("--dominant must exceed 1".into()));
            }
            let v = match variant {
                Variant::Presence => UnityVariant::Presence,
                Variant::Aggression => UnityVariant::Aggression,
            };
            let f = unification_experiment(v, *dominant, &reference)?;
            write_out(out, &format!("equal sizes: {:.6}\ndominant present: {:.6}\n", f.equal, f.dominant))
        }
        Command::Corpus { values, export } => {
            if let Some(dir) = export {
                fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
            }
            let mut text = String::new();
            for doc in corpus() {
                if let Some(dir) = export {
                    let path = dir.join(format!("{}.json", doc.id.replace('/', "__")));
                    fs::write(&path, doc.to_json()).map_err(|source| CliError::Io { path, source })?;
                }
                if *values {
                    let mut doc = doc.clone();
                    doc.params = cli.params.apply(doc.params);
                    let pr = princerank(&doc.structure()?, &doc.params, cli.tolerance)?;
                    let cells: Vec<String> = pr.values.iter().map(|v| format!("{v:.12e}")).collect();
                    text.push_str(&format!("{} {}\n", doc.id, cells.join(" ")));
                } else {
                    text.push_str(&format!("{:<34} {:>2} agents  {}\n", doc.id, doc.n(), doc.tags.join(",")));
                }
            }
            write_out(out, &text)
        }
    }
}

fn reference_ok(p: &ModelParams) -> Result<(), CliError> {
    match p.violations().first() {
        Some(v) => Err(ScenarioError::Validation { field: "params".into(), message: v.to_string() }.into()),
        None => Ok(()),
    }
}
