//! Scenario files, a builtin scenario corpus, comparison reports, DOT and CSV
//! rendering, and the `princerank` command line, on top of
//! [`princerank_core`].

pub mod cli;
pub mod compare;
pub mod corpus;
pub mod render;
pub mod scenario;

pub use compare::{compare, unification_experiment, CompareReport, UnityFactors, UnityVariant, Verdict};
pub use corpus::{bipolar_pair, corpus, corpus_get};
pub use render::{to_dot, trajectory_csv, RenderOptions};
pub use scenario::{parse_scenario, Edge, ScenarioDoc, Sign};

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("scenarios have {first} and {second} agents")]
    AgentCountMismatch { first: usize, second: usize },

    #[error(transparent)]
    Model(#[from] princerank_core::Error),
}
