use std::path::{Path, PathBuf};
use std::time::Duration;

use cosmeasure::solvers::Method;
use serde::{Deserialize, Serialize};

use crate::BenchError;

/// Number of random-LP rounds per run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpIterations {
    /// `factor · n` rounds.
    PerDimension(usize),
    Fixed(usize),
    /// Rounds continue until the time budget runs out.
    BudgetBounded,
}

impl Default for LpIterations {
    fn default() -> Self {
        LpIterations::PerDimension(200)
    }
}

impl LpIterations {
    pub fn rounds(self, n: usize) -> usize {
        match self {
            LpIterations::PerDimension(f) => (f * n).max(1),
            LpIterations::Fixed(c) => c.max(1),
            LpIterations::BudgetBounded => usize::MAX,
        }
    }
}

fn default_budget() -> f64 {
    30.0
}
fn default_rotations() -> usize {
    3
}
fn default_workers() -> usize {
    1
}
fn default_repetitions() -> usize {
    4
}
fn default_exhaustive_dim() -> usize {
    8
}
fn default_heuristic_dim() -> usize {
    30
}

/// A benchmark sweep, read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchPlan {
    /// Corpus root, or its `manifest.json`.
    pub corpus: PathBuf,
    pub methods: Vec<Method>,
    #[serde(default = "default_budget")]
    pub time_budget_secs: f64,
    #[serde(default = "default_rotations")]
    pub rotations_per_instance: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub lp_iterations: LpIterations,
    #[serde(default = "default_workers")]
    pub parallel_workers: usize,
    /// Random-LP runs averaged per case.
    #[serde(default = "default_repetitions")]
    pub lp_repetitions: usize,
    /// Skip exhaustive methods above this dimension.
    #[serde(default = "default_exhaustive_dim")]
    pub exhaustive_max_dim: usize,
    /// Skip the random-LP heuristic above this dimension.
    #[serde(default = "default_heuristic_dim")]
    pub heuristic_max_dim: usize,
    /// Fill the `wall_ms` column. Off by default so that output is
    /// byte-reproducible.
    #[serde(default)]
    pub record_wall_time: bool,
}

impl BenchPlan {
    pub fn new(corpus: impl Into<PathBuf>, methods: Vec<Method>) -> Self {
        Self {
            corpus: corpus.into(),
            methods,
            time_budget_secs: default_budget(),
            rotations_per_instance: default_rotations(),
            master_seed: 0,
            lp_iterations: LpIterations::default(),
            parallel_workers: default_workers(),
            lp_repetitions: default_repetitions(),
            exhaustive_max_dim: default_exhaustive_dim(),
            heuristic_max_dim: default_heuristic_dim(),
            record_wall_time: false,
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, BenchError> {
        let text = std::fs::read_to_string(path).map_err(|source| BenchError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let plan: Self = serde_json::from_str(&text)
            .map_err(|e| BenchError::Plan(format!("{}: {e}", path.display())))?;
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.methods.is_empty() {
            return Err(BenchError::Plan("no methods selected".into()));
        }
        if !(self.time_budget_secs > 0.0 && self.time_budget_secs.is_finite()) {
            return Err(BenchError::Plan(format!(
                "budget must be positive, got {}",
                self.time_budget_secs
            )));
        }
        if self.rotations_per_instance == 0
            || self.parallel_workers == 0
            || self.lp_repetitions == 0
        {
            return Err(BenchError::Plan(
                "rotations, workers and repetitions must be at least 1".into(),
            ));
        }
        Ok(())
    }

    pub fn budget(&self) -> Duration {
        Duration::from_secs_f64(self.time_budget_secs)
    }

    /// Corpus root directory.
    pub fn corpus_root(&self) -> PathBuf {
        if self.corpus.extension().is_some_and(|e| e == "json") {
            self.corpus
                .parent()
                .map(Path::to_path_buf)
                .unwrap_or_default()
        } else {
            self.corpus.clone()
        }
    }

    pub fn applies(&self, method: Method, n: usize) -> bool {
        if method.is_exact() {
            n <= self.exhaustive_max_dim
        } else {
            n <= self.heuristic_max_dim
        }
    }
}
