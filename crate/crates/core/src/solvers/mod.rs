//! The cosine-measure algorithms.
//!
//! | method        | idea                                              | result    |
//! |---------------|---------------------------------------------------|-----------|
//! | `basis_enum`  | Gram vector of every basis, keep admissible ones  | exact     |
//! | `kkt_enum`    | KKT points of every subset of size 2..=n+1        | exact     |
//! | `vertex_enum` | furthest vertex of `{x : Sᵀx ≤ 1}`                | exact     |
//! | `random_lp`   | furthest vertex among LP optima for random `c`    | heuristic |
//!
//! Each solver checks its time budget once per subset, vertex or LP round and
//! returns the best incumbent when it runs out.

mod basis;
mod incumbent;
mod kkt;
mod random_lp;
mod vertex;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;
use crate::vectors::VectorSet;

pub use basis::basis_enumeration;
pub use kkt::kkt_enumeration;
pub use random_lp::{random_lp_round, random_lp_solver, sample_unit_sphere};
pub use vertex::vertex_enum_solver;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BasisEnum,
    KktEnum,
    VertexEnum,
    RandomLp,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::BasisEnum,
        Method::KktEnum,
        Method::VertexEnum,
        Method::RandomLp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::BasisEnum => "basis_enum",
            Method::KktEnum => "kkt_enum",
            Method::VertexEnum => "vertex_enum",
            Method::RandomLp => "random_lp",
        }
    }

    pub fn is_exact(self) -> bool {
        self != Method::RandomLp
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Exact,
    Heuristic,
    TimeoutIncumbent,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::Heuristic => "heuristic",
            Status::TimeoutIncumbent => "timeout_incumbent",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub tolerances: Tolerances,
    pub time_budget: Option<Duration>,
    pub rng_seed: u64,
    /// Number of rounds of the random-LP heuristic.
    pub lp_iterations: usize,
    pub max_reported_vectors: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            time_budget: None,
            rng_seed: 0,
            lp_iterations: 100,
            max_reported_vectors: 64,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        self.tolerances.validate()?;
        if self.lp_iterations == 0 {
            return Err(Error::InvalidParameter(
                "lp_iterations must be at least 1".into(),
            ));
        }
        if self.time_budget == Some(Duration::ZERO) {
            return Err(Error::InvalidParameter(
                "time budget must be positive".into(),
            ));
        }
        if self.max_reported_vectors == 0 {
            return Err(Error::InvalidParameter(
                "max_reported_vectors must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolverStats {
    /// Subsets, vertices or LP rounds examined.
    pub candidates: u64,
    pub lps_solved: u64,
    pub wall_time: Duration,
    /// Best value after each random-LP round.
    pub trace: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CosineResult {
    pub value: f64,
    /// Cosine vectors in lexicographic order of coordinates.
    pub cosine_vectors: Vec<DVector<f64>>,
    /// More cosine vectors were found than `max_reported_vectors`.
    pub truncated: bool,
    /// For each cosine vector, the indices of the set attaining the value.
    pub active_sets: Vec<Vec<usize>>,
    pub status: Status,
    pub stats: SolverStats,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverReport {
    pub result: CosineResult,
    pub method: Method,
    pub completed: bool,
}

/// Run `method` on `set`.
pub fn solve(set: &VectorSet, method: Method, cfg: &SolverConfig) -> Result<SolverReport> {
    match method {
        Method::BasisEnum => basis_enumeration(set, cfg),
        Method::KktEnum => kkt_enumeration(set, cfg),
        Method::VertexEnum => vertex_enum_solver(set, cfg),
        Method::RandomLp => random_lp_solver(set, cfg),
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Clock {
    start: Instant,
    deadline: Option<Instant>,
}

impl Clock {
    pub(crate) fn start(budget: Option<Duration>) -> Self {
        let start = Instant::now();
        Self {
            start,
            deadline: budget.map(|b| start + b),
        }
    }

    pub(crate) fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}
