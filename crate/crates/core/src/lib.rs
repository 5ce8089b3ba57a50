//! Cosine measure of finite positive spanning sets.
//!
//! The cosine measure of a set `S = {d_1, ..., d_k}` of unit vectors in `R^n` is
//!
//! ```text
//! cm(S) = min_{‖v‖ = 1} max_i d_i·v
//! ```
//!
//! and measures the widest angular gap left by the set. This crate provides
//!
//! * the Gram-vector / cone machinery shared by the solvers ([`gram`]),
//! * the polytope `P = {x : d·x ≤ 1, d ∈ S}` together with a dense simplex
//!   LP solver and reverse-search vertex enumeration ([`polytope`]),
//! * four solvers: basis enumeration, KKT-point enumeration, furthest-vertex
//!   enumeration and random linear programs ([`solvers`]),
//! * generators for benchmark families with closed-form cosine measures
//!   ([`generators`]) and their JSON storage format ([`testset_io`]).
//!
//! ```
//! use cosmeasure::{generators, solvers::{self, SolverConfig}};
//!
//! let case = generators::canonical_maximal(3).unwrap();
//! let report = solvers::vertex_enum_solver(&case.set, &SolverConfig::default()).unwrap();
//! assert!((report.result.value - 1.0 / 3f64.sqrt()).abs() < 1e-12);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod generators;
pub mod gram;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod solvers;
pub mod spanning;
pub mod testset_io;
pub mod tolerance;
pub mod vectors;

pub use error::{Error, Result};
pub use gram::{
    cone_violators, cosine_along, gram_matrix, gram_vector, rank1_update_inverse, GramInfo,
};
pub use polytope::{Polytope, Vertex};
pub use solvers::{CosineResult, Method, SolverConfig, SolverReport, Status};
pub use spanning::is_positive_spanning;
pub use tolerance::Tolerances;
pub use vectors::{normalize_set, VectorSet};
