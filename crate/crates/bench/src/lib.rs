//! Benchmark harness for the cosine-measure solvers.
//!
//! A [`BenchPlan`] names a stored corpus and a list of methods. Each stored
//! case is rotated and permuted a few times, every method runs under a wall
//! clock budget, and the outcome becomes an [`AccuracyRecord`]. Records feed
//! the accuracy profile: the fraction of cases solved to at least `t` correct
//! digits as a function of `t`.

mod plan;
mod plot;
mod profile;
mod records;
mod run;

use std::path::PathBuf;

use thiserror::Error;

pub use plan::{BenchPlan, LpIterations};
pub use plot::profile_svg;
pub use profile::{
    accuracy_profile, agreement_table, digit_grid, write_agreement_csv, write_profile_csv,
    AccuracyProfile, AgreementRow, ProfileError,
};
pub use records::{
    correct_digits, read_records_csv, write_records_csv, AccuracyRecord, CSV_HEADER,
};
pub use run::{case_id, run_benchmark, run_case, BenchOutcome};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid plan: {0}")]
    Plan(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Store(#[from] cosmeasure::testset_io::StoreError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("record file: {0}")]
    Record(String),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}
