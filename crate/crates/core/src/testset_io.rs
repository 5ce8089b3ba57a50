//! JSON storage of benchmark sets.
//!
//! Each case is one file `root/<set_type>/<n>/<modifier>.json`:
//!
//! ```json
//! {"matrix": [[...], ...], "solution": 0.38268343236508978, "meta": {...}}
//! ```
//!
//! `matrix` is row-major with `matrix[i][j]` the `i`-th coordinate of vector
//! `j`, so the columns are the vectors. `solution` is the known cosine
//! measure or `null`. `meta` is optional and holds the generator parameters
//! and transformation log; unknown keys are ignored on load. Numbers are
//! written with 17 significant digits so that loading is bit-exact.
//!
//! | family               | set type             |
//! |----------------------|----------------------|
//! | `canonical_min`      | `min_can_pb`         |
//! | `canonical_max`      | `max_can_pb`         |
//! | `uniform_simplex`    | `uniform_simplex_pb` |
//! | `min_delta_shift`    | `min_delta_pb`       |
//! | `max_delta_shift`    | `max_delta_pb`       |
//! | `aug_max_delta_shift`| `aug_max_delta_pb`   |
//! | `optimal_orthogonal` | `opt_ortho_pb`       |
//! | `random_pss`         | `random_pss`         |

use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::{derive_seed, generate, Family, GeneratorSpec, TestCase, Transform};
use crate::tolerance::Tolerances;
use crate::vectors::VectorSet;

/// Largest deviation from unit norm accepted in stored columns.
pub const MAX_STORED_DRIFT: f64 = 1e-6;

/// Dimensions of the full benchmark grid.
pub const BENCHMARK_DIMS: [usize; 15] =
    [10, 13, 15, 18, 21, 24, 27, 30, 40, 50, 60, 70, 80, 90, 100];

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error(
        "{path}: {k} vectors in dimension {n} cannot positively span, yet a solution is given"
    )]
    Dimension { path: PathBuf, n: usize, k: usize },
    #[error("case has no generator parameters to derive a file name from")]
    MissingSpec,
    #[error("two plan entries map to {0}")]
    DuplicatePath(String),
    #[error(transparent)]
    Invalid(#[from] crate::error::Error),
}

pub type StoreResult<T> = Result<T, StoreError>;

/// On-disk form of a case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredCase {
    pub matrix: Vec<Vec<f64>>,
    pub solution: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct Meta {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub transform_log: Vec<Transform>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cosine_vector: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    /// Relative to the corpus root, `/`-separated.
    pub path: String,
    pub family: Family,
    pub n: usize,
    pub params: serde_json::Map<String, serde_json::Value>,
    pub seed: Option<u64>,
}

/// Writes every float with 17 significant digits.
struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision);
    value.serialize(&mut ser).expect("in-memory serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

fn write_file(path: &Path, contents: &str) -> StoreResult<()> {
    let io_err = |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(io_err)?;
    }
    fs::write(path, contents).map_err(io_err)
}

fn format_delta(delta: f64) -> String {
    format!("delta{delta:.6}").replace('.', "p")
}

/// File stem encoding the parameters that distinguish cases of one family
/// and dimension.
pub fn modifier(spec: &GeneratorSpec) -> String {
    let mut parts = Vec::new();
    if let Some(d) = spec.delta {
        parts.push(format_delta(d));
    }
    if let Some(s) = spec.size {
        parts.push(format!("s{s}"));
    }
    if let Some(c) = spec.augment_count {
        parts.push(format!("aug{c}"));
    }
    if let Some(i) = spec.instance {
        parts.push(format!("i{i}"));
    }
    if let Some(seed) = spec.seed {
        parts.push(format!("seed{seed}"));
    }
    if parts.is_empty() {
        "default".to_string()
    } else {
        parts.join("_")
    }
}

/// Relative path of a case generated from `spec`.
pub fn relative_path(spec: &GeneratorSpec) -> String {
    format!(
        "{}/{}/{}.json",
        spec.family.set_type(),
        spec.dim,
        modifier(spec)
    )
}

pub fn to_stored(tc: &TestCase) -> StoredCase {
    let meta = Meta {
        generator: tc.spec.clone(),
        transform_log: tc.transform_log.clone(),
        cosine_vector: tc
            .cosine_vector
            .as_ref()
            .map(|u| u.iter().copied().collect()),
    };
    let empty = meta == Meta::default();
    StoredCase {
        matrix: tc.set.to_rows(),
        solution: tc.known_cm,
        meta: (!empty).then_some(meta),
    }
}

/// Write `tc` under `root` and return the file path.
pub fn save_case(tc: &TestCase, root: &Path) -> StoreResult<PathBuf> {
    let spec = tc.spec.as_ref().ok_or(StoreError::MissingSpec)?;
    let path = root.join(relative_path(spec));
    write_file(&path, &to_json(&to_stored(tc)))?;
    Ok(path)
}

/// Parse a stored case from JSON text; `path` is used in error messages.
pub fn parse_case(text: &str, path: &Path) -> StoreResult<TestCase> {
    let parse_err = |message: String| StoreError::Parse {
        path: path.to_path_buf(),
        message,
    };
    let stored: StoredCase = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let n = stored.matrix.len();
    let k = stored.matrix.first().map_or(0, Vec::len);
    if n == 0 || k == 0 {
        return Err(parse_err("empty matrix".into()));
    }
    if let Some(row) = stored.matrix.iter().position(|r| r.len() != k) {
        return Err(parse_err(format!(
            "row {row} has {} entries, expected {k}",
            stored.matrix[row].len()
        )));
    }
    if stored.solution.is_some() && k < n + 1 {
        return Err(StoreError::Dimension {
            path: path.to_path_buf(),
            n,
            k,
        });
    }
    let m = DMatrix::from_fn(n, k, |i, j| stored.matrix[i][j]);
    let set = VectorSet::from_unit_matrix(m, MAX_STORED_DRIFT, &Tolerances::default())?;
    let meta = stored.meta.unwrap_or_default();
    Ok(TestCase {
        set,
        known_cm: stored.solution,
        spec: meta.generator,
        cosine_vector: meta.cosine_vector.map(DVector::from_vec),
        transform_log: meta.transform_log,
    })
}

pub fn load_case(path: &Path) -> StoreResult<TestCase> {
    let text = fs::read_to_string(path).map_err(|source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_case(&text, path)
}

fn manifest_entry(spec: &GeneratorSpec) -> ManifestEntry {
    let mut params = serde_json::Map::new();
    if let Some(d) = spec.delta {
        params.insert("delta".into(), d.into());
    }
    if let Some(s) = spec.size {
        params.insert("size".into(), s.into());
    }
    if let Some(c) = spec.augment_count {
        params.insert("augment_count".into(), c.into());
    }
    if let Some(i) = spec.instance {
        params.insert("instance".into(), i.into());
    }
    ManifestEntry {
        path: relative_path(spec),
        family: spec.family,
        n: spec.dim,
        params,
        seed: spec.seed,
    }
}

/// Generate and save every case of `plan`, then write the manifest.
pub fn build_corpus(plan: &[GeneratorSpec], root: &Path) -> StoreResult<Vec<ManifestEntry>> {
    let mut seen = BTreeSet::new();
    let mut manifest = Vec::with_capacity(plan.len());
    for spec in plan {
        let entry = manifest_entry(spec);
        if !seen.insert(entry.path.clone()) {
            return Err(StoreError::DuplicatePath(entry.path));
        }
        let case = generate(spec)?;
        save_case(&case, root)?;
        manifest.push(entry);
    }
    write_file(&root.join(MANIFEST_FILE), &to_json(&manifest))?;
    Ok(manifest)
}

pub fn load_manifest(root: &Path) -> StoreResult<Vec<ManifestEntry>> {
    let path = root.join(MANIFEST_FILE);
    let text = fs::read_to_string(&path).map_err(|source| StoreError::Io {
        path: path.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| StoreError::Parse {
        path,
        message: e.to_string(),
    })
}

/// Shift parameters of the benchmark grid: `0, 1/(2n), 2/(3n)`.
pub fn grid_deltas(n: usize) -> [f64; 3] {
    let nf = n as f64;
    [0.0, 1.0 / (2.0 * nf), 2.0 / (3.0 * nf)]
}

/// Set sizes of the optimal orthogonal family on the grid: `⌊1.25n⌋` and
/// `⌊1.75n⌋`, raised where needed to stay distinct and at least `n+1`.
pub fn grid_sizes(n: usize) -> [usize; 2] {
    let s1 = (5 * n / 4).max(n + 1);
    let s2 = (7 * n / 4).max(s1 + 1).min(2 * n);
    [s1, s2]
}

/// The benchmark grid for the given dimensions: per dimension one canonical
/// minimal basis, three minimal and three maximal δ-shift bases, three
/// augmented instances per δ, two optimal orthogonal bases and three random
/// positive spanning sets.
pub fn benchmark_grid(dims: &[usize], master_seed: u64) -> Vec<GeneratorSpec> {
    let mut plan = Vec::new();
    for &n in dims {
        plan.push(GeneratorSpec::new(Family::CanonicalMin, n));
        for d in grid_deltas(n) {
            plan.push(GeneratorSpec::new(Family::MinDeltaShift, n).with_delta(d));
        }
        for d in grid_deltas(n) {
            plan.push(GeneratorSpec::new(Family::MaxDeltaShift, n).with_delta(d));
        }
        for (di, d) in grid_deltas(n).into_iter().enumerate() {
            for i in 0..3 {
                let seed = derive_seed(
                    master_seed,
                    &[Family::AugMaxDeltaShift as u64, n as u64, di as u64, i],
                );
                plan.push(
                    GeneratorSpec::new(Family::AugMaxDeltaShift, n)
                        .with_delta(d)
                        .with_instance(i as usize)
                        .with_seed(seed),
                );
            }
        }
        let [s1, s2] = grid_sizes(n);
        plan.push(GeneratorSpec::new(Family::OptimalOrthogonal, n).with_size(s1));
        if s2 != s1 {
            plan.push(GeneratorSpec::new(Family::OptimalOrthogonal, n).with_size(s2));
        }
        for i in 0..3u64 {
            let seed = derive_seed(master_seed, &[Family::RandomPss as u64, n as u64, i]);
            plan.push(
                GeneratorSpec::new(Family::RandomPss, n)
                    .with_instance(i as usize)
                    .with_seed(seed),
            );
        }
    }
    plan
}
