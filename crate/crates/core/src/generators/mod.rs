//! Benchmark sets with known cosine measure and the transformations that
//! preserve it.
//!
//! | family               | vectors    | cosine measure                                   |
//! |----------------------|------------|--------------------------------------------------|
//! | `canonical_min`      | `n+1`      | `1/√(n² + 2(n−1)√n)`                             |
//! | `canonical_max`      | `2n`       | `1/√n`                                           |
//! | `uniform_simplex`    | `n+1`      | `1/n`                                            |
//! | `min_delta_shift`    | `n+1`      | `(1−δn)/√(n²δ² − 2nδ + n²)`                      |
//! | `max_delta_shift`    | `2n`       | `(1−δn)/√(n(δ²n − 2δ + 1))`                      |
//! | `aug_max_delta_shift`| `2n + n²`  | as `max_delta_shift`                             |
//! | `optimal_orthogonal` | `s`        | `1/√((s−n−r)⌊n/(s−n)⌋² + r⌈n/(s−n)⌉²)`           |
//! | `random_pss`         | `≥ n+1`    | unknown                                          |

mod families;
mod transforms;

use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vectors::VectorSet;

pub use families::{
    canonical_maximal, canonical_minimal, delta_for_target_max, delta_for_target_min,
    maximal_delta_shift, minimal_delta_shift, optimal_orthogonal, random_pss, uniform_simplex,
    uniform_simplex_case,
};
pub use transforms::{augment, permute, random_rotation, rotate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    CanonicalMin,
    CanonicalMax,
    UniformSimplex,
    MinDeltaShift,
    MaxDeltaShift,
    AugMaxDeltaShift,
    OptimalOrthogonal,
    RandomPss,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::CanonicalMin,
        Family::CanonicalMax,
        Family::UniformSimplex,
        Family::MinDeltaShift,
        Family::MaxDeltaShift,
        Family::AugMaxDeltaShift,
        Family::OptimalOrthogonal,
        Family::RandomPss,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::CanonicalMin => "canonical_min",
            Family::CanonicalMax => "canonical_max",
            Family::UniformSimplex => "uniform_simplex",
            Family::MinDeltaShift => "min_delta_shift",
            Family::MaxDeltaShift => "max_delta_shift",
            Family::AugMaxDeltaShift => "aug_max_delta_shift",
            Family::OptimalOrthogonal => "optimal_orthogonal",
            Family::RandomPss => "random_pss",
        }
    }

    /// Directory name used in stored corpora.
    pub fn set_type(self) -> &'static str {
        match self {
            Family::CanonicalMin => "min_can_pb",
            Family::CanonicalMax => "max_can_pb",
            Family::UniformSimplex => "uniform_simplex_pb",
            Family::MinDeltaShift => "min_delta_pb",
            Family::MaxDeltaShift => "max_delta_pb",
            Family::AugMaxDeltaShift => "aug_max_delta_pb",
            Family::OptimalOrthogonal => "opt_ortho_pb",
            Family::RandomPss => "random_pss",
        }
    }

    pub fn from_set_type(s: &str) -> Option<Self> {
        Family::ALL.into_iter().find(|f| f.set_type() == s)
    }

    pub fn uses_delta(self) -> bool {
        matches!(
            self,
            Family::MinDeltaShift | Family::MaxDeltaShift | Family::AugMaxDeltaShift
        )
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, Family::AugMaxDeltaShift | Family::RandomPss)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family `{s}`")))
    }
}

/// Parameters of one generated set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub augment_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Instance number among randomized sets sharing the other parameters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<usize>,
}

impl GeneratorSpec {
    pub fn new(family: Family, dim: usize) -> Self {
        Self {
            family,
            dim,
            delta: None,
            size: None,
            augment_count: None,
            seed: None,
            instance: None,
        }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn with_size(mut self, size: usize) -> Self {
        self.size = Some(size);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_instance(mut self, instance: usize) -> Self {
        self.instance = Some(instance);
        self
    }

    pub fn with_augment_count(mut self, count: usize) -> Self {
        self.augment_count = Some(count);
        self
    }

    fn delta_or_err(&self) -> Result<f64> {
        self.delta
            .ok_or_else(|| Error::InvalidParameter(format!("{} needs a delta", self.family)))
    }

    fn size_or_err(&self) -> Result<usize> {
        self.size
            .ok_or_else(|| Error::InvalidParameter(format!("{} needs a size", self.family)))
    }

    /// Closed-form cosine measure of the family, `None` for random sets.
    pub fn known_cm(&self) -> Result<Option<f64>> {
        let n = self.dim;
        let nf = n as f64;
        Ok(match self.family {
            Family::CanonicalMin => Some(families::canonical_min_cm(n)),
            Family::CanonicalMax => Some(1.0 / nf.sqrt()),
            Family::UniformSimplex => Some(1.0 / nf),
            Family::MinDeltaShift => {
                let d = self.delta_or_err()?;
                families::check_delta(n, d)?;
                Some(families::min_shift_cm(n, d))
            }
            Family::MaxDeltaShift | Family::AugMaxDeltaShift => {
                let d = self.delta_or_err()?;
                families::check_delta(n, d)?;
                Some(families::max_shift_cm(n, d))
            }
            Family::OptimalOrthogonal => {
                Some(families::optimal_orthogonal_cm(n, self.size_or_err()?)?)
            }
            Family::RandomPss => None,
        })
    }
}

/// A transformation applied to a generated set, with its seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Transform {
    Rotation { seed: u64 },
    Permutation { seed: u64 },
    Augmentation { count: usize, seed: u64 },
}

/// A benchmark set with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct TestCase {
    pub set: VectorSet,
    pub known_cm: Option<f64>,
    pub spec: Option<GeneratorSpec>,
    /// A cosine vector known in closed form, kept through transformations.
    pub cosine_vector: Option<DVector<f64>>,
    pub transform_log: Vec<Transform>,
}

impl TestCase {
    pub fn new(set: VectorSet) -> Self {
        Self {
            set,
            known_cm: None,
            spec: None,
            cosine_vector: None,
            transform_log: Vec::new(),
        }
    }
}

/// Derive an independent 64-bit seed from a master seed and a path of
/// integers (SplitMix64 finalizer applied per component).
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    parts.iter().fold(mix(master), |acc, &p| mix(acc ^ mix(p)))
}

/// Build the set described by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<TestCase> {
    let n = spec.dim;
    let mut case = match spec.family {
        Family::CanonicalMin => canonical_minimal(n)?,
        Family::CanonicalMax => canonical_maximal(n)?,
        Family::UniformSimplex => uniform_simplex_case(n)?,
        Family::MinDeltaShift => minimal_delta_shift(n, spec.delta_or_err()?)?,
        Family::MaxDeltaShift => maximal_delta_shift(n, spec.delta_or_err()?)?,
        Family::AugMaxDeltaShift => {
            let base = maximal_delta_shift(n, spec.delta_or_err()?)?;
            augment(
                &base,
                spec.augment_count.unwrap_or(n * n),
                spec.seed.unwrap_or(0),
            )?
        }
        Family::OptimalOrthogonal => optimal_orthogonal(n, spec.size_or_err()?)?,
        Family::RandomPss => random_pss(n, spec.seed.unwrap_or(0))?,
    };
    case.spec = Some(spec.clone());
    Ok(case)
}
