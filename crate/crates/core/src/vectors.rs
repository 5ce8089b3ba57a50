use nalgebra::{DMatrix, DVector, DVectorView};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// An ordered multiset of unit vectors in `R^n`, stored as the columns of an
/// `n × k` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSet {
    columns: DMatrix<f64>,
    labels: Option<Vec<String>>,
}

/// Divide every vector by its Euclidean norm.
///
/// Order and duplicates are preserved. Fails with [`Error::ZeroVector`] when a
/// norm does not exceed `rank_tol`.
pub fn normalize_set(raw: &[Vec<f64>], tol: &Tolerances) -> Result<VectorSet> {
    let first = raw.first().ok_or(Error::EmptySet)?;
    let dim = first.len();
    if dim == 0 {
        return Err(Error::EmptySet);
    }
    let mut columns = DMatrix::zeros(dim, raw.len());
    for (j, v) in raw.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
        columns.column_mut(j).copy_from_slice(v);
    }
    VectorSet::from_matrix(columns, tol)
}

impl VectorSet {
    /// Build a set from the columns of `m`, normalizing each column.
    pub fn from_matrix(mut m: DMatrix<f64>, tol: &Tolerances) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() == 0 {
            return Err(Error::EmptySet);
        }
        for (index, mut col) in m.column_iter_mut().enumerate() {
            let norm = col.norm();
            if !(norm > tol.rank_tol) {
                return Err(Error::ZeroVector { index, norm });
            }
            col /= norm;
        }
        Ok(Self {
            columns: m,
            labels: None,
        })
    }

    /// Build a set from columns that are already unit length within
    /// `max_drift`. Columns whose norm is within `unit_tol` of one are kept
    /// bit-for-bit; the rest are renormalized.
    pub fn from_unit_matrix(mut m: DMatrix<f64>, max_drift: f64, tol: &Tolerances) -> Result<Self> {
        if m.nrows() == 0 || m.ncols() == 0 {
            return Err(Error::EmptySet);
        }
        for (index, mut col) in m.column_iter_mut().enumerate() {
            let norm = col.norm();
            if !(norm > tol.rank_tol) {
                return Err(Error::ZeroVector { index, norm });
            }
            let drift = (norm - 1.0).abs();
            if drift > max_drift {
                return Err(Error::InvalidParameter(format!(
                    "column {index} has norm {norm}, expected a unit vector"
                )));
            }
            if drift > tol.unit_tol {
                col /= norm;
            }
        }
        Ok(Self {
            columns: m,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Dimension `n` of the ambient space.
    pub fn dim(&self) -> usize {
        self.columns.nrows()
    }

    /// Number `k` of vectors.
    pub fn len(&self) -> usize {
        self.columns.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.columns
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn vector(&self, i: usize) -> DVectorView<'_, f64> {
        self.columns.column(i)
    }

    pub fn vectors(&self) -> impl Iterator<Item = DVectorView<'_, f64>> {
        self.columns.column_iter()
    }

    /// The `n × |indices|` matrix whose columns are the selected vectors.
    pub fn select(&self, indices: &[usize]) -> DMatrix<f64> {
        self.columns.select_columns(indices)
    }

    /// Inner products `d_i·y` for every vector of the set.
    pub fn dots(&self, y: &DVector<f64>) -> DVector<f64> {
        self.columns.tr_mul(y)
    }

    /// Apply `q` to every vector (left multiplication `QS`).
    pub fn transformed(&self, q: &DMatrix<f64>) -> Self {
        Self {
            columns: q * &self.columns,
            labels: self.labels.clone(),
        }
    }

    /// Reorder the vectors: the `j`-th output is the `perm[j]`-th input.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            columns: self.columns.select_columns(perm),
            labels: self
                .labels
                .as_ref()
                .map(|l| perm.iter().map(|&i| l[i].clone()).collect()),
        }
    }

    /// Append unit vectors to the set.
    pub fn extended(&self, extra: &[DVector<f64>]) -> Self {
        let k = self.len();
        let mut columns = self
            .columns
            .clone()
            .resize_horizontally(k + extra.len(), 0.0);
        for (j, v) in extra.iter().enumerate() {
            columns.set_column(k + j, v);
        }
        Self {
            columns,
            labels: None,
        }
    }

    /// Row-major `n × k` copy: entry `[i][j]` is coordinate `i` of vector `j`.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.columns
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    }
}
