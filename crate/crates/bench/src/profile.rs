use std::collections::BTreeMap;
use std::io::Write;

use cosmeasure::solvers::Method;
use thiserror::Error;

use crate::records::AccuracyRecord;
use crate::BenchError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("no record has a reference value")]
    EmptyUniverse,
}

/// Digit thresholds `0, 0.25, ..., 16`.
pub fn digit_grid() -> Vec<f64> {
    (0..=64).map(|i| i as f64 * 0.25).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyProfile {
    pub grid: Vec<f64>,
    /// Fraction of a method's runs reaching each threshold, methods in
    /// canonical order.
    pub curves: Vec<(Method, Vec<f64>)>,
    /// Runs per method with a reference value.
    pub universe: Vec<(Method, usize)>,
}

impl AccuracyProfile {
    pub fn curve(&self, method: Method) -> Option<&[f64]> {
        self.curves
            .iter()
            .find(|(m, _)| *m == method)
            .map(|(_, c)| c.as_slice())
    }
}

/// Fraction of runs of each method solved to at least `t` correct digits for
/// each `t` in `grid`. Runs without a reference value are left out; a failed
/// run counts as zero digits.
pub fn accuracy_profile(
    records: &[AccuracyRecord],
    grid: &[f64],
) -> Result<AccuracyProfile, ProfileError> {
    let mut by_method: BTreeMap<Method, Vec<f64>> = BTreeMap::new();
    for r in records {
        if let Some(d) = r.correct_digits {
            by_method.entry(r.method).or_default().push(d);
        }
    }
    if by_method.is_empty() {
        return Err(ProfileError::EmptyUniverse);
    }
    let curves = by_method
        .iter()
        .map(|(&m, digits)| {
            let total = digits.len() as f64;
            let curve = grid
                .iter()
                .map(|&t| digits.iter().filter(|&&d| d >= t).count() as f64 / total)
                .collect();
            (m, curve)
        })
        .collect();
    Ok(AccuracyProfile {
        grid: grid.to_vec(),
        curves,
        universe: by_method.iter().map(|(&m, d)| (m, d.len())).collect(),
    })
}

/// Values reported on one case whose cosine measure is unknown.
#[derive(Debug, Clone, PartialEq)]
pub struct AgreementRow {
    pub case_id: String,
    pub values: Vec<(Method, f64)>,
    /// Largest minus smallest reported value.
    pub spread: f64,
}

pub fn agreement_table(records: &[AccuracyRecord]) -> Vec<AgreementRow> {
    let mut groups: BTreeMap<&str, Vec<(Method, f64)>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.truth.is_none()) {
        if let Some(v) = r.value {
            groups.entry(&r.case_id).or_default().push((r.method, v));
        }
    }
    groups
        .into_iter()
        .map(|(id, mut values)| {
            values.sort_by_key(|(m, _)| *m);
            let lo = values.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
            let hi = values.iter().map(|x| x.1).fold(f64::NEG_INFINITY, f64::max);
            AgreementRow {
                case_id: id.to_string(),
                values,
                spread: hi - lo,
            }
        })
        .collect()
}

/// One row per threshold, one column per method.
pub fn write_profile_csv<W: Write>(profile: &AccuracyProfile, out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["digits".to_string()];
    header.extend(profile.curves.iter().map(|(m, _)| m.name().to_string()));
    w.write_record(&header)?;
    for (i, t) in profile.grid.iter().enumerate() {
        let mut row = vec![format!("{t:.2}")];
        row.extend(profile.curves.iter().map(|(_, c)| format!("{:.6}", c[i])));
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| BenchError::Record(e.to_string()))?;
    Ok(())
}

pub fn write_agreement_csv<W: Write>(rows: &[AgreementRow], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["case_id", "method", "value", "spread"])?;
    for row in rows {
        for (m, v) in &row.values {
            w.write_record([
                row.case_id.clone(),
                m.name().to_string(),
                format!("{v:.16e}"),
                format!("{:.3e}", row.spread),
            ])?;
        }
    }
    w.flush().map_err(|e| BenchError::Record(e.to_string()))?;
    Ok(())
}
