use std::io::{Read, Write};

use cosmeasure::solvers::Method;

use crate::BenchError;

pub const CSV_HEADER: [&str; 11] = [
    "case_id",
    "family",
    "n",
    "k",
    "method",
    "seed",
    "value",
    "truth",
    "correct_digits",
    "wall_ms",
    "completed",
];

/// One method run on one case draw.
#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyRecord {
    /// `<relative path>#r<rotation>`.
    pub case_id: String,
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub method: Method,
    /// Seed of the rotation and permutation draw.
    pub seed: u64,
    /// `None` when the solver failed.
    pub value: Option<f64>,
    pub truth: Option<f64>,
    pub correct_digits: Option<f64>,
    pub wall_ms: Option<f64>,
    pub completed: bool,
}

impl AccuracyRecord {
    pub fn failed(&self) -> bool {
        self.value.is_none()
    }
}

/// `clip(-log10(|v - v*| / max(|v*|, 1e-30)), 0, 16)`; `None` without a
/// reference value and `0` for a failed run.
pub fn correct_digits(value: Option<f64>, truth: Option<f64>) -> Option<f64> {
    let t = truth?;
    let Some(v) = value.filter(|v| v.is_finite()) else {
        return Some(0.0);
    };
    let err = (v - t).abs() / t.abs().max(1e-30);
    if err == 0.0 {
        return Some(16.0);
    }
    Some((-err.log10()).clamp(0.0, 16.0))
}

fn fmt_f64(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

fn parse_opt(field: &str, name: &str) -> Result<Option<f64>, BenchError> {
    if field.is_empty() {
        return Ok(None);
    }
    field
        .parse()
        .map(Some)
        .map_err(|_| BenchError::Record(format!("bad {name} `{field}`")))
}

pub fn write_records_csv<W: Write>(records: &[AccuracyRecord], out: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.case_id.clone(),
            r.family.clone(),
            r.n.to_string(),
            r.k.to_string(),
            r.method.name().to_string(),
            r.seed.to_string(),
            fmt_f64(r.value),
            fmt_f64(r.truth),
            r.correct_digits
                .map(|d| format!("{d:.6}"))
                .unwrap_or_default(),
            r.wall_ms.map(|d| format!("{d:.3}")).unwrap_or_default(),
            r.completed.to_string(),
        ])?;
    }
    w.flush().map_err(|e| BenchError::Record(e.to_string()))?;
    Ok(())
}

pub fn read_records_csv<R: Read>(input: R) -> Result<Vec<AccuracyRecord>, BenchError> {
    let mut rdr = csv::Reader::from_reader(input);
    if rdr.headers()?.iter().ne(CSV_HEADER) {
        return Err(BenchError::Record("unexpected header".into()));
    }
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row?;
        let int = |i: usize| -> Result<u64, BenchError> {
            row[i]
                .parse()
                .map_err(|_| BenchError::Record(format!("bad {} `{}`", CSV_HEADER[i], &row[i])))
        };
        let method = row[4]
            .parse::<Method>()
            .map_err(|e| BenchError::Record(e.to_string()))?;
        let completed = row[10]
            .parse()
            .map_err(|_| BenchError::Record(format!("bad completed `{}`", &row[10])))?;
        out.push(AccuracyRecord {
            case_id: row[0].to_string(),
            family: row[1].to_string(),
            n: int(2)? as usize,
            k: int(3)? as usize,
            method,
            seed: int(5)?,
            value: parse_opt(&row[6], "value")?,
            truth: parse_opt(&row[7], "truth")?,
            correct_digits: parse_opt(&row[8], "correct_digits")?,
            wall_ms: parse_opt(&row[9], "wall_ms")?,
            completed,
        });
    }
    Ok(out)
}
