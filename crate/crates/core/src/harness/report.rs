use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{HarnessError, Method, Result, RunRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
    Text,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
            Self::Text => "txt",
        }
    }
}

impl FromStr for ReportFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "text" | "txt" | "table" => Ok(Self::Text),
            _ => Err(HarnessError::Config(format!("unknown report format '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub method: String,
    /// Aligned with [`TrialReport::columns`].
    pub values: Vec<f64>,
}

/// Per-method medians over seeds: one row per method, in run order, and
/// metric columns in alphabetical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    columns: Vec<String>,
    rows: Vec<ReportRow>,
    seeds: usize,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

impl TrialReport {
    pub fn from_records(records: &[RunRecord], include_wall_time: bool) -> Result<Self> {
        if records.is_empty() {
            return Err(HarnessError::Config("no runs to report".into()));
        }
        let mut methods: Vec<Method> = Vec::new();
        for r in records {
            if !methods.contains(&r.method) {
                methods.push(r.method);
            }
        }
        let mut columns: BTreeSet<&str> = BTreeSet::from(["best_fitness"]);
        if records.iter().any(|r| r.accuracy.is_some()) {
            columns.insert("accuracy");
        }
        if records.iter().any(|r| r.f_score.is_some()) {
            columns.insert("f_score");
        }
        if include_wall_time {
            columns.insert("wall_time_s");
        }
        let columns: Vec<String> = columns.into_iter().map(String::from).collect();
        let mut seeds = 0;
        let rows = methods
            .iter()
            .map(|&m| {
                let runs: Vec<&RunRecord> = records.iter().filter(|r| r.method == m).collect();
                seeds = seeds.max(runs.len());
                let values = columns
                    .iter()
                    .map(|c| {
                        median(
                            runs.iter()
                                .map(|r| match c.as_str() {
                                    "accuracy" => r.accuracy.unwrap_or(f64::NAN),
                                    "f_score" => r.f_score.unwrap_or(f64::NAN),
                                    "wall_time_s" => r.wall_time_s,
                                    _ => r.best_fitness,
                                })
                                .collect(),
                        )
                    })
                    .collect();
                ReportRow {
                    method: m.display_name().to_string(),
                    values,
                }
            })
            .collect();
        Ok(Self { columns, rows, seeds })
    }

    /// Rebuilds the report from a persisted run log.
    pub fn from_run_log(path: impl AsRef<Path>, include_wall_time: bool) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|source| HarnessError::Input {
            path: path.to_path_buf(),
            source,
        })?;
        let mut records = Vec::new();
        for (k, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| HarnessError::io(path, e))?;
            if line.trim().is_empty() {
                continue;
            }
            records.push(serde_json::from_str(&line).map_err(|e| HarnessError::Malformed {
                line: k as u64 + 1,
                detail: e.to_string(),
            })?);
        }
        Self::from_records(&records, include_wall_time)
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[ReportRow] {
        &self.rows
    }

    pub fn seeds(&self) -> usize {
        self.seeds
    }

    pub fn value(&self, method: &str, column: &str) -> Option<f64> {
        let c = self.columns.iter().position(|k| k == column)?;
        self.rows.iter().find(|r| r.method == method).map(|r| r.values[c])
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(std::iter::once("method").chain(self.columns.iter().map(String::as_str)))?;
        for row in &self.rows {
            w.write_record(std::iter::once(row.method.clone()).chain(row.values.iter().map(|v| v.to_string())))?;
        }
        let bytes = w.into_inner().map_err(|e| HarnessError::Config(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Aligned table, values rounded to 4 decimals.
    pub fn to_text(&self) -> String {
        let header: Vec<String> = std::iter::once("Method".to_string()).chain(self.columns.iter().cloned()).collect();
        let body: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                std::iter::once(r.method.clone())
                    .chain(r.values.iter().map(|v| format!("{v:.4}")))
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                std::iter::once(&header)
                    .chain(&body)
                    .map(|row| row[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(c, (cell, w))| if c == 0 { format!("{cell:<w$}") } else { format!("{cell:>w$}") })
                .collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&mut out, &header);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        let _ = writeln!(out, "{}", rule.join("  "));
        for row in &body {
            line(&mut out, row);
        }
        out
    }

    pub fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Csv => self.to_csv(),
            ReportFormat::Json => self.to_json(),
            ReportFormat::Text => Ok(self.to_text()),
        }
    }
}

pub fn emit_report(report: &TrialReport, format: ReportFormat, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, report.render(format)?).map_err(|e| HarnessError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(method: Method, run: usize, fit: f64, f: Option<f64>) -> RunRecord {
        RunRecord {
            method,
            run,
            seed: run as u64,
            best_fitness: fit,
            initial_best: fit + 1.0,
            evaluations: 10,
            best_position: vec![0.0],
            accuracy: f,
            f_score: f,
            wall_time_s: 0.5,
        }
    }

    #[test]
    fn medians_and_columns() {
        let recs = vec![
            record(Method::Hraha, 0, 3.0, None),
            record(Method::Hraha, 1, 1.0, None),
            record(Method::Hraha, 2, 2.0, None),
            record(Method::Pso, 0, 4.0, None),
            record(Method::Pso, 1, 6.0, None),
        ];
        let r = TrialReport::from_records(&recs, true).unwrap();
        assert_eq!(r.columns(), &["best_fitness", "wall_time_s"]);
        assert_eq!(r.value("Proposed", "best_fitness"), Some(2.0));
        assert_eq!(r.value("PSO", "best_fitness"), Some(5.0));
        assert_eq!(r.seeds(), 3);
        assert_eq!(
            r.to_csv().unwrap(),
            "method,best_fitness,wall_time_s\nProposed,2,0.5\nPSO,5,0.5\n"
        );
        let plain = TrialReport::from_records(&recs, false).unwrap();
        assert_eq!(plain.columns(), &["best_fitness"]);
    }

    #[test]
    fn classifier_columns_are_alphabetical() {
        let r = TrialReport::from_records(&[record(Method::Aha, 0, 0.25, Some(0.75))], false).unwrap();
        assert_eq!(r.columns(), &["accuracy", "best_fitness", "f_score"]);
        assert_eq!(
            r.to_text(),
            "Method  accuracy  best_fitness  f_score\n------  --------  ------------  -------\nAHA       0.7500        0.2500   0.7500\n"
        );
    }

    #[test]
    fn json_round_trip() {
        let r = TrialReport::from_records(&[record(Method::Rfo, 0, 0.125, None)], false).unwrap();
        let back: TrialReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn empty_is_an_error() {
        assert!(TrialReport::from_records(&[], false).is_err());
    }
}
