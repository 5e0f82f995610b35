use std::collections::BTreeSet;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{HarnessError, Result};
use crate::rng::Rng;

pub const MIN_DOCUMENTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    #[default]
    Csv,
    Jsonl,
}

impl CorpusFormat {
    /// `.jsonl` / `.ndjson` are JSON lines, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl" | "ndjson") => Self::Jsonl,
            _ => Self::Csv,
        }
    }
}

impl FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "jsonl" => Ok(Self::Jsonl),
            _ => Err(format!("unknown corpus format '{s}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledDoc {
    pub id: String,
    pub text: String,
    pub label: String,
}

/// Documents plus a stratified train/test partition.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledCorpus {
    docs: Vec<LabeledDoc>,
    labels: Vec<String>,
    train: Vec<usize>,
    test: Vec<usize>,
}

impl LabeledCorpus {
    /// Splits each label's documents independently: a seeded shuffle, then
    /// `round(ratio · n)` of them (at least one, and at most `n − 1` when
    /// `n ≥ 2`) go to train.
    pub fn new(docs: Vec<LabeledDoc>, ratio: f64, seed: u64) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(HarnessError::Config(format!("split ratio {ratio} outside (0, 1)")));
        }
        if docs.len() < MIN_DOCUMENTS {
            return Err(HarnessError::TooFewDocuments(docs.len()));
        }
        let labels: Vec<String> = docs
            .iter()
            .map(|d| d.label.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if labels.len() < 2 {
            return Err(HarnessError::SingleLabel(labels[0].clone()));
        }
        let mut rng = Rng::new(seed);
        let mut train = Vec::new();
        let mut test = Vec::new();
        for label in &labels {
            let members: Vec<usize> = (0..docs.len()).filter(|&i| &docs[i].label == label).collect();
            let n = members.len();
            let k = ((ratio * n as f64).round() as usize).clamp(1, n.saturating_sub(1).max(1));
            for (rank, pick) in rng.distinct(n, n).into_iter().enumerate() {
                if rank < k {
                    train.push(members[pick]);
                } else {
                    test.push(members[pick]);
                }
            }
        }
        train.sort_unstable();
        test.sort_unstable();
        Ok(Self {
            docs,
            labels,
            train,
            test,
        })
    }

    pub fn docs(&self) -> &[LabeledDoc] {
        &self.docs
    }

    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }

    /// Sorted, distinct.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn train(&self) -> &[usize] {
        &self.train
    }

    pub fn test(&self) -> &[usize] {
        &self.test
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }
}

fn read_csv<R: Read>(reader: R, require_label: bool) -> Result<Vec<LabeledDoc>> {
    let mut rdr = csv::ReaderBuilder::new().flexible(false).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim().eq_ignore_ascii_case(name))
            .ok_or_else(|| HarnessError::MissingColumn(name.to_string()))
    };
    let (id, text) = (column("id")?, column("text")?);
    let label = if require_label { Some(column("label")?) } else { None };
    let mut docs = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            HarnessError::Malformed {
                line,
                detail: e.to_string(),
            }
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |k: usize, name: &str| {
            record.get(k).map(str::to_string).ok_or_else(|| HarnessError::Malformed {
                line,
                detail: format!("missing field '{name}'"),
            })
        };
        let label = match label {
            Some(k) => field(k, "label")?,
            None => String::new(),
        };
        if require_label && label.trim().is_empty() {
            return Err(HarnessError::Malformed {
                line,
                detail: "empty label".into(),
            });
        }
        docs.push(LabeledDoc {
            id: field(id, "id")?,
            text: field(text, "text")?,
            label,
        });
    }
    Ok(docs)
}

fn read_jsonl<R: Read>(reader: R, require_label: bool) -> Result<Vec<LabeledDoc>> {
    let mut docs = Vec::new();
    for (k, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = k as u64 + 1;
        let line = line.map_err(|e| HarnessError::Malformed {
            line: line_no,
            detail: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(&line).map_err(|e| HarnessError::Malformed {
            line: line_no,
            detail: e.to_string(),
        })?;
        let field = |name: &str| match value.get(name) {
            Some(serde_json::Value::String(s)) => Ok(s.clone()),
            Some(serde_json::Value::Number(n)) => Ok(n.to_string()),
            Some(_) => Err(HarnessError::Malformed {
                line: line_no,
                detail: format!("field '{name}' is not a string"),
            }),
            None => Err(HarnessError::Malformed {
                line: line_no,
                detail: format!("missing column '{name}'"),
            }),
        };
        docs.push(LabeledDoc {
            id: field("id")?,
            text: field("text")?,
            label: if require_label { field("label")? } else { String::new() },
        });
    }
    Ok(docs)
}

/// Parses documents from CSV (header with `id,text,label`, any order) or
/// JSON lines with the same fields.
pub fn read_documents<R: Read>(reader: R, format: CorpusFormat) -> Result<Vec<LabeledDoc>> {
    match format {
        CorpusFormat::Csv => read_csv(reader, true),
        CorpusFormat::Jsonl => read_jsonl(reader, true),
    }
}

/// Like [`read_documents`] but the label column is optional and ignored;
/// every returned label is empty.
pub fn read_unlabeled<R: Read>(reader: R, format: CorpusFormat) -> Result<Vec<LabeledDoc>> {
    match format {
        CorpusFormat::Csv => read_csv(reader, false),
        CorpusFormat::Jsonl => read_jsonl(reader, false),
    }
}

pub fn load_corpus(path: impl AsRef<Path>, format: CorpusFormat, ratio: f64, seed: u64) -> Result<LabeledCorpus> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| HarnessError::Input {
        path: path.to_path_buf(),
        source,
    })?;
    LabeledCorpus::new(read_documents(file, format)?, ratio, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn balanced_csv(n: usize) -> String {
        let mut s = String::from("id,text,label\n");
        for i in 0..n {
            s.push_str(&format!("d{i},\"text number {i}, ok\",{}\n", if i % 2 == 0 { "pos" } else { "neg" }));
        }
        s
    }

    #[test]
    fn stratified_split() {
        let docs = read_documents(balanced_csv(20).as_bytes(), CorpusFormat::Csv).unwrap();
        let c = LabeledCorpus::new(docs.clone(), 0.8, 1).unwrap();
        assert_eq!((c.train().len(), c.test().len()), (16, 4));
        for label in c.labels() {
            assert!(c.train().iter().any(|&i| &c.docs()[i].label == label));
            assert!(c.test().iter().any(|&i| &c.docs()[i].label == label));
        }
        let again = LabeledCorpus::new(docs.clone(), 0.8, 1).unwrap();
        assert_eq!(c, again);
        let other = LabeledCorpus::new(docs, 0.8, 2).unwrap();
        assert_ne!(c.train(), other.train());
    }

    #[test]
    fn missing_label_column() {
        let err = read_documents("id,text\n1,a\n".as_bytes(), CorpusFormat::Csv).unwrap_err();
        assert_eq!(err.to_string(), "missing column 'label'");
    }

    #[test]
    fn malformed_rows_report_line() {
        let err = read_documents("id,text,label\n1,a,x\n2,b\n".as_bytes(), CorpusFormat::Csv).unwrap_err();
        assert!(err.to_string().starts_with("line 3:"), "{err}");
        let err = read_documents("{\"id\":\"1\",\"text\":\"a\",\"label\":\"x\"}\n{\"id\":\"2\",\"text\":\"b\"}\n".as_bytes(), CorpusFormat::Jsonl)
            .unwrap_err();
        assert_eq!(err.to_string(), "line 2: missing column 'label'");
    }

    #[test]
    fn size_and_label_checks() {
        let docs = read_documents(balanced_csv(8).as_bytes(), CorpusFormat::Csv).unwrap();
        assert!(matches!(LabeledCorpus::new(docs, 0.8, 1), Err(HarnessError::TooFewDocuments(8))));
        let single: Vec<LabeledDoc> = (0..12)
            .map(|i| LabeledDoc {
                id: i.to_string(),
                text: "x".into(),
                label: "only".into(),
            })
            .collect();
        assert!(matches!(LabeledCorpus::new(single, 0.8, 1), Err(HarnessError::SingleLabel(_))));
    }

    #[test]
    fn unlabeled_reader_ignores_labels() {
        let docs = read_unlabeled("text,id\nhello,1\n".as_bytes(), CorpusFormat::Csv).unwrap();
        assert_eq!(docs[0].id, "1");
        assert_eq!(docs[0].label, "");
    }

    #[test]
    fn jsonl_round_trip() {
        let text: String = (0..12)
            .map(|i| format!("{{\"id\":{i},\"text\":\"t{i}\",\"label\":\"{}\"}}\n", i % 3))
            .collect();
        let docs = read_documents(text.as_bytes(), CorpusFormat::Jsonl).unwrap();
        assert_eq!(docs.len(), 12);
        assert_eq!(docs[4].id, "4");
        let c = LabeledCorpus::new(docs, 0.75, 3).unwrap();
        assert_eq!(c.labels(), &["0", "1", "2"]);
        assert_eq!(c.train().len() + c.test().len(), 12);
    }
}
