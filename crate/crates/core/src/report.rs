//! Machine-readable reports. Every row carries the corpus hash and the
//! seed, and the full run configuration is serialized into the header, so
//! a report is reproducible byte for byte from its own metadata.

use std::fmt;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::graph::{MultiGraph, Partition};

/// Everything that influences a report's payload.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub corpus: String,
    pub slices: Option<String>,
    pub separator: char,
    pub seed: u64,
    pub format: String,
    pub walk_length: usize,
    pub max_levels: Option<usize>,
    pub normalized: bool,
    pub conventional_closeness: bool,
    pub local_clustering: bool,
    pub restrict_component: bool,
    /// Convergence threshold of eigenvector centrality (fixed).
    pub eigenvector_tolerance: f64,
    /// Convergence threshold of spectral bisection (fixed).
    pub spectral_tolerance: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            corpus: String::new(),
            slices: None,
            separator: '\t',
            seed: 0,
            format: "csv".into(),
            walk_length: 4,
            max_levels: None,
            normalized: false,
            conventional_closeness: false,
            local_clustering: false,
            restrict_component: false,
            eigenvector_tolerance: 1e-10,
            spectral_tolerance: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RowValue {
    Int(i64),
    Float(f64),
    Text(String),
}

impl fmt::Display for RowValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowValue::Int(v) => write!(f, "{v}"),
            RowValue::Float(v) => write!(f, "{v}"),
            RowValue::Text(v) => write!(f, "{v}"),
        }
    }
}

/// One result: a metric of some subject within a slice.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub slice: String,
    pub metric: String,
    pub subject: String,
    pub value: RowValue,
}

impl ReportRow {
    pub fn new(
        slice: impl Into<String>,
        metric: impl Into<String>,
        subject: impl Into<String>,
        value: RowValue,
    ) -> Self {
        ReportRow {
            slice: slice.into(),
            metric: metric.into(),
            subject: subject.into(),
            value,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub corpus_hash: String,
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn new(config: RunConfig, corpus_hash: String) -> Self {
        Report {
            config,
            corpus_hash,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: ReportRow) {
        self.rows.push(row);
    }

    pub fn write_csv(&self, w: &mut impl Write) -> io::Result<()> {
        let config = serde_json::to_string(&self.config)?;
        writeln!(w, "# config = {config}")?;
        writeln!(w, "# corpus_hash = {}", self.corpus_hash)?;
        let mut writer = csv::Writer::from_writer(w);
        writer.write_record(["slice", "metric", "subject", "value", "corpus_hash", "seed"])?;
        for row in &self.rows {
            writer.write_record([
                row.slice.as_str(),
                row.metric.as_str(),
                row.subject.as_str(),
                &row.value.to_string(),
                &self.corpus_hash,
                &self.config.seed.to_string(),
            ])?;
        }
        writer.flush()
    }

    pub fn write_json(&self, w: &mut impl Write) -> io::Result<()> {
        #[derive(Serialize)]
        struct JsonRow<'a> {
            #[serde(flatten)]
            row: &'a ReportRow,
            corpus_hash: &'a str,
            seed: u64,
        }
        #[derive(Serialize)]
        struct JsonReport<'a> {
            config: &'a RunConfig,
            corpus_hash: &'a str,
            rows: Vec<JsonRow<'a>>,
        }
        let doc = JsonReport {
            config: &self.config,
            corpus_hash: &self.corpus_hash,
            rows: self
                .rows
                .iter()
                .map(|row| JsonRow {
                    row,
                    corpus_hash: &self.corpus_hash,
                    seed: self.config.seed,
                })
                .collect(),
        };
        serde_json::to_writer_pretty(&mut *w, &doc)?;
        writeln!(w)
    }
}

/// Persisted partition, keyed by (corpus hash, slice, method, seed).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionFile {
    pub config: RunConfig,
    pub corpus_hash: String,
    pub slice: String,
    pub method: String,
    pub seed: u64,
    /// Community member names, communities in id order.
    pub communities: Vec<Vec<String>>,
}

impl PartitionFile {
    pub fn file_name(corpus_hash: &str, slice: &str, method: &str, seed: u64) -> String {
        format!("{corpus_hash}-{slice}-{method}-{seed}.json")
    }

    pub fn from_partition(
        config: &RunConfig,
        corpus_hash: &str,
        slice: &str,
        method: &str,
        g: &MultiGraph,
        p: &Partition,
    ) -> PartitionFile {
        let communities = p
            .communities()
            .into_iter()
            .map(|members| members.into_iter().map(|v| g.label(v).to_string()).collect())
            .collect();
        PartitionFile {
            config: config.clone(),
            corpus_hash: corpus_hash.to_string(),
            slice: slice.to_string(),
            method: method.to_string(),
            seed: config.seed,
            communities,
        }
    }

    /// Map the stored community lists back onto a graph's vertices. Every
    /// vertex of the graph must appear exactly once.
    pub fn to_partition(&self, g: &MultiGraph) -> Result<Partition, crate::Error> {
        let mut labels = vec![u32::MAX; g.order()];
        for (c, members) in self.communities.iter().enumerate() {
            for name in members {
                let v = g.vertex(name).ok_or_else(|| {
                    crate::Error::Data(format!(
                        "persisted partition names unknown vertex {name:?}"
                    ))
                })?;
                if labels[v as usize] != u32::MAX {
                    return Err(crate::Error::Data(format!(
                        "persisted partition assigns {name:?} twice"
                    )));
                }
                labels[v as usize] = c as u32;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == u32::MAX) {
            return Err(crate::Error::Data(format!(
                "persisted partition misses vertex {:?}",
                g.label(v as u32)
            )));
        }
        Ok(Partition::from_labels(&labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> Report {
        let mut report = Report::new(RunConfig::default(), "deadbeef00112233".into());
        report.push(ReportRow::new("s1", "order", "graph", RowValue::Int(11)));
        report.push(ReportRow::new(
            "s1",
            "clustering",
            "graph",
            RowValue::Float(0.77),
        ));
        report.push(ReportRow::new(
            "s1",
            "degree",
            "Dr. Green, MD",
            RowValue::Float(1.5),
        ));
        report
    }

    #[test]
    fn csv_has_header_config_and_quoting() {
        let mut out = Vec::new();
        sample_report().write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("# config = {"));
        assert!(text.contains("slice,metric,subject,value,corpus_hash,seed"));
        assert!(text.contains("\"Dr. Green, MD\""));
        assert!(text.contains("s1,order,graph,11,deadbeef00112233,0"));
    }

    #[test]
    fn json_rows_carry_hash_and_seed() {
        let mut out = Vec::new();
        sample_report().write_json(&mut out).unwrap();
        let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(doc["rows"][0]["corpus_hash"], "deadbeef00112233");
        assert_eq!(doc["rows"][0]["seed"], 0);
        assert_eq!(doc["config"]["walk_length"], 4);
    }

    #[test]
    fn byte_identical_between_renders() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        sample_report().write_csv(&mut a).unwrap();
        sample_report().write_csv(&mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn partition_file_roundtrip() {
        let mut g = MultiGraph::new();
        g.add_interaction("a", "b").unwrap();
        g.add_interaction("c", "d").unwrap();
        let p = Partition::from_labels(&[0u32, 0, 1, 1]);
        let file = PartitionFile::from_partition(
            &RunConfig::default(),
            "hash",
            "AE",
            "multilevel",
            &g,
            &p,
        );
        let back = file.to_partition(&g).unwrap();
        assert_eq!(back, p);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: PartitionFile = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.to_partition(&g).unwrap(), p);
    }

    #[test]
    fn partition_file_detects_coverage_errors() {
        let mut g = MultiGraph::new();
        g.add_interaction("a", "b").unwrap();
        let file = PartitionFile {
            config: RunConfig::default(),
            corpus_hash: "h".into(),
            slice: "s".into(),
            method: "m".into(),
            seed: 0,
            communities: vec![vec!["a".into()]],
        };
        assert!(file.to_partition(&g).is_err());
    }
}
