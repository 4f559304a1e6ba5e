//! Labelled graph datasets and their text file format.
//!
//! ```text
//! #eccn-dataset v1 n_max=<k> label_scale=<float>
//! <n>\t<upper-triangle bits>\t<raw ECCN>
//! ...
//! ```

use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{decode_record, encode_record, flatten, FlatEncoding, Graph};

/// One graph with its exact edge clique cover number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub graph: Graph,
    pub eccn: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledDataset {
    pub records: Vec<Record>,
    pub n_max: usize,
    /// Raw labels are divided by this to land in `[0, 1]`.
    pub label_scale: f64,
}

/// `⌊n_max²/4⌋`, an upper bound on the ECCN of any graph with at most
/// `n_max` vertices (at least 1 so the scale is never zero).
pub fn default_label_scale(n_max: usize) -> f64 {
    ((n_max * n_max / 4).max(1)) as f64
}

impl LabeledDataset {
    pub fn new(records: Vec<Record>, n_max: usize) -> Result<Self> {
        if let Some(r) = records.iter().find(|r| r.graph.n() > n_max) {
            return Err(Error::TooLarge {
                n: r.graph.n(),
                n_max,
            });
        }
        Ok(Self {
            records,
            n_max,
            label_scale: default_label_scale(n_max),
        })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn normalized_label(&self, i: usize) -> f64 {
        f64::from(self.records[i].eccn) / self.label_scale
    }

    pub fn encoding(&self, i: usize) -> FlatEncoding {
        flatten(&self.records[i].graph, self.n_max).expect("records fit n_max")
    }

    /// Dataset restricted to `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Self {
        Self {
            records: indices.iter().map(|&i| self.records[i].clone()).collect(),
            n_max: self.n_max,
            label_scale: self.label_scale,
        }
    }

    /// Model inputs and normalised labels.
    pub fn samples(&self) -> Samples {
        Samples {
            inputs: (0..self.len()).map(|i| self.encoding(i).to_input()).collect(),
            labels: (0..self.len()).map(|i| self.normalized_label(i)).collect(),
        }
    }

    pub fn header(&self) -> String {
        format!(
            "#eccn-dataset v1 n_max={} label_scale={}",
            self.n_max, self.label_scale
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        for r in &self.records {
            out.push_str(&encode_record(&r.graph));
            out.push('\t');
            out.push_str(&r.eccn.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "header", "empty dataset file"))?;
        let rest = header
            .strip_prefix("#eccn-dataset v1 ")
            .ok_or_else(|| Error::parse(1, "header", "expected '#eccn-dataset v1 ...'"))?;
        let mut n_max = None;
        let mut label_scale = None;
        for kv in rest.split_whitespace() {
            match kv.split_once('=') {
                Some(("n_max", v)) => {
                    n_max = Some(v.parse::<usize>().map_err(|_| Error::parse(1, "n_max", v))?)
                }
                Some(("label_scale", v)) => {
                    let s = v
                        .parse::<f64>()
                        .ok()
                        .filter(|s| *s > 0.0 && s.is_finite())
                        .ok_or_else(|| Error::parse(1, "label_scale", v))?;
                    label_scale = Some(s);
                }
                _ => return Err(Error::parse(1, "header", format!("unknown field {kv:?}"))),
            }
        }
        let n_max = n_max.ok_or_else(|| Error::parse(1, "n_max", "missing"))?;
        let label_scale = label_scale.ok_or_else(|| Error::parse(1, "label_scale", "missing"))?;
        let mut records = Vec::new();
        for (i, line) in lines {
            let lineno = i + 1;
            if line.is_empty() {
                continue;
            }
            let (graph_part, label) = line
                .rsplit_once('\t')
                .ok_or_else(|| Error::parse(lineno, "record", "expected <n>\\t<bits>\\t<eccn>"))?;
            let graph = decode_record(graph_part, lineno)?;
            if graph.n() > n_max {
                return Err(Error::parse(lineno, "n", format!("{} exceeds n_max {n_max}", graph.n())));
            }
            let eccn = label
                .parse::<u32>()
                .map_err(|_| Error::parse(lineno, "eccn", format!("not an integer: {label:?}")))?;
            records.push(Record { graph, eccn });
        }
        Ok(Self {
            records,
            n_max,
            label_scale,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        crate::harness::write_atomic(path, self.to_text().as_bytes())
    }
}

/// Model-ready inputs with normalised labels.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Samples {
    pub inputs: Vec<Vec<f64>>,
    pub labels: Vec<f64>,
}

impl Samples {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn subset(&self, indices: &[usize]) -> Self {
        Self {
            inputs: indices.iter().map(|&i| self.inputs[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    fn tiny() -> LabeledDataset {
        LabeledDataset::new(
            vec![
                Record { graph: fixtures::triangle(), eccn: 1 },
                Record { graph: fixtures::star3(), eccn: 3 },
            ],
            4,
        )
        .unwrap()
    }

    #[test]
    fn text_format() {
        let d = tiny();
        assert_eq!(
            d.to_text(),
            "#eccn-dataset v1 n_max=4 label_scale=4\n3\t111\t1\n4\t111000\t3\n"
        );
        assert_eq!(LabeledDataset::parse(&d.to_text()).unwrap(), d);
        assert_eq!(d.normalized_label(1), 0.75);
        assert_eq!(d.samples().inputs[0].len(), 16);
    }

    #[test]
    fn label_scale_bounds_labels() {
        assert_eq!(default_label_scale(1), 1.0);
        assert_eq!(default_label_scale(8), 16.0);
        assert_eq!(default_label_scale(7), 12.0);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = [
            ("", 1, "header"),
            ("#other\n", 1, "header"),
            ("#eccn-dataset v1 n_max=4\n", 1, "label_scale"),
            ("#eccn-dataset v1 n_max=4 label_scale=4\n3\t111\n", 2, "record"),
            ("#eccn-dataset v1 n_max=4 label_scale=4\n3\t111\t1\n3\t111\tx\n", 3, "eccn"),
            ("#eccn-dataset v1 n_max=2 label_scale=1\n3\t111\t1\n", 2, "n"),
        ];
        for (text, line, field) in bad {
            match LabeledDataset::parse(text) {
                Err(Error::Parse { line: l, field: f, .. }) => {
                    assert_eq!((l, f), (line, field), "{text:?}")
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
