use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::manifest::ExperimentManifest;
use super::report::kellerman_predictions;
use super::write_atomic;
use crate::bounds::{BoundReport, RnnShape};
use crate::eccn::{exact_eccn, kellerman_cover, verify_cover, ExactOutcome};
use crate::error::{Error, Result};
use crate::graph::{decode_record, er_generate, Graph};
use crate::learn::{
    add_label_noise, build_model, majority_vote_baseline, mse, predict_all, split_dataset, train,
    LabeledDataset, Record, Samples, Split, TrainConfig,
};
use crate::rnn::{save_checkpoint, Model};

/// Label-noise draws use the training seed mixed with this constant so they
/// do not replay the initialisation stream.
pub(crate) const NOISE_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

#[derive(Clone, Debug)]
pub struct Generated {
    pub dataset: LabeledDataset,
    pub requested: usize,
    /// Records whose exact solve ran out of budget.
    pub dropped: usize,
}

impl Generated {
    pub fn summary(&self) -> String {
        format!(
            "labelled {} of {} graphs; dropped {} (solver budget exhausted)",
            self.dataset.len(),
            self.requested,
            self.dropped
        )
    }
}

fn draw_graph(m: &ExperimentManifest, index: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(m.seed.wrapping_add(index as u64));
    let n = rng.random_range(m.n_min..=m.n_max);
    let p = m.p_values[rng.random_range(0..m.p_values.len())];
    er_generate(n, p, rng.random()).expect("manifest validated")
}

fn label(g: Graph, budget: Option<u64>) -> Option<Record> {
    match exact_eccn(&g, budget) {
        ExactOutcome::Solved { eccn, witness } => {
            assert!(
                verify_cover(&g, &witness).is_valid(),
                "exact solver returned an invalid witness"
            );
            Some(Record {
                graph: g,
                eccn: eccn as u32,
            })
        }
        ExactOutcome::Unsolved { .. } => None,
    }
}

/// Draw and exactly label `m.samples` graphs on a pool of `workers` threads
/// (0 picks the machine's parallelism). Output does not depend on `workers`.
pub fn generate_dataset(m: &ExperimentManifest, workers: usize) -> Result<Generated> {
    m.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))?;
    let labelled: Vec<Option<Record>> = pool.install(|| {
        (0..m.samples)
            .into_par_iter()
            .map(|i| label(draw_graph(m, i), m.budget))
            .collect()
    });
    let dropped = labelled.iter().filter(|r| r.is_none()).count();
    let records: Vec<Record> = labelled.into_iter().flatten().collect();
    if records.is_empty() {
        return Err(Error::BudgetExhausted { records: m.samples });
    }
    Ok(Generated {
        dataset: LabeledDataset::new(records, m.n_max)?,
        requested: m.samples,
        dropped,
    })
}

pub fn cmd_generate(m: &ExperimentManifest, workers: usize, out: &Path) -> Result<Generated> {
    let g = generate_dataset(m, workers)?;
    g.dataset.save(out)?;
    Ok(g)
}

/// Graph records, one per line, as `<n>\t<bits>`. Further tab-separated
/// fields are ignored so dataset files can be read directly; lines starting
/// with `#` are skipped.
pub fn read_graphs(text: &str) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let record = match line.match_indices('\t').nth(1) {
            Some((cut, _)) => &line[..cut],
            None => line,
        };
        graphs.push(decode_record(record, i + 1)?);
    }
    Ok(graphs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    Exact,
    Kellerman,
}

impl SolveMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolveMethod::Exact => "exact",
            SolveMethod::Kellerman => "kellerman",
        }
    }
}

/// One row per graph: `graph_id,n,method,cover_size,witness,valid`.
///
/// Unsolved exact rows leave size and witness empty and report
/// `budget_exhausted` as validity.
pub fn solve_csv(graphs: &[Graph], method: SolveMethod, budget: Option<u64>) -> String {
    let mut out = String::from("graph_id,n,method,cover_size,witness,valid\n");
    for (id, g) in graphs.iter().enumerate() {
        let cover = match method {
            SolveMethod::Exact => match exact_eccn(g, budget) {
                ExactOutcome::Solved { witness, .. } => Some(witness),
                ExactOutcome::Unsolved { .. } => None,
            },
            SolveMethod::Kellerman => Some(kellerman_cover(g)),
        };
        let (size, witness, valid) = match cover {
            Some(c) => (
                c.size().to_string(),
                format!("\"{c}\""),
                verify_cover(g, &c).is_valid().to_string(),
            ),
            None => (String::new(), String::new(), "budget_exhausted".into()),
        };
        out.push_str(&format!(
            "{id},{},{},{size},{witness},{valid}\n",
            g.n(),
            method.name()
        ));
    }
    out
}

pub fn cmd_solve(input: &Path, method: SolveMethod, budget: Option<u64>) -> Result<String> {
    let text = std::fs::read_to_string(input).map_err(|e| Error::io(input, e))?;
    Ok(solve_csv(&read_graphs(&text)?, method, budget))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundsRequest {
    /// Size-adaptive network on graphs with at most `n` vertices.
    Graph { n: usize, d: usize },
    Shape { widths: Vec<usize>, b: usize },
}

pub fn bounds_output(req: &BoundsRequest, eps: f64, delta: f64, csv: bool) -> Result<String> {
    let report = match req {
        BoundsRequest::Graph { n, d } => BoundReport::for_graph(*n, *d, eps, delta)?,
        BoundsRequest::Shape { widths, b } => {
            BoundReport::for_shape(RnnShape::new(widths.clone(), *b)?, eps, delta)?
        }
    };
    Ok(if csv {
        format!("{}\n{}\n", BoundReport::CSV_HEADER, report.csv_row())
    } else {
        report.to_text()
    })
}

/// A dataset's seeded split, materialised as model inputs.
#[derive(Clone, Debug)]
pub struct SplitSamples {
    pub split: Split,
    pub train: Samples,
    pub validation: Samples,
    pub test: Samples,
}

pub fn split_samples(d: &LabeledDataset, split_seed: u64) -> Result<SplitSamples> {
    let split = split_dataset(d, split_seed)?;
    let all = d.samples();
    Ok(SplitSamples {
        train: all.subset(&split.train),
        validation: all.subset(&split.validation),
        test: all.subset(&split.test),
        split,
    })
}

#[derive(Clone, Debug)]
pub struct TrainSummary {
    pub epochs: usize,
    pub best_epoch: usize,
    pub train_mse: f64,
    pub val_mse: f64,
    pub checkpoint: PathBuf,
    pub history: PathBuf,
}

/// Train on the seeded split of `d`, writing `model.ckpt` and `history.csv`
/// into `out_dir`. `sigma > 0` perturbs the training labels only.
pub fn cmd_train(
    d: &LabeledDataset,
    config: &TrainConfig,
    split_seed: u64,
    sigma: f64,
    out_dir: &Path,
) -> Result<TrainSummary> {
    let mut s = split_samples(d, split_seed)?;
    s.train.labels = add_label_noise(&s.train.labels, sigma, config.seed ^ NOISE_SALT)?;
    let model = build_model(config, d.n_max)?;
    let out = train(model, &s.train, &s.validation, config)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let checkpoint = out_dir.join("model.ckpt");
    let history = out_dir.join("history.csv");
    save_checkpoint(&out.model, &checkpoint)?;
    write_atomic(&history, out.history_csv().as_bytes())?;
    let best = out.best_record();
    Ok(TrainSummary {
        epochs: out.history.len(),
        best_epoch: out.best_epoch,
        train_mse: best.train_mse,
        val_mse: best.val_mse,
        checkpoint,
        history,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalRow {
    pub predictor: String,
    /// In normalised label space.
    pub test_mse: f64,
    /// `test_mse · label_scale²`, in squared ECCN units.
    pub test_mse_raw: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    pub rows: Vec<EvalRow>,
}

impl EvalReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("predictor,test_mse,test_mse_raw,n_test\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:e},{:e},{}\n",
                r.predictor, r.test_mse, r.test_mse_raw, r.count
            ));
        }
        out
    }

    pub fn get(&self, predictor: &str) -> Option<&EvalRow> {
        self.rows.iter().find(|r| r.predictor == predictor)
    }
}

/// Test-split MSE of `model`, the majority vote of the training labels and
/// the Kellerman heuristic.
pub fn cmd_eval(d: &LabeledDataset, model: &Model, split_seed: u64) -> Result<EvalReport> {
    if model.n_max != d.n_max {
        return Err(Error::Dimension {
            what: "checkpoint n_max vs dataset n_max",
            expected: d.n_max,
            got: model.n_max,
        });
    }
    let s = split_samples(d, split_seed)?;
    let raw_train: Vec<u32> = s.split.train.iter().map(|&i| d.records[i].eccn).collect();
    let baseline = majority_vote_baseline(&raw_train, d.label_scale)?;
    let test_set = d.subset(&s.split.test);
    let count = s.test.len();
    let row = |predictor: &str, preds: &[f64]| -> Result<EvalRow> {
        let m = mse(preds, &s.test.labels)?;
        Ok(EvalRow {
            predictor: predictor.to_string(),
            test_mse: m,
            test_mse_raw: m * d.label_scale * d.label_scale,
            count,
        })
    };
    Ok(EvalReport {
        rows: vec![
            row(model.kind_name(), &predict_all(model, &s.test.inputs)?)?,
            row("majority-vote", &vec![baseline.normalized; count])?,
            row("kellerman", &kellerman_predictions(&test_set))?,
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{encode_record, fixtures};
    use crate::harness::Scenario;

    fn small_manifest() -> ExperimentManifest {
        ExperimentManifest {
            n_min: 4,
            n_max: 6,
            samples: 100,
            p_values: vec![0.5],
            scenario: Scenario::Medium,
            ..ExperimentManifest::default()
        }
    }

    #[test]
    fn generated_labels_are_exact() {
        let g = generate_dataset(&small_manifest(), 2).unwrap();
        assert_eq!(g.dataset.len(), 100);
        assert_eq!(g.dropped, 0);
        assert_eq!(g.dataset.n_max, 6);
        for r in &g.dataset.records {
            assert!((4..=6).contains(&r.graph.n()));
            assert_eq!(exact_eccn(&r.graph, None).eccn(), Some(r.eccn as usize));
        }
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let m = small_manifest();
        let a = generate_dataset(&m, 1).unwrap().dataset.to_text();
        let b = generate_dataset(&m, 8).unwrap().dataset.to_text();
        assert_eq!(a, b);
    }

    #[test]
    fn edgeless_and_exhausted() {
        let m = ExperimentManifest {
            p_values: vec![0.0],
            ..small_manifest()
        };
        assert!(generate_dataset(&m, 1).unwrap().dataset.records.iter().all(|r| r.eccn == 0));
        let m = ExperimentManifest {
            p_values: vec![0.5],
            budget: Some(0),
            ..small_manifest()
        };
        let g = generate_dataset(&m, 1).unwrap();
        assert!(g.dropped > 0);
        assert_eq!(g.dataset.len() + g.dropped, 100);
        let m = ExperimentManifest {
            n_min: 10,
            n_max: 10,
            samples: 10,
            budget: Some(0),
            ..small_manifest()
        };
        match generate_dataset(&m, 1) {
            Err(e @ Error::BudgetExhausted { .. }) => assert_eq!(e.exit_code(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn solve_rows() {
        let text = format!(
            "#eccn-dataset v1 n_max=8 label_scale=16\n{}\t3\n{}\n",
            encode_record(&fixtures::figure_left()),
            encode_record(&fixtures::die())
        );
        let graphs = read_graphs(&text).unwrap();
        let csv = solve_csv(&graphs, SolveMethod::Exact, None);
        let rows: Vec<&str> = csv.lines().collect();
        assert_eq!(rows[0], "graph_id,n,method,cover_size,witness,valid");
        assert!(rows[1].starts_with("0,7,exact,3,\"{"), "{}", rows[1]);
        assert!(rows[1].ends_with(",true"));
        assert!(rows[2].starts_with("1,8,exact,5,"));
        let k = solve_csv(&graphs, SolveMethod::Kellerman, None);
        assert!(k.lines().skip(1).all(|r| r.ends_with(",true")));
        let unsolved = solve_csv(&graphs[1..], SolveMethod::Exact, Some(0));
        assert_eq!(unsolved.lines().nth(1), Some("0,8,exact,,,budget_exhausted"));
    }

    #[test]
    fn read_graphs_reports_lines() {
        match read_graphs("3\t111\n\n3\t11\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bounds_shape_mode() {
        let text = bounds_output(&BoundsRequest::Shape { widths: vec![1], b: 1 }, 0.1, 0.1, false).unwrap();
        assert!(text.lines().any(|l| l.starts_with("parameters W") && l.ends_with(" 5")));
        assert!(text.lines().any(|l| l.starts_with("operations T") && l.ends_with(" 13")));
        let csv = bounds_output(&BoundsRequest::Graph { n: 10, d: 1 }, 0.1, 0.1, true).unwrap();
        assert!(csv.starts_with(BoundReport::CSV_HEADER));
        assert!(bounds_output(&BoundsRequest::Graph { n: 10, d: 1 }, 0.0, 0.1, true).is_err());
    }
}
