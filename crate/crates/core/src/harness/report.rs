//! Training-size and label-noise sweeps as long-form CSV.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::commands::{split_samples, SplitSamples, NOISE_SALT};
use super::manifest::ExperimentManifest;
use crate::eccn::kellerman_cover;
use crate::error::{Error, Result};
use crate::learn::{
    add_label_noise, build_model, evaluate, majority_vote_baseline, mse, train, LabeledDataset,
    ModelKind, TrainConfig,
};

/// Kellerman cover sizes in normalised label space.
pub fn kellerman_predictions(d: &LabeledDataset) -> Vec<f64> {
    d.records
        .iter()
        .map(|r| kellerman_cover(&r.graph).size() as f64 / d.label_scale)
        .collect()
}

/// One training run of a sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellSpec {
    pub model: ModelKind,
    /// Prefix of the seeded training-split shuffle; `None` uses it all.
    pub train_size: Option<usize>,
    pub sigma: f64,
    pub seed: u64,
}

/// Train one cell and return its clean test-split MSE.
pub fn run_cell(data: &SplitSamples, n_max: usize, base: &TrainConfig, cell: &CellSpec) -> Result<f64> {
    let mut train_set = match cell.train_size {
        None => data.train.clone(),
        Some(k) if k > data.train.len() => {
            return Err(Error::InvalidArgument(format!(
                "train size {k} exceeds the training split ({})",
                data.train.len()
            )))
        }
        Some(k) => {
            let mut idx: Vec<usize> = (0..data.train.len()).collect();
            idx.shuffle(&mut ChaCha8Rng::seed_from_u64(cell.seed));
            idx.truncate(k);
            idx.sort_unstable();
            data.train.subset(&idx)
        }
    };
    train_set.labels = add_label_noise(&train_set.labels, cell.sigma, cell.seed ^ NOISE_SALT)?;
    let config = TrainConfig {
        model: cell.model,
        seed: cell.seed,
        ..base.clone()
    };
    let out = train(build_model(&config, n_max)?, &train_set, &data.validation, &config)?;
    evaluate(&out.model, &data.test)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub scenario: String,
    pub model: String,
    /// `train_size`, `sigma` or `reference`.
    pub axis: &'static str,
    pub value: String,
    pub seed: u64,
    pub test_mse: std::result::Result<f64, String>,
}

pub const REPORT_HEADER: &str = "scenario,model,axis,value,seed,test_mse,status";

pub fn report_csv(rows: &[ReportRow]) -> String {
    let mut out = format!("{REPORT_HEADER}\n");
    for r in rows {
        let (mse, status) = match &r.test_mse {
            Ok(m) => (format!("{m:e}"), "ok".to_string()),
            Err(e) => (String::new(), format!("failed: {}", e.replace([',', '\n'], ";"))),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{mse},{status}\n",
            r.scenario, r.model, r.axis, r.value, r.seed
        ));
    }
    out
}

/// Every (model, seed) pair over the manifest's training sizes (clean
/// labels) and noise levels (full training split), plus majority-vote and
/// Kellerman reference rows. Failed cells are kept with their error.
pub fn run_report(
    d: &LabeledDataset,
    m: &ExperimentManifest,
    base: &TrainConfig,
    split_seed: u64,
) -> Result<Vec<ReportRow>> {
    let data = split_samples(d, split_seed)?;
    let scenario = m.scenario.name().to_string();
    let mut rows = Vec::new();
    let raw_train: Vec<u32> = data.split.train.iter().map(|&i| d.records[i].eccn).collect();
    let baseline = majority_vote_baseline(&raw_train, d.label_scale)?;
    let kellerman = kellerman_predictions(&d.subset(&data.split.test));
    for (name, preds) in [
        ("majority-vote", vec![baseline.normalized; data.test.len()]),
        ("kellerman", kellerman),
    ] {
        rows.push(ReportRow {
            scenario: scenario.clone(),
            model: name.into(),
            axis: "reference",
            value: "all".into(),
            seed: split_seed,
            test_mse: mse(&preds, &data.test.labels).map_err(|e| e.to_string()),
        });
    }
    for &model in &m.models {
        for &seed in &m.seeds {
            let cells = m
                .train_sizes
                .iter()
                .map(|&k| ("train_size", k.to_string(), Some(k), 0.0))
                .chain(m.sigmas.iter().map(|&s| ("sigma", s.to_string(), None, s)));
            for (axis, value, train_size, sigma) in cells {
                let cell = CellSpec {
                    model,
                    train_size,
                    sigma,
                    seed,
                };
                rows.push(ReportRow {
                    scenario: scenario.clone(),
                    model: model.name().into(),
                    axis,
                    value,
                    seed,
                    test_mse: run_cell(&data, d.n_max, base, &cell).map_err(|e| e.to_string()),
                });
            }
        }
    }
    Ok(rows)
}
