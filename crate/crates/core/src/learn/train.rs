//! Minibatch training with Adam and validation early stopping.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::adam::{adam_step, AdamState};
use super::config::{ModelKind, TrainConfig};
use super::dataset::Samples;
use super::metrics::mse;
use crate::error::{Error, Result};
use crate::rnn::{init_ffn, init_multi, init_single, Mode, Model, Network, ParamBlocks};

/// Freshly initialised model for `config`, reading graphs of up to `n_max`
/// vertices.
pub fn build_model(config: &TrainConfig, n_max: usize) -> Result<Model> {
    config.validate()?;
    let width = config.width_for(n_max);
    let seed = config.seed;
    let (network, mode) = match config.model {
        ModelKind::ConstrainedRnn => (
            Network::Single(init_single(width, seed, Mode::Constrained)),
            Mode::Constrained,
        ),
        ModelKind::UnconstrainedRnn => (
            Network::Single(init_single(width, seed, Mode::Unconstrained)),
            Mode::Unconstrained,
        ),
        ModelKind::MultiLayerRnn => (
            Network::Multi(init_multi(&vec![width; config.layers], seed, Mode::Constrained)),
            Mode::Constrained,
        ),
        ModelKind::Ffn => (
            Network::Ffn(init_ffn(n_max * n_max, [width; 3], seed)),
            Mode::Unconstrained,
        ),
    };
    Model::new(network, mode, n_max)
}

fn check_inputs(model: &Model, s: &Samples) -> Result<()> {
    if s.inputs.len() != s.labels.len() {
        return Err(Error::Dimension {
            what: "sample input/label count",
            expected: s.labels.len(),
            got: s.inputs.len(),
        });
    }
    for x in &s.inputs {
        if x.len() != model.input_len() {
            return Err(Error::Dimension {
                what: "model input",
                expected: model.input_len(),
                got: x.len(),
            });
        }
    }
    Ok(())
}

/// Gradient of the batch MSE `(1/B)·Σ(f(xᵢ) − yᵢ)²` and the loss itself.
pub fn gradient(model: &Model, inputs: &[&[f64]], labels: &[f64]) -> Result<(Network, f64)> {
    if inputs.is_empty() {
        return Err(Error::InvalidArgument("gradient of an empty batch".into()));
    }
    if inputs.len() != labels.len() {
        return Err(Error::Dimension {
            what: "batch input/label count",
            expected: labels.len(),
            got: inputs.len(),
        });
    }
    if let Some(x) = inputs.iter().find(|x| x.len() != model.input_len()) {
        return Err(Error::Dimension {
            what: "model input",
            expected: model.input_len(),
            got: x.len(),
        });
    }
    Ok(batch_gradient(model, inputs, labels))
}

fn batch_gradient(model: &Model, inputs: &[&[f64]], labels: &[f64]) -> (Network, f64) {
    let scale = 2.0 / inputs.len() as f64;
    let mut grad = model.network.zeros_like();
    let mut loss = 0.0;
    for (x, &y) in inputs.iter().zip(labels) {
        let f = model.backward(x, |f| scale * (f - y), &mut grad);
        loss += (f - y) * (f - y);
    }
    (grad, loss / inputs.len() as f64)
}

/// Predictions in input order; forward passes fan out over the rayon pool.
pub fn predict_all(model: &Model, inputs: &[Vec<f64>]) -> Result<Vec<f64>> {
    inputs.par_iter().map(|x| model.predict_input(x)).collect()
}

pub fn evaluate(model: &Model, s: &Samples) -> Result<f64> {
    mse(&predict_all(model, &s.inputs)?, &s.labels)
}

/// Patience-based stopping on a validation loss sequence.
#[derive(Clone, Debug)]
pub struct EarlyStopping {
    patience: usize,
    best: f64,
    since_best: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Observation {
    pub improved: bool,
    pub stop: bool,
}

impl EarlyStopping {
    pub fn new(patience: usize) -> Self {
        Self {
            patience,
            best: f64::INFINITY,
            since_best: 0,
        }
    }

    pub fn best(&self) -> f64 {
        self.best
    }

    /// Only a strict decrease counts as an improvement.
    pub fn observe(&mut self, val_loss: f64) -> Observation {
        let improved = val_loss < self.best;
        if improved {
            self.best = val_loss;
            self.since_best = 0;
        } else {
            self.since_best += 1;
        }
        Observation {
            improved,
            stop: self.since_best >= self.patience,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpochRecord {
    pub epoch: usize,
    pub train_mse: f64,
    pub val_mse: f64,
    pub best: bool,
}

#[derive(Clone, Debug)]
pub struct TrainOutcome {
    /// Parameters from the best validation epoch.
    pub model: Model,
    pub history: Vec<EpochRecord>,
    pub best_epoch: usize,
}

impl TrainOutcome {
    pub fn best_record(&self) -> &EpochRecord {
        &self.history[self.best_epoch - 1]
    }

    pub fn history_csv(&self) -> String {
        let mut out = String::from("epoch,train_mse,val_mse,best_flag\n");
        for r in &self.history {
            out.push_str(&format!(
                "{},{:e},{:e},{}\n",
                r.epoch,
                r.train_mse,
                r.val_mse,
                u8::from(r.best)
            ));
        }
        out
    }
}

/// Train `model` on `train`, early-stopping on `val`.
///
/// Batches are drawn from a per-epoch shuffle seeded by `config.seed`.
/// Constrained models are projected after every optimizer step.
pub fn train(model: Model, train: &Samples, val: &Samples, config: &TrainConfig) -> Result<TrainOutcome> {
    config.validate()?;
    if train.is_empty() || val.is_empty() {
        return Err(Error::InvalidArgument("training and validation sets must be nonempty".into()));
    }
    check_inputs(&model, train)?;
    check_inputs(&model, val)?;

    let mut model = model;
    model.project();
    let mut state = AdamState::new(&model.network);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(1);
    let mut order: Vec<usize> = (0..train.len()).collect();
    let mut stopper = EarlyStopping::new(config.patience);
    let mut history = Vec::new();
    let mut best_model = model.clone();
    let mut best_epoch = 0;

    for epoch in 1..=config.max_epochs {
        order.shuffle(&mut rng);
        for batch in order.chunks(config.batch_size) {
            let xs: Vec<&[f64]> = batch.iter().map(|&i| train.inputs[i].as_slice()).collect();
            let ys: Vec<f64> = batch.iter().map(|&i| train.labels[i]).collect();
            let (grad, loss) = batch_gradient(&model, &xs, &ys);
            if !loss.is_finite() {
                return Err(Error::Diverged { epoch });
            }
            adam_step(&mut model.network, &grad, &mut state, config.learning_rate)?;
            model.project();
        }
        let train_mse = evaluate(&model, train)?;
        let val_mse = evaluate(&model, val)?;
        if !train_mse.is_finite() || !val_mse.is_finite() {
            return Err(Error::Diverged { epoch });
        }
        let obs = stopper.observe(val_mse);
        if obs.improved {
            best_model = model.clone();
            best_epoch = epoch;
        }
        history.push(EpochRecord {
            epoch,
            train_mse,
            val_mse,
            best: obs.improved,
        });
        if obs.stop {
            break;
        }
    }
    Ok(TrainOutcome {
        model: best_model,
        history,
        best_epoch,
    })
}

/// Tolerance `8/(3√m)` of the sample-error-minimisation rule for a sample
/// of size `m`.
pub fn sem_tolerance(m: usize) -> f64 {
    8.0 / (3.0 * (m as f64).sqrt())
}

#[derive(Clone, Debug)]
pub struct SemOutcome {
    /// The run started from `config.seed`.
    pub outcome: TrainOutcome,
    pub train_mse: f64,
    /// Lowest final train MSE over all restarts.
    pub best_train_mse: f64,
    pub tolerance: f64,
    pub attained: bool,
}

/// Trains with `config` and `restarts − 1` further seeds, then reports whether
/// the primary run is within the SEM tolerance of the best run found.
pub fn sem_select(
    n_max: usize,
    train_set: &Samples,
    val: &Samples,
    config: &TrainConfig,
    restarts: usize,
) -> Result<SemOutcome> {
    if restarts == 0 {
        return Err(Error::InvalidArgument("restart budget must be >= 1".into()));
    }
    if train_set.is_empty() {
        return Err(Error::InvalidArgument("SEM needs a sample of size >= 1".into()));
    }
    let run = |seed: u64| -> Result<(TrainOutcome, f64)> {
        let cfg = TrainConfig { seed, ..config.clone() };
        let out = train(build_model(&cfg, n_max)?, train_set, val, &cfg)?;
        let e = evaluate(&out.model, train_set)?;
        Ok((out, e))
    };
    let (outcome, train_mse) = run(config.seed)?;
    let mut best_train_mse = train_mse;
    for k in 1..restarts as u64 {
        let (_, e) = run(config.seed.wrapping_add(k))?;
        best_train_mse = best_train_mse.min(e);
    }
    let tolerance = sem_tolerance(train_set.len());
    Ok(SemOutcome {
        outcome,
        train_mse,
        best_train_mse,
        tolerance,
        attained: train_mse - best_train_mse <= tolerance,
    })
}
