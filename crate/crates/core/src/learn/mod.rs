//! Supervised training on labelled graph datasets.

mod adam;
mod config;
mod dataset;
mod metrics;
mod split;
mod train;

pub use adam::{adam_step, AdamState, BETA1, BETA2, EPSILON};
pub use config::{ModelKind, TrainConfig};
pub use dataset::{default_label_scale, LabeledDataset, Record, Samples};
pub use metrics::{add_label_noise, majority_vote_baseline, mse, MajorityVote};
pub use split::{split_dataset, Split, MIN_SPLIT_RECORDS};
pub use train::{
    build_model, evaluate, gradient, predict_all, sem_select, sem_tolerance, train, EarlyStopping,
    EpochRecord, Observation, SemOutcome, TrainOutcome,
};
