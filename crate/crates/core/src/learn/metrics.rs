//! Loss, baseline predictor and label noise.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

/// Mean squared error, accumulated in index order.
pub fn mse(predictions: &[f64], labels: &[f64]) -> Result<f64> {
    if predictions.len() != labels.len() {
        return Err(Error::Dimension {
            what: "prediction/label count",
            expected: labels.len(),
            got: predictions.len(),
        });
    }
    if labels.is_empty() {
        return Err(Error::InvalidArgument("mse of an empty sample".into()));
    }
    let sum = predictions
        .iter()
        .zip(labels)
        .fold(0.0, |acc, (p, y)| acc + (p - y) * (p - y));
    Ok(sum / labels.len() as f64)
}

/// Constant predictor emitting the most frequent training label.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MajorityVote {
    pub raw: u32,
    pub normalized: f64,
}

/// Ties go to the smallest label.
pub fn majority_vote_baseline(raw_labels: &[u32], label_scale: f64) -> Result<MajorityVote> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &y in raw_labels {
        *counts.entry(y).or_default() += 1;
    }
    let mut best: Option<(u32, usize)> = None;
    for (&y, &c) in &counts {
        if best.is_none_or(|(_, bc)| c > bc) {
            best = Some((y, c));
        }
    }
    let (raw, _) = best.ok_or_else(|| Error::InvalidArgument("majority vote over no labels".into()))?;
    Ok(MajorityVote {
        raw,
        normalized: f64::from(raw) / label_scale,
    })
}

/// `y + N(0, σ)` per label, unclipped.
pub fn add_label_noise(labels: &[f64], sigma: f64, seed: u64) -> Result<Vec<f64>> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidArgument(format!("noise sigma must be >= 0, got {sigma}")));
    }
    if sigma == 0.0 {
        return Ok(labels.to_vec());
    }
    let normal = Normal::new(0.0, sigma).expect("sigma checked");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(labels.iter().map(|y| y + normal.sample(&mut rng)).collect())
}
