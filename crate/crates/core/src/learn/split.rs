//! Stratified train/validation/test partition.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::dataset::LabeledDataset;
use crate::error::{Error, Result};

/// Indices into the source dataset, each list ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub train: Vec<usize>,
    pub validation: Vec<usize>,
    pub test: Vec<usize>,
}

pub const MIN_SPLIT_RECORDS: usize = 10;

/// 70/10/20 partition, stratified by vertex count.
///
/// Each vertex-count stratum is shuffled independently and cut at the
/// rounded 70% and 80% marks.
pub fn split_dataset(d: &LabeledDataset, seed: u64) -> Result<Split> {
    if d.len() < MIN_SPLIT_RECORDS {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_SPLIT_RECORDS} records to split, got {}",
            d.len()
        )));
    }
    let mut strata: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, r) in d.records.iter().enumerate() {
        strata.entry(r.graph.n()).or_default().push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut split = Split {
        train: Vec::new(),
        validation: Vec::new(),
        test: Vec::new(),
    };
    for members in strata.values_mut() {
        members.shuffle(&mut rng);
        let g = members.len();
        let train_end = (7 * g + 5) / 10;
        let val_end = (8 * g + 5) / 10;
        split.train.extend_from_slice(&members[..train_end]);
        split.validation.extend_from_slice(&members[train_end..val_end]);
        split.test.extend_from_slice(&members[val_end..]);
    }
    split.train.sort_unstable();
    split.validation.sort_unstable();
    split.test.sort_unstable();
    Ok(split)
}
