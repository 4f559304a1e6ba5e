//! Training configuration and its `key=value` file format.
//!
//! ```text
//! # comments and blank lines are ignored
//! model=constrained-rnn
//! learning_rate=0.01
//! batch_size=64
//! max_epochs=2000
//! patience=20
//! seed=0
//! hidden_width=8
//! layers=1
//! ```
//!
//! `hidden_width=0` (the default) means "one unit per vertex", i.e. `n_max`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    /// Single-layer ReLU RNN held inside the bounded parameter set.
    ConstrainedRnn,
    /// Stack of `layers` constrained ReLU RNN layers.
    MultiLayerRnn,
    /// Three hidden dense ReLU layers over the whole adjacency vector.
    Ffn,
    UnconstrainedRnn,
}

impl ModelKind {
    pub const ALL: [ModelKind; 4] = [
        ModelKind::ConstrainedRnn,
        ModelKind::MultiLayerRnn,
        ModelKind::Ffn,
        ModelKind::UnconstrainedRnn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::ConstrainedRnn => "constrained-rnn",
            ModelKind::MultiLayerRnn => "multi-rnn",
            ModelKind::Ffn => "ffn",
            ModelKind::UnconstrainedRnn => "unconstrained-rnn",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown model kind {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub batch_size: usize,
    pub max_epochs: usize,
    pub patience: usize,
    pub seed: u64,
    pub model: ModelKind,
    /// 0 selects `n_max`.
    pub hidden_width: usize,
    pub layers: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.001,
            batch_size: 64,
            max_epochs: 2000,
            patience: 20,
            seed: 0,
            model: ModelKind::ConstrainedRnn,
            hidden_width: 0,
            layers: 1,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad(format!("learning_rate must be > 0, got {}", self.learning_rate));
        }
        if self.batch_size == 0 {
            return bad("batch_size must be >= 1".into());
        }
        if self.max_epochs == 0 {
            return bad("max_epochs must be >= 1".into());
        }
        if self.patience == 0 {
            return bad("patience must be >= 1".into());
        }
        if self.layers == 0 {
            return bad("layers must be >= 1".into());
        }
        Ok(())
    }

    pub fn width_for(&self, n_max: usize) -> usize {
        if self.hidden_width == 0 {
            n_max
        } else {
            self.hidden_width
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "model={}\nlearning_rate={}\nbatch_size={}\nmax_epochs={}\npatience={}\nseed={}\nhidden_width={}\nlayers={}\n",
            self.model,
            self.learning_rate,
            self.batch_size,
            self.max_epochs,
            self.patience,
            self.seed,
            self.hidden_width,
            self.layers
        )
    }

    /// Keys not present keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = TrainConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = i + 1;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(lineno, "config", "expected key=value"))?;
            let (key, value) = (key.trim(), value.trim());
            fn num<T: FromStr>(v: &str, line: usize, field: &'static str) -> Result<T> {
                v.parse().map_err(|_| Error::parse(line, field, format!("{v:?}")))
            }
            match key {
                "learning_rate" => c.learning_rate = num(value, lineno, "learning_rate")?,
                "batch_size" => c.batch_size = num(value, lineno, "batch_size")?,
                "max_epochs" => c.max_epochs = num(value, lineno, "max_epochs")?,
                "patience" => c.patience = num(value, lineno, "patience")?,
                "seed" => c.seed = num(value, lineno, "seed")?,
                "hidden_width" => c.hidden_width = num(value, lineno, "hidden_width")?,
                "layers" => c.layers = num(value, lineno, "layers")?,
                "model" => {
                    c.model = value
                        .parse()
                        .map_err(|_| Error::parse(lineno, "model", format!("{value:?}")))?
                }
                _ => return Err(Error::parse(lineno, "config", format!("unknown key {key:?}"))),
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }
}
