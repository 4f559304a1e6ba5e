//! Experiment manifests in the same `key=value` format as training configs.
//!
//! ```text
//! scenario=mixed
//! p=0.1,0.5,0.9
//! n_min=6
//! n_max=10
//! samples=20000
//! seed=0
//! budget=10000000
//! sigmas=0,0.05,0.1
//! train_sizes=500,1000,2000,4000
//! seeds=0
//! models=constrained-rnn
//! ```

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::learn::ModelKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    Sparse,
    Medium,
    Dense,
    Mixed,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Sparse => "sparse",
            Scenario::Medium => "medium",
            Scenario::Dense => "dense",
            Scenario::Mixed => "mixed",
        }
    }

    pub fn default_p(self) -> Vec<f64> {
        match self {
            Scenario::Sparse => vec![0.1],
            Scenario::Medium => vec![0.5],
            Scenario::Dense => vec![0.9],
            Scenario::Mixed => vec![0.1, 0.5, 0.9],
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Scenario::Sparse, Scenario::Medium, Scenario::Dense, Scenario::Mixed]
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown scenario {s:?}")))
    }
}

/// Default largest vertex count accepted for exact labelling.
pub const DEFAULT_SIZE_CAP: usize = 10;
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentManifest {
    pub scenario: Scenario,
    /// Each record draws its edge probability uniformly from this list.
    pub p_values: Vec<f64>,
    pub n_min: usize,
    pub n_max: usize,
    pub samples: usize,
    /// Record `i` is generated from seed `seed + i`.
    pub seed: u64,
    /// Exact-solver clique selections per record; `None` is unlimited.
    pub budget: Option<u64>,
    pub size_cap: usize,
    pub sigmas: Vec<f64>,
    pub train_sizes: Vec<usize>,
    /// Training seeds for report sweeps.
    pub seeds: Vec<u64>,
    pub models: Vec<ModelKind>,
}

impl Default for ExperimentManifest {
    fn default() -> Self {
        Self {
            scenario: Scenario::Mixed,
            p_values: Scenario::Mixed.default_p(),
            n_min: 6,
            n_max: 10,
            samples: 20_000,
            seed: 0,
            budget: Some(DEFAULT_BUDGET),
            size_cap: DEFAULT_SIZE_CAP,
            sigmas: vec![0.0, 0.05, 0.1],
            train_sizes: vec![500, 1000, 2000, 4000],
            seeds: vec![0],
            models: vec![ModelKind::ConstrainedRnn],
        }
    }
}

fn list<T: FromStr>(v: &str, line: usize, field: &'static str) -> Result<Vec<T>> {
    v.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::parse(line, field, format!("{s:?}"))))
        .collect()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl ExperimentManifest {
    /// Default manifest for `scenario` with its edge probabilities.
    pub fn for_scenario(scenario: Scenario) -> Self {
        Self {
            scenario,
            p_values: scenario.default_p(),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.p_values.is_empty() {
            return bad("at least one edge probability is required".into());
        }
        if let Some(p) = self.p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::Probability(*p));
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return bad(format!("invalid size range {}..={}", self.n_min, self.n_max));
        }
        if self.n_max > self.size_cap {
            return bad(format!(
                "n_max {} exceeds the exact-labelling cap {} (raise size_cap to override)",
                self.n_max, self.size_cap
            ));
        }
        if self.samples < 10 {
            return bad(format!("sample count must be >= 10, got {}", self.samples));
        }
        if let Some(s) = self.sigmas.iter().find(|s| !(**s >= 0.0)) {
            return bad(format!("noise sigma must be >= 0, got {s}"));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        format!(
            "scenario={}\np={}\nn_min={}\nn_max={}\nsamples={}\nseed={}\nbudget={}\nsize_cap={}\nsigmas={}\ntrain_sizes={}\nseeds={}\nmodels={}\n",
            self.scenario,
            join(&self.p_values),
            self.n_min,
            self.n_max,
            self.samples,
            self.seed,
            self.budget.map_or("none".to_string(), |b| b.to_string()),
            self.size_cap,
            join(&self.sigmas),
            join(&self.train_sizes),
            join(&self.seeds),
            join(&self.models),
        )
    }

    /// Unset keys keep their defaults; setting `scenario` also resets `p`
    /// unless `p` is given explicitly.
    pub fn parse(text: &str) -> Result<Self> {
        let mut m = Self::default();
        let mut explicit_p = false;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = i + 1;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(lineno, "manifest", "expected key=value"))?;
            let (key, value) = (key.trim(), value.trim());
            fn one<T: FromStr>(v: &str, line: usize, field: &'static str) -> Result<T> {
                v.parse().map_err(|_| Error::parse(line, field, format!("{v:?}")))
            }
            match key {
                "scenario" => {
                    m.scenario = one(value, lineno, "scenario")?;
                    if !explicit_p {
                        m.p_values = m.scenario.default_p();
                    }
                }
                "p" => {
                    m.p_values = list(value, lineno, "p")?;
                    explicit_p = true;
                }
                "n_min" => m.n_min = one(value, lineno, "n_min")?,
                "n_max" => m.n_max = one(value, lineno, "n_max")?,
                "samples" => m.samples = one(value, lineno, "samples")?,
                "seed" => m.seed = one(value, lineno, "seed")?,
                "budget" => {
                    m.budget = match value {
                        "none" => None,
                        v => Some(one(v, lineno, "budget")?),
                    }
                }
                "size_cap" => m.size_cap = one(value, lineno, "size_cap")?,
                "sigmas" => m.sigmas = list(value, lineno, "sigmas")?,
                "train_sizes" => m.train_sizes = list(value, lineno, "train_sizes")?,
                "seeds" => m.seeds = list(value, lineno, "seeds")?,
                "models" => m.models = list(value, lineno, "models")?,
                _ => return Err(Error::parse(lineno, "manifest", format!("unknown key {key:?}"))),
            }
        }
        m.validate()?;
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }
}
