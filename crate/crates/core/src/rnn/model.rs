use super::forward::{
    backward_ffn, backward_multi, backward_single, forward_ffn, forward_multi,
    forward_multi_checked, forward_single, forward_single_checked,
};
use super::init::Mode;
use super::params::{FeedForwardParams, MultiLayerRnnParams, ParamBlocks, SingleLayerRnnParams};
use super::projection::Constrained;
use crate::error::{Error, Result};
use crate::graph::FlatEncoding;

#[derive(Clone, Debug, PartialEq)]
pub enum Network {
    Single(SingleLayerRnnParams),
    Multi(MultiLayerRnnParams),
    Ffn(FeedForwardParams),
}

impl ParamBlocks for Network {
    fn blocks(&self) -> Vec<&[f64]> {
        match self {
            Network::Single(p) => p.blocks(),
            Network::Multi(p) => p.blocks(),
            Network::Ffn(p) => p.blocks(),
        }
    }

    fn blocks_mut(&mut self) -> Vec<&mut [f64]> {
        match self {
            Network::Single(p) => p.blocks_mut(),
            Network::Multi(p) => p.blocks_mut(),
            Network::Ffn(p) => p.blocks_mut(),
        }
    }

    fn zeros_like(&self) -> Self {
        match self {
            Network::Single(p) => Network::Single(p.zeros_like()),
            Network::Multi(p) => Network::Multi(p.zeros_like()),
            Network::Ffn(p) => Network::Ffn(p.zeros_like()),
        }
    }
}

/// A network bound to the graph encoding it reads (`n_max²` entries) and
/// to its parameter regime.
#[derive(Clone, Debug, PartialEq)]
pub struct Model {
    pub network: Network,
    pub mode: Mode,
    pub n_max: usize,
}

impl Model {
    pub fn new(network: Network, mode: Mode, n_max: usize) -> Result<Self> {
        match &network {
            Network::Single(p) => p.validate()?,
            Network::Multi(p) => p.validate()?,
            Network::Ffn(p) => {
                p.validate()?;
                if mode == Mode::Constrained {
                    return Err(Error::InvalidArgument(
                        "feed-forward networks have no constrained mode".into(),
                    ));
                }
                if p.input_dim() != n_max * n_max {
                    return Err(Error::Dimension {
                        what: "feed-forward input",
                        expected: n_max * n_max,
                        got: p.input_dim(),
                    });
                }
            }
        }
        Ok(Self {
            network,
            mode,
            n_max,
        })
    }

    pub fn input_len(&self) -> usize {
        self.n_max * self.n_max
    }

    pub fn kind_name(&self) -> &'static str {
        match self.network {
            Network::Single(_) => "single",
            Network::Multi(_) => "multi",
            Network::Ffn(_) => "ffn",
        }
    }

    /// Predict on a raw input sequence of length `n_max²`.
    pub fn predict_input(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.input_len() {
            return Err(Error::Dimension {
                what: "model input",
                expected: self.input_len(),
                got: x.len(),
            });
        }
        match (&self.network, self.mode) {
            (Network::Single(p), Mode::Unconstrained) => forward_single(p, x),
            (Network::Single(p), Mode::Constrained) => Ok(forward_single_checked(p, x)),
            (Network::Multi(p), Mode::Constrained) => Ok(forward_multi_checked(p, x)),
            (Network::Multi(p), Mode::Unconstrained) => forward_multi(p, x),
            (Network::Ffn(p), _) => forward_ffn(p, x),
        }
    }

    pub fn predict(&self, enc: &FlatEncoding) -> Result<f64> {
        if enc.n_max() != self.n_max {
            return Err(Error::Dimension {
                what: "graph encoding size n_max",
                expected: self.n_max,
                got: enc.n_max(),
            });
        }
        self.predict_input(&enc.to_input())
    }

    /// Output on `x`, adding `d_out(f) · ∂f/∂θ` into `grad`.
    pub fn backward(&self, x: &[f64], d_out: impl FnOnce(f64) -> f64, grad: &mut Network) -> f64 {
        match (&self.network, grad) {
            (Network::Single(p), Network::Single(g)) => backward_single(p, x, d_out, g),
            (Network::Multi(p), Network::Multi(g)) => backward_multi(p, x, d_out, g),
            (Network::Ffn(p), Network::Ffn(g)) => backward_ffn(p, x, d_out, g),
            _ => panic!("gradient buffer does not match the network kind"),
        }
    }

    /// Project onto the constraint set; no-op in unconstrained mode.
    pub fn project(&mut self) {
        if self.mode != Mode::Constrained {
            return;
        }
        match &mut self.network {
            Network::Single(p) => p.project_constraints(),
            Network::Multi(p) => p.project_constraints(),
            Network::Ffn(_) => {}
        }
    }

    pub fn is_feasible(&self) -> bool {
        match (&self.network, self.mode) {
            (_, Mode::Unconstrained) => true,
            (Network::Single(p), _) => p.is_feasible(),
            (Network::Multi(p), _) => p.is_feasible(),
            (Network::Ffn(_), _) => false,
        }
    }
}
