use super::layer::RnnLayer;
use crate::error::{Error, Result};

/// Parameter tensors exposed as flat blocks in a fixed order, so optimizers
/// and checkpoints can treat every model alike. `h0` is never a block.
pub trait ParamBlocks {
    fn blocks(&self) -> Vec<&[f64]>;
    fn blocks_mut(&mut self) -> Vec<&mut [f64]>;

    /// Same-shaped value with every trainable entry zero.
    fn zeros_like(&self) -> Self
    where
        Self: Sized;

    fn num_trainable(&self) -> usize {
        self.blocks().iter().map(|b| b.len()).sum()
    }

    fn scale(&mut self, factor: f64) {
        for block in self.blocks_mut() {
            block.iter_mut().for_each(|v| *v *= factor);
        }
    }

    fn flat(&self) -> Vec<f64> {
        self.blocks().concat()
    }
}

/// Single recurrent layer plus linear output unit `x ↦ wᵒᵀh + bᵒ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleLayerRnnParams {
    pub layer: RnnLayer,
    pub wo: Vec<f64>,
    pub bo: f64,
}

/// `d` stacked recurrent layers. Layer 1 reads the input sequence; layer
/// `j ≥ 2` reads the components of layer `j−1`'s final state as its
/// sequence. One output unit reads the last layer's final state.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiLayerRnnParams {
    pub layers: Vec<RnnLayer>,
    pub wo: Vec<f64>,
    pub bo: f64,
}

impl SingleLayerRnnParams {
    pub fn zeros(width: usize) -> Self {
        Self {
            layer: RnnLayer::zeros(width),
            wo: vec![0.0; width],
            bo: 0.0,
        }
    }

    pub fn width(&self) -> usize {
        self.layer.width
    }

    pub fn validate(&self) -> Result<()> {
        self.layer.check()?;
        check_len("output weights", self.wo.len(), self.layer.width)
    }

    pub fn into_multi(self) -> MultiLayerRnnParams {
        MultiLayerRnnParams {
            layers: vec![self.layer],
            wo: self.wo,
            bo: self.bo,
        }
    }
}

impl MultiLayerRnnParams {
    pub fn zeros(widths: &[usize]) -> Self {
        Self {
            layers: widths.iter().map(|&w| RnnLayer::zeros(w)).collect(),
            wo: vec![0.0; *widths.last().expect("at least one layer")],
            bo: 0.0,
        }
    }

    pub fn widths(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.width).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.layers.is_empty() {
            return Err(Error::InvalidArgument("no recurrent layers".into()));
        }
        for l in &self.layers {
            l.check()?;
        }
        check_len("output weights", self.wo.len(), self.layers.last().unwrap().width)
    }
}

fn check_len(what: &'static str, got: usize, expected: usize) -> Result<()> {
    if got == expected {
        Ok(())
    } else {
        Err(Error::Dimension {
            what,
            expected,
            got,
        })
    }
}

fn layer_blocks(l: &RnnLayer) -> [&[f64]; 3] {
    [&l.w, &l.u, &l.b]
}

fn layer_blocks_mut(l: &mut RnnLayer) -> [&mut [f64]; 3] {
    [&mut l.w, &mut l.u, &mut l.b]
}

impl ParamBlocks for SingleLayerRnnParams {
    fn blocks(&self) -> Vec<&[f64]> {
        let mut v = layer_blocks(&self.layer).to_vec();
        v.push(&self.wo);
        v.push(std::slice::from_ref(&self.bo));
        v
    }

    fn blocks_mut(&mut self) -> Vec<&mut [f64]> {
        let mut v: Vec<&mut [f64]> = layer_blocks_mut(&mut self.layer).into_iter().collect();
        v.push(&mut self.wo);
        v.push(std::slice::from_mut(&mut self.bo));
        v
    }

    fn zeros_like(&self) -> Self {
        Self::zeros(self.width())
    }
}

impl ParamBlocks for MultiLayerRnnParams {
    fn blocks(&self) -> Vec<&[f64]> {
        let mut v: Vec<&[f64]> = self.layers.iter().flat_map(layer_blocks).collect();
        v.push(&self.wo);
        v.push(std::slice::from_ref(&self.bo));
        v
    }

    fn blocks_mut(&mut self) -> Vec<&mut [f64]> {
        let mut v: Vec<&mut [f64]> = self.layers.iter_mut().flat_map(layer_blocks_mut).collect();
        v.push(&mut self.wo);
        v.push(std::slice::from_mut(&mut self.bo));
        v
    }

    fn zeros_like(&self) -> Self {
        Self::zeros(&self.widths())
    }
}

/// Dense layer `y = W x + b`, `W` stored `outputs × inputs` row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub inputs: usize,
    pub outputs: usize,
    pub w: Vec<f64>,
    pub b: Vec<f64>,
}

impl Dense {
    pub fn zeros(inputs: usize, outputs: usize) -> Self {
        Self {
            inputs,
            outputs,
            w: vec![0.0; inputs * outputs],
            b: vec![0.0; outputs],
        }
    }
}

/// Three ReLU layers followed by a single linear output unit.
#[derive(Clone, Debug, PartialEq)]
pub struct FeedForwardParams {
    pub hidden: [Dense; 3],
    pub wo: Vec<f64>,
    pub bo: f64,
}

impl FeedForwardParams {
    pub fn zeros(input_dim: usize, widths: [usize; 3]) -> Self {
        Self {
            hidden: [
                Dense::zeros(input_dim, widths[0]),
                Dense::zeros(widths[0], widths[1]),
                Dense::zeros(widths[1], widths[2]),
            ],
            wo: vec![0.0; widths[2]],
            bo: 0.0,
        }
    }

    pub fn input_dim(&self) -> usize {
        self.hidden[0].inputs
    }

    pub fn widths(&self) -> [usize; 3] {
        [
            self.hidden[0].outputs,
            self.hidden[1].outputs,
            self.hidden[2].outputs,
        ]
    }

    pub fn validate(&self) -> Result<()> {
        for (k, d) in self.hidden.iter().enumerate() {
            check_len("dense weights", d.w.len(), d.inputs * d.outputs)?;
            check_len("dense bias", d.b.len(), d.outputs)?;
            if k > 0 {
                check_len("dense layer chain", d.inputs, self.hidden[k - 1].outputs)?;
            }
        }
        check_len("output weights", self.wo.len(), self.hidden[2].outputs)
    }
}

impl ParamBlocks for FeedForwardParams {
    fn blocks(&self) -> Vec<&[f64]> {
        let mut v: Vec<&[f64]> = self
            .hidden
            .iter()
            .flat_map(|d| [d.w.as_slice(), d.b.as_slice()])
            .collect();
        v.push(&self.wo);
        v.push(std::slice::from_ref(&self.bo));
        v
    }

    fn blocks_mut(&mut self) -> Vec<&mut [f64]> {
        let mut v: Vec<&mut [f64]> = self
            .hidden
            .iter_mut()
            .flat_map(|d| [d.w.as_mut_slice(), d.b.as_mut_slice()])
            .collect();
        v.push(&mut self.wo);
        v.push(std::slice::from_mut(&mut self.bo));
        v
    }

    fn zeros_like(&self) -> Self {
        Self::zeros(self.input_dim(), self.widths())
    }
}
