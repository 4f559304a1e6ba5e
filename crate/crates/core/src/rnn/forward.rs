//! Forward passes and backpropagation for the three network families.
//!
//! Backward functions take `d_out = ∂L/∂f(x)` for one sample and add that
//! sample's contribution to a gradient of the same shape as the parameters.

use super::layer::RnnLayer;
use super::params::{Dense, FeedForwardParams, MultiLayerRnnParams, SingleLayerRnnParams};
use crate::error::{Error, Result};

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc + x * y)
}

fn output(wo: &[f64], bo: f64, h: &[f64]) -> f64 {
    dot(wo, h) + bo
}

/// `wᵒᵀh^T + bᵒ` after running the recurrence over every entry of `x`.
pub fn forward_single(p: &SingleLayerRnnParams, x: &[f64]) -> Result<f64> {
    p.validate()?;
    Ok(output(&p.wo, p.bo, &p.layer.run(x)))
}

fn run_stack(layers: &[RnnLayer], x: &[f64], bound: Option<f64>) -> Vec<f64> {
    let mut seq = x.to_vec();
    for layer in layers {
        seq = match bound {
            Some(b) => layer.run_bounded(&seq, b),
            None => layer.run(&seq),
        };
    }
    seq
}

pub fn forward_multi(p: &MultiLayerRnnParams, x: &[f64]) -> Result<f64> {
    p.validate()?;
    Ok(output(&p.wo, p.bo, &run_stack(&p.layers, x, None)))
}

pub(crate) fn forward_single_checked(p: &SingleLayerRnnParams, x: &[f64]) -> f64 {
    output(&p.wo, p.bo, &p.layer.run_bounded(x, 1.0))
}

/// [`forward_multi`] with the per-step `‖h‖∞ ≤ 1` check of the constrained
/// family enabled in debug builds.
pub(crate) fn forward_multi_checked(p: &MultiLayerRnnParams, x: &[f64]) -> f64 {
    output(&p.wo, p.bo, &run_stack(&p.layers, x, Some(1.0)))
}

fn dense_forward(d: &Dense, x: &[f64]) -> Vec<f64> {
    (0..d.outputs)
        .map(|o| (d.b[o] + dot(&d.w[o * d.inputs..(o + 1) * d.inputs], x)).max(0.0))
        .collect()
}

pub fn forward_ffn(p: &FeedForwardParams, x: &[f64]) -> Result<f64> {
    p.validate()?;
    if x.len() != p.input_dim() {
        return Err(Error::Dimension {
            what: "feed-forward input",
            expected: p.input_dim(),
            got: x.len(),
        });
    }
    let mut h = x.to_vec();
    for d in &p.hidden {
        h = dense_forward(d, &h);
    }
    Ok(output(&p.wo, p.bo, &h))
}

fn backward_output(wo: &[f64], h: &[f64], d_out: f64, gwo: &mut [f64], gbo: &mut f64) -> Vec<f64> {
    *gbo += d_out;
    for (g, &hv) in gwo.iter_mut().zip(h) {
        *g += d_out * hv;
    }
    wo.iter().map(|&w| w * d_out).collect()
}

/// Returns the model output and adds `d_out(f) · ∂f/∂θ` into `grad`, where
/// `d_out` maps the output to `∂L/∂f`.
pub fn backward_multi(
    p: &MultiLayerRnnParams,
    x: &[f64],
    d_out: impl FnOnce(f64) -> f64,
    grad: &mut MultiLayerRnnParams,
) -> f64 {
    let mut inputs = vec![x.to_vec()];
    let mut traces = Vec::with_capacity(p.layers.len());
    for layer in &p.layers {
        let states = layer.trace(inputs.last().unwrap());
        let a = layer.width;
        let last = states[states.len() - a..].to_vec();
        traces.push(states);
        inputs.push(last);
    }
    let h_final = inputs.last().unwrap();
    let f = output(&p.wo, p.bo, h_final);
    let d = d_out(f);
    let mut dh = backward_output(&p.wo, h_final, d, &mut grad.wo, &mut grad.bo);
    for j in (0..p.layers.len()).rev() {
        dh = p.layers[j].backward(&inputs[j], &traces[j], &dh, &mut grad.layers[j]);
    }
    f
}

pub fn backward_single(
    p: &SingleLayerRnnParams,
    x: &[f64],
    d_out: impl FnOnce(f64) -> f64,
    grad: &mut SingleLayerRnnParams,
) -> f64 {
    let states = p.layer.trace(x);
    let a = p.layer.width;
    let h_final = &states[states.len() - a..];
    let f = output(&p.wo, p.bo, h_final);
    let d = d_out(f);
    let dh = backward_output(&p.wo, h_final, d, &mut grad.wo, &mut grad.bo);
    p.layer.backward(x, &states, &dh, &mut grad.layer);
    f
}

pub fn backward_ffn(
    p: &FeedForwardParams,
    x: &[f64],
    d_out: impl FnOnce(f64) -> f64,
    grad: &mut FeedForwardParams,
) -> f64 {
    let mut acts = vec![x.to_vec()];
    for d in &p.hidden {
        let next = dense_forward(d, acts.last().unwrap());
        acts.push(next);
    }
    let f = output(&p.wo, p.bo, &acts[3]);
    let d = d_out(f);
    let mut dh = backward_output(&p.wo, &acts[3], d, &mut grad.wo, &mut grad.bo);
    for k in (0..3).rev() {
        let layer = &p.hidden[k];
        let g = &mut grad.hidden[k];
        let input = &acts[k];
        let out = &acts[k + 1];
        let mut dx = vec![0.0; layer.inputs];
        for o in 0..layer.outputs {
            let dz = if out[o] > 0.0 { dh[o] } else { 0.0 };
            if dz == 0.0 {
                continue;
            }
            g.b[o] += dz;
            let row = &layer.w[o * layer.inputs..(o + 1) * layer.inputs];
            let grow = &mut g.w[o * layer.inputs..(o + 1) * layer.inputs];
            for i in 0..layer.inputs {
                grow[i] += dz * input[i];
                dx[i] += row[i] * dz;
            }
        }
        dh = dx;
    }
    f
}
