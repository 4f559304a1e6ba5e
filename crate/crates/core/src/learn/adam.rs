use crate::error::{Error, Result};
use crate::rnn::ParamBlocks;

pub const BETA1: f64 = 0.9;
pub const BETA2: f64 = 0.999;
pub const EPSILON: f64 = 1e-8;

/// First and second moment estimates, one buffer per parameter block.
#[derive(Clone, Debug, PartialEq)]
pub struct AdamState {
    pub step: u64,
    m: Vec<Vec<f64>>,
    v: Vec<Vec<f64>>,
}

impl AdamState {
    pub fn new(params: &impl ParamBlocks) -> Self {
        let shapes: Vec<Vec<f64>> = params.blocks().iter().map(|b| vec![0.0; b.len()]).collect();
        Self {
            step: 0,
            m: shapes.clone(),
            v: shapes,
        }
    }
}

/// One bias-corrected Adam update. Projection, if any, is the caller's job.
pub fn adam_step<P: ParamBlocks>(
    params: &mut P,
    grads: &P,
    state: &mut AdamState,
    lr: f64,
) -> Result<()> {
    let g = grads.blocks();
    let mut p = params.blocks_mut();
    let shapes_match = p.len() == g.len()
        && p.len() == state.m.len()
        && p.iter().zip(&g).zip(&state.m).all(|((a, b), c)| a.len() == b.len() && a.len() == c.len());
    if !shapes_match {
        return Err(Error::Dimension {
            what: "optimizer parameter count",
            expected: p.iter().map(|b| b.len()).sum(),
            got: g.iter().map(|b| b.len()).sum(),
        });
    }
    state.step += 1;
    let t = state.step as i32;
    let c1 = 1.0 - BETA1.powi(t);
    let c2 = 1.0 - BETA2.powi(t);
    for (k, block) in p.iter_mut().enumerate() {
        let (m, v) = (&mut state.m[k], &mut state.v[k]);
        for (i, theta) in block.iter_mut().enumerate() {
            let gi = g[k][i];
            m[i] = BETA1 * m[i] + (1.0 - BETA1) * gi;
            v[i] = BETA2 * v[i] + (1.0 - BETA2) * gi * gi;
            *theta -= lr * (m[i] / c1) / ((v[i] / c2).sqrt() + EPSILON);
        }
    }
    Ok(())
}
