//! Deterministic parameter initialisation.
//!
//! Constrained mode draws every block uniformly from its constraint set
//! (L1 balls via normalised exponentials with random signs); unconstrained
//! mode uses `U(−k, k)` with `k = 1/√width` for recurrent layers and
//! He-uniform weights with zero biases for dense layers. Initial hidden
//! states are always zero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use super::layer::RnnLayer;
use super::params::{Dense, FeedForwardParams, MultiLayerRnnParams, SingleLayerRnnParams};
use super::projection::{B_MAX, BO_MAX, U_MAX, WO_L1, W_COLUMN_L1};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Constrained,
    Unconstrained,
}

/// Uniform sample from `{x : x ≥ 0, Σx ≤ radius}` in `dim` dimensions.
fn uniform_simplex_body(rng: &mut impl Rng, dim: usize, radius: f64) -> Vec<f64> {
    let e: Vec<f64> = (0..=dim).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = e.iter().sum();
    e[..dim].iter().map(|x| radius * x / total).collect()
}

fn uniform_l1_ball(rng: &mut impl Rng, dim: usize, radius: f64) -> Vec<f64> {
    uniform_simplex_body(rng, dim, radius)
        .into_iter()
        .map(|x| if rng.random::<bool>() { x } else { -x })
        .collect()
}

fn uniform_vec(rng: &mut impl Rng, len: usize, bound: f64) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(-bound..=bound)).collect()
}

fn init_layer(rng: &mut impl Rng, width: usize, mode: Mode) -> RnnLayer {
    match mode {
        Mode::Constrained => {
            let mut w = vec![0.0; width * width];
            for c in 0..width {
                for (r, v) in uniform_l1_ball(rng, width, W_COLUMN_L1).into_iter().enumerate() {
                    w[r * width + c] = v;
                }
            }
            RnnLayer {
                width,
                w,
                u: uniform_vec(rng, width, U_MAX),
                b: uniform_vec(rng, width, B_MAX),
                h0: vec![0.0; width],
            }
        }
        Mode::Unconstrained => {
            let k = 1.0 / (width as f64).sqrt();
            RnnLayer {
                width,
                w: uniform_vec(rng, width * width, k),
                u: uniform_vec(rng, width, k),
                b: uniform_vec(rng, width, k),
                h0: vec![0.0; width],
            }
        }
    }
}

fn init_output(rng: &mut impl Rng, width: usize, mode: Mode) -> (Vec<f64>, f64) {
    match mode {
        Mode::Constrained => (
            uniform_simplex_body(rng, width, WO_L1),
            rng.random_range(0.0..=BO_MAX),
        ),
        Mode::Unconstrained => (uniform_vec(rng, width, 1.0 / (width as f64).sqrt()), 0.0),
    }
}

pub fn init_multi(widths: &[usize], seed: u64, mode: Mode) -> MultiLayerRnnParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let layers: Vec<RnnLayer> = widths.iter().map(|&w| init_layer(&mut rng, w, mode)).collect();
    let (wo, bo) = init_output(&mut rng, *widths.last().expect("at least one layer"), mode);
    MultiLayerRnnParams { layers, wo, bo }
}

pub fn init_single(width: usize, seed: u64, mode: Mode) -> SingleLayerRnnParams {
    let mut m = init_multi(&[width], seed, mode);
    SingleLayerRnnParams {
        layer: m.layers.pop().unwrap(),
        wo: m.wo,
        bo: m.bo,
    }
}

pub fn init_ffn(input_dim: usize, widths: [usize; 3], seed: u64) -> FeedForwardParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dense = |inputs: usize, outputs: usize| {
        let k = (6.0 / inputs as f64).sqrt();
        Dense {
            inputs,
            outputs,
            w: uniform_vec(&mut rng, inputs * outputs, k),
            b: vec![0.0; outputs],
        }
    };
    let hidden = [
        dense(input_dim, widths[0]),
        dense(widths[0], widths[1]),
        dense(widths[1], widths[2]),
    ];
    let k = 1.0 / (widths[2] as f64).sqrt();
    let wo = uniform_vec(&mut rng, widths[2], k);
    FeedForwardParams { hidden, wo, bo: 0.0 }
}
