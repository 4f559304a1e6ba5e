//! Euclidean projection onto the constraint set that keeps the size-adaptive
//! RNN's image inside `[0, 1]`:
//!
//! * every column of `W` in the L1 ball of radius 0.25,
//! * `|U| ≤ 0.25`, `|b| ≤ 0.5`, `|h0| ≤ 1` componentwise,
//! * `wᵒ ≥ 0` with `‖wᵒ‖₁ ≤ 0.5`, and `0 ≤ bᵒ ≤ 0.5`.

use super::layer::RnnLayer;
use super::params::{MultiLayerRnnParams, SingleLayerRnnParams};

pub const W_COLUMN_L1: f64 = 0.25;
pub const U_MAX: f64 = 0.25;
pub const B_MAX: f64 = 0.5;
pub const H0_MAX: f64 = 1.0;
pub const WO_L1: f64 = 0.5;
pub const BO_MAX: f64 = 0.5;

/// Slack allowed by [`is_feasible`] for floating-point rounding.
const TOL: f64 = 1e-12;

/// Project `v` onto `{x : ‖x‖₁ ≤ radius}` (sort-based simplex projection of
/// the magnitudes, signs restored).
pub fn project_l1_ball(v: &mut [f64], radius: f64) {
    let norm: f64 = v.iter().map(|x| x.abs()).sum();
    if norm <= radius + TOL {
        return;
    }
    let mut mags: Vec<f64> = v.iter().map(|x| x.abs()).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (k, &m) in mags.iter().enumerate() {
        cumsum += m;
        let t = (cumsum - radius) / (k + 1) as f64;
        if m - t > 0.0 {
            theta = t;
        } else {
            break;
        }
    }
    for x in v.iter_mut() {
        *x = x.signum() * (x.abs() - theta).max(0.0);
    }
}

/// Project onto `{x ≥ 0, ‖x‖₁ ≤ radius}`.
pub fn project_nonneg_l1(v: &mut [f64], radius: f64) {
    v.iter_mut().for_each(|x| *x = x.max(0.0));
    project_l1_ball(v, radius);
}

fn clamp_all(v: &mut [f64], lo: f64, hi: f64) {
    v.iter_mut().for_each(|x| *x = x.clamp(lo, hi));
}

fn project_layer(l: &mut RnnLayer) {
    let a = l.width;
    let mut col = vec![0.0; a];
    for c in 0..a {
        for r in 0..a {
            col[r] = l.w[r * a + c];
        }
        project_l1_ball(&mut col, W_COLUMN_L1);
        for r in 0..a {
            l.w[r * a + c] = col[r];
        }
    }
    clamp_all(&mut l.u, -U_MAX, U_MAX);
    clamp_all(&mut l.b, -B_MAX, B_MAX);
    clamp_all(&mut l.h0, -H0_MAX, H0_MAX);
}

fn project_output(wo: &mut [f64], bo: &mut f64) {
    project_nonneg_l1(wo, WO_L1);
    *bo = bo.clamp(0.0, BO_MAX);
}

/// Models whose parameters can be projected onto the constraint set.
pub trait Constrained {
    fn project_constraints(&mut self);
    fn is_feasible(&self) -> bool;
}

fn layer_feasible(l: &RnnLayer) -> bool {
    let a = l.width;
    (0..a).all(|c| (0..a).map(|r| l.w[r * a + c].abs()).sum::<f64>() <= W_COLUMN_L1 + TOL)
        && l.u.iter().all(|x| x.abs() <= U_MAX)
        && l.b.iter().all(|x| x.abs() <= B_MAX)
        && l.h0.iter().all(|x| x.abs() <= H0_MAX)
}

fn output_feasible(wo: &[f64], bo: f64) -> bool {
    wo.iter().all(|&x| x >= 0.0)
        && wo.iter().sum::<f64>() <= WO_L1 + TOL
        && (0.0..=BO_MAX).contains(&bo)
}

impl Constrained for SingleLayerRnnParams {
    fn project_constraints(&mut self) {
        project_layer(&mut self.layer);
        project_output(&mut self.wo, &mut self.bo);
    }

    fn is_feasible(&self) -> bool {
        layer_feasible(&self.layer) && output_feasible(&self.wo, self.bo)
    }
}

impl Constrained for MultiLayerRnnParams {
    fn project_constraints(&mut self) {
        self.layers.iter_mut().for_each(project_layer);
        project_output(&mut self.wo, &mut self.bo);
    }

    fn is_feasible(&self) -> bool {
        self.layers.iter().all(layer_feasible) && output_feasible(&self.wo, self.bo)
    }
}
