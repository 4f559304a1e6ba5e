use crate::error::{Error, Result};

/// One ReLU recurrent layer reading a scalar per step:
/// `h^i = (b + Wᵀh^{i−1} + Uᵀx_i)₊`.
///
/// `w` is the `width × width` matrix `W` in row-major order, so column `c`
/// (the weights feeding unit `c`) is `w[c], w[width + c], …`.
#[derive(Clone, Debug, PartialEq)]
pub struct RnnLayer {
    pub width: usize,
    pub w: Vec<f64>,
    pub u: Vec<f64>,
    pub b: Vec<f64>,
    pub h0: Vec<f64>,
}

impl RnnLayer {
    pub fn zeros(width: usize) -> Self {
        Self {
            width,
            w: vec![0.0; width * width],
            u: vec![0.0; width],
            b: vec![0.0; width],
            h0: vec![0.0; width],
        }
    }

    pub(crate) fn check(&self) -> Result<()> {
        let a = self.width;
        for (what, got, expected) in [
            ("recurrent weights", self.w.len(), a * a),
            ("input weights", self.u.len(), a),
            ("bias", self.b.len(), a),
            ("initial state", self.h0.len(), a),
        ] {
            if got != expected {
                return Err(Error::Dimension {
                    what,
                    expected,
                    got,
                });
            }
        }
        Ok(())
    }

    /// Trainable entries (`h0` excluded).
    pub fn trainable_len(&self) -> usize {
        self.w.len() + self.u.len() + self.b.len()
    }

    /// One recurrence step from `prev` on input `x` into `next`.
    #[inline]
    pub(crate) fn step(&self, prev: &[f64], x: f64, next: &mut [f64]) {
        let a = self.width;
        next.copy_from_slice(&self.b);
        for (r, &h) in prev.iter().enumerate() {
            if h != 0.0 {
                let row = &self.w[r * a..(r + 1) * a];
                for (z, &wrc) in next.iter_mut().zip(row) {
                    *z += wrc * h;
                }
            }
        }
        for (z, &uc) in next.iter_mut().zip(&self.u) {
            *z = (*z + uc * x).max(0.0);
        }
    }

    /// Final hidden state after consuming `inputs`.
    pub fn run(&self, inputs: &[f64]) -> Vec<f64> {
        let mut h = self.h0.clone();
        let mut next = vec![0.0; self.width];
        for &x in inputs {
            self.step(&h, x, &mut next);
            std::mem::swap(&mut h, &mut next);
        }
        h
    }

    /// Like [`run`](Self::run), asserting `‖h^i‖∞ ≤ bound` after every step
    /// in debug builds.
    pub(crate) fn run_bounded(&self, inputs: &[f64], bound: f64) -> Vec<f64> {
        let mut h = self.h0.clone();
        let mut next = vec![0.0; self.width];
        for &x in inputs {
            self.step(&h, x, &mut next);
            debug_assert!(
                next.iter().all(|&v| v <= bound + 1e-12),
                "hidden state exceeds {bound}"
            );
            std::mem::swap(&mut h, &mut next);
        }
        h
    }

    /// All hidden states `h^0, …, h^T`, flattened.
    pub(crate) fn trace(&self, inputs: &[f64]) -> Vec<f64> {
        let a = self.width;
        let mut states = Vec::with_capacity(a * (inputs.len() + 1));
        states.extend_from_slice(&self.h0);
        let mut next = vec![0.0; a];
        for (i, &x) in inputs.iter().enumerate() {
            self.step(&states[i * a..(i + 1) * a], x, &mut next);
            states.extend_from_slice(&next);
        }
        states
    }

    /// Backpropagate `d_final = ∂L/∂h^T` through the recurrence recorded in
    /// `states`, accumulating into `grad`. Returns `∂L/∂x_i` for each input.
    /// The ReLU derivative at 0 is taken as 0.
    pub(crate) fn backward(
        &self,
        inputs: &[f64],
        states: &[f64],
        d_final: &[f64],
        grad: &mut RnnLayer,
    ) -> Vec<f64> {
        let a = self.width;
        let mut dh = d_final.to_vec();
        let mut dz = vec![0.0; a];
        let mut dx = vec![0.0; inputs.len()];
        for i in (0..inputs.len()).rev() {
            let h = &states[(i + 1) * a..(i + 2) * a];
            let prev = &states[i * a..(i + 1) * a];
            for c in 0..a {
                dz[c] = if h[c] > 0.0 { dh[c] } else { 0.0 };
            }
            let x = inputs[i];
            let mut dxi = 0.0;
            for c in 0..a {
                grad.b[c] += dz[c];
                grad.u[c] += dz[c] * x;
                dxi += self.u[c] * dz[c];
            }
            dx[i] = dxi;
            for r in 0..a {
                let row = &self.w[r * a..(r + 1) * a];
                let grow = &mut grad.w[r * a..(r + 1) * a];
                let mut acc = 0.0;
                for c in 0..a {
                    grow[c] += prev[r] * dz[c];
                    acc += row[c] * dz[c];
                }
                dh[r] = acc;
            }
        }
        dx
    }
}
