//! Independent oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use eccn_core::rnn::{Model, Network, ParamBlocks, RnnLayer};
use eccn_core::Graph;

/// Every clique with at least two vertices, as a set of covered edge bits.
/// Edge `(u, v)` with `u < v` is bit `index[u][v]`.
fn clique_edge_masks(g: &Graph) -> (Vec<u64>, u64) {
    let n = g.n();
    let mut index = vec![vec![usize::MAX; n]; n];
    let mut m = 0;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                index[u][v] = m;
                m += 1;
            }
        }
    }
    assert!(m <= 64, "oracle limited to 64 edges");
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut masks = Vec::new();
    for set in 1u64..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
        if vs.len() < 2 {
            continue;
        }
        let mut mask = 0u64;
        let mut ok = true;
        'pairs: for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if !g.has_edge(u, v) {
                    ok = false;
                    break 'pairs;
                }
                mask |= 1 << index[u][v];
            }
        }
        if ok {
            masks.push(mask);
        }
    }
    (masks, full)
}

fn any_combination(masks: &[u64], full: u64, k: usize, start: usize, acc: u64) -> bool {
    if k == 0 {
        return acc == full;
    }
    (start..masks.len()).any(|i| any_combination(masks, full, k - 1, i + 1, acc | masks[i]))
}

/// Smallest `k` such that some `k` cliques (maximal or not) cover every
/// edge, by trying all combinations in increasing `k`.
pub fn all_cliques_eccn(g: &Graph) -> usize {
    let (masks, full) = clique_edge_masks(g);
    if full == 0 {
        return 0;
    }
    (1..=masks.len())
        .find(|&k| any_combination(&masks, full, k, 0, 0))
        .expect("the edge cliques always cover")
}

/// Real arithmetic that counts `+ − × /`, conditional jumps and boolean
/// outputs as it goes.
#[derive(Default)]
pub struct Counter {
    pub ops: u128,
}

impl Counter {
    fn add(&mut self, a: f64, b: f64) -> f64 {
        self.ops += 1;
        a + b
    }

    fn mul(&mut self, a: f64, b: f64) -> f64 {
        self.ops += 1;
        a * b
    }

    /// Compare-and-jump, then emit the selected value.
    fn relu(&mut self, z: f64) -> f64 {
        self.ops += 2;
        if z > 0.0 {
            z
        } else {
            0.0
        }
    }

    fn dot(&mut self, w: &[f64], h: &[f64]) -> f64 {
        let mut acc = self.mul(w[0], h[0]);
        for i in 1..w.len() {
            let p = self.mul(w[i], h[i]);
            acc = self.add(acc, p);
        }
        acc
    }

    fn layer(&mut self, l: &RnnLayer, inputs: &[f64]) -> Vec<f64> {
        let a = l.width;
        let mut h = l.h0.clone();
        for &x in inputs {
            let mut next = Vec::with_capacity(a);
            for c in 0..a {
                let col: Vec<f64> = (0..a).map(|r| l.w[r * a + c]).collect();
                let wh = self.dot(&col, &h);
                let ux = self.mul(l.u[c], x);
                let s = self.add(wh, ux);
                let z = self.add(s, l.b[c]);
                next.push(self.relu(z));
            }
            h = next;
        }
        h
    }

    /// Real-valued output of the stacked network and the thresholded
    /// decision `f(x) + w·y + c ≥ 0`.
    pub fn thresholded(
        &mut self,
        layers: &[RnnLayer],
        wo: &[f64],
        bo: f64,
        x: &[f64],
        y: f64,
        w: f64,
        c: f64,
    ) -> (f64, bool) {
        let mut seq = x.to_vec();
        for l in layers {
            seq = self.layer(l, &seq);
        }
        let dot = self.dot(wo, &seq);
        let f = self.add(dot, bo);
        let wy = self.mul(w, y);
        let s = self.add(f, wy);
        let t = self.add(s, c);
        self.ops += 2;
        (f, t >= 0.0)
    }
}

/// Outcome of a finite-difference comparison.
#[derive(Debug, Default)]
pub struct FdReport {
    pub checked: usize,
    pub skipped_kinks: usize,
    pub max_rel_err: f64,
}

fn batch_loss(model: &Model, xs: &[Vec<f64>], ys: &[f64]) -> f64 {
    xs.iter()
        .zip(ys)
        .map(|(x, y)| (model.predict_input(x).unwrap() - y).powi(2))
        .sum::<f64>()
        / xs.len() as f64
}

fn set_coord(net: &mut Network, k: usize, v: f64) {
    let mut idx = k;
    for block in net.blocks_mut() {
        if idx < block.len() {
            block[idx] = v;
            return;
        }
        idx -= block.len();
    }
    panic!("coordinate out of range");
}

/// Compare `grad` against central differences with step `h`. Coordinates
/// whose one-sided slopes disagree (a ReLU kink inside `[θ−h, θ+h]`) are
/// skipped, as are those with `|grad| ≤ 1e-6`.
pub fn finite_difference_check(model: &Model, xs: &[Vec<f64>], ys: &[f64], grad: &Network, h: f64) -> FdReport {
    let theta = model.network.flat();
    let g = grad.flat();
    let f0 = batch_loss(model, xs, ys);
    let mut probe = model.clone();
    let mut report = FdReport::default();
    for k in 0..theta.len() {
        set_coord(&mut probe.network, k, theta[k] + h);
        let fp = batch_loss(&probe, xs, ys);
        set_coord(&mut probe.network, k, theta[k] - h);
        let fm = batch_loss(&probe, xs, ys);
        set_coord(&mut probe.network, k, theta[k]);
        let right = (fp - f0) / h;
        let left = (f0 - fm) / h;
        let central = (fp - fm) / (2.0 * h);
        let scale = right.abs().max(left.abs()).max(1e-8);
        if (right - left).abs() > 1e-3 * scale + 1e-7 {
            report.skipped_kinks += 1;
            continue;
        }
        if g[k].abs() <= 1e-6 {
            continue;
        }
        let rel = (g[k] - central).abs() / g[k].abs().max(central.abs());
        report.max_rel_err = report.max_rel_err.max(rel);
        report.checked += 1;
    }
    report
}

/// K₈ minus the perfect matching {0,1},{2,3},{4,5},{6,7}.
pub fn k8_minus_matching() -> Graph {
    let mut edges = Vec::new();
    for u in 0..8 {
        for v in u + 1..8 {
            if !(u % 2 == 0 && v == u + 1) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(8, &edges).unwrap()
}

/// Left graph of the two-panel cover figure: a five-clique on 0..4 with
/// pendant edges {0,5}, {4,5} and {4,6}.
pub fn figure_left() -> Graph {
    let mut edges = vec![(0, 5), (4, 5), (4, 6)];
    for u in 0..5 {
        for v in u + 1..5 {
            edges.push((u, v));
        }
    }
    Graph::from_edges(7, &edges).unwrap()
}
