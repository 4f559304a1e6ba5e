//! Capacity and sample-complexity upper bounds for ReLU RNNs.
//!
//! The chain is: parameter count `W` and worst-case operation count `T` of
//! the thresholded network give `VCdim ≤ 2W(2T + log₂(8e))`; the
//! pseudo-dimension of the real-valued network is at most that VC
//! dimension (with two extra parameters for the threshold unit); and a
//! pseudo-dimension bound gives
//! `M(ε, δ) ≤ 128/ε² · [2·Pdim·ln(34/ε) + ln(16/δ)]`.
//!
//! Polynomial parts are evaluated in exact integer arithmetic; only the
//! final combination with the logarithms is done in `f64`.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::graph::graph_space_size;

/// `log₂(8e) = 3 + log₂ e`, kept real-valued inside every formula.
pub const LOG2_8E: f64 = 3.0 + std::f64::consts::LOG2_E;

/// Layer widths and maximum input length of a stacked ReLU RNN.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RnnShape {
    widths: Vec<usize>,
    max_input_len: usize,
}

impl RnnShape {
    pub fn new(widths: Vec<usize>, max_input_len: usize) -> Result<Self> {
        if widths.is_empty() || widths.contains(&0) {
            return Err(Error::InvalidArgument(
                "layer widths must be nonempty and positive".into(),
            ));
        }
        if max_input_len == 0 {
            return Err(Error::InvalidArgument("max input length must be >= 1".into()));
        }
        Ok(Self {
            widths,
            max_input_len,
        })
    }

    pub fn single(width: usize, max_input_len: usize) -> Result<Self> {
        Self::new(vec![width], max_input_len)
    }

    /// The size-adaptive graph architecture: `d` layers of width `n`
    /// reading `n²` adjacency entries.
    pub fn graph(n: usize, layers: usize) -> Result<Self> {
        Self::new(vec![n; layers], n * n)
    }

    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    pub fn max_input_len(&self) -> usize {
        self.max_input_len
    }

    pub fn layers(&self) -> usize {
        self.widths.len()
    }
}

/// `a² + 3a + 1`: recurrent weights, input weights, biases, output unit.
pub fn param_count_single(a: usize) -> u128 {
    let a = a as u128;
    a * a + 3 * a + 1
}

/// `Σ (aᵢ² + 2aᵢ) + a_d + 1`.
pub fn param_count_multi(widths: &[usize]) -> u128 {
    let last = *widths.last().expect("at least one layer") as u128;
    widths
        .iter()
        .map(|&a| {
            let a = a as u128;
            a * a + 2 * a
        })
        .sum::<u128>()
        + last
        + 1
}

/// `b(2a² + 4a) + 2a + 5`.
pub fn op_count_single(a: usize, b: usize) -> u128 {
    let (a, b) = (a as u128, b as u128);
    b * (2 * a * a + 4 * a) + 2 * a + 5
}

/// `b(2a₁² + 4a₁) + Σ_{j<d} aⱼ(2aⱼ₊₁² + 4aⱼ₊₁) + 2a_d + 5`.
pub fn op_count_multi(widths: &[usize], b: usize) -> u128 {
    let w: Vec<u128> = widths.iter().map(|&a| a as u128).collect();
    let b = b as u128;
    let first = b * (2 * w[0] * w[0] + 4 * w[0]);
    let deeper: u128 = w
        .windows(2)
        .map(|p| p[0] * (2 * p[1] * p[1] + 4 * p[1]))
        .sum();
    first + deeper + 2 * w[w.len() - 1] + 5
}

/// `2W(2T + log₂(8e))`.
pub fn vcdim_bound(params: u128, ops: u128) -> f64 {
    2.0 * params as f64 * (2.0 * ops as f64 + LOG2_8E)
}

/// `⌊2W(2T + log₂(8e))⌋`, computed as `4WT + ⌊2W·log₂(8e)⌋`.
pub fn vcdim_bound_floor(params: u128, ops: u128) -> u128 {
    4 * params * ops + (2.0 * params as f64 * LOG2_8E).floor() as u128
}

fn check_eps_delta(eps: f64, delta: f64) -> Result<()> {
    for (name, v) in [("epsilon", eps), ("delta", delta)] {
        if !(v > 0.0 && v <= 1.0) {
            return Err(Error::InvalidArgument(format!("{name} = {v} outside (0, 1]")));
        }
    }
    Ok(())
}

/// `128/ε² · [2·pdim·ln(34/ε) + ln(16/δ)]`.
pub fn sample_complexity_from_pdim(pdim: f64, eps: f64, delta: f64) -> Result<f64> {
    check_eps_delta(eps, delta)?;
    if !(pdim >= 0.0) {
        return Err(Error::InvalidArgument(format!("pdim = {pdim} is negative")));
    }
    Ok(128.0 / (eps * eps) * (2.0 * pdim * (34.0 / eps).ln() + (16.0 / delta).ln()))
}

/// `128/ε² · [ln(16/δ) + ln(34/ε) · 4·P·(L + log₂(8e))]` for integer
/// prefactor `P` and integer part `L` of the second factor.
fn closed_form(prefactor: u128, linear: u128, eps: f64, delta: f64) -> Result<f64> {
    check_eps_delta(eps, delta)?;
    let p = 4 * prefactor;
    let product = (p * linear) as f64 + p as f64 * LOG2_8E;
    Ok(128.0 / (eps * eps) * ((16.0 / delta).ln() + (34.0 / eps).ln() * product))
}

/// Single recurrent layer of width `a`, inputs of length at most `b`.
pub fn sample_complexity_single(a: usize, b: usize, eps: f64, delta: f64) -> Result<f64> {
    let shape = RnnShape::single(a, b)?;
    sample_complexity_multi(&shape, eps, delta)
}

/// `d` recurrent layers. The prefactor is `Σ(aᵢ² + 2aᵢ) + a_d + 3` and the
/// second factor `2T + log₂(8e)`.
pub fn sample_complexity_multi(shape: &RnnShape, eps: f64, delta: f64) -> Result<f64> {
    let prefactor = param_count_multi(&shape.widths) + 2;
    let linear = 2 * op_count_multi(&shape.widths, shape.max_input_len);
    closed_form(prefactor, linear, eps, delta)
}

/// Which closed form to use for the size-adaptive graph bound at `d = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GraphBoundForm {
    /// Single-layer prefactor `n² + 4n + 3`, as stated for the size-adaptive
    /// network; reproduces the published break-even percentages.
    #[default]
    Published,
    /// Prefactor `dn² + (2d+1)n + 3` for every `d`, which equals the general
    /// multi-layer bound at widths `(n, …, n)` and input length `n²`.
    Substituted,
}

/// Sample-complexity bound for the size-adaptive RNN on graphs with at
/// most `n` vertices and `d` recurrent layers of width `n`.
pub fn sample_complexity_graph(
    n: usize,
    d: usize,
    eps: f64,
    delta: f64,
    form: GraphBoundForm,
) -> Result<f64> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument("n and d must be >= 1".into()));
    }
    let (n, d) = (n as u128, d as u128);
    let n2 = n * n;
    let n3 = n2 * n;
    let prefactor = match (form, d) {
        (GraphBoundForm::Published, 1) => n2 + 4 * n + 3,
        _ => d * n2 + (2 * d + 1) * n + 3,
    };
    let linear = 4 * n2 * n2 + (8 + 4 * (d - 1)) * n3 + 8 * (d - 1) * n2 + 4 * n + 10;
    closed_form(prefactor, linear, eps, delta)
}

/// Bound divided by the number of graphs with at most `n` vertices.
pub fn breakeven_ratio(
    n: usize,
    d: usize,
    eps: f64,
    delta: f64,
    form: GraphBoundForm,
) -> Result<f64> {
    let m = sample_complexity_graph(n, d, eps, delta, form)?;
    let space = graph_space_size(n).to_f64().unwrap_or(f64::INFINITY);
    Ok(m / space)
}

/// Every quantity of the bound chain for one architecture.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub shape: RnnShape,
    pub params: u128,
    pub ops: u128,
    /// VC-dimension bound of the network extended by a thresholded output
    /// unit with two extra parameters, `2(W+2)(2T + log₂(8e))`.
    pub vcdim_bound: f64,
    pub vcdim_floor: u128,
    /// Pseudo-dimension bound of the real-valued network; the
    /// pseudo-dimension is at most the VC dimension above, so the two
    /// coincide.
    pub pdim_bound: f64,
    pub eps: f64,
    pub delta: f64,
    pub sample_complexity: f64,
    pub graph: Option<GraphBreakeven>,
}

/// Graph-mode extras of a [`BoundReport`].
#[derive(Clone, Debug, PartialEq)]
pub struct GraphBreakeven {
    pub n: usize,
    pub graph_space: String,
    pub breakeven_ratio: f64,
    /// Bound and ratio under [`GraphBoundForm::Substituted`].
    pub substituted_sample_complexity: f64,
    pub substituted_breakeven_ratio: f64,
}

impl BoundReport {
    pub fn for_shape(shape: RnnShape, eps: f64, delta: f64) -> Result<Self> {
        let params = param_count_multi(&shape.widths);
        let ops = op_count_multi(&shape.widths, shape.max_input_len);
        let sample_complexity = sample_complexity_multi(&shape, eps, delta)?;
        Ok(Self {
            params,
            ops,
            vcdim_bound: vcdim_bound(params + 2, ops),
            vcdim_floor: vcdim_bound_floor(params + 2, ops),
            pdim_bound: vcdim_bound(params + 2, ops),
            eps,
            delta,
            sample_complexity,
            graph: None,
            shape,
        })
    }

    pub fn for_graph(n: usize, d: usize, eps: f64, delta: f64) -> Result<Self> {
        let mut report = Self::for_shape(RnnShape::graph(n, d)?, eps, delta)?;
        report.sample_complexity =
            sample_complexity_graph(n, d, eps, delta, GraphBoundForm::Published)?;
        report.graph = Some(GraphBreakeven {
            n,
            graph_space: graph_space_size(n).to_string(),
            breakeven_ratio: breakeven_ratio(n, d, eps, delta, GraphBoundForm::Published)?,
            substituted_sample_complexity: sample_complexity_graph(
                n,
                d,
                eps,
                delta,
                GraphBoundForm::Substituted,
            )?,
            substituted_breakeven_ratio: breakeven_ratio(
                n,
                d,
                eps,
                delta,
                GraphBoundForm::Substituted,
            )?,
        });
        Ok(report)
    }

    pub const CSV_HEADER: &'static str =
        "widths,b,d,W,T,vcdim_bound,pdim_bound,eps,delta,sample_complexity,breakeven_ratio";

    pub fn csv_row(&self) -> String {
        let widths = self
            .shape
            .widths
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(";");
        let ratio = self
            .graph
            .as_ref()
            .map(|g| sig(g.breakeven_ratio))
            .unwrap_or_default();
        format!(
            "{widths},{},{},{},{},{},{},{},{},{},{ratio}",
            self.shape.max_input_len,
            self.shape.layers(),
            self.params,
            self.ops,
            sig(self.vcdim_bound),
            sig(self.pdim_bound),
            self.eps,
            self.delta,
            sig(self.sample_complexity),
        )
    }

    /// Aligned `key  value` lines.
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("widths".into(), format!("{:?}", self.shape.widths)),
            ("max input length b".into(), self.shape.max_input_len.to_string()),
            ("layers d".into(), self.shape.layers().to_string()),
            ("parameters W".into(), self.params.to_string()),
            ("operations T".into(), self.ops.to_string()),
            ("VCdim bound".into(), format!("{} (floor {})", sig(self.vcdim_bound), self.vcdim_floor)),
            ("Pdim bound".into(), sig(self.pdim_bound)),
            (
                format!("M(eps={}, delta={})", self.eps, self.delta),
                sig(self.sample_complexity),
            ),
        ];
        if let Some(g) = &self.graph {
            rows.push(("graphs with <= n vertices".into(), g.graph_space.clone()));
            rows.push((
                "break-even ratio".into(),
                format!("{} ({} %)", sig(g.breakeven_ratio), sig(100.0 * g.breakeven_ratio)),
            ));
            rows.push((
                "M, substituted prefactor".into(),
                sig(g.substituted_sample_complexity),
            ));
            rows.push((
                "break-even, substituted".into(),
                format!(
                    "{} ({} %)",
                    sig(g.substituted_breakeven_ratio),
                    sig(100.0 * g.substituted_breakeven_ratio)
                ),
            ));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }
}

/// Format with 12 significant digits in scientific notation.
pub fn sig(x: f64) -> String {
    format!("{x:.11e}")
}
