use super::Graph;
use crate::error::{Error, Result};

/// Row-major adjacency matrix of a graph, zero-padded to `n_max²` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatEncoding {
    bits: Vec<u8>,
    true_n: usize,
    n_max: usize,
}

impl FlatEncoding {
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn true_n(&self) -> usize {
        self.true_n
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The encoding as a real-valued input sequence.
    pub fn to_input(&self) -> Vec<f64> {
        self.bits.iter().map(|&b| f64::from(b)).collect()
    }
}

/// Serialize the full `n × n` adjacency matrix (both halves, zero diagonal)
/// row-major, then pad with zeros to length `n_max²`.
pub fn flatten(g: &Graph, n_max: usize) -> Result<FlatEncoding> {
    let n = g.n();
    if n > n_max {
        return Err(Error::TooLarge { n, n_max });
    }
    let mut bits = vec![0u8; n_max * n_max];
    for u in 0..n {
        for v in 0..n {
            bits[u * n + v] = u8::from(g.has_edge(u, v));
        }
    }
    Ok(FlatEncoding {
        bits,
        true_n: n,
        n_max,
    })
}

/// Inverse of [`flatten`]. Reads the leading `true_n²` entries as a matrix and
/// rejects encodings that are not symmetric, have a set diagonal, or carry
/// nonzero padding.
pub fn unflatten(enc: &FlatEncoding) -> Result<Graph> {
    let n = enc.true_n;
    let mut g = Graph::empty(n)?;
    let at = |u: usize, v: usize| enc.bits[u * n + v];
    for u in 0..n {
        if at(u, u) != 0 {
            return Err(Error::InvalidArgument(format!("nonzero diagonal at {u}")));
        }
        for v in u + 1..n {
            if at(u, v) != at(v, u) {
                return Err(Error::InvalidArgument(format!(
                    "asymmetric entry ({u}, {v})"
                )));
            }
            if at(u, v) == 1 {
                g.insert_edge(u, v);
            }
        }
    }
    if enc.bits[n * n..].iter().any(|&b| b != 0) {
        return Err(Error::InvalidArgument("nonzero padding".into()));
    }
    Ok(g)
}
