//! Undirected simple graphs on at most 64 vertices.
//!
//! Each vertex's neighbourhood is a single `u64` bitset, so vertex sets are
//! plain machine words throughout the crate.

mod codec;
mod encoding;
mod space;

pub use codec::{decode_record, encode_record};
pub use encoding::{flatten, unflatten, FlatEncoding};
pub use space::graph_space_size;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// Iterate the set bits of a vertex set in increasing order.
pub fn members(mut set: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

/// Vertex set containing exactly the listed vertices.
pub fn vertex_set(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0u64, |acc, &v| acc | (1u64 << v))
}

/// Undirected graph without self-loops.
///
/// `adj[v]` has bit `u` set iff `{u, v}` is an edge. The matrix is kept
/// symmetric with a zero diagonal by every constructor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let all = g.vertex_mask();
        for v in 0..n {
            g.adj[v] = all & !(1u64 << v);
        }
        Ok(g)
    }

    /// Build a graph from an edge list. Duplicate edges are harmless;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) references a vertex >= {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Bitset of all vertices `0..n`.
    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in row-major upper-triangle order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            let higher = self.adj[u] & !((1u64 << u) | ((1u64 << u) - 1));
            members(higher).map(move |v| (u, v))
        })
    }

    /// True iff every pair of distinct members of `set` is adjacent.
    pub fn is_clique(&self, set: u64) -> bool {
        if set & !self.vertex_mask() != 0 {
            return false;
        }
        members(set).all(|v| (set & !(1u64 << v)) & !self.adj[v] == 0)
    }
}

/// Erdős–Rényi `G(n, p)`: each vertex pair becomes an edge independently with
/// probability `p`. Pairs are drawn in row-major upper-triangle order from a
/// ChaCha8 stream seeded with `seed`.
pub fn er_generate(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability(p));
    }
    let mut g = Graph::empty(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                g.insert_edge(u, v);
            }
        }
    }
    Ok(g)
}
