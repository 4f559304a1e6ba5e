use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{members, Graph};

/// A vertex set intended to induce a complete subgraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clique(pub u64);

impl Clique {
    pub fn from_vertices(vertices: &[usize]) -> Self {
        Clique(crate::graph::vertex_set(vertices))
    }

    pub fn vertices(&self) -> Vec<usize> {
        members(self.0).collect()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    /// Number of vertex pairs inside the clique.
    pub fn edge_count(&self) -> usize {
        let k = self.len();
        k * k.saturating_sub(1) / 2
    }
}

impl fmt::Display for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in members(self.0).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// An ordered list of cliques claimed to cover every edge of a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeCliqueCover {
    pub cliques: Vec<Clique>,
}

impl EdgeCliqueCover {
    pub fn new(cliques: Vec<Clique>) -> Self {
        Self { cliques }
    }

    pub fn size(&self) -> usize {
        self.cliques.len()
    }

    /// Parse the `{v,v,...};{...}` witness format. The empty string is the
    /// empty cover.
    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Ok(Self::default());
        }
        let cliques = text
            .split(';')
            .map(|part| {
                let inner = part
                    .strip_prefix('{')
                    .and_then(|p| p.strip_suffix('}'))
                    .ok_or_else(|| Error::parse(1, "witness", format!("bad clique {part:?}")))?;
                let mut set = 0u64;
                for tok in inner.split(',').filter(|t| !t.is_empty()) {
                    let v: usize = tok
                        .parse()
                        .ok()
                        .filter(|&v| v < 64)
                        .ok_or_else(|| Error::parse(1, "witness", format!("bad vertex {tok:?}")))?;
                    set |= 1u64 << v;
                }
                Ok(Clique(set))
            })
            .collect::<Result<_>>()?;
        Ok(Self { cliques })
    }
}

impl fmt::Display for EdgeCliqueCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cliques.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Outcome of [`verify_cover`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverCheck {
    Valid,
    /// Clique `index` contains the non-adjacent (or out-of-range) pair `pair`.
    NotAClique { index: usize, pair: (usize, usize) },
    /// Edge not induced by any listed clique.
    Uncovered((usize, usize)),
}

impl CoverCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, CoverCheck::Valid)
    }
}

/// Check that every listed set is a clique of `g` and that together they
/// induce every edge. Reports the first violation found, scanning cliques in
/// list order and then edges in row-major order.
pub fn verify_cover(g: &Graph, cover: &EdgeCliqueCover) -> CoverCheck {
    let n = g.n();
    for (index, c) in cover.cliques.iter().enumerate() {
        if let Some(v) = members(c.0).find(|&v| v >= n) {
            let u = members(c.0).next().unwrap_or(v);
            return CoverCheck::NotAClique {
                index,
                pair: (u.min(v), u.max(v)),
            };
        }
        for u in members(c.0) {
            let bad = (c.0 & !(1u64 << u)) & !g.neighbors(u);
            if let Some(v) = members(bad).find(|&v| v > u) {
                return CoverCheck::NotAClique {
                    index,
                    pair: (u, v),
                };
            }
        }
    }
    let mut covered = vec![0u64; n];
    for c in &cover.cliques {
        for v in members(c.0) {
            covered[v] |= c.0 & !(1u64 << v);
        }
    }
    for u in 0..n {
        let missing = g.neighbors(u) & !covered[u];
        if let Some(v) = members(missing).find(|&v| v > u) {
            return CoverCheck::Uncovered((u, v));
        }
    }
    CoverCheck::Valid
}
