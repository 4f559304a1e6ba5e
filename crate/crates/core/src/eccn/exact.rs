//! Exact edge clique cover number.
//!
//! Any clique in a cover can be grown to a maximal clique without uncovering
//! anything, so a minimum cover exists among the maximal cliques. The search
//! runs iterative deepening on the cover size `k`: at each node it takes the
//! first uncovered edge and branches over the maximal cliques containing it,
//! pruning when `k` cliques cannot cover the remaining edges even at the best
//! per-clique coverage.

use super::{maximal_cliques, Clique, EdgeCliqueCover};
use crate::graph::{members, Graph};

/// Result of [`exact_eccn`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactOutcome {
    Solved {
        eccn: usize,
        witness: EdgeCliqueCover,
    },
    /// The node budget ran out before optimality was proven.
    Unsolved { explored: u64 },
}

impl ExactOutcome {
    pub fn eccn(&self) -> Option<usize> {
        match self {
            ExactOutcome::Solved { eccn, .. } => Some(*eccn),
            ExactOutcome::Unsolved { .. } => None,
        }
    }
}

type Uncovered = [u64; 64];

struct Search<'a> {
    cliques: &'a [u64],
    n: usize,
    budget: Option<u64>,
    explored: u64,
    chosen: Vec<usize>,
}

/// Error raised internally when the budget runs out.
struct Exhausted;

impl Search<'_> {
    fn first_uncovered(&self, state: &Uncovered) -> Option<(usize, usize)> {
        (0..self.n).find_map(|u| (state[u] != 0).then(|| (u, state[u].trailing_zeros() as usize)))
    }

    fn gain(&self, state: &Uncovered, c: u64) -> u32 {
        members(c).map(|v| (state[v] & c).count_ones()).sum::<u32>() / 2
    }

    fn remaining(&self, state: &Uncovered) -> u32 {
        state[..self.n].iter().map(|w| w.count_ones()).sum::<u32>() / 2
    }

    /// Depth-limited search for a cover of the remaining edges using at most
    /// `depth` more cliques.
    fn dfs(&mut self, state: &Uncovered, depth: usize) -> Result<bool, Exhausted> {
        let Some((u, v)) = self.first_uncovered(state) else {
            return Ok(true);
        };
        if depth == 0 {
            return Ok(false);
        }
        let left = self.remaining(state);
        let best = self
            .cliques
            .iter()
            .map(|&c| self.gain(state, c))
            .max()
            .unwrap_or(0);
        if (best as usize) * depth < left as usize {
            return Ok(false);
        }
        let pair = (1u64 << u) | (1u64 << v);
        for i in 0..self.cliques.len() {
            let c = self.cliques[i];
            if c & pair != pair {
                continue;
            }
            self.explored += 1;
            if self.budget.is_some_and(|b| self.explored > b) {
                return Err(Exhausted);
            }
            let mut next = *state;
            for w in members(c) {
                next[w] &= !c;
            }
            self.chosen.push(i);
            if self.dfs(&next, depth - 1)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

/// Greedy set cover over the maximal cliques; an upper bound and fallback
/// witness for the deepening loop.
fn greedy_cover(g: &Graph, cliques: &[u64]) -> Vec<usize> {
    let mut state = [0u64; 64];
    state[..g.n()].copy_from_slice(&(0..g.n()).map(|v| g.neighbors(v)).collect::<Vec<_>>());
    let mut picked = Vec::new();
    loop {
        let gain = |c: u64| members(c).map(|v| (state[v] & c).count_ones()).sum::<u32>();
        let Some((i, best)) = cliques
            .iter()
            .enumerate()
            .map(|(i, &c)| (i, gain(c)))
            .max_by_key(|&(i, g)| (g, std::cmp::Reverse(i)))
        else {
            break;
        };
        if best == 0 {
            break;
        }
        let c = cliques[i];
        for w in members(c) {
            state[w] &= !c;
        }
        picked.push(i);
    }
    picked
}

/// Minimum number of cliques covering every edge of `g`, with a witness.
///
/// `budget` caps the number of clique selections tried by the search; when
/// it runs out the result is [`ExactOutcome::Unsolved`], never a guess.
/// Edgeless graphs have ECCN 0 and an empty witness.
pub fn exact_eccn(g: &Graph, budget: Option<u64>) -> ExactOutcome {
    let edges = g.edge_count();
    if edges == 0 {
        return ExactOutcome::Solved {
            eccn: 0,
            witness: EdgeCliqueCover::default(),
        };
    }
    let cliques: Vec<u64> = maximal_cliques(g)
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|c| c.0)
        .collect();
    let upper = greedy_cover(g, &cliques);
    let largest = cliques.iter().map(|c| Clique(*c).edge_count()).max().unwrap_or(1);
    let lower = edges.div_ceil(largest).max(1);

    let mut state = [0u64; 64];
    for (v, slot) in state.iter_mut().enumerate().take(g.n()) {
        *slot = g.neighbors(v);
    }
    let mut search = Search {
        cliques: &cliques,
        n: g.n(),
        budget,
        explored: 0,
        chosen: Vec::new(),
    };
    let witness_of = |idx: &[usize]| EdgeCliqueCover::new(idx.iter().map(|&i| Clique(cliques[i])).collect());
    for k in lower..upper.len() {
        search.chosen.clear();
        match search.dfs(&state, k) {
            Ok(true) => {
                return ExactOutcome::Solved {
                    eccn: k,
                    witness: witness_of(&search.chosen),
                }
            }
            Ok(false) => {}
            Err(Exhausted) => {
                return ExactOutcome::Unsolved {
                    explored: search.explored,
                }
            }
        }
    }
    ExactOutcome::Solved {
        eccn: upper.len(),
        witness: witness_of(&upper),
    }
}
