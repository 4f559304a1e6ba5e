//! Kellerman's greedy edge clique cover with the Kou–Stockmeyer–Wong
//! redundancy pass.
//!
//! Vertices are processed in index order. For vertex `i` with already
//! processed neighbours `W`:
//!
//! 1. `i` joins every existing clique contained in `W`;
//! 2. while some edge from `i` into `W` is uncovered (neighbours `U`), take
//!    the existing clique `C` with the largest `|C ∩ U|` (lowest index on
//!    ties) and emit `(C ∩ W) ∪ {i}`. If no clique meets `U`, the lowest
//!    vertex of `U` is paired with `i` instead.
//!
//! Finally every clique whose edges are all covered by the other surviving
//! cliques is dropped, scanning in creation order.

use super::{Clique, EdgeCliqueCover};
use crate::graph::{members, Graph};

pub fn kellerman_cover(g: &Graph) -> EdgeCliqueCover {
    let mut cliques: Vec<u64> = Vec::new();
    for i in 0..g.n() {
        let bit_i = 1u64 << i;
        let processed = bit_i - 1;
        let w = g.neighbors(i) & processed;
        if w == 0 {
            continue;
        }
        let mut uncovered = w;
        for c in cliques.iter_mut() {
            if *c & !w == 0 {
                uncovered &= !*c;
                *c |= bit_i;
            }
        }
        while uncovered != 0 {
            let best = cliques
                .iter()
                .enumerate()
                .map(|(k, &c)| (k, (c & uncovered).count_ones()))
                .fold(None, |acc: Option<(usize, u32)>, (k, s)| match acc {
                    Some((_, bs)) if bs >= s => acc,
                    _ => Some((k, s)),
                });
            let joined = match best {
                Some((k, s)) if s > 0 => cliques[k] & w,
                _ => uncovered & uncovered.wrapping_neg(),
            };
            uncovered &= !joined;
            cliques.push(joined | bit_i);
        }
    }
    remove_redundant(g.n(), &mut cliques);
    EdgeCliqueCover::new(cliques.into_iter().map(Clique).collect())
}

/// Bitset of vertices strictly greater than `u`.
fn above(u: usize) -> u64 {
    if u >= 63 {
        0
    } else {
        !((1u64 << (u + 1)) - 1)
    }
}

fn remove_redundant(n: usize, cliques: &mut Vec<u64>) {
    // Pair-coverage multiplicities, indexed [u * n + v].
    let mut count = vec![0u32; n * n];
    let pairs = |c: u64| members(c).flat_map(move |u| members(c & above(u)).map(move |v| (u, v)));
    for &c in cliques.iter() {
        for (u, v) in pairs(c) {
            count[u * n + v] += 1;
        }
    }
    let mut keep = vec![true; cliques.len()];
    for (k, &c) in cliques.iter().enumerate() {
        if pairs(c).all(|(u, v)| count[u * n + v] >= 2) {
            keep[k] = false;
            for (u, v) in pairs(c) {
                count[u * n + v] -= 1;
            }
        }
    }
    let mut it = keep.into_iter();
    cliques.retain(|_| it.next().unwrap());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eccn::{exact_eccn, verify_cover};
    use crate::graph::{er_generate, fixtures};

    #[test]
    fn hand_traces() {
        let t = kellerman_cover(&fixtures::triangle());
        assert_eq!(t.cliques, vec![Clique::from_vertices(&[0, 1, 2])]);
        let s = kellerman_cover(&fixtures::star3());
        assert_eq!(s.size(), 3);
        assert_eq!(kellerman_cover(&Graph::empty(5).unwrap()).size(), 0);
    }

    #[test]
    fn complete_graphs_need_one() {
        for n in 2..=20 {
            assert_eq!(kellerman_cover(&Graph::complete(n).unwrap()).size(), 1);
        }
    }

    #[test]
    fn redundancy_pass_scans_in_creation_order() {
        let mut cliques = vec![0b011, 0b110, 0b111, 0b1100];
        remove_redundant(4, &mut cliques);
        assert_eq!(cliques, vec![0b111, 0b1100]);
    }

    #[test]
    fn unprocessed_partner_gets_paired() {
        // Vertex 0 is isolated when processed, so vertex 1 has no clique to join.
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(kellerman_cover(&g).cliques, vec![Clique::from_vertices(&[0, 1])]);
    }

    #[test]
    fn valid_and_never_below_exact() {
        for seed in 0..500u64 {
            let n = 1 + seed as usize % 9;
            let p = [0.1, 0.5, 0.9][(seed / 9) as usize % 3];
            let g = er_generate(n, p, seed).unwrap();
            let cover = kellerman_cover(&g);
            assert!(verify_cover(&g, &cover).is_valid(), "{g:?} {cover}");
            assert!(cover.size() >= exact_eccn(&g, None).eccn().unwrap());
        }
    }
}
