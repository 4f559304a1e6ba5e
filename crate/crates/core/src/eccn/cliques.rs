use super::Clique;
use crate::graph::{members, Graph};

/// All inclusion-maximal cliques of `g`, each once, sorted lexicographically
/// by their increasing vertex lists. Isolated vertices appear as singleton
/// cliques.
///
/// Bron–Kerbosch over bitsets, pivoting on the vertex of `P ∪ X` with the
/// most neighbours in `P`.
pub fn maximal_cliques(g: &Graph) -> Vec<Clique> {
    let mut out = Vec::new();
    expand(g, 0, g.vertex_mask(), 0, &mut out);
    out.sort_by_cached_key(|c| c.vertices());
    out
}

fn expand(g: &Graph, r: u64, mut p: u64, mut x: u64, out: &mut Vec<Clique>) {
    if p == 0 {
        if x == 0 {
            out.push(Clique(r));
        }
        return;
    }
    let pivot = members(p | x)
        .max_by_key(|&u| ((p & g.neighbors(u)).count_ones(), std::cmp::Reverse(u)))
        .expect("P is nonempty");
    for v in members(p & !g.neighbors(pivot)) {
        let nv = g.neighbors(v);
        expand(g, r | (1u64 << v), p & nv, x & nv, out);
        p &= !(1u64 << v);
        x |= 1u64 << v;
    }
}
