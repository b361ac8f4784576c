use crate::error::{Error, Result};

use super::metrics::distances;
use super::LabeledMultigraph;

/// Largest vertex count accepted by [`are_isomorphic`].
pub const ISOMORPHISM_CAP: usize = 64;

struct Prepared {
    mult: Vec<Vec<u32>>,
    invariant: Vec<(usize, u32, Vec<usize>)>,
}

impl Prepared {
    fn new(g: &LabeledMultigraph) -> Self {
        let order = g.order();
        let mut mult = vec![vec![0u32; order]; order];
        for &(a, b) in g.edges() {
            mult[a][b] += 1;
            if a != b {
                mult[b][a] += 1;
            }
        }
        let adj = g.adjacency();
        let degrees = g.degrees();
        let invariant = (0..order)
            .map(|v| {
                let mut profile = vec![0usize; order + 1];
                for d in distances(&adj, v) {
                    profile[d.min(order)] += 1;
                }
                (degrees[v], mult[v][v], profile)
            })
            .collect();
        Prepared { mult, invariant }
    }
}

/// Label-blind isomorphism of multigraphs: a vertex bijection preserving
/// every edge multiplicity, loops included.
pub fn are_isomorphic(g: &LabeledMultigraph, h: &LabeledMultigraph) -> Result<bool> {
    for order in [g.order(), h.order()] {
        if order > ISOMORPHISM_CAP {
            return Err(Error::SizeCap {
                got: order,
                cap: ISOMORPHISM_CAP,
            });
        }
    }
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let (pg, ph) = (Prepared::new(g), Prepared::new(h));
    let mut sorted_g = pg.invariant.clone();
    let mut sorted_h = ph.invariant.clone();
    sorted_g.sort();
    sorted_h.sort();
    if sorted_g != sorted_h {
        return Ok(false);
    }

    let order = bfs_order(g);
    let mut image = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    Ok(extend(&pg, &ph, &order, 0, &mut image, &mut used))
}

fn bfs_order(g: &LabeledMultigraph) -> Vec<usize> {
    let adj = g.adjacency();
    let mut seen = vec![false; g.order()];
    let mut out = Vec::with_capacity(g.order());
    for start in 0..g.order() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let from = out.len();
        out.push(start);
        let mut i = from;
        while i < out.len() {
            for &(w, _) in &adj[out[i]] {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
            i += 1;
        }
    }
    out
}

fn extend(
    g: &Prepared,
    h: &Prepared,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for candidate in 0..used.len() {
        if used[candidate] || g.invariant[v] != h.invariant[candidate] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&w| g.mult[v][w] == h.mult[candidate][image[w]]);
        if !consistent {
            continue;
        }
        image[v] = candidate;
        used[candidate] = true;
        if extend(g, h, order, depth + 1, image, used) {
            return true;
        }
        used[candidate] = false;
        image[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stargraph::circulant;

    fn complete_bipartite(l: usize) -> LabeledMultigraph {
        LabeledMultigraph::plain(2 * l, (0..l).flat_map(|i| (0..l).map(move |j| (i, l + j))))
    }

    #[test]
    fn circulant_k44() {
        let a = circulant(8, &[1, 5]);
        let b = circulant(8, &[1, 3]);
        assert!(are_isomorphic(&a, &b).unwrap());
        assert!(are_isomorphic(&a, &complete_bipartite(4)).unwrap());
    }

    #[test]
    fn distinguishes() {
        let hexagon = circulant(6, &[1]);
        assert!(!are_isomorphic(&complete_bipartite(3), &hexagon).unwrap());
        // same degree sequence, different structure: C6 vs two triangles
        let triangles = LabeledMultigraph::plain(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(!are_isomorphic(&hexagon, &triangles).unwrap());
        // multiplicities matter
        let doubled = circulant(4, &[2, 2]);
        let square = circulant(4, &[1]);
        assert!(!are_isomorphic(&doubled, &square).unwrap());
    }

    #[test]
    fn relabelled_copy() {
        let g = circulant(10, &[1, 4]);
        let perm = [3usize, 7, 0, 9, 2, 5, 8, 1, 6, 4];
        let h = LabeledMultigraph::plain(10, g.edges().iter().map(|&(a, b)| (perm[a], perm[b])));
        assert!(are_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn size_cap() {
        let big = circulant(65, &[1]);
        assert!(matches!(are_isomorphic(&big, &big), Err(Error::SizeCap { .. })));
    }
}
