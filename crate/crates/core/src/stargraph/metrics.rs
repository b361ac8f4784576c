use std::collections::VecDeque;

use serde::Serialize;

use super::LabeledMultigraph;

/// Summary statistics of a multigraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    /// Length of a shortest cyclically reduced closed path; `None` for forests.
    pub girth: Option<usize>,
    /// Diameter of each component, in component order.
    pub diameters: Vec<usize>,
    pub bipartite: bool,
    /// Common degree when the graph is regular.
    pub regular_degree: Option<usize>,
    pub component_count: usize,
    /// Degrees in vertex order, counted with multiplicity.
    pub degree_sequence: Vec<usize>,
}

impl GraphMetrics {
    pub fn min_degree(&self) -> usize {
        self.degree_sequence.iter().copied().min().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count == 1
    }

    /// Diameter of a connected graph; `None` when disconnected or empty.
    pub fn diameter(&self) -> Option<usize> {
        match self.diameters.as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }
}

pub fn metrics(g: &LabeledMultigraph) -> GraphMetrics {
    let degrees = g.degrees();
    let regular_degree = match degrees.split_first() {
        Some((&d, rest)) if rest.iter().all(|&x| x == d) => Some(d),
        _ => None,
    };
    let adj = g.adjacency();
    let components = g.components();
    GraphMetrics {
        girth: girth(g.order(), &adj),
        diameters: components.iter().map(|c| diameter(&adj, c)).collect(),
        bipartite: is_bipartite(g.order(), &adj),
        regular_degree,
        component_count: components.len(),
        degree_sequence: degrees,
    }
}

/// Breadth-first distances from `root`; unreachable vertices get `usize::MAX`.
pub(crate) fn distances(adj: &[Vec<(usize, usize)>], root: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &(w, _) in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn diameter(adj: &[Vec<(usize, usize)>], component: &[usize]) -> usize {
    component
        .iter()
        .map(|&v| {
            distances(adj, v)
                .into_iter()
                .filter(|&d| d != usize::MAX)
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// BFS from every vertex, closing a cycle whenever a non-tree edge instance
/// is met. Tracking edge ids rather than vertices makes loops length 1 and
/// parallel pairs length 2.
fn girth(order: usize, adj: &[Vec<(usize, usize)>]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for root in 0..order {
        let mut dist = vec![usize::MAX; order];
        let mut via = vec![usize::MAX; order];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[v] + 1 >= b) {
                break;
            }
            for &(w, id) in &adj[v] {
                if id == via[v] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    via[w] = id;
                    queue.push_back(w);
                } else {
                    let cycle = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(cycle, |b| b.min(cycle)));
                }
            }
        }
    }
    best
}

fn is_bipartite(order: usize, adj: &[Vec<(usize, usize)>]) -> bool {
    let mut colour = vec![u8::MAX; order];
    for start in 0..order {
        if colour[start] != u8::MAX {
            continue;
        }
        colour[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &adj[v] {
                if colour[w] == u8::MAX {
                    colour[w] = 1 - colour[v];
                    queue.push_back(w);
                } else if colour[w] == colour[v] {
                    return false;
                }
            }
        }
    }
    true
}
