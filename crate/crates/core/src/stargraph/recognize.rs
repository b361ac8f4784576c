use std::fmt;

use serde::{Serialize, Serializer};

use super::{metrics, LabeledMultigraph};

/// Named shape of a connected graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Recognition {
    /// `K_{l,l}`.
    CompleteBipartite(usize),
    /// Incidence graph of a projective plane of the given order.
    ProjectivePlaneIncidence(usize),
    Other,
}

impl fmt::Display for Recognition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recognition::CompleteBipartite(l) => write!(f, "K_{{{l},{l}}}"),
            Recognition::ProjectivePlaneIncidence(2) => f.write_str("Heawood"),
            Recognition::ProjectivePlaneIncidence(q) => write!(f, "projective plane incidence (order {q})"),
            Recognition::Other => f.write_str("other"),
        }
    }
}

impl Serialize for Recognition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn recognize(g: &LabeledMultigraph) -> Recognition {
    let m = metrics(g);
    if !m.bipartite || !m.is_connected() {
        return Recognition::Other;
    }
    if let Some(l) = complete_bipartite_part(g) {
        return Recognition::CompleteBipartite(l);
    }
    if let Some(d) = m.regular_degree {
        let q = d.saturating_sub(1);
        if q >= 2
            && g.order() == 2 * (q * q + q + 1)
            && m.girth == Some(6)
            && m.diameter() == Some(3)
        {
            return Recognition::ProjectivePlaneIncidence(q);
        }
    }
    Recognition::Other
}

fn complete_bipartite_part(g: &LabeledMultigraph) -> Option<usize> {
    let order = g.order();
    if order == 0 || !order.is_multiple_of(2) {
        return None;
    }
    let l = order / 2;
    if g.edge_count() != l * l {
        return None;
    }
    // 2-colour from vertex 0 (the graph is connected and bipartite)
    let adj = g.adjacency();
    let dist = super::metrics::distances(&adj, 0);
    let side: Vec<bool> = dist.iter().map(|d| d % 2 == 0).collect();
    if side.iter().filter(|&&s| s).count() != l {
        return None;
    }
    let mut seen = std::collections::BTreeSet::new();
    g.edges().iter().all(|&e| seen.insert(e)).then_some(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stargraph::circulant;

    #[test]
    fn shapes() {
        let heawood = LabeledMultigraph::plain(
            14,
            (0..7).flat_map(|i| [0usize, 1, 3].map(|d| (i, 7 + (i + d) % 7))),
        );
        assert_eq!(recognize(&heawood), Recognition::ProjectivePlaneIncidence(2));
        assert_eq!(recognize(&heawood).to_string(), "Heawood");
        assert_eq!(recognize(&circulant(6, &[1, 3])), Recognition::Other);
        let k33 = LabeledMultigraph::plain(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j))));
        assert_eq!(recognize(&k33), Recognition::CompleteBipartite(3));
        assert_eq!(recognize(&circulant(8, &[1])), Recognition::Other);
        assert_eq!(recognize(&circulant(6, &[1])), Recognition::Other);
        assert_eq!(recognize(&circulant(4, &[1])), Recognition::CompleteBipartite(2));
        assert_eq!(recognize(&circulant(4, &[2, 2])), Recognition::Other);
    }
}
