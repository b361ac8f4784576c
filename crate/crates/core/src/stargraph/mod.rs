//! Star graphs of cyclic presentations.
//!
//! Two independent constructions live here: [`build_star_graph`] works from
//! the symmetrized closure of an arbitrary relator list, while
//! [`structural_star_graph`] emits edges directly from the subscript
//! difference multisets of the defining word. They must agree edge for edge.

mod export;
mod iso;
mod metrics;
mod recognize;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::freeword::{Letter, Word};
use crate::gcd;
use crate::presentation::{freely_redundant_oracle, RedundancyKind, RedundancyReport};

pub use export::{to_dot, GraphJson};
pub use iso::{are_isomorphic, ISOMORPHISM_CAP};
pub use metrics::{metrics, GraphMetrics};
pub use recognize::{recognize, Recognition};

/// Vertex label: `x_i`, `x_i^-1`, or a plain circulant vertex `v_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Gen { index: u32, positive: bool },
    Plain(u32),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Gen { index, positive: true } => write!(f, "x{index}"),
            Label::Gen { index, positive: false } => write!(f, "x{index}-"),
            Label::Plain(i) => write!(f, "v{i}"),
        }
    }
}

/// Undirected multigraph with labelled vertices. Loops and parallel edges are
/// allowed; edges are stored normalized (`a <= b`) and sorted, so `==`
/// compares labelled edge multisets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledMultigraph {
    labels: Vec<Label>,
    edges: Vec<(usize, usize)>,
}

impl LabeledMultigraph {
    pub fn new(labels: Vec<Label>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let order = labels.len();
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| {
                assert!(a < order && b < order, "edge endpoint out of range");
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        LabeledMultigraph { labels, edges }
    }

    /// Unlabelled graph on `v_0..v_{order-1}`.
    pub fn plain(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        LabeledMultigraph::new((0..order as u32).map(Label::Plain).collect(), edges)
    }

    /// The `2n` star-graph vertices `x_0..x_{n-1}, x_0^-1..x_{n-1}^-1`.
    pub fn star_labels(n: u32) -> Vec<Label> {
        [true, false]
            .into_iter()
            .flat_map(|positive| (0..n).map(move |index| Label::Gen { index, positive }))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Neighbour lists as `(neighbour, edge id)`; a loop appears twice.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.order()];
        for (id, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, id));
            adj[b].push((a, id));
        }
        adj
    }

    /// Degrees counted with multiplicity (a loop adds 2).
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.order()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for start in 0..self.order() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                for &(v, _) in &adj[comp[i]] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on `vertices` (kept in the given order).
    pub fn induced(&self, vertices: &[usize]) -> LabeledMultigraph {
        let mut position = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let edges = self.edges.iter().filter(|&&(a, b)| position[a] != usize::MAX && position[b] != usize::MAX).map(|&(a, b)| (position[a], position[b]));
        LabeledMultigraph::new(vertices.iter().map(|&v| self.labels[v]).collect(), edges)
    }

    pub fn component_graphs(&self) -> Vec<LabeledMultigraph> {
        self.components().iter().map(|c| self.induced(c)).collect()
    }
}

fn star_vertex(n: u32, letter: Letter) -> usize {
    letter.index as usize + if letter.positive { 0 } else { n as usize }
}

/// Star graph from a list of relators: one edge `x - y` per inverse pair
/// `{x y^-1 u, y x^-1 u^-1}` of distinct words in the symmetrized closure.
/// Relators are first replaced by their roots and freely redundant ones are
/// dropped; neither changes the result.
pub fn build_star_graph(relators: &[Word], n: u32) -> Result<LabeledMultigraph> {
    let mut roots = Vec::with_capacity(relators.len());
    for r in relators {
        if r.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                word: r.rank(),
            });
        }
        if !r.is_cyclically_reduced() {
            return Err(Error::NotCyclicallyReduced(r.to_string()));
        }
        if !r.is_empty() {
            roots.push(r.root()?.root);
        }
    }
    let redundant = freely_redundant_oracle(&roots);
    let mut closure: BTreeSet<Word> = BTreeSet::new();
    for (i, r) in roots.iter().enumerate() {
        if redundant.contains(&i) {
            continue;
        }
        for base in [r.clone(), r.inverse()] {
            for s in 0..base.len() {
                closure.insert(base.cyclic_permute(s as i64));
            }
        }
    }
    assert!(closure.len().is_multiple_of(2), "symmetrized closure must pair up");

    let mut edges = Vec::with_capacity(closure.len() / 2);
    for word in &closure {
        let len = word.len() as i64;
        let partner = word.inverse().cyclic_permute(len - 2);
        debug_assert!(closure.contains(&partner) && partner != *word);
        if *word < partner {
            let letters = word.letters();
            let x = letters[0];
            let y = letters[1 % letters.len()].inverse();
            edges.push((star_vertex(n, x), star_vertex(n, y)));
        }
    }
    Ok(LabeledMultigraph::new(LabeledMultigraph::star_labels(n), edges))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Orientable,
    NonOrientable,
}

/// Subscript differences of the length-2 subwords that determine the star
/// graph.
///
/// Orientable: the `l(u)` subwords of `u . theta^h(first letter of u)`, binned
/// into `a` (`x_i x_{i+a}^-1`), `b` (`x_i^-1 x_{i+b}`), `q_plus` (`x_i
/// x_{i+q}`), `q_minus` (`x_{i+q}^-1 x_i^-1`); `a_bar`/`b_bar` equal `a`/`b`.
///
/// Non-orientable (`w ~ u . theta^{n/2}(u)^-1`): the `l(u) - 1` subwords of
/// `u`, binned the same way into the primed sets, with `a_bar`/`b_bar` the
/// primed sets plus two `n/2` entries placed by the signs of the first and
/// last letters of `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceMultisets {
    pub n: u32,
    pub flavor: Flavor,
    pub u: Word,
    pub h: u32,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub q_plus: Vec<u32>,
    pub q_minus: Vec<u32>,
    pub a_bar: Vec<u32>,
    pub b_bar: Vec<u32>,
}

impl DifferenceMultisets {
    pub fn orientable(u: &Word, h: u32) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::EmptyWord);
        }
        let n = u.rank();
        let closing = u.first().map(|l| Letter::new((l.index + h) % n, l.positive));
        let mut scanned = u.letters().to_vec();
        scanned.extend(closing);
        let mut ms = DifferenceMultisets::binned(n, Flavor::Orientable, u, h, &scanned);
        ms.a_bar = ms.a.clone();
        ms.b_bar = ms.b.clone();
        Ok(ms)
    }

    pub fn non_orientable(u: &Word) -> Result<Self> {
        let n = u.rank();
        if !n.is_multiple_of(2) {
            return Err(Error::Multisets(format!("non-orientable flavor needs even n, got {n}")));
        }
        let (first, last) = match (u.first(), u.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(Error::EmptyWord),
        };
        let mut ms = DifferenceMultisets::binned(n, Flavor::NonOrientable, u, n / 2, u.letters());
        let half = n / 2;
        ms.a_bar = ms.a.clone();
        ms.b_bar = ms.b.clone();
        match (first.positive, last.positive) {
            (true, false) => ms.b_bar.extend([half, half]),
            (false, true) => ms.a_bar.extend([half, half]),
            _ => {
                ms.a_bar.push(half);
                ms.b_bar.push(half);
            }
        }
        Ok(ms)
    }

    fn binned(n: u32, flavor: Flavor, u: &Word, h: u32, letters: &[Letter]) -> Self {
        let mut ms = DifferenceMultisets {
            n,
            flavor,
            u: u.clone(),
            h,
            a: Vec::new(),
            b: Vec::new(),
            q_plus: Vec::new(),
            q_minus: Vec::new(),
            a_bar: Vec::new(),
            b_bar: Vec::new(),
        };
        let diff = |from: u32, to: u32| (to + n - from) % n;
        for pair in letters.windows(2) {
            let (x, y) = (pair[0], pair[1]);
            match (x.positive, y.positive) {
                (true, false) => ms.a.push(diff(x.index, y.index)),
                (false, true) => ms.b.push(diff(x.index, y.index)),
                (true, true) => ms.q_plus.push(diff(x.index, y.index)),
                (false, false) => ms.q_minus.push(diff(y.index, x.index)),
            }
        }
        ms
    }

    /// Builds the multisets from a redundancy report (root-level witnesses).
    pub fn from_report(report: &RedundancyReport) -> Result<Self> {
        match report.kind {
            RedundancyKind::NonOrientable => {
                let u = report
                    .half_word
                    .as_ref()
                    .ok_or_else(|| Error::Multisets("report has no half word".into()))?;
                DifferenceMultisets::non_orientable(u)
            }
            _ => DifferenceMultisets::orientable(&report.period.u, report.period.h),
        }
    }

    /// `Q = Q+ ⊎ Q-`.
    pub fn q(&self) -> Vec<u32> {
        self.q_plus.iter().chain(&self.q_minus).copied().collect()
    }

    pub fn l_u(&self) -> usize {
        self.u.len()
    }

    /// `sum A + sum B + sum Q+ - sum Q- mod n` (orientable flavor only).
    pub fn congruence_residue(&self) -> u32 {
        let n = self.n as u64;
        let sum = |v: &[u32]| v.iter().map(|&x| x as u64).sum::<u64>();
        let neg = (n - sum(&self.q_minus) % n) % n;
        ((sum(&self.a) + sum(&self.b) + sum(&self.q_plus) + neg) % n) as u32
    }

    pub fn satisfies_congruence(&self) -> bool {
        self.flavor == Flavor::Orientable && self.congruence_residue() == self.h % self.n
    }

    /// `gcd(n, a for a in a_bar)`.
    pub fn d_a(&self) -> u32 {
        self.a_bar.iter().fold(self.n, |g, &a| gcd(g, a))
    }

    pub fn d_b(&self) -> u32 {
        self.b_bar.iter().fold(self.n, |g, &b| gcd(g, b))
    }

    /// `gcd(n, A, B, q - q0)` and `q0`, or `None` when `Q` is empty.
    pub fn d(&self) -> Option<(u32, u32)> {
        let q = self.q();
        let q0 = *q.first()?;
        let n = self.n;
        let g = self
            .a_bar
            .iter()
            .chain(&self.b_bar)
            .copied()
            .chain(q.iter().map(|&x| (x + n - q0) % n))
            .fold(n, gcd);
        Some((g, q0))
    }
}

/// Star graph emitted directly from the difference multisets: edges `x_i -
/// x_{i+a}`, `x_i^-1 - x_{i+b}^-1`, `x_i - x_{i+q}^-1` for every `i`, plus in
/// the non-orientable case the `n/2`-chords of `a_bar`/`b_bar` beyond the
/// primed sets for `i < n/2` only.
pub fn structural_star_graph(ms: &DifferenceMultisets, l_u: usize) -> Result<LabeledMultigraph> {
    let n = ms.n as usize;
    let q = ms.q();
    let scanned = ms.a.len() + ms.b.len() + q.len();
    let expected = match ms.flavor {
        Flavor::Orientable => l_u,
        Flavor::NonOrientable => l_u.saturating_sub(1),
    };
    if l_u == 0 || scanned != expected || ms.u.len() != l_u {
        return Err(Error::Multisets(format!(
            "multisets hold {scanned} differences, inconsistent with l(u) = {l_u}"
        )));
    }
    let pos = |i: usize| i % n;
    let neg = |i: usize| n + i % n;
    let mut edges = Vec::with_capacity(n * l_u);
    for i in 0..n {
        for &a in &ms.a {
            edges.push((pos(i), pos(i + a as usize)));
        }
        for &b in &ms.b {
            edges.push((neg(i), neg(i + b as usize)));
        }
        for &x in &q {
            edges.push((pos(i), neg(i + x as usize)));
        }
    }
    if ms.flavor == Flavor::NonOrientable {
        let half = n / 2;
        let extra_a = ms.a_bar.len() - ms.a.len();
        let extra_b = ms.b_bar.len() - ms.b.len();
        for i in 0..half {
            edges.extend(std::iter::repeat_n((pos(i), pos(i + half)), extra_a));
            edges.extend(std::iter::repeat_n((neg(i), neg(i + half)), extra_b));
        }
    }
    Ok(LabeledMultigraph::new(
        LabeledMultigraph::star_labels(ms.n),
        edges,
    ))
}

/// Component structure predicted from the multisets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    /// Vertex ids (star-graph numbering), each sorted; ordered by least vertex.
    pub components: Vec<Vec<usize>>,
    pub d_a: u32,
    pub d_b: u32,
    pub d: Option<u32>,
    pub q0: Option<u32>,
}

pub fn predicted_components(ms: &DifferenceMultisets) -> ComponentDecomposition {
    let n = ms.n as usize;
    let (d_a, d_b) = (ms.d_a(), ms.d_b());
    let mut components: Vec<Vec<usize>> = match ms.d() {
        Some((d, q0)) => {
            let d = d as usize;
            (0..d)
                .map(|j| {
                    (0..n / d)
                        .flat_map(|t| [j + t * d, n + (j + t * d + q0 as usize) % n])
                        .collect()
                })
                .collect()
        }
        None => {
            let positive = (0..d_a as usize)
                .map(|j| (0..n / d_a as usize).map(|t| j + t * d_a as usize).collect());
            let negative = (0..d_b as usize)
                .map(|j| (0..n / d_b as usize).map(|t| n + j + t * d_b as usize).collect());
            positive.chain(negative).collect()
        }
    };
    for c in &mut components {
        c.sort_unstable();
    }
    components.sort();
    let d = ms.d();
    ComponentDecomposition {
        components,
        d_a,
        d_b,
        d: d.map(|x| x.0),
        q0: d.map(|x| x.1),
    }
}

/// `circ_n(A)`: edges `v_i - v_{i+a}` for every `a` in the multiset and every
/// `i`.
pub fn circulant(n: u32, a: &[u32]) -> LabeledMultigraph {
    let n = n as usize;
    let edges = a
        .iter()
        .flat_map(|&x| (0..n).map(move |i| (i, (i + x as usize) % n)));
    LabeledMultigraph::plain(n, edges)
}

/// `circ'_n(A)`: as [`circulant`], but when `n/2` occurs in `A` one edge
/// `v_i - v_{i+n/2}` is removed for each `n/2 <= i < n`.
pub fn circulant_prime(n: u32, a: &[u32]) -> LabeledMultigraph {
    let full = circulant(n, a);
    if !n.is_multiple_of(2) || !a.iter().any(|&x| x % n == n / 2) {
        return full;
    }
    let half = (n / 2) as usize;
    let mut edges = full.edges().to_vec();
    for i in half..n as usize {
        let chord = ((i + half) % n as usize).min(i);
        let chord = (chord, chord + half);
        let at = edges.iter().position(|&e| e == chord).expect("chord present");
        edges.remove(at);
    }
    LabeledMultigraph::plain(n as usize, edges)
}
