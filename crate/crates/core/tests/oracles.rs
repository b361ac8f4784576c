//! Independent brute-force oracles for the derived quantities.

use std::collections::VecDeque;

use cycpres::fixtures::special_fixtures;
use cycpres::search::{crossvalidate, enumerate_words, EnumSpec, Filters};
use cycpres::special::{is_irreducible, is_perfect_difference_set};
use cycpres::stargraph::{build_star_graph, metrics, LabeledMultigraph};
use cycpres::{CyclicPresentation, Letter, Word};
use proptest::prelude::*;

/// Floyd–Warshall distances; `usize::MAX` for unreachable pairs.
fn all_pairs(g: &LabeledMultigraph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut d = vec![vec![usize::MAX; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(a, b) in g.edges() {
        if a != b {
            d[a][b] = 1;
            d[b][a] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] != usize::MAX && d[k][j] != usize::MAX {
                    d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
                }
            }
        }
    }
    d
}

/// Girth as `min over edges e=(a,b) of dist_{G-e}(a,b) + 1`.
fn girth_by_edge_deletion(g: &LabeledMultigraph) -> Option<usize> {
    let edges = g.edges();
    let mut best: Option<usize> = None;
    for (skip, &(a, b)) in edges.iter().enumerate() {
        if a == b {
            return Some(1);
        }
        let mut dist = vec![usize::MAX; g.order()];
        dist[a] = 0;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for (id, &(p, q)) in edges.iter().enumerate() {
                if id == skip {
                    continue;
                }
                for (from, to) in [(p, q), (q, p)] {
                    if from == x && dist[to] == usize::MAX {
                        dist[to] = dist[x] + 1;
                        queue.push_back(to);
                    }
                }
            }
        }
        if dist[b] != usize::MAX {
            let c = dist[b] + 1;
            best = Some(best.map_or(c, |x: usize| x.min(c)));
        }
    }
    best
}

fn bipartite_by_two_colouring(g: &LabeledMultigraph) -> bool {
    let d = all_pairs(g);
    g.edges().iter().all(|&(a, b)| {
        let root = (0..g.order()).find(|&r| d[r][a] != usize::MAX).unwrap();
        d[root][a] % 2 != d[root][b] % 2
    })
}

fn check_metrics(g: &LabeledMultigraph) {
    let m = metrics(g);
    let d = all_pairs(g);
    let diameters: Vec<usize> = g
        .components()
        .iter()
        .map(|c| c.iter().flat_map(|&i| c.iter().map(move |&j| (i, j))).map(|(i, j)| d[i][j]).max().unwrap())
        .collect();
    assert_eq!(m.diameters, diameters);
    assert_eq!(m.girth, girth_by_edge_deletion(g));
    assert_eq!(m.bipartite, bipartite_by_two_colouring(g));
}

#[test]
fn fixture_star_graph_metrics_match_brute_force() {
    for f in special_fixtures() {
        let p = &f.presentation;
        check_metrics(&build_star_graph(&p.relators(), p.n()).unwrap());
    }
}

proptest! {
    #[test]
    fn random_star_graph_metrics_match_brute_force(
        n in 1u32..6,
        raw in prop::collection::vec((0u32..6, any::<bool>()), 1..7),
    ) {
        let w = Word::new(n, raw.into_iter().map(|(i, s)| Letter::new(i % n, s))).unwrap();
        prop_assume!(w.is_cyclically_reduced());
        let p = CyclicPresentation::new(n, w).unwrap();
        check_metrics(&build_star_graph(&p.relators(), p.n()).unwrap());
    }

    #[test]
    fn irreducible_iff_subscript_graph_connected(
        n in 1u32..12,
        raw in prop::collection::vec((0u32..12, any::<bool>()), 1..8),
    ) {
        let w = Word::new(n, raw.into_iter().map(|(i, s)| Letter::new(i % n, s))).unwrap();
        prop_assume!(w.is_cyclically_reduced());
        let p = CyclicPresentation::new(n, w).unwrap();
        // Join consecutive subscripts of every relator and test connectivity.
        let mut parent: Vec<usize> = (0..n as usize).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for r in p.relators() {
            let l = r.letters();
            for j in 0..l.len() {
                let (a, b) = (l[j].index as usize, l[(j + 1) % l.len()].index as usize);
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
        let roots = (0..n as usize).filter(|&x| find(&mut parent, x) == x).count();
        prop_assert_eq!(is_irreducible(&p), roots == 1);
    }
}

/// `D` is a perfect difference set iff its translates form the lines of a
/// projective plane: any two points share exactly one line.
fn translates_form_plane(d: &[u64], modulus: u64) -> bool {
    let lines: Vec<Vec<u64>> = (0..modulus).map(|t| d.iter().map(|x| (x + t) % modulus).collect()).collect();
    (0..modulus).all(|a| {
        (a + 1..modulus).all(|b| lines.iter().filter(|l| l.contains(&a) && l.contains(&b)).count() == 1)
    })
}

#[test]
fn difference_sets_match_plane_oracle() {
    let mut found = [0usize; 2];
    for (slot, (k, modulus)) in [(3usize, 7u64), (4, 13)].into_iter().enumerate() {
        let subsets = (0..modulus).fold(vec![vec![]], |acc: Vec<Vec<u64>>, x| {
            acc.into_iter()
                .flat_map(|s| {
                    let mut t = s.clone();
                    t.push(x);
                    [s, t]
                })
                .filter(|s| s.len() <= k)
                .collect()
        });
        for s in subsets.into_iter().filter(|s| s.len() == k) {
            let expected = translates_form_plane(&s, modulus);
            assert_eq!(is_perfect_difference_set(&s).unwrap(), expected, "{s:?}");
            found[slot] += usize::from(expected);
        }
    }
    // Seven translates of two sets mod 7, thirteen of four sets mod 13.
    assert_eq!(found, [14, 52]);
}

#[test]
fn enumeration_is_independent_of_thread_count() {
    let spec = EnumSpec::new(1..=5, 1..=5).with_filters(Filters::default());
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| (enumerate_words(&spec).unwrap(), crossvalidate(&spec).unwrap().body_lines()))
    };
    let (words, lines) = run(1);
    assert!(!words.is_empty());
    for threads in [2, 5] {
        assert_eq!(run(threads), (words.clone(), lines.clone()));
    }
}
