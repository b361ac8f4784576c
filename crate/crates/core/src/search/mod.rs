//! Exhaustive enumeration of defining words, optionally reduced modulo the
//! symmetries generated by the shift, rotation and inversion.

mod crossvalidate;
mod reorder;

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::freeword::{Letter, Word};
use crate::presentation::CyclicPresentation;
use crate::special::{is_irreducible, is_special_direct, SpecialCertificate};

pub use crossvalidate::{
    crossvalidate, crossvalidate_words, orbit_spot_check, CheckTally, Counterexample, CrossReport,
};
pub use reorder::ReorderBuffer;

/// Default cap on the number of raw candidates `sum (2n)^k`.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Filters {
    pub cyclically_reduced: bool,
    pub not_proper_power: bool,
    pub positive_only: bool,
    pub irreducible_only: bool,
    pub up_to_symmetry: bool,
}

impl Default for Filters {
    fn default() -> Self {
        Filters {
            cyclically_reduced: true,
            not_proper_power: false,
            positive_only: false,
            irreducible_only: false,
            up_to_symmetry: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumSpec {
    pub n_range: RangeInclusive<u32>,
    pub k_range: RangeInclusive<usize>,
    pub filters: Filters,
    pub budget: u128,
}

impl EnumSpec {
    pub fn new(n_range: RangeInclusive<u32>, k_range: RangeInclusive<usize>) -> Self {
        EnumSpec {
            n_range,
            k_range,
            filters: Filters::default(),
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_filters(mut self, filters: Filters) -> Self {
        self.filters = filters;
        self
    }

    /// `sum over n, k of (2n)^k`, saturating.
    pub fn raw_candidates(&self) -> u128 {
        let mut total: u128 = 0;
        for n in self.n_range.clone() {
            for k in self.k_range.clone() {
                let per = (2 * n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
                total = total.saturating_add(per);
            }
        }
        total
    }

    fn check_budget(&self) -> Result<()> {
        let needed = self.raw_candidates();
        if needed > self.budget {
            return Err(Error::Budget {
                needed,
                budget: self.budget,
            });
        }
        if *self.n_range.start() == 0 {
            return Err(Error::Rank(0));
        }
        Ok(())
    }
}

/// Lexicographically least member (by letter code) of the orbit of `w` under
/// shifts, rotations and inversion.
pub fn canonical_form(w: &Word) -> Word {
    let codes: Vec<u32> = w.letters().iter().map(|l| l.code()).collect();
    let best = orbit_minimum(&codes, w.rank());
    Word::new(w.rank(), best.into_iter().map(Letter::from_code)).expect("same rank")
}

fn transform(codes: &[u32], n: u32, invert: bool, s: usize, h: u32) -> impl Iterator<Item = u32> + '_ {
    let k = codes.len();
    (0..k).map(move |i| {
        let c = if invert {
            codes[(k + s - i) % k] ^ 1
        } else {
            codes[(i + s) % k]
        };
        2 * ((c / 2 + h) % n) + c % 2
    })
}

fn orbit_minimum(codes: &[u32], n: u32) -> Vec<u32> {
    let mut best = codes.to_vec();
    let k = codes.len();
    for invert in [false, true] {
        for s in 0..k {
            for h in 0..n {
                let candidate: Vec<u32> = transform(codes, n, invert, s, h).collect();
                if candidate < best {
                    best = candidate;
                }
            }
        }
    }
    best
}

/// True iff no orbit member is smaller. Only images that begin with `x0`
/// can compete with a word that itself begins with `x0`.
fn is_canonical(codes: &[u32], n: u32) -> bool {
    if codes.is_empty() {
        return true;
    }
    if codes[0] != 0 {
        return false;
    }
    let k = codes.len();
    for invert in [false, true] {
        for s in 0..k {
            let first = if invert { codes[s] ^ 1 } else { codes[s] };
            if first % 2 != 0 {
                continue;
            }
            let h = (n - first / 2) % n;
            let image = transform(codes, n, invert, s, h);
            if image.lt(codes.iter().copied()) {
                return false;
            }
        }
    }
    true
}

struct Dfs<'a> {
    n: u32,
    k: usize,
    filters: &'a Filters,
    codes: Vec<u32>,
    out: Vec<Word>,
}

impl Dfs<'_> {
    fn run(&mut self) {
        if self.codes.len() == self.k {
            self.emit();
            return;
        }
        for c in 0..2 * self.n {
            if self.filters.positive_only && c % 2 == 1 {
                continue;
            }
            if self.filters.cyclically_reduced && self.codes.last().is_some_and(|&p| p == c ^ 1) {
                continue;
            }
            self.codes.push(c);
            self.run();
            self.codes.pop();
        }
    }

    fn emit(&mut self) {
        let f = self.filters;
        let k = self.k;
        if f.cyclically_reduced && k > 1 && self.codes[0] == self.codes[k - 1] ^ 1 {
            return;
        }
        if f.up_to_symmetry && !is_canonical(&self.codes, self.n) {
            return;
        }
        let word = Word::new(self.n, self.codes.iter().map(|&c| Letter::from_code(c))).expect("rank >= 1");
        if f.not_proper_power && word.is_proper_power() {
            return;
        }
        if f.irreducible_only {
            let irreducible = CyclicPresentation::new(self.n, word.clone())
                .map(|p| is_irreducible(&p))
                .unwrap_or(false);
            if !irreducible {
                return;
            }
        }
        self.out.push(word);
    }
}

/// Prefixes of length `depth` in DFS order; each is an independent unit of
/// work.
fn prefixes(n: u32, k: usize, filters: &Filters) -> Vec<Vec<u32>> {
    let depth = k.min(3);
    let first: Vec<u32> = if filters.up_to_symmetry {
        vec![0]
    } else {
        (0..2 * n).filter(|c| !filters.positive_only || c % 2 == 0).collect()
    };
    let mut layer: Vec<Vec<u32>> = first.into_iter().map(|c| vec![c]).collect();
    for _ in 1..depth {
        layer = layer
            .into_iter()
            .flat_map(|p| {
                (0..2 * n)
                    .filter(|c| !filters.positive_only || c % 2 == 0)
                    .filter(|&c| !filters.cyclically_reduced || *p.last().unwrap() != c ^ 1)
                    .map(|c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    layer
}

fn words_from_prefix(n: u32, k: usize, filters: &Filters, prefix: &[u32]) -> Vec<Word> {
    let mut dfs = Dfs {
        n,
        k,
        filters,
        codes: prefix.to_vec(),
        out: Vec::new(),
    };
    dfs.run();
    dfs.out
}

/// Work units `(n, k, prefix)` in output order.
pub(crate) fn partitions(spec: &EnumSpec) -> Vec<(u32, usize, Vec<u32>)> {
    let mut units = Vec::new();
    for n in spec.n_range.clone() {
        for k in spec.k_range.clone() {
            if k == 0 {
                continue;
            }
            for p in prefixes(n, k, &spec.filters) {
                units.push((n, k, p));
            }
        }
    }
    units
}

pub(crate) fn partition_words(spec: &EnumSpec, unit: &(u32, usize, Vec<u32>)) -> Vec<Word> {
    words_from_prefix(unit.0, unit.1, &spec.filters, &unit.2)
}

/// All words passing the filters, ordered by `(n, k, word)`.
pub fn enumerate_words(spec: &EnumSpec) -> Result<Vec<Word>> {
    spec.check_budget()?;
    let units = partitions(spec);
    Ok(with_pool(|| {
        units
            .par_iter()
            .map(|u| partition_words(spec, u))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }))
}

/// Positive direct verdicts over the enumeration, ordered by `(n, k, word)`.
pub fn find_special(spec: &EnumSpec) -> Result<Vec<(CyclicPresentation, SpecialCertificate)>> {
    let words = enumerate_words(spec)?;
    Ok(with_pool(|| {
        words
            .par_iter()
            .filter_map(|w| {
                let p = CyclicPresentation::new(w.rank(), w.clone()).ok()?;
                let cert = is_special_direct(&p);
                cert.is_special.then_some((p, cert))
            })
            .collect()
    }))
}

/// Worker count from `CYCPRES_THREADS`, if set to a positive integer.
pub fn configured_threads() -> Option<usize> {
    std::env::var("CYCPRES_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&t| t > 0)
}

/// Runs `f` on a pool sized by `CYCPRES_THREADS`, or the global pool.
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match configured_threads() {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}
