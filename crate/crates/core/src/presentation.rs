//! Cyclic presentations `P_n(w)`, their truncations, and the classification
//! into concise, orientable redundant and non-orientable presentations.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::freeword::Word;
use crate::gcd;

/// `P_n(w)`: generators `x_0..x_{n-1}`, relators the `n` shifts of `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicPresentation {
    n: u32,
    word: Word,
}

/// `P_{n,t}(w)`: only the first `t` shifts of `w` are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub n: u32,
    pub t: u32,
    pub word: Word,
}

/// An expression `w = u . theta^h(u) . theta^{2h}(u) ... ` with
/// `n / gcd(n, h)` blocks. `h = 0` means `u = w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodDecomposition {
    pub u: Word,
    pub h: u32,
    #[serde(skip)]
    pub blocks: u32,
}

impl PeriodDecomposition {
    pub fn period_length(&self) -> usize {
        self.u.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RedundancyKind {
    Concise,
    OrientableRedundant,
    NonOrientable,
}

impl fmt::Display for RedundancyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RedundancyKind::Concise => "concise",
            RedundancyKind::OrientableRedundant => "orientable redundant",
            RedundancyKind::NonOrientable => "non-orientable",
        })
    }
}

/// Outcome of [`CyclicPresentation::classify_redundancy`].
///
/// All witnesses (`period`, `rotation`, `half_word`) describe the root `v` of
/// the defining word; `w = v^root_power`. When `w` is not a proper power they
/// describe `w` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedundancyReport {
    pub n: u32,
    pub word: Word,
    pub root: Word,
    pub root_power: usize,
    pub kind: RedundancyKind,
    pub period: PeriodDecomposition,
    pub rotation: Option<usize>,
    pub half_word: Option<Word>,
    pub refinement_size: u32,
}

#[derive(Serialize)]
struct RedundancyJson<'a> {
    n: u32,
    word: &'a Word,
    kind: RedundancyKind,
    root_power: usize,
    period: &'a PeriodDecomposition,
    #[serde(skip_serializing_if = "Option::is_none")]
    rotation: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    half_word: Option<&'a Word>,
    refinement_t: u32,
    deficiency: u32,
}

impl RedundancyReport {
    pub fn is_orientable(&self) -> bool {
        self.kind != RedundancyKind::NonOrientable
    }

    pub fn is_redundant(&self) -> bool {
        self.kind != RedundancyKind::Concise
    }

    /// Deficiency of the concise refinement.
    pub fn deficiency(&self) -> u32 {
        self.n - self.refinement_size
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RedundancyJson {
            n: self.n,
            word: &self.word,
            kind: self.kind,
            root_power: self.root_power,
            period: &self.period,
            rotation: self.rotation,
            half_word: self.half_word.as_ref(),
            refinement_t: self.refinement_size,
            deficiency: self.deficiency(),
        })
        .expect("report serializes")
    }
}

impl Truncation {
    pub fn relators(&self) -> Vec<Word> {
        (0..self.t).map(|i| self.word.shift(i as i64)).collect()
    }

    pub fn deficiency(&self) -> u32 {
        self.n - self.t
    }
}

impl CyclicPresentation {
    pub fn new(n: u32, word: Word) -> Result<Self> {
        if n == 0 {
            return Err(Error::Rank(0));
        }
        if word.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                word: word.rank(),
            });
        }
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        if !word.is_cyclically_reduced() {
            return Err(Error::NotCyclicallyReduced(word.to_string()));
        }
        Ok(CyclicPresentation { n, word })
    }

    pub fn parse(n: u32, text: &str) -> Result<Self> {
        CyclicPresentation::new(n, Word::parse(text, n as i64)?)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn relator(&self, i: u32) -> Word {
        self.word.shift(i as i64)
    }

    pub fn relators(&self) -> Vec<Word> {
        (0..self.n).map(|i| self.relator(i)).collect()
    }

    pub fn truncation(&self, t: u32) -> Truncation {
        assert!(1 <= t && t <= self.n, "truncation size out of range");
        Truncation {
            n: self.n,
            t,
            word: self.word.clone(),
        }
    }

    /// Shortest `u` (and its `h`) with `w = prod_i theta^{ih}(u)`. Requires
    /// `w` not to be a proper power.
    pub fn find_period(&self) -> Result<PeriodDecomposition> {
        if self.word.is_proper_power() {
            return Err(Error::ProperPower(self.word.to_string()));
        }
        Ok(find_period_unchecked(&self.word))
    }

    /// Exhaustive search for `theta^h(v) = phi^t(v^-1)` on the root `v`.
    pub fn is_orientable(&self) -> bool {
        let root = self.word.root().expect("validated").root;
        nonorientable_witness(&root).is_none()
    }

    pub fn classify_redundancy(&self) -> RedundancyReport {
        let decomposition = self.word.root().expect("validated on construction");
        let root = decomposition.root;
        let period = find_period_unchecked(&root);
        let n = self.n;

        let (kind, rotation, half_word, refinement_size) = if nonorientable_witness(&root).is_some()
        {
            let (s, u) = normal_form(&root).expect("non-orientable words have a normal form");
            (RedundancyKind::NonOrientable, Some(s), Some(u), n / 2)
        } else if period.h != 0 {
            (RedundancyKind::OrientableRedundant, None, None, gcd(n, period.h))
        } else {
            (RedundancyKind::Concise, None, None, n)
        };

        RedundancyReport {
            n,
            word: self.word.clone(),
            root,
            root_power: decomposition.power,
            kind,
            period,
            rotation,
            half_word,
            refinement_size,
        }
    }

    pub fn concise_refinement(&self) -> Truncation {
        self.truncation(self.classify_redundancy().refinement_size)
    }

    /// Least `s` and the `u` with `phi^s(w) = u . theta^{n/2}(u)^-1`.
    pub fn nonorientable_normal_form(&self) -> Result<(usize, Word)> {
        normal_form(&self.word).ok_or(Error::NotNonOrientable)
    }
}

impl fmt::Display for CyclicPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P_{}({})", self.n, self.word)
    }
}

/// Every `(u, h)` with `u` an initial subword and `w = prod_i theta^{ih}(u)`,
/// ordered by `h`. Always contains `(w, 0)`.
pub fn period_expressions(w: &Word) -> Vec<PeriodDecomposition> {
    let n = w.rank();
    let k = w.len();
    (0..n)
        .filter_map(|h| {
            let blocks = n / gcd(n, h);
            if !k.is_multiple_of(blocks as usize) {
                return None;
            }
            let len = k / blocks as usize;
            let u = w.slice(0, len);
            let matches = (1..blocks as usize).all(|i| {
                let image = u.shift(i as i64 * h as i64);
                w.letters()[i * len..(i + 1) * len] == *image.letters()
            });
            matches.then_some(PeriodDecomposition { u, h, blocks })
        })
        .collect()
}

fn find_period_unchecked(w: &Word) -> PeriodDecomposition {
    period_expressions(w)
        .into_iter()
        .min_by_key(|p| (p.u.len(), p.h))
        .expect("h = 0 always yields an expression")
}

/// Some `(h, t)` with `theta^h(w) = phi^t(w^-1)`.
fn nonorientable_witness(w: &Word) -> Option<(u32, usize)> {
    let inverse = w.inverse();
    let rotations: Vec<Word> = (0..w.len()).map(|t| inverse.cyclic_permute(t as i64)).collect();
    (0..w.rank()).find_map(|h| {
        let shifted = w.shift(h as i64);
        rotations.iter().position(|r| *r == shifted).map(|t| (h, t))
    })
}

fn normal_form(w: &Word) -> Option<(usize, Word)> {
    let n = w.rank();
    let k = w.len();
    if !n.is_multiple_of(2) || !k.is_multiple_of(2) {
        return None;
    }
    (0..k).find_map(|s| {
        let rotated = w.cyclic_permute(s as i64);
        let u = rotated.slice(0, k / 2);
        let tail = u.shift((n / 2) as i64).inverse();
        (rotated.letters()[k / 2..] == *tail.letters()).then_some((s, u))
    })
}

/// Greedy scan in index order: a relator is marked when it is freely trivial
/// or a cyclic permutation of an earlier unmarked relator or of its inverse.
pub fn freely_redundant_oracle(relators: &[Word]) -> BTreeSet<usize> {
    let mut kept: Vec<&Word> = Vec::new();
    let mut redundant = BTreeSet::new();
    for (j, r) in relators.iter().enumerate() {
        let trivial = r.free_reduce().is_empty();
        let repeated = kept.iter().any(|s| {
            r.is_cyclic_permutation_of(s) || r.is_cyclic_permutation_of(&s.inverse())
        });
        if trivial || repeated {
            redundant.insert(j);
        } else {
            kept.push(r);
        }
    }
    redundant
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, text: &str) -> CyclicPresentation {
        CyclicPresentation::parse(n, text).unwrap()
    }

    #[test]
    fn construction() {
        let p2 = p(2, "x0 x1");
        assert_eq!(
            p2.relators(),
            vec![Word::parse("x0 x1", 2).unwrap(), Word::parse("x1 x0", 2).unwrap()]
        );
        assert_eq!(p(3, "x0 x1").relators().len(), 3);
        assert!(matches!(
            CyclicPresentation::parse(2, "x0 x0^-1"),
            Err(Error::NotCyclicallyReduced(_))
        ));
        assert!(matches!(CyclicPresentation::parse(2, ""), Err(Error::EmptyWord)));
        assert!(matches!(
            CyclicPresentation::new(3, Word::parse("x0", 2).unwrap()),
            Err(Error::RankMismatch { expected: 3, word: 2 })
        ));
    }

    #[test]
    fn periods() {
        let a = p(14, "x0 x1 x10 x7 x8 x3").find_period().unwrap();
        assert_eq!((a.u.to_string().as_str(), a.h), ("x0 x1 x10", 7));
        let b = p(9, "x0 x1 x5 x3 x4 x8 x6 x7 x2").find_period().unwrap();
        assert_eq!((b.u.to_string().as_str(), b.h), ("x0 x1 x5", 3));
        let c = p(3, "x0 x1").find_period().unwrap();
        assert_eq!((c.u.to_string().as_str(), c.h), ("x0 x1", 0));
        assert!(matches!(p(2, "x0 x1 x0 x1").find_period(), Err(Error::ProperPower(_))));
    }

    #[test]
    fn micro_examples() {
        let r = p(2, "x0 x1^-1").classify_redundancy();
        assert_eq!(r.kind, RedundancyKind::NonOrientable);
        assert_eq!(r.rotation, Some(0));
        assert_eq!(r.half_word.unwrap().to_string(), "x0");

        let r = p(4, "x0 x2^-1 x3 x1^-1").classify_redundancy();
        assert_eq!(r.kind, RedundancyKind::NonOrientable);
        assert_eq!(r.rotation, Some(1));
        assert_eq!(r.half_word.as_ref().unwrap().to_string(), "x2^-1 x3");
        assert_eq!(r.refinement_size, 2);

        let r = p(14, "x0 x1 x10 x7 x8 x3").classify_redundancy();
        assert_eq!(r.kind, RedundancyKind::OrientableRedundant);
        assert_eq!((r.period.h, r.refinement_size), (7, 7));

        assert_eq!(p(2, "x0 x1").classify_redundancy().kind, RedundancyKind::OrientableRedundant);
        let r = p(3, "x0 x1").classify_redundancy();
        assert_eq!((r.kind, r.refinement_size, r.deficiency()), (RedundancyKind::Concise, 3, 0));
    }

    #[test]
    fn erratum_word_is_not_itself_in_normal_form() {
        let w = Word::parse("x0 x2^-1 x3 x1^-1", 4).unwrap();
        let u = w.slice(0, 2);
        assert_ne!(u.concat(&u.shift(2).inverse()), w);
    }

    #[test]
    fn refinements() {
        let mut word = Word::empty(7).unwrap();
        let block = Word::parse("x0^2 x1", 7).unwrap();
        for i in 0..7 {
            word = word.concat(&block.shift(4 * i));
        }
        let a = CyclicPresentation::new(7, word).unwrap();
        assert_eq!(a.concise_refinement().t, 1);
        assert_eq!(p(4, "x0 x2^-1 x3 x1^-1").concise_refinement().t, 2);
        assert_eq!(p(3, "x0 x1").concise_refinement().t, 3);
    }

    #[test]
    fn oracle() {
        let rel = |n, s| p(n, s).relators();
        assert_eq!(freely_redundant_oracle(&rel(2, "x0 x1")), BTreeSet::from([1]));
        assert!(freely_redundant_oracle(&rel(3, "x0 x1")).is_empty());
        assert_eq!(freely_redundant_oracle(&rel(2, "x0 x1^-1")), BTreeSet::from([1]));
        let trivial = Word::parse("x0 x0^-1", 2).unwrap();
        assert_eq!(freely_redundant_oracle(&[trivial]), BTreeSet::from([0]));
    }

    #[test]
    fn normal_forms() {
        let (s, u) = p(6, "x0 x1^-1 x0 x3^-1 x4 x3^-1").nonorientable_normal_form().unwrap();
        assert_eq!((s, u.to_string().as_str()), (0, "x0 x1^-1 x0"));
        let (s, u) = p(4, "x0 x2^-1 x3 x1^-1").nonorientable_normal_form().unwrap();
        assert_eq!((s, u.to_string().as_str()), (1, "x2^-1 x3"));
        let f = "x0 x2^-1 x4 x7 x2 x1 x7^-1 x8^-1 x1^-1 x10^-1 x8 x6^-1";
        let (s, u) = p(12, f).nonorientable_normal_form().unwrap();
        assert_eq!((s, u.to_string().as_str()), (0, "x0 x2^-1 x4 x7 x2 x1"));
        assert_eq!(p(3, "x0 x1").nonorientable_normal_form(), Err(Error::NotNonOrientable));
    }

    #[test]
    fn proper_powers_classify_through_their_root() {
        let r = p(2, "x0 x1^-1 x0 x1^-1").classify_redundancy();
        assert_eq!(r.root_power, 2);
        assert_eq!(r.kind, RedundancyKind::NonOrientable);
        let r = p(4, "x0 x1 x0 x1").classify_redundancy();
        assert_eq!(r.root_power, 2);
        assert_eq!(r.root.to_string(), "x0 x1");
        assert_eq!(r.kind, RedundancyKind::Concise);
    }

    #[test]
    fn json_schema() {
        let v = p(4, "x0 x2^-1 x3 x1^-1").classify_redundancy().to_json();
        assert_eq!(
            v.to_string(),
            r#"{"n":4,"word":"x0 x2^-1 x3 x1^-1","kind":"non_orientable","root_power":1,"period":{"u":"x0 x2^-1 x3 x1^-1","h":0},"rotation":1,"half_word":"x2^-1 x3","refinement_t":2,"deficiency":2}"#
        );
        let v = p(3, "x0 x1").classify_redundancy().to_json();
        assert!(v.get("rotation").is_none());
    }
}
