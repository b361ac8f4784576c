//! Words in the free group `F_n` on `x_0, ..., x_{n-1}`, together with the two
//! cyclic symmetries used throughout: the shift `x_i -> x_{i+1}` and rotation
//! of the letter sequence.
//!
//! Subscripts are always stored reduced mod the rank. Words are plain letter
//! sequences; nothing is free-reduced unless asked for.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: u32,
    pub positive: bool,
}

impl Letter {
    pub const fn new(index: u32, positive: bool) -> Self {
        Letter { index, positive }
    }

    pub const fn exponent(self) -> i32 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub const fn inverse(self) -> Self {
        Letter {
            index: self.index,
            positive: !self.positive,
        }
    }

    /// Position in the order `x0 < x0^-1 < x1 < x1^-1 < ...`.
    pub const fn code(self) -> u32 {
        2 * self.index + if self.positive { 0 } else { 1 }
    }

    pub const fn from_code(code: u32) -> Self {
        Letter {
            index: code / 2,
            positive: code.is_multiple_of(2),
        }
    }

    fn shifted(self, h: u32, rank: u32) -> Self {
        Letter {
            index: (self.index + h) % rank,
            positive: self.positive,
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.code().cmp(&other.code())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.index)
        } else {
            write!(f, "x{}^-1", self.index)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignClass {
    Positive,
    Negative,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlternationClass {
    /// No cyclic length-2 subword has two letters of equal sign.
    CyclicallyAlternating,
    /// Alternating as a linear word, but the wrap-around pair has equal signs.
    Alternating,
    NonAlternating,
}

/// `word = root^power` with `power` maximal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDecomposition {
    pub root: Word,
    pub power: usize,
}

/// A word in the free group of rank `rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: u32,
    letters: Vec<Letter>,
}

impl Word {
    /// Builds a word, reducing every subscript mod `rank`.
    pub fn new(rank: u32, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Rank(0));
        }
        let letters = letters
            .into_iter()
            .map(|l| Letter::new(l.index % rank, l.positive))
            .collect();
        Ok(Word { rank, letters })
    }

    pub fn empty(rank: u32) -> Result<Self> {
        Word::new(rank, std::iter::empty())
    }

    /// Shorthand for tests and fixtures: `(index, exponent)` pairs.
    pub fn from_pairs(rank: u32, pairs: &[(u32, i32)]) -> Result<Self> {
        Word::new(
            rank,
            pairs.iter().map(|&(i, e)| Letter::new(i, e > 0)),
        )
    }

    /// Parses the textual word grammar: tokens `x<i>` or `x<i>^<e>` separated
    /// by spaces or dots. `x3^-2` expands to `x3^-1 x3^-1`. The result is not
    /// free-reduced.
    pub fn parse(text: &str, rank: i64) -> Result<Self> {
        if rank < 1 || rank > u32::MAX as i64 {
            return Err(Error::Rank(rank));
        }
        let rank = rank as u32;
        let mut letters = Vec::new();
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            if bytes[pos] == b' ' || bytes[pos] == b'.' {
                pos += 1;
                continue;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos] != b' ' && bytes[pos] != b'.' {
                pos += 1;
            }
            let token = &text[start..pos];
            let syntax = || Error::Syntax {
                position: start,
                token: token.to_string(),
            };
            let body = token.strip_prefix('x').ok_or_else(syntax)?;
            let (index, exponent) = match body.split_once('^') {
                Some((i, e)) => (i, Some(e)),
                None => (body, None),
            };
            let index = parse_digits(index).ok_or_else(syntax)?;
            let exponent: i128 = match exponent {
                None => 1,
                Some(e) => match e.strip_prefix('-') {
                    Some(d) => -(parse_digits(d).ok_or_else(syntax)? as i128),
                    None => parse_digits(e).ok_or_else(syntax)? as i128,
                },
            };
            let letter = Letter::new((index % rank as u128) as u32, exponent > 0);
            let copies = usize::try_from(exponent.unsigned_abs()).map_err(|_| syntax())?;
            letters.extend(std::iter::repeat_n(letter, copies));
        }
        Ok(Word { rank, letters })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// Same letters viewed in a different rank (subscripts reduced again).
    pub fn with_rank(&self, rank: u32) -> Result<Self> {
        Word::new(rank, self.letters.iter().copied())
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] != p[1].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(a), Some(b)) => self.is_reduced() && (self.len() == 1 || a != b.inverse()),
            _ => true,
        }
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word {
            rank: self.rank,
            letters: out,
        }
    }

    /// Root and maximal power of a non-empty cyclically reduced word.
    pub fn root(&self) -> Result<RootDecomposition> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        if !self.is_cyclically_reduced() {
            return Err(Error::NotCyclicallyReduced(self.to_string()));
        }
        let k = self.len();
        let period = (1..=k)
            .find(|&d| k.is_multiple_of(d) && self.has_period(d))
            .unwrap_or(k);
        Ok(RootDecomposition {
            root: Word {
                rank: self.rank,
                letters: self.letters[..period].to_vec(),
            },
            power: k / period,
        })
    }

    fn has_period(&self, d: usize) -> bool {
        (d..self.len()).all(|i| self.letters[i] == self.letters[i - d])
    }

    pub fn is_proper_power(&self) -> bool {
        self.root().map(|r| r.power > 1).unwrap_or(false)
    }

    /// Applies the shift automorphism `h` times (negative `h` allowed).
    pub fn shift(&self, h: i64) -> Word {
        let h = h.rem_euclid(self.rank as i64) as u32;
        Word {
            rank: self.rank,
            letters: self.letters.iter().map(|l| l.shifted(h, self.rank)).collect(),
        }
    }

    /// Rotates the letter sequence left by `s` positions.
    pub fn cyclic_permute(&self, s: i64) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let s = s.rem_euclid(letters.len() as i64) as usize;
            letters.rotate_left(s);
        }
        Word {
            rank: self.rank,
            letters,
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        debug_assert_eq!(self.rank, other.rank);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            rank: self.rank,
            letters,
        }
    }

    pub fn pow(&self, p: usize) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.repeat(p),
        }
    }

    /// Subword `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters[start..end].to_vec(),
        }
    }

    /// True iff `other` is obtained from `self` by some rotation.
    pub fn is_cyclic_permutation_of(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        let k = self.len();
        (0..k).any(|s| (0..k).all(|i| self.letters[(i + s) % k] == other.letters[i]))
    }

    pub fn sign_class(&self) -> Result<SignClass> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let pos = self.letters.iter().filter(|l| l.positive).count();
        Ok(if pos == self.len() {
            SignClass::Positive
        } else if pos == 0 {
            SignClass::Negative
        } else {
            SignClass::Mixed
        })
    }

    pub fn alternation_class(&self) -> Result<AlternationClass> {
        if self.len() < 2 {
            return Err(Error::TooShort {
                min: 2,
                got: self.len(),
            });
        }
        let linear = self.letters.windows(2).all(|p| p[0].positive != p[1].positive);
        let wrap = self.first().unwrap().positive != self.last().unwrap().positive;
        Ok(match (linear, wrap) {
            (true, true) => AlternationClass::CyclicallyAlternating,
            (true, false) => AlternationClass::Alternating,
            _ => AlternationClass::NonAlternating,
        })
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.rank as usize];
        for l in &self.letters {
            sums[l.index as usize] += l.exponent() as i64;
        }
        sums
    }
}

fn parse_digits(s: &str) -> Option<u128> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `"<rank>:<word>"`, e.g. `"4:x0 x2^-1"`.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (rank, body) = s.split_once(':').ok_or_else(|| Error::Syntax {
            position: 0,
            token: s.to_string(),
        })?;
        let rank = rank.trim().parse::<i64>().map_err(|_| Error::Syntax {
            position: 0,
            token: rank.to_string(),
        })?;
        Word::parse(body, rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(rank: u32, pairs: &[(u32, i32)]) -> Word {
        Word::from_pairs(rank, pairs).unwrap()
    }

    #[test]
    fn parse_tokens() {
        assert_eq!(
            Word::parse("x0 x2^-1 x3 x1^-1", 4).unwrap(),
            w(4, &[(0, 1), (2, -1), (3, 1), (1, -1)])
        );
        assert_eq!(Word::parse("x0^2 x1", 7).unwrap(), w(7, &[(0, 1), (0, 1), (1, 1)]));
        assert_eq!(Word::parse("x5", 4).unwrap(), w(4, &[(1, 1)]));
        assert_eq!(Word::parse("x3^-2", 5).unwrap(), w(5, &[(3, -1), (3, -1)]));
        assert_eq!(Word::parse("x0.x1  x2", 3).unwrap(), w(3, &[(0, 1), (1, 1), (2, 1)]));
        assert_eq!(Word::parse("x0 x0^-1", 2).unwrap().len(), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Word::parse("x0", 0), Err(Error::Rank(0))));
        assert!(matches!(Word::parse("y0", 2), Err(Error::Syntax { .. })));
        assert!(matches!(Word::parse("x", 2), Err(Error::Syntax { .. })));
        assert!(matches!(Word::parse("x1^", 2), Err(Error::Syntax { .. })));
        assert!(matches!(Word::parse("x1^+1", 2), Err(Error::Syntax { .. })));
        match Word::parse("x0 x1,x2", 3) {
            Err(Error::Syntax { position, token }) => {
                assert_eq!(position, 3);
                assert_eq!(token, "x1,x2");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn display_never_recompresses_powers() {
        let word = Word::parse("x3^-2 x1^2", 4).unwrap();
        assert_eq!(word.to_string(), "x3^-1 x3^-1 x1 x1");
        assert_eq!("4:x0 x1".parse::<Word>().unwrap(), w(4, &[(0, 1), (1, 1)]));
    }

    #[test]
    fn cyclic_reduction() {
        assert!(!w(2, &[(0, 1), (1, -1), (0, -1)]).is_cyclically_reduced());
        assert!(w(4, &[(0, 1), (2, -1), (3, 1), (1, -1)]).is_cyclically_reduced());
        assert!(!w(1, &[(0, 1), (0, -1)]).is_cyclically_reduced());
        assert!(Word::empty(3).unwrap().is_cyclically_reduced());
        assert!(w(1, &[(0, -1)]).is_cyclically_reduced());
    }

    #[test]
    fn roots() {
        let r = w(2, &[(0, 1), (1, -1), (0, 1), (1, -1)]).root().unwrap();
        assert_eq!(r.root, w(2, &[(0, 1), (1, -1)]));
        assert_eq!(r.power, 2);

        let aii = Word::parse("x0 x1 x10 x7 x8 x3", 14).unwrap();
        let r = aii.root().unwrap();
        assert_eq!((r.root, r.power), (aii.clone(), 1));
        // every proper divisor of 6 fails as a period
        for d in [1, 2, 3] {
            assert_ne!(aii.slice(0, d).pow(6 / d), aii);
        }

        let r = w(1, &[(0, 1); 3]).root().unwrap();
        assert_eq!((r.root, r.power), (w(1, &[(0, 1)]), 3));

        assert_eq!(Word::empty(2).unwrap().root(), Err(Error::EmptyWord));
        assert!(matches!(
            w(2, &[(0, 1), (1, 1), (0, -1)]).root(),
            Err(Error::NotCyclicallyReduced(_))
        ));
    }

    #[test]
    fn shifts_and_rotations() {
        assert_eq!(w(3, &[(0, 1), (1, 1)]).shift(1), w(3, &[(1, 1), (2, 1)]));
        assert_eq!(
            Word::parse("x0 x2^-1 x4 x7", 8).unwrap().shift(6),
            Word::parse("x6 x0^-1 x2 x5", 8).unwrap()
        );
        let word = Word::parse("x0 x2^-1 x3 x1^-1", 4).unwrap();
        assert_eq!(word.shift(4), word);
        assert_eq!(word.shift(-1), word.shift(3));
        assert_eq!(word.cyclic_permute(1), Word::parse("x2^-1 x3 x1^-1 x0", 4).unwrap());
        assert_eq!(word.cyclic_permute(4), word);
        assert_eq!(Word::empty(2).unwrap().cyclic_permute(3), Word::empty(2).unwrap());
    }

    #[test]
    fn inverses() {
        assert_eq!(w(3, &[(0, 1), (2, -1)]).inverse(), w(3, &[(2, 1), (0, -1)]));
        assert!(Word::empty(3).unwrap().inverse().is_empty());
    }

    #[test]
    fn sign_classes() {
        assert_eq!(w(6, &[(0, 1), (1, 1), (5, 1)]).sign_class(), Ok(SignClass::Positive));
        assert_eq!(w(4, &[(1, -1), (3, -1)]).sign_class(), Ok(SignClass::Negative));
        assert_eq!(w(2, &[(0, 1), (1, -1)]).sign_class(), Ok(SignClass::Mixed));
        assert_eq!(Word::empty(2).unwrap().sign_class(), Err(Error::EmptyWord));
    }

    #[test]
    fn alternation_classes() {
        let c = Word::parse("x0 x1^-1 x6 x3^-1", 8).unwrap();
        assert_eq!(c.alternation_class(), Ok(AlternationClass::CyclicallyAlternating));
        let e = Word::parse("x0 x1^-1 x0", 6).unwrap();
        assert_eq!(e.alternation_class(), Ok(AlternationClass::Alternating));
        let n = Word::parse("x0 x0 x1", 2).unwrap();
        assert_eq!(n.alternation_class(), Ok(AlternationClass::NonAlternating));
        assert!(matches!(
            w(2, &[(0, 1)]).alternation_class(),
            Err(Error::TooShort { min: 2, got: 1 })
        ));
    }

    #[test]
    fn letter_order() {
        let mut ls = [Letter::new(1, false),
            Letter::new(0, false),
            Letter::new(1, true),
            Letter::new(0, true)];
        ls.sort();
        assert_eq!(ls.iter().map(|l| l.code()).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }
}
