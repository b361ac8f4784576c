use std::fmt;

use serde::{Serialize, Serializer};

use crate::freeword::Word;
use crate::presentation::{CyclicPresentation, RedundancyKind};

use super::is_special_direct;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Largeness {
    Yes,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolvableGroup {
    Z,
    Z2,
    /// The Klein-bottle group `BS(1,-1)`.
    KleinBottle,
}

/// Where the group sits with respect to the Tits alternative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tits {
    FreeSubgroup,
    Solvable(SolvableGroup),
    ConjecturalFreeSubgroup,
    Unknown,
}

impl fmt::Display for Tits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tits::FreeSubgroup => "free_subgroup",
            Tits::Solvable(SolvableGroup::Z) => "solvable(Z)",
            Tits::Solvable(SolvableGroup::Z2) => "solvable(Z^2)",
            Tits::Solvable(SolvableGroup::KleinBottle) => "solvable(BS(1,-1))",
            Tits::ConjecturalFreeSubgroup => "conjectural_free_subgroup",
            Tits::Unknown => "unknown",
        })
    }
}

impl Serialize for Tits {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GroupFlags {
    pub large: Largeness,
    pub tits: Tits,
    /// Special with `2/k + 1/m < 1`.
    pub hyperbolic: bool,
}

pub fn group_property_flags(p: &CyclicPresentation) -> GroupFlags {
    let report = p.classify_redundancy();
    let n = p.n();
    let w = p.word();
    let large = if report.is_redundant() && (n >= 3 || (n == 2 && w.is_proper_power())) {
        Largeness::Yes
    } else {
        Largeness::Unknown
    };
    let tits = match (report.kind, large) {
        (RedundancyKind::Concise, _) => Tits::Unknown,
        (_, Largeness::Yes) => Tits::FreeSubgroup,
        (RedundancyKind::OrientableRedundant, _) => orientable_two_generator(w),
        (RedundancyKind::NonOrientable, _) => non_orientable_two_generator(p),
    };
    let hyperbolic = is_special_direct(p)
        .tuple()
        .is_some_and(|(m, k, _)| 2 * m + k < k * m);
    GroupFlags {
        large,
        tits,
        hyperbolic,
    }
}

fn word(pairs: &[(u32, i32)]) -> Word {
    Word::from_pairs(2, pairs).expect("rank 2")
}

fn orientable_two_generator(w: &Word) -> Tits {
    for e in [1, -1] {
        if w.is_cyclic_permutation_of(&word(&[(0, e), (1, e)])) {
            return Tits::Solvable(SolvableGroup::Z);
        }
        if w.is_cyclic_permutation_of(&word(&[(0, e), (0, e), (1, e), (1, e)])) {
            return Tits::Solvable(SolvableGroup::KleinBottle);
        }
    }
    Tits::FreeSubgroup
}

/// `n = 2`, `w = u theta(u)^-1` not a proper power.
fn non_orientable_two_generator(p: &CyclicPresentation) -> Tits {
    let w = p.word();
    let k = w.len();
    let halves: Vec<Word> = (0..k)
        .filter_map(|s| {
            let rotated = w.cyclic_permute(s as i64);
            let u = rotated.slice(0, k / 2);
            (rotated.slice(k / 2, k) == u.shift(1).inverse()).then_some(u)
        })
        .collect();

    if halves.iter().any(|u| u.len() == 1) {
        return Tits::Solvable(SolvableGroup::Z);
    }
    if halves
        .iter()
        .any(|u| u.len() == 2 && u.letters()[0].index != u.letters()[1].index)
    {
        return Tits::Solvable(SolvableGroup::Z2);
    }
    for u in &halves {
        if let Ok(root) = u.free_reduce().root() {
            if root.power == 2 && root.root.len() == 1 {
                return Tits::Solvable(SolvableGroup::KleinBottle);
            }
            if root.power >= 2 {
                return Tits::FreeSubgroup;
            }
        }
    }
    let commutator = word(&[(0, 1), (1, 1), (0, -1), (1, -1)]);
    let is_commutator =
        w.is_cyclic_permutation_of(&commutator) || w.is_cyclic_permutation_of(&commutator.inverse());
    if w.exponent_sums().iter().all(|&e| e == 0) && !is_commutator {
        return Tits::FreeSubgroup;
    }
    let odd_alternating = halves.iter().any(|u| {
        let l = u.letters();
        u.len() >= 3
            && u.len() % 2 == 1
            && l.windows(2).all(|p| p[0].index != p[1].index)
            && l.iter().all(|x| x.positive == l[0].positive)
    });
    if odd_alternating {
        return Tits::FreeSubgroup;
    }
    Tits::ConjecturalFreeSubgroup
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(n: u32, text: &str) -> GroupFlags {
        group_property_flags(&CyclicPresentation::parse(n, text).unwrap())
    }

    #[test]
    fn named_solvable_groups() {
        assert_eq!(flags(2, "x0 x1").tits, Tits::Solvable(SolvableGroup::Z));
        assert_eq!(flags(2, "x0^-1 x1^-1").tits, Tits::Solvable(SolvableGroup::Z));
        assert_eq!(flags(2, "x0 x1^-1").tits, Tits::Solvable(SolvableGroup::Z));
        assert_eq!(flags(2, "x0 x1 x0^-1 x1^-1").tits, Tits::Solvable(SolvableGroup::Z2));
        assert_eq!(flags(2, "x1 x0 x0 x1").tits, Tits::Solvable(SolvableGroup::KleinBottle));
        assert_eq!(flags(2, "x0 x0 x1^-1 x1^-1").tits, Tits::Solvable(SolvableGroup::KleinBottle));
    }

    #[test]
    fn concise_is_unknown() {
        let f = flags(2, "x0 x0");
        assert_eq!((f.large, f.tits), (Largeness::Unknown, Tits::Unknown));
        assert_eq!(flags(3, "x0 x1").tits, Tits::Unknown);
    }

    #[test]
    fn largeness() {
        let f = flags(14, "x0 x1 x10 x7 x8 x3");
        assert_eq!(f.large, Largeness::Yes);
        assert_eq!(f.tits, Tits::FreeSubgroup);
        assert!(f.hyperbolic);
        assert_eq!(flags(2, "x0 x1 x0 x1").large, Largeness::Yes);
        assert_eq!(flags(2, "x0 x1").large, Largeness::Unknown);
    }

    #[test]
    fn two_generator_free_cases() {
        // orientable redundant, not one of the exceptions
        assert_eq!(flags(2, "x0 x0 x0 x1 x1 x1").tits, Tits::FreeSubgroup);
        // u = x0 x1 x0: odd, alternating subscripts, positive
        assert_eq!(flags(2, "x0 x1 x0 x1^-1 x0^-1 x1^-1").tits, Tits::FreeSubgroup);
        // exponent sums vanish, not a commutator
        assert_eq!(flags(2, "x0 x0 x1 x1 x0^-1 x0^-1 x1^-1 x1^-1").tits, Tits::FreeSubgroup);
        // u = x0^-1 x1 x1: none of the proven criteria apply
        assert_eq!(flags(2, "x0^-1 x1 x1 x0^-1 x0^-1 x1").tits, Tits::ConjecturalFreeSubgroup);
    }
}
