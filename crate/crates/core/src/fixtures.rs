//! Named presentations with known classifications.

use crate::freeword::{Letter, Word};
use crate::presentation::{CyclicPresentation, RedundancyKind};
use crate::special::Checker;

/// A presentation with a published `(m, k, nu)` tuple.
#[derive(Debug, Clone)]
pub struct SpecialFixture {
    pub name: &'static str,
    pub presentation: CyclicPresentation,
    pub tuple: (usize, usize, usize),
    pub kind: RedundancyKind,
    pub checker: Checker,
}

/// A small presentation with a known redundancy classification.
#[derive(Debug, Clone)]
pub struct MicroFixture {
    pub name: &'static str,
    pub presentation: CyclicPresentation,
    pub kind: RedundancyKind,
    /// The word is not itself in the form `u theta^{n/2}(u)^-1`.
    pub needs_rotation: bool,
}

/// `prod_{i < blocks} theta^{i h}(u)` in rank `n`.
pub fn periodic_word(n: u32, u: &[(u32, i32)], h: u32, blocks: u32) -> Word {
    let u = Word::from_pairs(n, u).expect("valid block");
    let letters: Vec<Letter> = (0..blocks)
        .flat_map(|i| u.shift((i * h) as i64).letters().to_vec())
        .collect();
    Word::new(n, letters).expect("valid rank")
}

fn parsed(n: u32, text: &str) -> CyclicPresentation {
    CyclicPresentation::parse(n, text).expect("fixture parses")
}

pub fn special_fixtures() -> Vec<SpecialFixture> {
    use Checker::*;
    use RedundancyKind::*;
    let build = |name, presentation, tuple, kind, checker| SpecialFixture {
        name,
        presentation,
        tuple,
        kind,
        checker,
    };
    vec![
        build(
            "heawood-7",
            CyclicPresentation::new(7, periodic_word(7, &[(0, 1), (0, 1), (1, 1)], 4, 7)).unwrap(),
            (3, 21, 1),
            OrientableRedundant,
            ThreeKNu,
        ),
        build("heawood-14", parsed(14, "x0 x1 x10 x7 x8 x3"), (3, 6, 2), OrientableRedundant, ThreeKNu),
        build(
            "heawood-21",
            CyclicPresentation::new(21, periodic_word(21, &[(0, 1), (2, 1), (7, 1)], 3, 7)).unwrap(),
            (3, 21, 3),
            OrientableRedundant,
            ThreeKNu,
        ),
        build(
            "positive-9",
            parsed(9, "x0 x1 x5 x3 x4 x8 x6 x7 x2"),
            (2, 9, 3),
            OrientableRedundant,
            Positive,
        ),
        build(
            "positive-8",
            parsed(8, "x0 x1 x3 x6 x2 x3 x5 x0 x4 x5 x7 x2 x6 x7 x1 x4"),
            (2, 16, 1),
            OrientableRedundant,
            Positive,
        ),
        build(
            "alternating-8",
            parsed(8, "x0 x1^-1 x6 x3^-1 x4 x5^-1 x2 x7^-1"),
            (2, 8, 2),
            OrientableRedundant,
            CyclicallyAlternating,
        ),
        build(
            "mixed-8",
            parsed(8, "x0 x2^-1 x4 x7 x6 x0^-1 x2 x5 x4 x6^-1 x0 x3 x2 x4^-1 x6 x1"),
            (2, 16, 2),
            OrientableRedundant,
            Mixed,
        ),
        build(
            "non-orientable-6",
            parsed(6, "x0 x1^-1 x0 x3^-1 x4 x3^-1"),
            (2, 6, 2),
            NonOrientable,
            NonOrientableAlternating,
        ),
        build(
            "non-orientable-12",
            parsed(12, "x0 x2^-1 x4 x7 x2 x1 x7^-1 x8^-1 x1^-1 x10^-1 x8 x6^-1"),
            (2, 12, 2),
            NonOrientable,
            NonOrientableNonAlternating,
        ),
    ]
}

pub fn micro_fixtures() -> Vec<MicroFixture> {
    use RedundancyKind::*;
    let build = |name, n, text, kind, needs_rotation| MicroFixture {
        name,
        presentation: parsed(n, text),
        kind,
        needs_rotation,
    };
    vec![
        build("z-orientable", 2, "x0 x1", OrientableRedundant, false),
        build("concise-3", 3, "x0 x1", Concise, false),
        build("z-non-orientable", 2, "x0 x1^-1", NonOrientable, false),
        build("rotated-non-orientable", 4, "x0 x2^-1 x3 x1^-1", NonOrientable, true),
    ]
}

pub fn fixture_by_name(name: &str) -> Option<CyclicPresentation> {
    special_fixtures()
        .into_iter()
        .map(|f| (f.name, f.presentation))
        .chain(micro_fixtures().into_iter().map(|f| (f.name, f.presentation)))
        .find(|(n, _)| *n == name)
        .map(|(_, p)| p)
}
