use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::freeword::{AlternationClass, SignClass};
use crate::gcd;
use crate::presentation::{CyclicPresentation, RedundancyKind};
use crate::stargraph::DifferenceMultisets;

use super::{is_irreducible, is_perfect_difference_set};

/// Which closed-form classification was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Checker {
    /// `m = 3`, positive or negative orientable words.
    ThreeKNu,
    /// `m = 2`, orientable, `u` positive or negative.
    Positive,
    /// `m = 2`, orientable, `u` cyclically alternating.
    CyclicallyAlternating,
    /// `m = 2`, orientable, `u` of mixed sign and not cyclically alternating.
    Mixed,
    /// `m = 2`, non-orientable, `u` alternating.
    NonOrientableAlternating,
    /// `m = 2`, non-orientable, `u` not alternating.
    NonOrientableNonAlternating,
    /// Both `m = 3` and `m = 2` positive checkers were run.
    ThreeKNuThenPositive,
    None,
}

impl fmt::Display for Checker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Checker::ThreeKNu => "three_k_nu",
            Checker::Positive => "two_k_nu_positive",
            Checker::CyclicallyAlternating => "two_k_nu_cyclically_alternating",
            Checker::Mixed => "two_k_nu_mixed",
            Checker::NonOrientableAlternating => "two_k_nu_non_orientable_alternating",
            Checker::NonOrientableNonAlternating => "two_k_nu_non_orientable_non_alternating",
            Checker::ThreeKNuThenPositive => "three_k_nu+two_k_nu_positive",
            Checker::None => "none",
        };
        f.write_str(s)
    }
}

/// Evidence attached to a positive theorem verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    PerfectDifferenceSet {
        pds: Vec<u32>,
        modulus: u32,
    },
    Circulant {
        circulant_form: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        q0: Option<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Special {
        m: usize,
        k: usize,
        nu: usize,
        witness: Witness,
    },
    NotSpecial {
        failed_clause: String,
    },
    NotApplicable {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub checker: Checker,
    pub verdict: Verdict,
}

impl TheoremVerdict {
    fn not_applicable(checker: Checker, reason: impl Into<String>) -> Self {
        TheoremVerdict {
            checker,
            verdict: Verdict::NotApplicable {
                reason: reason.into(),
            },
        }
    }

    fn failed(checker: Checker, clause: impl Into<String>) -> Self {
        TheoremVerdict {
            checker,
            verdict: Verdict::NotSpecial {
                failed_clause: clause.into(),
            },
        }
    }

    fn special(checker: Checker, m: usize, k: usize, nu: usize, witness: Witness) -> Self {
        TheoremVerdict {
            checker,
            verdict: Verdict::Special { m, k, nu, witness },
        }
    }

    pub fn is_special(&self) -> bool {
        matches!(self.verdict, Verdict::Special { .. })
    }

    pub fn is_applicable(&self) -> bool {
        !matches!(self.verdict, Verdict::NotApplicable { .. })
    }

    pub fn tuple(&self) -> Option<(usize, usize, usize)> {
        match self.verdict {
            Verdict::Special { m, k, nu, .. } => Some((m, k, nu)),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.verdict {
            Verdict::Special { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({ "name": self.checker.to_string() });
        match &self.verdict {
            Verdict::Special { m, k, nu, .. } => {
                out["verdict"] = json!("special");
                out["m"] = json!(m);
                out["k"] = json!(k);
                out["nu"] = json!(nu);
            }
            Verdict::NotSpecial { failed_clause } => {
                out["verdict"] = json!("not_special");
                out["failed_clause"] = json!(failed_clause);
            }
            Verdict::NotApplicable { reason } => {
                out["verdict"] = json!("not_applicable");
                out["reason"] = json!(reason);
            }
        }
        out
    }
}

/// Common hypotheses: `w` not a proper power and `P` irreducible.
fn common_hypotheses(p: &CyclicPresentation, checker: Checker) -> Option<TheoremVerdict> {
    if p.word().is_proper_power() {
        return Some(TheoremVerdict::not_applicable(checker, "w is a proper power"));
    }
    if !is_irreducible(p) {
        return Some(TheoremVerdict::not_applicable(checker, "presentation is reducible"));
    }
    None
}

/// Replaces a negative word by its inverse; both give the same star graph.
fn positive_form(p: &CyclicPresentation) -> CyclicPresentation {
    match p.word().sign_class() {
        Ok(SignClass::Negative) => CyclicPresentation::new(p.n(), p.word().inverse()).expect("inverse is valid"),
        _ => p.clone(),
    }
}

/// `m = 3` criterion for orientable presentations with `w` positive or
/// negative: `n = nu N` with `N = l(u)^2 - l(u) + 1`, `Q` a perfect
/// difference set, and all of `Q` congruent mod `nu`.
pub fn check_3knu(p: &CyclicPresentation) -> TheoremVerdict {
    let checker = Checker::ThreeKNu;
    if let Some(v) = common_hypotheses(p, checker) {
        return v;
    }
    if !p.is_orientable() {
        return TheoremVerdict::not_applicable(checker, "presentation is non-orientable");
    }
    if p.word().sign_class() == Ok(SignClass::Mixed) {
        return TheoremVerdict::not_applicable(checker, "w is neither positive nor negative");
    }
    let k = p.word().len();
    if k < 3 {
        return TheoremVerdict::not_applicable(checker, "k < 3");
    }
    let p = positive_form(p);
    let report = p.classify_redundancy();
    let ms = DifferenceMultisets::orientable(&report.period.u, report.period.h).expect("nonempty u");
    let (n, l) = (p.n(), ms.l_u() as u32);
    if l < 3 {
        return TheoremVerdict::failed(checker, "l(u) >= 3");
    }
    let big_n = l * l - l + 1;
    if n % big_n != 0 {
        return TheoremVerdict::failed(checker, "(a) n = nu N with N = l(u)^2 - l(u) + 1");
    }
    let nu = n / big_n;
    let q = ms.q();
    let reduced: Vec<u64> = q.iter().map(|&x| (x % big_n) as u64).collect();
    if !is_perfect_difference_set(&reduced).unwrap_or(false) {
        return TheoremVerdict::failed(checker, "(b) Q is a perfect difference set");
    }
    if q.iter().any(|&x| x % nu != q[0] % nu) {
        return TheoremVerdict::failed(checker, "(c) q = q' mod nu for all q, q' in Q");
    }
    if !k.is_multiple_of(nu as usize) {
        return TheoremVerdict::failed(checker, "nu divides k");
    }
    let mut pds: Vec<u32> = reduced.iter().map(|&x| x as u32).collect();
    pds.sort_unstable();
    TheoremVerdict::special(
        checker,
        3,
        k,
        nu as usize,
        Witness::PerfectDifferenceSet {
            pds,
            modulus: big_n,
        },
    )
}

/// `m = 2` criteria; the sub-case is chosen from the orientation of `P` and
/// the sign pattern of `u`. The first failing clause is reported.
pub fn check_2knu(p: &CyclicPresentation) -> TheoremVerdict {
    if let Some(v) = common_hypotheses(p, Checker::None) {
        return v;
    }
    let report = p.classify_redundancy();
    if report.kind == RedundancyKind::NonOrientable {
        let u = report.half_word.clone().expect("non-orientable reports carry u");
        let alternating = u.len() < 2
            || u.alternation_class().is_ok_and(|c| c != AlternationClass::NonAlternating);
        let ms = DifferenceMultisets::non_orientable(&u).expect("even n");
        return if alternating {
            non_orientable_alternating(p, &ms)
        } else {
            non_orientable_non_alternating(p, &ms)
        };
    }
    let u = &report.period.u;
    let checker = match (u.sign_class(), u.alternation_class()) {
        (Ok(SignClass::Positive | SignClass::Negative), _) => Checker::Positive,
        (_, Ok(AlternationClass::CyclicallyAlternating)) => Checker::CyclicallyAlternating,
        _ => Checker::Mixed,
    };
    if p.word().len() < 4 {
        return TheoremVerdict::not_applicable(checker, "k < 4");
    }
    match checker {
        Checker::Positive => {
            let p = positive_form(p);
            let report = p.classify_redundancy();
            let ms = DifferenceMultisets::orientable(&report.period.u, report.period.h).expect("nonempty u");
            positive(&p, &ms)
        }
        Checker::CyclicallyAlternating => {
            let ms = DifferenceMultisets::orientable(u, report.period.h).expect("nonempty u");
            cyclically_alternating(p, &ms)
        }
        _ => {
            let ms = DifferenceMultisets::orientable(u, report.period.h).expect("nonempty u");
            mixed(p, &ms)
        }
    }
}

/// `m = 3` first for positive or negative orientable words, then `m = 2`;
/// otherwise the applicable `m = 2` criterion.
pub fn theorem_verdict(p: &CyclicPresentation) -> TheoremVerdict {
    let positive_orientable = p.word().sign_class() != Ok(SignClass::Mixed)
        && !p.word().is_proper_power()
        && p.is_orientable();
    if !positive_orientable {
        return check_2knu(p);
    }
    let three = check_3knu(p);
    if three.is_special() {
        return three;
    }
    let two = check_2knu(p);
    if two.is_special() {
        return two;
    }
    match (&three.verdict, &two.verdict) {
        (Verdict::NotSpecial { failed_clause: a }, Verdict::NotSpecial { failed_clause: b }) => {
            TheoremVerdict::failed(Checker::ThreeKNuThenPositive, format!("m = 3: {a}; m = 2: {b}"))
        }
        (Verdict::NotSpecial { .. }, _) => three,
        _ => two,
    }
}

fn residues_set(values: &[u32], n: u32) -> Option<BTreeSet<u32>> {
    let set: BTreeSet<u32> = values.iter().map(|&x| x % n).collect();
    (set.len() == values.len()).then_some(set)
}

/// `values` is "of the form `{±c_1, ±c_2, ...}`" for the residue set
/// `target` (closed under negation): no repeats, only self-inverse residues
/// meet their negatives, and `values ∪ -values = target`.
fn matches_signed_form(values: &[u32], target: &BTreeSet<u32>, n: u32) -> bool {
    let Some(set) = residues_set(values, n) else {
        return false;
    };
    let neg = |x: u32| (n - x) % n;
    if set.iter().any(|&x| neg(x) != x && set.contains(&neg(x))) {
        return false;
    }
    let closure: BTreeSet<u32> = set.iter().flat_map(|&x| [x, neg(x)]).collect();
    closure == *target
}

/// `{±step, ±3 step, ..., ±top}` plus optional extras, as residues mod `n`.
fn odd_multiples(n: u32, step: u32, top: u32, extra: Option<u32>) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    let mut c = step;
    while c <= top {
        out.insert(c % n);
        out.insert((n - c % n) % n);
        c += 2 * step;
    }
    out.extend(extra);
    out
}

/// `Q` is `{q0 + j step : 0 <= j < count}` for some `q0` in `Q`; returns the
/// least such `q0` that is nonzero when `nonzero` is set.
fn arithmetic_coset(q: &[u32], n: u32, step: u32, count: usize, nonzero: bool) -> Option<u32> {
    let set = residues_set(q, n)?;
    if set.len() != count {
        return None;
    }
    set.iter()
        .copied()
        .filter(|&q0| !nonzero || q0 != 0)
        .find(|&q0| (0..count as u32).all(|j| set.contains(&((q0 + j * step) % n))))
}

fn positive(p: &CyclicPresentation, ms: &DifferenceMultisets) -> TheoremVerdict {
    let checker = Checker::Positive;
    let (n, l) = (p.n(), ms.l_u() as u32);
    if l < 3 {
        return TheoremVerdict::failed(checker, "l(u) >= 3");
    }
    if n % l != 0 {
        return TheoremVerdict::failed(checker, "n = nu l(u)");
    }
    let nu = n / l;
    let Some(q0) = arithmetic_coset(&ms.q(), n, nu, l as usize, false) else {
        return TheoremVerdict::failed(checker, "Q = {q0, q0 + nu, ..., q0 + (l(u) - 1) nu}");
    };
    if gcd(q0, nu) != 1 {
        return TheoremVerdict::failed(checker, "gcd(q0, nu) = 1");
    }
    TheoremVerdict::special(
        checker,
        2,
        p.word().len(),
        nu as usize,
        Witness::Circulant {
            circulant_form: format!("K_{{{l},{l}}} with Q = q0 + {nu}j"),
            q0: Some(q0),
        },
    )
}

fn cyclically_alternating(p: &CyclicPresentation, ms: &DifferenceMultisets) -> TheoremVerdict {
    let checker = Checker::CyclicallyAlternating;
    let (n, l) = (p.n(), ms.l_u() as u32);
    if l < 3 {
        return TheoremVerdict::failed(checker, "l(u) >= 3");
    }
    if n != 2 * l {
        return TheoremVerdict::failed(checker, "n = 2 l(u)");
    }
    let target = odd_multiples(n, 1, n / 2 - 1, None);
    if !matches_signed_form(&ms.a, &target, n) {
        return TheoremVerdict::failed(checker, "A = {±1, ±3, ..., ±(n/2 - 1)}");
    }
    if !matches_signed_form(&ms.b, &target, n) {
        return TheoremVerdict::failed(checker, "B = {±1, ±3, ..., ±(n/2 - 1)}");
    }
    TheoremVerdict::special(
        checker,
        2,
        p.word().len(),
        2,
        Witness::Circulant {
            circulant_form: format!("circ_{n}(odd residues) = K_{{{l},{l}}}"),
            q0: None,
        },
    )
}

fn mixed(p: &CyclicPresentation, ms: &DifferenceMultisets) -> TheoremVerdict {
    let checker = Checker::Mixed;
    let (n, l) = (p.n(), ms.l_u() as u32);
    if l < 3 {
        return TheoremVerdict::failed(checker, "l(u) >= 3");
    }
    if n % l != 0 || l % 4 != 0 {
        return TheoremVerdict::failed(checker, "(a) n = nu l(u) and 4 divides l(u)");
    }
    let nu = n / l;
    let target = odd_multiples(n, nu, n / 2 - nu, None);
    if !matches_signed_form(&ms.a, &target, n) || !matches_signed_form(&ms.b, &target, n) {
        return TheoremVerdict::failed(checker, "(b) A, B = {±nu, ±3nu, ..., ±(n/(2nu) - 1)nu}");
    }
    let plus: BTreeSet<u32> = ms.q_plus.iter().copied().collect();
    if ms.q_minus.iter().any(|q| plus.contains(q)) {
        return TheoremVerdict::failed(checker, "(c) Q+ and Q- are disjoint");
    }
    let coset = arithmetic_coset(&ms.q(), n, 2 * nu, (l / 2) as usize, false);
    let Some(q0) = coset.filter(|&q0| gcd(q0, nu) == 1) else {
        return TheoremVerdict::failed(checker, "(c) Q = {q0, q0 + 2nu, ..., q0 + (n/nu - 2)nu} with gcd(q0, nu) = 1");
    };
    TheoremVerdict::special(
        checker,
        2,
        p.word().len(),
        nu as usize,
        Witness::Circulant {
            circulant_form: format!("K_{{{l},{l}}} with Q = q0 + {}j", 2 * nu),
            q0: Some(q0),
        },
    )
}

fn non_orientable_alternating(p: &CyclicPresentation, ms: &DifferenceMultisets) -> TheoremVerdict {
    let checker = Checker::NonOrientableAlternating;
    let (n, l) = (p.n(), ms.l_u() as u32);
    if l < 3 {
        return TheoremVerdict::failed(checker, "l(u) >= 3");
    }
    if l != n / 2 || l % 2 == 0 {
        return TheoremVerdict::failed(checker, "l(u) = n/2 is odd");
    }
    let target = odd_multiples(n, 1, (n - 4) / 2, Some(n / 2));
    if !matches_signed_form(&ms.a_bar, &target, n) {
        return TheoremVerdict::failed(checker, "A-bar = {±1, ±3, ..., ±(n-4)/2, n/2}");
    }
    if !matches_signed_form(&ms.b_bar, &target, n) {
        return TheoremVerdict::failed(checker, "B-bar = {±1, ±3, ..., ±(n-4)/2, n/2}");
    }
    TheoremVerdict::special(
        checker,
        2,
        p.word().len(),
        2,
        Witness::Circulant {
            circulant_form: format!("circ'_{n}(A-bar) = K_{{{l},{l}}}"),
            q0: None,
        },
    )
}

fn non_orientable_non_alternating(p: &CyclicPresentation, ms: &DifferenceMultisets) -> TheoremVerdict {
    let checker = Checker::NonOrientableNonAlternating;
    let (n, l) = (p.n(), ms.l_u() as u32);
    if l < 3 {
        return TheoremVerdict::failed(checker, "l(u) >= 3");
    }
    if n % l != 0 || l % 4 != 2 || l < 6 {
        return TheoremVerdict::failed(checker, "(a) n = nu l(u), l(u) = 2 mod 4, l(u) >= 6");
    }
    let nu = n / l;
    let target = odd_multiples(n, nu, n / 2 - 2 * nu, Some(n / 2));
    if !matches_signed_form(&ms.a_bar, &target, n) || !matches_signed_form(&ms.b_bar, &target, n) {
        return TheoremVerdict::failed(
            checker,
            "(b) A-bar, B-bar = {±nu, ±3nu, ..., ±(n/(2nu) - 2)nu, n/2}",
        );
    }
    let coset = arithmetic_coset(&ms.q(), n, 2 * nu, (l / 2) as usize, true);
    let Some(q0) = coset.filter(|&q0| gcd(q0, nu) == 1) else {
        return TheoremVerdict::failed(
            checker,
            "(c) Q-bar = {q0, q0 + 2nu, ..., q0 + (n/nu - 2)nu} with 0 < q0, gcd(q0, nu) = 1",
        );
    };
    TheoremVerdict::special(
        checker,
        2,
        p.word().len(),
        nu as usize,
        Witness::Circulant {
            circulant_form: format!("K_{{{l},{l}}} with Q-bar = q0 + {}j", 2 * nu),
            q0: Some(q0),
        },
    )
}

