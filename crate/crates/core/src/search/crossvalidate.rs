use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::Result;
use crate::freeword::{SignClass, Word};
use crate::presentation::{freely_redundant_oracle, period_expressions, CyclicPresentation, RedundancyKind};
use crate::special::{
    group_property_flags, is_special_direct, theorem_verdict, verdicts_agree, Checker, Largeness, Verdict,
    Witness,
};
use crate::stargraph::{
    are_isomorphic, build_star_graph, circulant, circulant_prime, metrics, predicted_components,
    structural_star_graph, DifferenceMultisets, Flavor, LabeledMultigraph,
};

use super::{partition_words, partitions, with_pool, EnumSpec, ReorderBuffer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub check: &'static str,
    pub n: u32,
    pub word: String,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckTally {
    pub evaluated: u64,
    pub violations: u64,
}

/// Outcome of a cross-validation run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrossReport {
    pub candidates: u64,
    pub skipped: u64,
    pub tallies: BTreeMap<&'static str, CheckTally>,
    /// Counts of noteworthy but non-failing observations.
    pub informational: BTreeMap<&'static str, u64>,
    pub counterexamples: Vec<Counterexample>,
    /// `(n, word, (m, k, nu))` for every positive direct verdict.
    pub hits: Vec<(u32, String, (usize, usize, usize))>,
    pub wall_time: Duration,
}

impl CrossReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn tally(&self, check: &str) -> CheckTally {
        self.tallies.get(check).copied().unwrap_or_default()
    }

    pub fn info(&self, key: &str) -> u64 {
        self.informational.get(key).copied().unwrap_or(0)
    }

    fn record(&mut self, check: &'static str, ok: bool, p: &CyclicPresentation, detail: impl FnOnce() -> String) {
        let t = self.tallies.entry(check).or_default();
        t.evaluated += 1;
        if !ok {
            t.violations += 1;
            self.counterexamples.push(Counterexample {
                check,
                n: p.n(),
                word: p.word().to_string(),
                detail: detail(),
            });
        }
    }

    fn note(&mut self, key: &'static str) {
        *self.informational.entry(key).or_default() += 1;
    }

    fn merge(&mut self, other: CrossReport) {
        self.candidates += other.candidates;
        self.skipped += other.skipped;
        for (k, t) in other.tallies {
            let mine = self.tallies.entry(k).or_default();
            mine.evaluated += t.evaluated;
            mine.violations += t.violations;
        }
        for (k, c) in other.informational {
            *self.informational.entry(k).or_default() += c;
        }
        self.counterexamples.extend(other.counterexamples);
        self.hits.extend(other.hits);
    }

    /// One JSON object per counterexample and hit, without the trailer.
    pub fn body_lines(&self) -> Vec<String> {
        let counter = self.counterexamples.iter().map(|c| {
            json!({"type": "counterexample", "check": c.check, "n": c.n, "word": c.word, "detail": c.detail})
        });
        let hits = self.hits.iter().map(|(n, w, (m, k, nu))| {
            json!({"type": "hit", "n": n, "word": w, "m": m, "k": k, "nu": nu})
        });
        counter.chain(hits).map(|v| v.to_string()).collect()
    }

    pub fn summary(&self) -> Value {
        let checks: serde_json::Map<String, Value> = self
            .tallies
            .iter()
            .map(|(k, t)| (k.to_string(), json!({"evaluated": t.evaluated, "violations": t.violations})))
            .collect();
        json!({
            "type": "summary",
            "candidates": self.candidates,
            "skipped": self.skipped,
            "checks": checks,
            "informational": self.informational,
            "counterexamples": self.counterexamples.len(),
            "hits": self.hits.len(),
            "wall_time_ms": self.wall_time.as_millis() as u64,
        })
    }

    /// Body lines followed by the summary trailer.
    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for line in self.body_lines() {
            out.push_str(&line);
            out.push('\n');
        }
        out.push_str(&self.summary().to_string());
        out.push('\n');
        out
    }
}

/// Runs every consistency check on every enumerated word, then spot-checks
/// orbit invariance on 100 random orbit members.
pub fn crossvalidate(spec: &EnumSpec) -> Result<CrossReport> {
    spec.check_budget()?;
    let start = Instant::now();
    let units = partitions(spec);
    let mut merged = CrossReport::default();
    let mut sample_pool: Vec<Word> = Vec::new();
    {
        let buffer = ReorderBuffer::new(|(part, words): (CrossReport, Vec<Word>)| {
            merged.merge(part);
            sample_pool.extend(words);
        });
        with_pool(|| {
            units.par_iter().enumerate().for_each(|(i, unit)| {
                let words = partition_words(spec, unit);
                let mut part = CrossReport::default();
                for w in &words {
                    check_word(&mut part, w);
                }
                buffer.insert(i, (part, words));
            })
        });
        let _ = buffer.finish();
    }
    let orbit = orbit_spot_check(&sample_pool, 100, 0x5eed);
    merged.merge(orbit);
    merged.wall_time = start.elapsed();
    Ok(merged)
}

/// The same checks on an explicit list of words.
pub fn crossvalidate_words(words: &[Word]) -> CrossReport {
    let start = Instant::now();
    let parts: Vec<CrossReport> = with_pool(|| {
        words
            .par_iter()
            .map(|w| {
                let mut part = CrossReport::default();
                check_word(&mut part, w);
                part
            })
            .collect()
    });
    let mut merged = CrossReport::default();
    for p in parts {
        merged.merge(p);
    }
    merged.wall_time = start.elapsed();
    merged
}

fn check_word(report: &mut CrossReport, w: &Word) {
    report.candidates += 1;
    let Ok(p) = CyclicPresentation::new(w.rank(), w.clone()) else {
        report.skipped += 1;
        return;
    };
    let n = p.n();
    let r = p.classify_redundancy();
    let relators = p.relators();

    // classification against the relator-level oracle
    let oracle = freely_redundant_oracle(&relators);
    let oracle_non_orientable = relators
        .iter()
        .any(|rj| relators[0].is_cyclic_permutation_of(&rj.inverse()));
    report.record(
        "classification_oracle",
        (!oracle.is_empty()) == r.is_redundant()
            && oracle_non_orientable == !r.is_orientable()
            && r.refinement_size as usize == relators.len() - oracle.len(),
        &p,
        || format!("kind {:?}, t = {}, oracle marks {:?}", r.kind, r.refinement_size, oracle),
    );

    let generic = build_star_graph(&relators, n).expect("valid relators");

    // concise refinement
    let truncation = p.truncation(r.refinement_size);
    let kept = truncation.relators();
    report.record("refinement_concise", freely_redundant_oracle(&kept).is_empty(), &p, || {
        format!("t = {} leaves a redundant relator", r.refinement_size)
    });
    let refined = build_star_graph(&kept, n).expect("valid relators");
    report.record("refinement_star_graph", refined == generic, &p, || {
        format!("t = {} changes the star graph", r.refinement_size)
    });

    // structural star graph and the difference multisets
    let ms = DifferenceMultisets::from_report(&r).expect("report witnesses are consistent");
    let structural = structural_star_graph(&ms, ms.l_u());
    report.record("star_graph_equivalence", structural.as_ref() == Ok(&generic), &p, || {
        format!("structural {:?} vs generic {:?}", structural.as_ref().map(|g| g.edges().to_vec()), generic.edges())
    });
    let m = metrics(&generic);
    report.record("regularity", m.regular_degree == Some(ms.l_u()), &p, || {
        format!("l(u) = {}, degrees {:?}", ms.l_u(), m.degree_sequence)
    });
    if ms.flavor == Flavor::Orientable {
        report.record("eq2", ms.satisfies_congruence(), &p, || {
            format!("residue {} vs h = {}", ms.congruence_residue(), ms.h)
        });
    }
    check_components(report, &p, &ms, &generic);

    // minimal period witness
    let expressions = period_expressions(&r.root);
    let shortest = expressions.iter().map(|e| e.u.len()).min().unwrap_or(0);
    let witnesses = expressions.iter().filter(|e| e.u.len() == shortest).count();
    report.record("unique_period_witness", witnesses == 1, &p, || {
        format!("{witnesses} minimal witnesses")
    });

    check_girth(report, &p, &ms, &generic);

    // direct definition against the theorem checkers
    let direct = is_special_direct(&p);
    let theorem = theorem_verdict(&p);
    if theorem.is_applicable() {
        report.record("direct_vs_theorem", verdicts_agree(&direct, &theorem), &p, || {
            format!("direct {:?} ({:?}) vs {} {}", direct.tuple(), direct.reason, theorem.checker, theorem.to_json())
        });
    } else {
        report.note("theorem_not_applicable");
    }
    if let Some((mm, k, nu)) = direct.tuple() {
        report.hits.push((n, p.word().to_string(), (mm, k, nu)));
        let sign = p.word().sign_class().expect("nonempty");
        let ok = if mm >= 3 {
            mm == 3 && r.is_orientable() && sign != SignClass::Mixed
        } else {
            true
        };
        report.record("m_forcing", ok && (r.is_orientable() || mm == 2), &p, || {
            format!("m = {mm}, kind {:?}, sign {:?}", r.kind, sign)
        });
        report.record("min_generators", n >= 3, &p, || format!("special with n = {n}"));
        report.record("m2_k4", mm != 2 || k >= 4, &p, || format!("m = 2, k = {k}"));
        if mm == 3 {
            report.record("nu_divides_k", k % nu == 0, &p, || format!("nu = {nu}, k = {k}"));
        }
        if r.is_redundant() {
            report.record("hyperbolic_redundant", 2 * mm + k < k * mm, &p, || {
                format!("2/{k} + 1/{mm} >= 1")
            });
        }
        if let (Checker::Positive, Verdict::Special { witness: Witness::Circulant { q0: Some(q0), .. }, .. }) =
            (theorem.checker, &theorem.verdict)
        {
            if sign == SignClass::Positive {
                let (l, h) = (ms.l_u() as u64, r.period.h as u64);
                let lhs = l * *q0 as u64 + l * (l - 1) / 2 * nu as u64;
                report.record("eq2_positive_special", lhs % n as u64 == h % n as u64, &p, || {
                    format!("l q0 + l(l-1)/2 nu = {lhs}, h = {h}")
                });
            }
        }
    }

    if r.is_redundant() && n >= 3 {
        let flags = group_property_flags(&p);
        report.record("large_redundant", flags.large == Largeness::Yes, &p, || format!("{flags:?}"));
    }
}

fn positive_part(g: &LabeledMultigraph, n: usize) -> LabeledMultigraph {
    LabeledMultigraph::plain(n, g.edges().iter().filter(|&&(a, b)| a < n && b < n).copied())
}

fn negative_part(g: &LabeledMultigraph, n: usize) -> LabeledMultigraph {
    LabeledMultigraph::plain(
        n,
        g.edges().iter().filter(|&&(a, b)| a >= n && b >= n).map(|&(a, b)| (a - n, b - n)),
    )
}

fn check_components(report: &mut CrossReport, p: &CyclicPresentation, ms: &DifferenceMultisets, g: &LabeledMultigraph) {
    let predicted = predicted_components(ms);
    let actual = g.components();
    let n = p.n() as usize;
    match ms.flavor {
        Flavor::Orientable => {
            report.record("component_law", predicted.components == actual, p, || {
                format!("predicted {:?}, actual {:?}", predicted.components, actual)
            });
            if ms.q().is_empty() {
                let ok = positive_part(g, n) == circulant(ms.n, &ms.a)
                    && negative_part(g, n) == circulant(ms.n, &ms.b);
                report.record("component_law_circulant", ok, p, || "halves differ from circ_n(A), circ_n(B)".into());
                let pos = circulant(ms.n / predicted.d_a, &ms.a.iter().map(|a| a / predicted.d_a).collect::<Vec<_>>());
                let one = g.induced(&actual[0]);
                if let Ok(iso) = are_isomorphic(&pos, &one) {
                    report.record("component_law_circulant", iso, p, || {
                        "positive component not isomorphic to the reduced circulant".into()
                    });
                }
            }
        }
        Flavor::NonOrientable => {
            if predicted.components != actual {
                report.note("non_orientable_component_partition_mismatch");
            }
            if ms.q().is_empty() {
                let ok = positive_part(g, n) == circulant_prime(ms.n, &ms.a_bar)
                    && negative_part(g, n) == circulant_prime(ms.n, &ms.b_bar);
                if !ok {
                    report.note("circulant_prime_mismatch");
                }
            }
        }
    }
}

fn check_girth(report: &mut CrossReport, p: &CyclicPresentation, ms: &DifferenceMultisets, g: &LabeledMultigraph) {
    let m = metrics(g);
    let l = ms.l_u();
    match ms.flavor {
        Flavor::Orientable if l >= 3 => {
            let mixed = ms.u.sign_class() == Ok(SignClass::Mixed);
            let bound = if mixed && l == 3 { 8 } else { 6 };
            report.record("girth_orientable", m.girth.is_some_and(|x| x <= bound), p, || {
                format!("girth {:?} > {bound}", m.girth)
            });
        }
        Flavor::NonOrientable if l >= 2 => {
            report.record("girth_non_orientable", m.girth.is_some_and(|x| x <= 4), p, || {
                format!("girth {:?} > 4", m.girth)
            });
            let (first, last) = (ms.u.first().unwrap(), ms.u.last().unwrap());
            if first.positive != last.positive {
                report.record("girth_two", m.girth == Some(2), p, || format!("girth {:?} != 2", m.girth));
            } else if m.girth == Some(2) {
                report.note("girth_two_with_equal_end_signs");
            }
        }
        _ => {}
    }
    for c in g.component_graphs() {
        let cm = metrics(&c);
        if let Some(girth) = cm.girth {
            let d = cm.diameters[0];
            report.record("girth_diameter", girth <= 2 * d + 1, p, || format!("girth {girth}, diameter {d}"));
        }
    }
}

type Signature = (RedundancyKind, usize, u32, Option<(usize, usize, usize)>, Option<(usize, usize, usize)>, String);

fn signature(p: &CyclicPresentation) -> Signature {
    let r = p.classify_redundancy();
    let flags = group_property_flags(p);
    (
        r.kind,
        r.root_power,
        r.refinement_size,
        is_special_direct(p).tuple(),
        theorem_verdict(p).tuple(),
        format!("{flags:?}"),
    )
}

/// Re-runs every verdict on `samples` random orbit members (random shift,
/// rotation and inversion) of words drawn from `words`.
pub fn orbit_spot_check(words: &[Word], samples: usize, seed: u64) -> CrossReport {
    let mut report = CrossReport::default();
    let usable: Vec<&Word> = words.iter().filter(|w| !w.is_empty() && w.is_cyclically_reduced()).collect();
    if usable.is_empty() {
        return report;
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let w = usable[rng.random_range(0..usable.len())];
        let h = rng.random_range(0..w.rank()) as i64;
        let s = rng.random_range(0..w.len()) as i64;
        let mut image = w.shift(h).cyclic_permute(s);
        if rng.random_bool(0.5) {
            image = image.inverse();
        }
        let base = CyclicPresentation::new(w.rank(), w.clone()).expect("reduced");
        let moved = CyclicPresentation::new(w.rank(), image.clone()).expect("reduced");
        let (a, b) = (signature(&base), signature(&moved));
        report.record("orbit_soundness", a == b, &base, || format!("image {image}: {a:?} vs {b:?}"));
    }
    report
}
