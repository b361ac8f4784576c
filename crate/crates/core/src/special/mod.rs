//! `(m,k,nu)`-special presentations: a direct check against the star graph,
//! closed-form theorem checkers, perfect difference sets and group flags.

mod flags;
mod theorems;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::presentation::CyclicPresentation;
use crate::stargraph::{are_isomorphic, build_star_graph, metrics, recognize, Recognition};

pub use flags::{group_property_flags, GroupFlags, Largeness, SolvableGroup, Tits};
pub use theorems::{check_2knu, check_3knu, theorem_verdict, Checker, TheoremVerdict, Verdict, Witness};

/// True iff the pairwise differences of `d`, reduced mod `k^2 - k + 1`, hit
/// every nonzero residue exactly once.
pub fn is_perfect_difference_set(d: &[u64]) -> Result<bool> {
    let k = d.len() as u64;
    if k < 2 {
        return Err(Error::DifferenceSetSize(d.len()));
    }
    let modulus = k * k - k + 1;
    let reduced: Vec<u64> = d.iter().map(|x| x % modulus).collect();
    let mut hits = vec![false; modulus as usize];
    for (i, &a) in reduced.iter().enumerate() {
        for (j, &b) in reduced.iter().enumerate() {
            if i == j {
                continue;
            }
            let diff = ((a + modulus - b) % modulus) as usize;
            if diff == 0 || hits[diff] {
                return Ok(false);
            }
            hits[diff] = true;
        }
    }
    Ok(true)
}

/// `gcd(n, d_{j+1} - d_j)` over the cyclic subscript sequence of `w` is 1.
pub fn is_irreducible(p: &CyclicPresentation) -> bool {
    let n = p.n();
    let letters = p.word().letters();
    let k = letters.len();
    (0..k)
        .map(|j| (letters[(j + 1) % k].index + n - letters[j].index) % n)
        .fold(n, crate::gcd)
        == 1
}

/// Shape data for one star-graph component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub vertices: usize,
    pub girth: Option<usize>,
    pub diameter: usize,
    pub min_degree: usize,
    pub recognized_as: Recognition,
}

/// Outcome of the direct check. `m` and `nu` are set only when special; `k`
/// is the length of the defining word as given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialCertificate {
    pub is_special: bool,
    pub m: Option<usize>,
    pub k: usize,
    pub nu: Option<usize>,
    pub per_component: Vec<ComponentInfo>,
    pub reason: Option<String>,
}

impl SpecialCertificate {
    /// `(m, k, nu)` when special.
    pub fn tuple(&self) -> Option<(usize, usize, usize)> {
        match (self.is_special, self.m, self.nu) {
            (true, Some(m), Some(nu)) => Some((m, self.k, nu)),
            _ => None,
        }
    }
}

/// Checks the definition directly on the star graph: every component is
/// connected, bipartite, of diameter `m` and girth `2m` with `m >= 2`, has
/// minimum degree at least 3, all components are isomorphic, `k >= 3`, and
/// `k >= 4` when `m = 2`.
pub fn is_special_direct(p: &CyclicPresentation) -> SpecialCertificate {
    let k = p.word().len();
    let graph = build_star_graph(&p.relators(), p.n()).expect("presentation relators are valid");
    let components = graph.component_graphs();
    let per_component: Vec<ComponentInfo> = components
        .iter()
        .map(|c| {
            let m = metrics(c);
            ComponentInfo {
                vertices: c.order(),
                girth: m.girth,
                diameter: m.diameters[0],
                min_degree: m.min_degree(),
                recognized_as: recognize(c),
            }
        })
        .collect();

    let mut cert = SpecialCertificate {
        is_special: false,
        m: None,
        k,
        nu: None,
        per_component,
        reason: None,
    };
    let reason = direct_failure(&cert, &components);
    match reason {
        Some(r) => cert.reason = Some(r),
        None => {
            cert.is_special = true;
            cert.m = Some(cert.per_component[0].diameter);
            cert.nu = Some(components.len());
        }
    }
    cert
}

fn direct_failure(
    cert: &SpecialCertificate,
    components: &[crate::stargraph::LabeledMultigraph],
) -> Option<String> {
    if cert.k < 3 {
        return Some(format!("relator length {} < 3", cert.k));
    }
    for (c, info) in components.iter().zip(&cert.per_component) {
        if !metrics(c).bipartite {
            return Some("component not bipartite".into());
        }
        if info.min_degree < 3 {
            return Some(format!("minimum degree {} < 3", info.min_degree));
        }
        if info.girth != Some(2 * info.diameter) || info.diameter < 2 {
            return Some("not generalized polygon".into());
        }
    }
    let m = cert.per_component[0].diameter;
    if cert.per_component.iter().any(|c| c.diameter != m) {
        return Some("components have different diameters".into());
    }
    for c in &components[1..] {
        match are_isomorphic(&components[0], c) {
            Ok(true) => {}
            Ok(false) => return Some("components not isomorphic".into()),
            Err(e) => return Some(e.to_string()),
        }
    }
    if m == 2 && cert.k < 4 {
        return Some("m = 2 requires k >= 4".into());
    }
    None
}

/// Full certificate: direct verdict, theorem verdict and group flags.
pub fn certificate_json(p: &CyclicPresentation) -> Value {
    let direct = is_special_direct(p);
    let theorem = theorem_verdict(p);
    let flags = group_property_flags(p);
    let mut out = json!({
        "special": direct.is_special,
        "m": direct.m,
        "k": direct.k,
        "nu": direct.nu,
        "components": direct.per_component,
        "witness": theorem.witness(),
        "theorem_checker": theorem.to_json(),
        "flags": flags,
    });
    if let Some(reason) = &direct.reason {
        out["reason"] = json!(reason);
    }
    out
}

/// Whether the direct and theorem verdicts are compatible: equal tuples, or
/// both negative, or no theorem applies.
pub fn verdicts_agree(direct: &SpecialCertificate, theorem: &TheoremVerdict) -> bool {
    match &theorem.verdict {
        Verdict::NotApplicable { .. } => true,
        Verdict::NotSpecial { .. } => !direct.is_special,
        Verdict::Special { m, k, nu, .. } => direct.tuple() == Some((*m, *k, *nu)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, text: &str) -> CyclicPresentation {
        CyclicPresentation::parse(n, text).unwrap()
    }

    #[test]
    fn perfect_difference_sets() {
        assert!(is_perfect_difference_set(&[0, 1, 3]).unwrap());
        assert!(is_perfect_difference_set(&[1, 2, 4]).unwrap());
        assert!(!is_perfect_difference_set(&[0, 1, 2]).unwrap());
        assert!(is_perfect_difference_set(&[1, 9, 11]).unwrap());
        assert!(is_perfect_difference_set(&[0, 1, 3, 9]).unwrap());
        assert!(!is_perfect_difference_set(&[1, 1, 3]).unwrap());
        assert!(is_perfect_difference_set(&[0, 1]).unwrap());
        assert_eq!(is_perfect_difference_set(&[5]), Err(Error::DifferenceSetSize(1)));
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&p(14, "x0 x1 x10 x7 x8 x3")));
        assert!(!is_irreducible(&p(4, "x0 x2 x0 x2")));
        assert!(is_irreducible(&p(2, "x0 x1")));
    }

    #[test]
    fn direct_examples() {
        let c = is_special_direct(&p(14, "x0 x1 x10 x7 x8 x3"));
        assert_eq!(c.tuple(), Some((3, 6, 2)));
        assert!(c
            .per_component
            .iter()
            .all(|i| i.recognized_as == Recognition::ProjectivePlaneIncidence(2)));

        let c = is_special_direct(&p(9, "x0 x1 x5 x3 x4 x8 x6 x7 x2"));
        assert_eq!(c.tuple(), Some((2, 9, 3)));
        assert!(c.per_component.iter().all(|i| i.recognized_as == Recognition::CompleteBipartite(3)));

        let c = is_special_direct(&p(3, "x0 x1"));
        assert!(!c.is_special);
        assert_eq!(c.reason.as_deref(), Some("relator length 2 < 3"));
        let c = is_special_direct(&p(3, "x0 x1 x2"));
        assert!(c.reason.unwrap().starts_with("minimum degree"));
    }

    #[test]
    fn certificate_schema() {
        let v = certificate_json(&p(14, "x0 x1 x10 x7 x8 x3"));
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(
            keys,
            ["special", "m", "k", "nu", "components", "witness", "theorem_checker", "flags"]
        );
        assert_eq!(v["components"][0]["recognized_as"], "Heawood");
        assert_eq!(v["theorem_checker"]["verdict"], "special");
        assert_eq!(v["flags"]["large"], "yes");
        assert_eq!(v["flags"]["hyperbolic"], true);
    }
}
