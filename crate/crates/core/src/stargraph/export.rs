use std::fmt::Write;

use serde::Serialize;

use super::{metrics, Label, LabeledMultigraph};

const PALETTE: [&str; 8] = [
    "black", "red", "blue", "darkgreen", "orange", "purple", "brown", "cyan4",
];

/// Graphviz rendering: positive vertices are circles, negative ones boxes,
/// and every vertex and edge is coloured by its component.
pub fn to_dot(g: &LabeledMultigraph) -> String {
    let mut component_of = vec![0; g.order()];
    for (c, vertices) in g.components().iter().enumerate() {
        for &v in vertices {
            component_of[v] = c;
        }
    }
    let colour = |v: usize| PALETTE[component_of[v] % PALETTE.len()];
    let mut out = String::from("graph star {\n");
    for (v, label) in g.labels().iter().enumerate() {
        let shape = match label {
            Label::Gen { positive: false, .. } => "box",
            _ => "circle",
        };
        let _ = writeln!(
            out,
            "  \"{label}\" [shape={shape}, color={}, label=\"{}\"];",
            colour(v),
            pretty(label)
        );
    }
    for &(a, b) in g.edges() {
        let labels = g.labels();
        let _ = writeln!(out, "  \"{}\" -- \"{}\" [color={}];", labels[a], labels[b], colour(a));
    }
    out.push_str("}\n");
    out
}

fn pretty(label: &Label) -> String {
    match label {
        Label::Gen { index, positive: false } => format!("x{index}^-1"),
        other => other.to_string(),
    }
}

/// JSON form of a star graph together with its metrics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphJson {
    pub n: u32,
    pub edges: Vec<[String; 2]>,
    pub girth: Option<usize>,
    pub diameter: Vec<usize>,
    pub components: usize,
    pub regular: Option<usize>,
}

impl GraphJson {
    pub fn new(n: u32, g: &LabeledMultigraph) -> Self {
        let m = metrics(g);
        let labels = g.labels();
        GraphJson {
            n,
            edges: g
                .edges()
                .iter()
                .map(|&(a, b)| [labels[a].to_string(), labels[b].to_string()])
                .collect(),
            girth: m.girth,
            diameter: m.diameters,
            components: m.component_count,
            regular: m.regular_degree,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::CyclicPresentation;
    use crate::stargraph::build_star_graph;

    #[test]
    fn dot_is_deterministic_and_shaped() {
        let p = CyclicPresentation::parse(3, "x0 x1").unwrap();
        let g = build_star_graph(&p.relators(), 3).unwrap();
        let dot = to_dot(&g);
        assert_eq!(dot, to_dot(&g));
        assert!(dot.starts_with("graph star {\n  \"x0\" [shape=circle"));
        assert!(dot.contains("\"x0-\" [shape=box"));
        assert_eq!(dot.matches(" -- ").count(), 6);
    }

    #[test]
    fn json_schema() {
        let p = CyclicPresentation::parse(2, "x0 x1").unwrap();
        let g = build_star_graph(&p.relators(), 2).unwrap();
        let json = serde_json::to_string(&GraphJson::new(2, &g)).unwrap();
        assert_eq!(
            json,
            r#"{"n":2,"edges":[["x0","x1-"],["x1","x0-"]],"girth":null,"diameter":[1,1],"components":2,"regular":1}"#
        );
    }
}
