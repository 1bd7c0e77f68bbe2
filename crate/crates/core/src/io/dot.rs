use std::fmt::Write;

use crate::sigma::Structure;

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz text with one node per element and one edge per pair of the relation.
pub fn to_dot(s: &Structure) -> String {
    let mut out = String::from("digraph S {\n");
    for x in s.elements() {
        let label = s.label(x);
        let shown = if label.is_empty() { "0" } else { label.as_str() };
        writeln!(out, "  n{} [label={}];", x.0, quoted(shown)).expect("string write");
    }
    for (a, b) in s.order().pairs() {
        writeln!(out, "  n{} -> n{};", a.0, b.0).expect("string write");
    }
    out.push_str("}\n");
    out
}
