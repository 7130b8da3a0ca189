//! Graphviz export.

use std::fmt::Write;

use crate::automaton::{output_str, Automaton};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Renders `aut` in DOT. Nodes are labeled `state/output` and final states
/// are drawn with a double circle. States appear in index order and edges
/// digit-ascending, so equal automata give identical text.
pub fn to_dot(aut: &Automaton) -> String {
    let mut out = String::new();
    out.push_str("digraph automaton {\n    rankdir=LR;\n");
    out.push_str("    __start [shape=point];\n");
    for s in aut.states() {
        let name = aut.name(s).to_string();
        let label = format!("{}/{}", name, output_str(aut.output(s)));
        let shape = if aut.is_final(s) {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(
            out,
            "    {} [label={}, shape={}];",
            quote(&name),
            quote(&label),
            shape
        )
        .unwrap();
    }
    writeln!(
        out,
        "    __start -> {};",
        quote(&aut.name(aut.initial()).to_string())
    )
    .unwrap();
    for (s, d, t) in aut.transitions() {
        writeln!(
            out,
            "    {} -> {} [label={}];",
            quote(&aut.name(s).to_string()),
            quote(&aut.name(t).to_string()),
            quote(&d.to_string())
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
