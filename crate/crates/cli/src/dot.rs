//! Graphviz output. Undefined transitions are simply absent; parallel edges
//! are merged into one edge with a comma-separated label.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::format::AutomatonFile;

pub fn to_dot(file: &AutomatonFile) -> String {
    let dfa = &file.dfa;
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    if let Some(initial) = file.initial {
        writeln!(out, "  __start [shape=point];\n  __start -> {initial};").unwrap();
    }
    for s in 0..dfa.state_count() {
        let accepting = file.accepting.as_ref().is_some_and(|a| a.contains(s));
        if accepting {
            writeln!(out, "  {s} [shape=doublecircle];").unwrap();
        } else {
            writeln!(out, "  {s};").unwrap();
        }
    }
    let mut edges: BTreeMap<(usize, usize), Vec<&str>> = BTreeMap::new();
    for (s, a, t) in dfa.transitions() {
        edges.entry((s, t)).or_default().push(dfa.letter_name(a));
    }
    for ((s, t), labels) in edges {
        let label = labels.join(",").replace('\\', "\\\\").replace('"', "\\\"");
        writeln!(out, "  {s} -> {t} [label=\"{label}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_automaton;

    #[test]
    fn renders_partial_acceptor() {
        let file = parse_automaton(
            "states: 2\nalphabet: a b\ninitial: 0\naccepting: 1\ntrans: 0 a 1\ntrans: 0 b 1\ntrans: 1 a 1\n",
        )
        .unwrap();
        let dot = to_dot(&file);
        assert!(dot.contains("__start -> 0;"));
        assert!(dot.contains("1 [shape=doublecircle];"));
        assert!(dot.contains("0 -> 1 [label=\"a,b\"];"));
        assert!(dot.contains("1 -> 1 [label=\"a\"];"));
        assert_eq!(dot.matches("->").count(), 3);
    }
}
