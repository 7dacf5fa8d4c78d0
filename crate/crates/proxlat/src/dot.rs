//! Graphviz output. Only covering pairs are drawn, bottom to top.

use std::fmt::Write as _;

use proxlat_core::DistLattice;

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

/// Hasse diagram of `l`, nodes labelled by element names. Frame lattices
/// carry their member sets as names, so this also draws frames.
pub fn hasse_dot(name: &str, l: &DistLattice) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=box];");
    for (i, label) in l.labels().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(label));
    }
    for (a, b) in l.covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}
