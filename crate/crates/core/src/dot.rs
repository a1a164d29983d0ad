//! Graphviz export. Semilattices are drawn bottom-to-top from their covering
//! edges with one rank per height; partial algebras get one box per defined
//! join, wired from its operands to its result.

use std::fmt::Write;

use crate::order::{elements, JoinSemilattice};
use crate::subuniverse::{PartialBinaryAlgebra, Structure};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Length of the longest chain ending at each element.
fn heights(l: &JoinSemilattice) -> Vec<usize> {
    let p = l.poset();
    let mut order: Vec<usize> = (0..l.len()).collect();
    order.sort_by_key(|&i| p.down_set(i).count_ones());
    let mut h = vec![0; l.len()];
    for &i in &order {
        h[i] = elements(p.lower_covers(i)).map(|j| h[j] + 1).max().unwrap_or(0);
    }
    h
}

fn semilattice_dot(name: &str, l: &JoinSemilattice, labels: &[String]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for (i, label) in labels.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(label)).unwrap();
    }
    let h = heights(l);
    for level in 0..=h.iter().copied().max().unwrap_or(0) {
        let row: Vec<String> = (0..l.len())
            .filter(|&i| h[i] == level)
            .map(|i| format!("n{i};"))
            .collect();
        writeln!(out, "  {{ rank=same; {} }}", row.join(" ")).unwrap();
    }
    for (lo, hi) in l.poset().covers() {
        writeln!(out, "  n{lo} -> n{hi};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn algebra_dot(name: &str, a: &PartialBinaryAlgebra, labels: &[String]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for (i, label) in labels.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(label)).unwrap();
    }
    for (t, (i, j, k)) in a.joins().enumerate() {
        let text = format!("{}∨{}={}", labels[i], labels[j], labels[k]);
        writeln!(out, "  j{t} [shape=box, label={}];", quote(&text)).unwrap();
        writeln!(out, "  n{i} -> j{t};").unwrap();
        if j != i {
            writeln!(out, "  n{j} -> j{t};").unwrap();
        }
        writeln!(out, "  j{t} -> n{k};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn to_dot(name: &str, structure: &Structure, labels: &[String]) -> String {
    match structure {
        Structure::Total(l) => semilattice_dot(name, l, labels),
        Structure::Partial(a) => algebra_dot(name, a, labels),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_named;

    #[test]
    fn h5_dot_has_covers_and_ranks() {
        let s = build_named("H5").unwrap();
        let dot = to_dot("H5", &s.structure, &s.labels);
        assert!(dot.starts_with("digraph \"H5\" {"));
        assert!(dot.contains("rankdir=BT;"));
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert!(dot.contains("{ rank=same; n0; n3; }"));
    }

    #[test]
    fn partial_algebra_dot_has_join_boxes() {
        let s = build_named("U1").unwrap();
        let dot = to_dot("U1", &s.structure, &s.labels);
        assert_eq!(dot.matches("shape=box").count(), 3);
        assert!(dot.contains("label=\"a∨b=x\""));
    }
}
