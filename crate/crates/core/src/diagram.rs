//! Graphviz DOT export: Hasse diagrams of `≤` and of the multiplicative
//! order, and drawings of dual systems.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::FiniteIpoAlgebra;
use crate::duality::{multiplicative_order, DualSystem};
use crate::io::Payload;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Hasse diagram of `≤`.
    Order,
    /// Hasse diagram of `x ⊑ y ⟺ x·y = x`.
    MultOrder,
    /// Atoms grouped by node, partial maps as edges.
    Dual,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "order" => Ok(Mode::Order),
            "mult_order" => Ok(Mode::MultOrder),
            "dual" => Ok(Mode::Dual),
            _ => Err(format!("unknown mode `{s}`; expected order, mult_order or dual")),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("mode {mode} needs a document of kind {needs}, found {found}")]
    KindMismatch {
        mode: &'static str,
        needs: &'static str,
        found: &'static str,
    },
    #[error("the multiplicative order needs a commutative idempotent product: {0}")]
    NotIdempotent(String),
}

/// Pairs `(x, y)` with `x < y` and nothing strictly between.
pub fn hasse_covers(n: usize, leq: &[bool]) -> Vec<(usize, usize)> {
    let lt = |x: usize, y: usize| x != y && leq[x * n + y];
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

fn hasse_dot(name: &str, n: usize, leq: &[bool]) -> String {
    let mut s = format!("digraph {name} {{\n  rankdir=BT;\n  node [shape=circle];\n");
    for x in 0..n {
        let _ = writeln!(s, "  {x};");
    }
    for (x, y) in hasse_covers(n, leq) {
        let _ = writeln!(s, "  {x} -> {y} [arrowhead=none];");
    }
    s.push_str("}\n");
    s
}

pub fn order_dot(alg: &FiniteIpoAlgebra) -> String {
    hasse_dot("order", alg.n(), alg.leq_flat())
}

pub fn mult_order_dot(alg: &FiniteIpoAlgebra) -> Result<String, DiagramError> {
    let m = multiplicative_order(alg).map_err(|e| DiagramError::NotIdempotent(e.to_string()))?;
    Ok(hasse_dot("mult_order", alg.n(), &m))
}

/// Nodes with two or more atoms become clusters, a one-atom node is a plain
/// point and an atomless node is a point labelled `∅`. For each cover
/// `p < q`, every defined `f_pq(b) = a` is an edge `b — a`; an everywhere
/// undefined map is a single dotted edge between the two nodes.
pub fn dual_dot(dual: &DualSystem) -> String {
    let d = dual.d();
    let atom = |p: usize, i: usize| format!("n{p}a{i}");
    // the point through which node-level edges are drawn
    let anchor = |p: usize| {
        if dual.atoms()[p] == 0 {
            format!("n{p}")
        } else {
            atom(p, 0)
        }
    };
    let mut s = String::from("graph dual {\n  compound=true;\n  node [shape=point];\n");
    for p in 0..d {
        match dual.atoms()[p] {
            0 => {
                let _ = writeln!(s, "  n{p} [shape=plaintext, label=\"∅\"];");
            }
            1 => {
                let _ = writeln!(s, "  {};", atom(p, 0));
            }
            k => {
                let _ = writeln!(s, "  subgraph cluster_{p} {{\n    style=rounded;");
                for i in 0..k {
                    let _ = writeln!(s, "    {};", atom(p, i));
                }
                s.push_str("  }\n");
            }
        }
    }
    let covers = crate::enumerate::semilattice::covers(d, dual.join_table());
    for (p, q) in covers {
        let f = dual.pmap(p, q).expect("p < q");
        if f.iter().all(Option::is_none) {
            let mut attrs = vec!["style=dotted".to_string()];
            if dual.atoms()[q] > 1 {
                attrs.push(format!("ltail=cluster_{q}"));
            }
            if dual.atoms()[p] > 1 {
                attrs.push(format!("lhead=cluster_{p}"));
            }
            let _ = writeln!(s, "  {} -- {} [{}];", anchor(q), anchor(p), attrs.join(", "));
            continue;
        }
        for (b, a) in f.iter().enumerate() {
            if let Some(a) = a {
                let _ = writeln!(s, "  {} -- {};", atom(q, b), atom(p, *a));
            }
        }
    }
    s.push_str("}\n");
    s
}

/// Renders a document in the requested mode.
pub fn export_diagram(payload: &Payload, mode: Mode) -> Result<String, DiagramError> {
    match (mode, payload) {
        (Mode::Order, Payload::Algebra(a)) => Ok(order_dot(a)),
        (Mode::MultOrder, Payload::Algebra(a)) => mult_order_dot(a),
        (Mode::Dual, Payload::Dual(d)) => Ok(dual_dot(d)),
        (Mode::Order, p) => Err(mismatch("order", "algebra", p)),
        (Mode::MultOrder, p) => Err(mismatch("mult_order", "algebra", p)),
        (Mode::Dual, p) => Err(mismatch("dual", "dual", p)),
    }
}

fn mismatch(mode: &'static str, needs: &'static str, p: &Payload) -> DiagramError {
    DiagramError::KindMismatch {
        mode,
        needs,
        found: p.kind(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn edges(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("->") || l.contains("--")).count()
    }

    #[test]
    fn local_identities_order_is_a_diamond() {
        let dot = order_dot(&fixtures::three_local_identities());
        assert_eq!(edges(&dot), 4);
        assert_eq!((0..4).filter(|x| dot.contains(&format!("  {x};"))).count(), 4);
    }

    #[test]
    fn trivial_algebra_has_no_edges() {
        let dot = order_dot(&FiniteIpoAlgebra::trivial());
        assert_eq!(edges(&dot), 0);
        assert!(dot.contains("  0;"));
    }

    #[test]
    fn monoid_dual_has_three_clusters_and_one_dotted_edge() {
        let dot = dual_dot(&fixtures::dual_monoid_14());
        assert_eq!(dot.matches("subgraph cluster_").count(), 3);
        assert_eq!(dot.matches("style=dotted").count(), 1);
        assert_eq!(edges(&dot), 4);
    }

    #[test]
    fn empty_node_is_labelled() {
        let dot = dual_dot(&fixtures::dual_semilattice_13());
        assert!(dot.contains("label=\"∅\""));
        assert_eq!(dot.matches("style=dotted").count(), 1);
    }

    #[test]
    fn mult_order_needs_idempotence() {
        assert!(mult_order_dot(&fixtures::l3()).is_err());
        let dot = mult_order_dot(&fixtures::three_local_identities()).unwrap();
        assert_eq!(edges(&dot), 3);
    }

    #[test]
    fn mode_must_match_kind() {
        let p = Payload::Algebra(fixtures::two());
        assert!(matches!(export_diagram(&p, Mode::Dual), Err(DiagramError::KindMismatch { .. })));
        assert!("hasse".parse::<Mode>().is_err());
    }
}
