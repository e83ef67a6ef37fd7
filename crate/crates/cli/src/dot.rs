//! DOT export, presentational only. Node order follows vertex ids so the
//! output is stable, but layout is the viewer's business.

use std::fmt::Write as _;

use homkit_core::topology::SimplicialComplex;
use homkit_core::Graph;

pub fn graph_to_dot(g: &Graph) -> String {
    let mut out = String::from("graph {\n");
    for v in g.vertices() {
        writeln!(out, "  {v};").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// The 1-skeleton of a complex.
pub fn skeleton_to_dot(x: &SimplicialComplex) -> String {
    let mut out = String::from("graph {\n");
    if let Some(vertices) = x.layer(0) {
        for v in vertices.iter() {
            writeln!(out, "  {};", v[0]).unwrap();
        }
    }
    if let Some(edges) = x.layer(1) {
        for e in edges.iter() {
            writeln!(out, "  {} -- {};", e[0], e[1]).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
