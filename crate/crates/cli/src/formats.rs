//! Line-based file formats.
//!
//! Graphs travel as `.grf`: optional `#` comment lines, one `n <count>`
//! line, then `e <u> <v>` lines (a loop when `u == v`). The writer emits
//! edges sorted with `u <= v`, so parse(write(g)) reproduces the input
//! exactly. Vertex maps travel as `.map` (`m <src> <dst>`, one line per
//! domain vertex, sorted by source). Poset dumps (`.pos`), complex dumps
//! (`.smp`, maximal faces only) and exponential decode tables (`.dec`) are
//! write-mostly formats; `.smp` is also read back, re-closing downward.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use homkit_core::hom::HomPoset;
use homkit_core::topology::SimplicialComplex;
use homkit_core::{Caps, Error, Graph, GraphMap};

use crate::CliError;

fn parse_error(path: &Path, line: usize, msg: impl AsRef<str>) -> CliError {
    CliError::Domain(format!(
        "{}:{}: {}",
        path.display(),
        line,
        msg.as_ref()
    ))
}

/// Content lines with their 1-based line numbers; comments and blanks skipped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("{}: {}", path.display(), e)))?;
    let mut lines = content_lines(&text);
    let (ln, first) = lines
        .next()
        .ok_or_else(|| parse_error(path, 1, "missing 'n <count>' line"))?;
    let n: usize = match first.strip_prefix("n ") {
        Some(rest) => rest
            .trim()
            .parse()
            .map_err(|_| parse_error(path, ln, "invalid vertex count"))?,
        None => return Err(parse_error(path, ln, "expected 'n <count>'")),
    };
    let mut edges = Vec::new();
    for (ln, line) in lines {
        let rest = line
            .strip_prefix("e ")
            .ok_or_else(|| parse_error(path, ln, "expected 'e <u> <v>'"))?;
        let mut it = rest.split_whitespace();
        let (u, v) = match (it.next(), it.next(), it.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => return Err(parse_error(path, ln, "expected 'e <u> <v>'")),
        };
        let u: usize = u
            .parse()
            .map_err(|_| parse_error(path, ln, "invalid vertex id"))?;
        let v: usize = v
            .parse()
            .map_err(|_| parse_error(path, ln, "invalid vertex id"))?;
        if u >= n || v >= n {
            return Err(parse_error(
                path,
                ln,
                format!("edge ({u}, {v}) out of range for {n} vertices"),
            ));
        }
        edges.push((u, v));
    }
    let graph = Graph::new(n, &edges).map_err(CliError::from)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(graph.with_name(name))
}

pub fn graph_to_string(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", g.vertex_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

pub fn parse_map(path: &Path, dom: &Graph, cod: &Graph) -> Result<GraphMap, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("{}: {}", path.display(), e)))?;
    let mut pairs = Vec::new();
    for (ln, line) in content_lines(&text) {
        let rest = line
            .strip_prefix("m ")
            .ok_or_else(|| parse_error(path, ln, "expected 'm <src> <dst>'"))?;
        let mut it = rest.split_whitespace();
        let (s, d) = match (it.next(), it.next(), it.next()) {
            (Some(s), Some(d), None) => (s, d),
            _ => return Err(parse_error(path, ln, "expected 'm <src> <dst>'")),
        };
        let s: usize = s
            .parse()
            .map_err(|_| parse_error(path, ln, "invalid source id"))?;
        let d: usize = d
            .parse()
            .map_err(|_| parse_error(path, ln, "invalid target id"))?;
        pairs.push((ln, s, d));
    }
    if pairs.len() != dom.vertex_count() {
        return Err(CliError::Domain(format!(
            "{}: map has {} entries for a {}-vertex domain",
            path.display(),
            pairs.len(),
            dom.vertex_count()
        )));
    }
    let mut image = vec![usize::MAX; dom.vertex_count()];
    for (ln, s, d) in pairs {
        if s >= dom.vertex_count() {
            return Err(parse_error(path, ln, format!("source {s} out of range")));
        }
        if image[s] != usize::MAX {
            return Err(parse_error(path, ln, format!("duplicate source {s}")));
        }
        image[s] = d;
    }
    GraphMap::new(dom, cod, image).map_err(CliError::from)
}

pub fn map_to_string(map: &GraphMap) -> String {
    let mut out = String::new();
    for (src, &dst) in map.image().iter().enumerate() {
        writeln!(out, "m {src} {dst}").unwrap();
    }
    out
}

/// Poset dump: `k <count>` then `h <idx> <set0>|<set1>|...` with each set
/// comma-separated. The order relation is containment, so readers
/// recompute it.
pub fn poset_to_string(poset: &HomPoset) -> String {
    let mut out = String::new();
    writeln!(out, "k {}", poset.len()).unwrap();
    for (i, element) in poset.elements().iter().enumerate() {
        write!(out, "h {i}").unwrap();
        for (j, set) in element.sets().iter().enumerate() {
            out.push(if j == 0 { ' ' } else { '|' });
            let members: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            out.push_str(&members.join(","));
        }
        out.push('\n');
    }
    out
}

/// Complex dump: one `f <v0> <v1> ...` line per maximal face.
pub fn complex_to_string(x: &SimplicialComplex) -> String {
    let mut out = String::new();
    for face in x.maximal_faces() {
        write!(out, "f").unwrap();
        for v in face {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_complex(path: &Path, caps: &Caps) -> Result<SimplicialComplex, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("{}: {}", path.display(), e)))?;
    let mut faces = Vec::new();
    for (ln, line) in content_lines(&text) {
        let rest = line
            .strip_prefix('f')
            .ok_or_else(|| parse_error(path, ln, "expected 'f <v0> <v1> ...'"))?;
        let face: Result<Vec<u32>, _> = rest.split_whitespace().map(str::parse).collect();
        let face = face.map_err(|_| parse_error(path, ln, "invalid vertex id"))?;
        if face.is_empty() {
            return Err(parse_error(path, ln, "empty face"));
        }
        faces.push(face);
    }
    SimplicialComplex::from_faces(&faces, caps).map_err(CliError::from)
}

/// Decode table for an exponential graph: `d <vertexid> <img0> <img1> ...`.
pub fn decode_table_to_string(exp: &homkit_core::exponential::ExponentialGraph) -> String {
    let mut out = String::new();
    for v in 0..exp.vertex_count() {
        write!(out, "d {v}").unwrap();
        for &w in exp.decode(v).image() {
            write!(out, " {w}").unwrap();
        }
        out.push('\n');
    }
    out
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(msg) => CliError::Domain(msg.to_string()),
            Error::Resource { .. } => CliError::Resource(e.to_string()),
        }
    }
}
