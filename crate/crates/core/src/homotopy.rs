//! Homotopy of graph maps, fold reductions, and homotopy equivalence.
//!
//! Two homomorphisms `f, g: G -> H` are homotopic for the categorical
//! structure when a path of homomorphisms joins them, consecutive maps being
//! adjacent in the exponential graph `H^G`. Deciding this never needs the
//! full exponential: the looped vertices are the homomorphisms, and
//! adjacency between two of them is checked directly on the edge set of
//! `G`, so a breadth-first search over the enumerated homomorphism list
//! suffices.
//!
//! A fold removes a vertex `v` whose neighborhood is contained in the
//! neighborhood of another vertex `u`; fold and unfold are homotopy inverse
//! to each other, and a graph foldable to the single looped vertex is
//! dismantlable. Greedy folding always picks the lexicographically least
//! valid pair: any maximal fold sequence reaching a stiff core decides
//! dismantlability, so determinism wins over trace length.

use alloc::vec::Vec;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{enumerate_homomorphisms, is_isomorphic, Graph, GraphMap, VertexId};

/// One fold step, in the labels of the graph current at that step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FoldStep {
    /// The removed vertex.
    pub removed: VertexId,
    /// The vertex it folds onto; `N(removed) ⊆ N(target)` at that step.
    pub target: VertexId,
}

/// A replayable sequence of folds from `start` to `end`.
#[derive(Clone, Debug)]
pub struct FoldTrace {
    pub start: Graph,
    pub end: Graph,
    pub steps: Vec<FoldStep>,
}

impl FoldTrace {
    /// Re-run the trace from `start`, validating each containment, and
    /// return the final graph.
    pub fn replay(&self) -> Result<Graph> {
        let mut current = self.start.clone();
        for step in &self.steps {
            current = apply_fold(&current, step.removed, step.target)?.folded;
        }
        Ok(current)
    }
}

/// All ordered pairs `(v, u)` with `v != u` and `N(v) ⊆ N(u)`, sorted.
pub fn find_folds(g: &Graph) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for v in g.vertices() {
        for u in g.vertices() {
            if v != u && g.row(v).is_subset(g.row(u)) {
                out.push((v, u));
            }
        }
    }
    out
}

pub fn is_stiff(g: &Graph) -> bool {
    find_folds(g).is_empty()
}

/// The folded graph and the two maps realizing the reduction.
#[derive(Clone, Debug)]
pub struct FoldResult {
    /// `g` with `v` removed; remaining ids shift down past `v`.
    pub folded: Graph,
    /// The fold: identity away from `v`, sending `v` to `u`.
    pub fold: GraphMap,
    /// The unfolding inclusion; `fold ∘ unfold` is the identity.
    pub unfold: GraphMap,
}

pub fn apply_fold(g: &Graph, v: VertexId, u: VertexId) -> Result<FoldResult> {
    if v >= g.vertex_count() || u >= g.vertex_count() || v == u {
        return Err(Error::domain(alloc::format!(
            "invalid fold pair ({v}, {u})"
        )));
    }
    if !g.row(v).is_subset(g.row(u)) {
        return Err(Error::domain(alloc::format!(
            "({v}, {u}) is not a fold: N({v}) is not contained in N({u})"
        )));
    }
    let keep: Vec<VertexId> = g.vertices().filter(|&x| x != v).collect();
    let (folded, table) = g.induced_subgraph(&keep);
    let new_id = |x: VertexId| -> VertexId {
        if x < v {
            x
        } else {
            x - 1
        }
    };
    let fold = GraphMap::from_image(
        g.vertices()
            .map(|x| if x == v { new_id(u) } else { new_id(x) })
            .collect(),
    );
    let unfold = GraphMap::from_image(table);
    debug_assert!(fold.is_homomorphism(g, &folded));
    debug_assert!(unfold.is_homomorphism(&folded, g));
    Ok(FoldResult {
        folded,
        fold,
        unfold,
    })
}

/// Fold greedily (always the least valid pair) until no fold exists. The
/// result is stiff and the trace replays from the input to it.
pub fn stiff_reduce(g: &Graph) -> (Graph, FoldTrace) {
    let mut current = g.clone();
    let mut steps = Vec::new();
    loop {
        let folds = find_folds(&current);
        let Some(&(v, u)) = folds.first() else { break };
        steps.push(FoldStep {
            removed: v,
            target: u,
        });
        current = apply_fold(&current, v, u)
            .expect("candidate came from find_folds")
            .folded;
    }
    let trace = FoldTrace {
        start: g.clone(),
        end: current.clone(),
        steps,
    };
    (current, trace)
}

/// A graph is dismantlable when it folds down to the single looped vertex;
/// any maximal fold sequence decides this, so the greedy trace is returned
/// as the witness.
pub fn is_dismantlable(g: &Graph) -> Option<FoldTrace> {
    let (core, trace) = stiff_reduce(g);
    if core.vertex_count() == 1 && core.is_looped(0) {
        Some(trace)
    } else {
        None
    }
}

/// Adjacency of two maps as vertices of the categorical exponential: every
/// ordered edge `(v, w)` of `g` must land on an edge `f1(v) ~ f2(w)`.
pub fn maps_adjacent(g: &Graph, h: &Graph, f1: &GraphMap, f2: &GraphMap) -> bool {
    g.ordered_edges()
        .iter()
        .all(|&(v, w)| h.has_edge(f1.apply(v), f2.apply(w)))
}

/// A path of homomorphisms joining two maps; consecutive entries are
/// adjacent in the relevant exponential graph. A single-entry path is the
/// trivial homotopy of a map with itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub path: Vec<GraphMap>,
}

fn check_hom(g: &Graph, h: &Graph, f: &GraphMap, role: &str) -> Result<()> {
    if !f.is_homomorphism(g, h) {
        return Err(Error::domain(alloc::format!(
            "{role} is not a homomorphism"
        )));
    }
    Ok(())
}

/// Guard for the size of the looped part of the exponential graph the
/// breadth-first searches walk through.
fn check_hom_list_cap(len: usize, caps: &Caps) -> Result<()> {
    if len as u64 > caps.exp_vertices {
        return Err(Error::resource(
            "looped exponential vertices",
            caps.exp_vertices,
        ));
    }
    Ok(())
}

/// Shortest path between two list indices under an adjacency predicate,
/// breadth-first with ascending tie-breaking.
fn bfs_witness(
    maps: &[GraphMap],
    start: usize,
    goal: usize,
    adjacent: impl Fn(&GraphMap, &GraphMap) -> bool,
) -> Option<Vec<GraphMap>> {
    if start == goal {
        return Some(alloc::vec![maps[start].clone()]);
    }
    let mut prev: Vec<usize> = alloc::vec![usize::MAX; maps.len()];
    prev[start] = start;
    let mut frontier = alloc::vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for j in 0..maps.len() {
                if prev[j] == usize::MAX && adjacent(&maps[i], &maps[j]) {
                    prev[j] = i;
                    if j == goal {
                        let mut path = alloc::vec![j];
                        let mut cur = j;
                        while cur != start {
                            cur = prev[cur];
                            path.push(cur);
                        }
                        path.reverse();
                        return Some(path.into_iter().map(|p| maps[p].clone()).collect());
                    }
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    None
}

/// Decide homotopy of `f` and `g` through the categorical exponential and
/// return a shortest witness path.
pub fn are_x_homotopic(
    g: &Graph,
    h: &Graph,
    f1: &GraphMap,
    f2: &GraphMap,
    caps: &Caps,
) -> Result<Option<HomotopyWitness>> {
    check_hom(g, h, f1, "first map")?;
    check_hom(g, h, f2, "second map")?;
    let maps = enumerate_homomorphisms(g, h, caps)?;
    check_hom_list_cap(maps.len(), caps)?;
    let start = maps.binary_search(f1).expect("a homomorphism is in the list");
    let goal = maps.binary_search(f2).expect("a homomorphism is in the list");
    Ok(
        bfs_witness(&maps, start, goal, |a, b| maps_adjacent(g, h, a, b))
            .map(|path| HomotopyWitness { path }),
    )
}

/// The homotopy classes of maps `g -> h`: a partition of the enumerated
/// homomorphism list by connectivity through the exponential graph.
#[derive(Clone, Debug)]
pub struct HomotopyClasses {
    /// All homomorphisms, sorted lexicographically.
    pub maps: Vec<GraphMap>,
    /// Class index per map, classes numbered by first appearance.
    pub class_of: Vec<usize>,
    pub count: usize,
}

impl HomotopyClasses {
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = alloc::vec![0usize; self.count];
        for &c in &self.class_of {
            sizes[c] += 1;
        }
        sizes
    }

    pub fn class_of_map(&self, map: &GraphMap) -> Option<usize> {
        self.maps.binary_search(map).ok().map(|i| self.class_of[i])
    }
}

pub fn homotopy_classes(g: &Graph, h: &Graph, caps: &Caps) -> Result<HomotopyClasses> {
    let maps = enumerate_homomorphisms(g, h, caps)?;
    check_hom_list_cap(maps.len(), caps)?;
    let n = maps.len();
    let mut class_of = alloc::vec![usize::MAX; n];
    let mut count = 0;
    for i in 0..n {
        if class_of[i] != usize::MAX {
            continue;
        }
        class_of[i] = count;
        let mut frontier = alloc::vec![i];
        while let Some(x) = frontier.pop() {
            for y in 0..n {
                if class_of[y] == usize::MAX && maps_adjacent(g, h, &maps[x], &maps[y]) {
                    class_of[y] = count;
                    frontier.push(y);
                }
            }
        }
        count += 1;
    }
    Ok(HomotopyClasses {
        maps,
        class_of,
        count,
    })
}

/// Search for a homotopy inverse of `f: g -> h`: the lexicographically
/// first homomorphism `r: h -> g` with `r ∘ f` homotopic to the identity of
/// `g` and `f ∘ r` homotopic to the identity of `h`.
pub fn is_x_homotopy_equivalence(
    g: &Graph,
    h: &Graph,
    f: &GraphMap,
    caps: &Caps,
) -> Result<Option<GraphMap>> {
    check_hom(g, h, f, "candidate equivalence")?;
    let candidates = enumerate_homomorphisms(h, g, caps)?;
    if candidates.is_empty() {
        return Ok(None);
    }
    let classes_g = homotopy_classes(g, g, caps)?;
    let classes_h = homotopy_classes(h, h, caps)?;
    let id_g_class = classes_g
        .class_of_map(&GraphMap::identity(g.vertex_count()))
        .expect("identity is a homomorphism");
    let id_h_class = classes_h
        .class_of_map(&GraphMap::identity(h.vertex_count()))
        .expect("identity is a homomorphism");
    for r in candidates {
        let round_g = f.then(&r); // r ∘ f : g -> g
        let round_h = r.then(f); // f ∘ r : h -> h
        if classes_g.class_of_map(&round_g) == Some(id_g_class)
            && classes_h.class_of_map(&round_h) == Some(id_h_class)
        {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// Cross-check for the equivalence search through the induced poset maps:
/// both the covariant map out of `Hom(g, g)` and the contravariant map out
/// of `Hom(h, h)` must induce bijections on path components. Quadratic in
/// the poset sizes, so tests call it rather than the search itself.
pub fn x_equivalence_pi0_crosscheck(
    g: &Graph,
    h: &Graph,
    f: &GraphMap,
    caps: &Caps,
) -> Result<bool> {
    use crate::hom::{enumerate_hom, pull_map, push_map};
    check_hom(g, h, f, "candidate equivalence")?;
    let pgg = enumerate_hom(g, g, caps)?;
    let pgh = enumerate_hom(g, h, caps)?;
    let phh = enumerate_hom(h, h, caps)?;
    let (gg_count, gg_label) = pgg.comparability_components();
    let (gh_count, gh_label) = pgh.comparability_components();
    let (hh_count, hh_label) = phh.comparability_components();

    let bijective = |table: &[usize], from_count: usize, from_label: &[usize], to_count: usize, to_label: &[usize]| {
        if from_count != to_count {
            return false;
        }
        let mut image = alloc::vec![usize::MAX; from_count];
        for (i, &t) in table.iter().enumerate() {
            let c = from_label[i];
            let d = to_label[t];
            if image[c] == usize::MAX {
                image[c] = d;
            } else if image[c] != d {
                // A poset map cannot split a component; defensive anyway.
                return false;
            }
        }
        let mut seen = alloc::vec![false; to_count];
        for &d in &image {
            if d == usize::MAX || seen[d] {
                return false;
            }
            seen[d] = true;
        }
        true
    };

    let push = push_map(f, &pgg, &pgh)?;
    let pull = pull_map(f, &phh, &pgh)?;
    Ok(bijective(&push, gg_count, &gg_label, gh_count, &gh_label)
        && bijective(&pull, hh_count, &hh_label, gh_count, &gh_label))
}

/// For stiff graphs, homotopy equivalence collapses to isomorphism, so the
/// decision delegates to the isomorphism search.
pub fn are_stiff_graphs_equivalent(g: &Graph, h: &Graph, caps: &Caps) -> Result<bool> {
    if !is_stiff(g) || !is_stiff(h) {
        return Err(Error::domain("both graphs must be stiff"));
    }
    Ok(is_isomorphic(g, h, caps)?.is_some())
}

/// Decide homotopy through the cartesian exponential of reflexive graphs:
/// a path of homomorphisms with consecutive maps pointwise adjacent. With a
/// basepoint pair `(x, y)` every map on the path must send `x` to `y`; pass
/// `None` for the unbased variant.
pub fn are_a_homotopic(
    g: &Graph,
    h: &Graph,
    f1: &GraphMap,
    f2: &GraphMap,
    base: Option<(VertexId, VertexId)>,
    caps: &Caps,
) -> Result<Option<HomotopyWitness>> {
    if !g.is_reflexive() || !h.is_reflexive() {
        return Err(Error::domain("based homotopy needs reflexive graphs"));
    }
    check_hom(g, h, f1, "first map")?;
    check_hom(g, h, f2, "second map")?;
    if let Some((x, y)) = base {
        if x >= g.vertex_count() || y >= h.vertex_count() {
            return Err(Error::domain("basepoint out of range"));
        }
        if f1.apply(x) != y || f2.apply(x) != y {
            return Err(Error::domain("maps do not fix the basepoint"));
        }
    }
    let mut maps = enumerate_homomorphisms(g, h, caps)?;
    if let Some((x, y)) = base {
        maps.retain(|m| m.apply(x) == y);
    }
    check_hom_list_cap(maps.len(), caps)?;
    let start = maps.binary_search(f1).expect("retained above");
    let goal = maps.binary_search(f2).expect("retained above");
    let pointwise = |a: &GraphMap, b: &GraphMap| {
        g.vertices().all(|v| h.has_edge(a.apply(v), b.apply(v)))
    };
    Ok(bfs_witness(&maps, start, goal, pointwise).map(|path| HomotopyWitness { path }))
}
