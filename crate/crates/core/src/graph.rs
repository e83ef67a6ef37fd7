//! Finite undirected graphs with loops, and vertex maps between them.
//!
//! Vertices are dense integers `0..n`. Adjacency is stored as one bitset row
//! per vertex, so the neighborhood-containment test that drives fold
//! detection is a single subset check. Loops are ordinary members of the
//! diagonal: `v` is looped exactly when `v ∈ N(v)`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::error::{Error, Result};

pub type VertexId = usize;

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
    name: Option<String>,
}

/// Equality ignores the optional label; two graphs are equal when they have
/// the same vertex count and identical adjacency.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

/// Families the CLI and tests construct by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardGraph {
    /// `K_n`: loopless, all distinct pairs adjacent. Requires `size >= 1`.
    Complete,
    /// `C_n`: loopless cycle. Requires `size >= 3`.
    Cycle,
    /// `I_n`: reflexive path on vertices `0..=n`; `size` is `n`, so the
    /// graph has `size + 1` vertices.
    Interval,
    /// A single looped vertex (the terminal graph). `size` is ignored.
    One,
    /// The graph with no vertices (the initial graph). `size` is ignored.
    Empty,
}

impl Graph {
    /// Build a graph from an edge list. Pairs may repeat; `(v, v)` sets a
    /// loop. Rejects any endpoint outside `0..n`.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut adj = alloc::vec![BitSet::new(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::domain(alloc::format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, adj, name: None })
    }

    pub fn standard(kind: StandardGraph, size: usize) -> Result<Self> {
        match kind {
            StandardGraph::Complete => Self::complete(size),
            StandardGraph::Cycle => Self::cycle(size),
            StandardGraph::Interval => Ok(Self::interval(size)),
            StandardGraph::One => Ok(Self::one()),
            StandardGraph::Empty => Ok(Self::empty()),
        }
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("complete graph needs at least 1 vertex"));
        }
        let mut g = Graph {
            n,
            adj: alloc::vec![BitSet::full(n); n],
            name: None,
        };
        for v in 0..n {
            g.adj[v].remove(v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain("cycle needs at least 3 vertices"));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges)
    }

    /// The reflexive path `I_n`: vertices `0..=n`, loops everywhere, and
    /// `i-1 ~ i`. `interval(0)` is the single looped vertex.
    pub fn interval(n: usize) -> Self {
        let mut edges: Vec<_> = (0..=n).map(|i| (i, i)).collect();
        edges.extend((1..=n).map(|i| (i - 1, i)));
        Self::new(n + 1, &edges).expect("interval edges are in range")
    }

    pub fn one() -> Self {
        Self::new(1, &[(0, 0)]).expect("loop on a 1-vertex graph")
    }

    pub fn empty() -> Self {
        Graph {
            n: 0,
            adj: Vec::new(),
            name: None,
        }
    }

    /// The Kneser graph K(5,2): vertices are the 2-subsets of a 5-set,
    /// adjacent when disjoint.
    pub fn petersen() -> Self {
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
            .collect();
        let mut edges = Vec::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
                if a != c && a != d && b != c && b != d {
                    edges.push((i, j));
                }
            }
        }
        let mut g = Self::new(10, &edges).expect("petersen edges are in range");
        g.name = Some(String::from("petersen"));
        g
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> core::ops::Range<VertexId> {
        0..self.n
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn is_looped(&self, v: VertexId) -> bool {
        self.has_edge(v, v)
    }

    /// N(v), checked. `v ∈ N(v)` exactly when `v` is looped.
    pub fn neighborhood(&self, v: VertexId) -> Result<&BitSet> {
        if v >= self.n {
            return Err(Error::domain(alloc::format!(
                "vertex {v} out of range for {} vertices",
                self.n
            )));
        }
        Ok(&self.adj[v])
    }

    /// Unchecked adjacency row for internal hot paths.
    pub(crate) fn row(&self, v: VertexId) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].count()
    }

    /// Undirected edge list, `u <= v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u <= v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Every ordered adjacent pair, loops included once as `(v, v)`.
    pub fn ordered_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn looped_vertices(&self) -> BitSet {
        let mut s = BitSet::new(self.n);
        for v in 0..self.n {
            if self.is_looped(v) {
                s.insert(v);
            }
        }
        s
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|v| self.is_looped(v))
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.n).all(|v| !self.is_looped(v))
    }

    /// Induced subgraph on `keep` (ascending, deduplicated by the caller).
    /// Returns the subgraph and the translation table from new ids to old.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> (Graph, Vec<VertexId>) {
        let mut index = alloc::vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let mut adj = alloc::vec![BitSet::new(keep.len()); keep.len()];
        for (new, &old) in keep.iter().enumerate() {
            for w in self.adj[old].iter() {
                if index[w] != usize::MAX {
                    adj[new].insert(index[w]);
                }
            }
        }
        (
            Graph {
                n: keep.len(),
                adj,
                name: None,
            },
            keep.to_vec(),
        )
    }

    /// The subgraph induced by looped vertices, with its id translation.
    pub fn looped_core(&self) -> (Graph, Vec<VertexId>) {
        let keep: Vec<_> = self.looped_vertices().iter().collect();
        self.induced_subgraph(&keep)
    }

    /// The same graph with a loop added at every vertex.
    pub fn add_loops(&self) -> Graph {
        let mut g = self.clone();
        for v in 0..g.n {
            g.adj[v].insert(v);
        }
        g
    }

    /// BFS distance; loops never shorten a path. `None` when unreachable.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<Option<usize>> {
        if u >= self.n || v >= self.n {
            return Err(Error::domain(alloc::format!(
                "vertex out of range: ({u}, {v}) in a {}-vertex graph",
                self.n
            )));
        }
        if u == v {
            return Ok(Some(0));
        }
        let mut dist = alloc::vec![usize::MAX; self.n];
        dist[u] = 0;
        let mut frontier = alloc::vec![u];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &x in &frontier {
                for y in self.adj[x].iter() {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        if y == v {
                            return Ok(Some(dist[y]));
                        }
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(None)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = BitSet::new(self.n);
        seen.insert(0);
        let mut stack = alloc::vec![0];
        while let Some(x) = stack.pop() {
            for y in self.adj[x].iter() {
                if !seen.contains(y) {
                    seen.insert(y);
                    stack.push(y);
                }
            }
        }
        seen.count() == self.n
    }

    /// Maximum pairwise distance. Errors on the empty or a disconnected graph.
    pub fn diameter(&self) -> Result<usize> {
        if self.n == 0 {
            return Err(Error::domain("diameter of the empty graph is undefined"));
        }
        if !self.is_connected() {
            return Err(Error::domain("diameter of a disconnected graph is undefined"));
        }
        let mut best = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                let d = self.distance(u, v)?.expect("connected");
                best = best.max(d);
            }
        }
        Ok(best)
    }
}

/// A total vertex map between two graphs. The struct stores only the image
/// array; the operations that care about adjacency take the graphs alongside,
/// which keeps enumerated map lists compact.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphMap {
    image: Vec<VertexId>,
}

impl GraphMap {
    /// A validated total map from `dom` to `cod`.
    pub fn new(dom: &Graph, cod: &Graph, image: Vec<VertexId>) -> Result<Self> {
        if image.len() != dom.vertex_count() {
            return Err(Error::domain(alloc::format!(
                "map has {} entries for a {}-vertex domain",
                image.len(),
                dom.vertex_count()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&w| w >= cod.vertex_count()) {
            return Err(Error::domain(alloc::format!(
                "map image {bad} out of range for {}-vertex codomain",
                cod.vertex_count()
            )));
        }
        Ok(GraphMap { image })
    }

    /// Construct from a raw image array without graph context. The caller
    /// vouches for totality and range.
    pub fn from_image(image: Vec<VertexId>) -> Self {
        GraphMap { image }
    }

    pub fn identity(n: usize) -> Self {
        GraphMap {
            image: (0..n).collect(),
        }
    }

    pub fn constant(dom_size: usize, target: VertexId) -> Self {
        GraphMap {
            image: alloc::vec![target; dom_size],
        }
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.image[v]
    }

    pub fn image(&self) -> &[VertexId] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &GraphMap) -> GraphMap {
        GraphMap {
            image: self.image.iter().map(|&v| other.image[v]).collect(),
        }
    }

    /// Edge preservation, loops included: `v ~ w` forces `f(v) ~ f(w)`.
    pub fn is_homomorphism(&self, dom: &Graph, cod: &Graph) -> bool {
        if self.image.len() != dom.vertex_count() {
            return false;
        }
        if self.image.iter().any(|&w| w >= cod.vertex_count()) {
            return false;
        }
        dom.ordered_edges()
            .iter()
            .all(|&(v, w)| cod.has_edge(self.image[v], self.image[w]))
    }
}

/// Disjoint union, with the two injections. Vertices of `h` are offset by
/// `g.vertex_count()`.
pub fn coproduct(g: &Graph, h: &Graph) -> (Graph, GraphMap, GraphMap) {
    let gn = g.vertex_count();
    let n = gn + h.vertex_count();
    let mut adj = alloc::vec![BitSet::new(n); n];
    for (u, v) in g.ordered_edges() {
        adj[u].insert(v);
    }
    for (u, v) in h.ordered_edges() {
        adj[u + gn].insert(v + gn);
    }
    let sum = Graph { n, adj, name: None };
    let inj_g = GraphMap::identity(gn);
    let inj_h = GraphMap::from_image((0..h.vertex_count()).map(|v| v + gn).collect());
    (sum, inj_g, inj_h)
}

/// Encoding of the pair `(a, b)` as a product vertex. Fixed as
/// `a * |V(H)| + b` so serialized output is reproducible.
pub fn pair_encode(h_count: usize, a: VertexId, b: VertexId) -> VertexId {
    a * h_count + b
}

pub fn pair_decode(h_count: usize, v: VertexId) -> (VertexId, VertexId) {
    (v / h_count, v % h_count)
}

/// Product with adjacency in both coordinates, plus the two projections.
pub fn categorical_product(g: &Graph, h: &Graph) -> (Graph, GraphMap, GraphMap) {
    let hn = h.vertex_count();
    let n = g.vertex_count() * hn;
    let mut adj = alloc::vec![BitSet::new(n); n];
    for (a, a2) in g.ordered_edges() {
        for (b, b2) in h.ordered_edges() {
            adj[pair_encode(hn, a, b)].insert(pair_encode(hn, a2, b2));
        }
    }
    let product = Graph { n, adj, name: None };
    let mut pg = Vec::with_capacity(n);
    let mut ph = Vec::with_capacity(n);
    for a in 0..g.vertex_count() {
        for b in 0..hn {
            pg.push(a);
            ph.push(b);
        }
    }
    (product, GraphMap::from_image(pg), GraphMap::from_image(ph))
}

/// Product with adjacency in exactly one coordinate (and equality in the
/// other). A pair is looped when either coordinate is.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let hn = h.vertex_count();
    let n = g.vertex_count() * hn;
    let mut adj = alloc::vec![BitSet::new(n); n];
    for (a, a2) in g.ordered_edges() {
        for b in 0..hn {
            adj[pair_encode(hn, a, b)].insert(pair_encode(hn, a2, b));
        }
    }
    for (b, b2) in h.ordered_edges() {
        for a in 0..g.vertex_count() {
            adj[pair_encode(hn, a, b)].insert(pair_encode(hn, a, b2));
        }
    }
    Graph { n, adj, name: None }
}

/// Backtracking search over vertex maps `g -> h` that preserve adjacency.
/// Assignment order is by descending degree; `visit` receives each complete
/// homomorphism in search order and returns `false` to stop early.
fn search_homomorphisms(
    g: &Graph,
    h: &Graph,
    caps: &Caps,
    visit: &mut dyn FnMut(&[VertexId]) -> bool,
) -> Result<()> {
    let gn = g.vertex_count();
    let hn = h.vertex_count();
    if gn == 0 {
        visit(&[]);
        return Ok(());
    }
    if hn == 0 {
        return Ok(());
    }

    let mut order: Vec<VertexId> = (0..gn).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));

    let looped_h = h.looped_vertices();
    let mut image = alloc::vec![0usize; gn];
    let mut assigned = alloc::vec![false; gn];
    let mut nodes: u64 = 0;

    // Depth-first over `order`, intersecting candidate sets against the
    // neighborhoods of already-assigned neighbors.
    struct Frame {
        depth: usize,
        candidates: Vec<VertexId>,
        next: usize,
    }

    let candidates_for = |depth: usize, image: &[VertexId], assigned: &[bool]| -> Vec<VertexId> {
        let v = order[depth];
        let mut cand = if g.is_looped(v) {
            looped_h.clone()
        } else {
            BitSet::full(hn)
        };
        for u in g.row(v).iter() {
            if u != v && assigned[u] {
                cand.intersect_with(h.row(image[u]));
            }
        }
        cand.iter().collect()
    };

    let mut stack = alloc::vec![Frame {
        depth: 0,
        candidates: candidates_for(0, &image, &assigned),
        next: 0,
    }];

    while let Some(frame) = stack.last_mut() {
        if frame.next >= frame.candidates.len() {
            let v = order[frame.depth];
            assigned[v] = false;
            stack.pop();
            continue;
        }
        let choice = frame.candidates[frame.next];
        frame.next += 1;
        nodes += 1;
        if nodes > caps.search_nodes {
            return Err(Error::resource(
                "homomorphism search nodes",
                caps.search_nodes,
            ));
        }
        let depth = frame.depth;
        let v = order[depth];
        image[v] = choice;
        assigned[v] = true;
        if depth + 1 == gn {
            assigned[v] = false;
            if !visit(&image) {
                return Ok(());
            }
        } else {
            let cand = candidates_for(depth + 1, &image, &assigned);
            stack.push(Frame {
                depth: depth + 1,
                candidates: cand,
                next: 0,
            });
        }
    }
    Ok(())
}

/// All homomorphisms `g -> h`, sorted lexicographically by image array.
pub fn enumerate_homomorphisms(g: &Graph, h: &Graph, caps: &Caps) -> Result<Vec<GraphMap>> {
    let mut out = Vec::new();
    search_homomorphisms(g, h, caps, &mut |image| {
        out.push(GraphMap::from_image(image.to_vec()));
        true
    })?;
    out.sort();
    Ok(out)
}

pub fn homomorphism_exists(g: &Graph, h: &Graph, caps: &Caps) -> Result<bool> {
    let mut found = false;
    search_homomorphisms(g, h, caps, &mut |_| {
        found = true;
        false
    })?;
    Ok(found)
}

/// Isomorphism by backtracking with degree/loop-signature pruning. Returns a
/// bijective homomorphism whose inverse is one, or `None`. Adequate at the
/// small scales the fold machinery needs; guarded by `caps.iso_vertices`.
pub fn is_isomorphic(g: &Graph, h: &Graph, caps: &Caps) -> Result<Option<GraphMap>> {
    if g.vertex_count() != h.vertex_count() {
        return Ok(None);
    }
    let n = g.vertex_count();
    if n as u64 > caps.iso_vertices {
        return Err(Error::resource("isomorphism vertex count", caps.iso_vertices));
    }
    if n == 0 {
        return Ok(Some(GraphMap::identity(0)));
    }

    let sig = |gr: &Graph, v: VertexId| (gr.degree(v), gr.is_looped(v));
    let mut gsig: Vec<_> = (0..n).map(|v| sig(g, v)).collect();
    let mut hsig: Vec<_> = (0..n).map(|v| sig(h, v)).collect();
    gsig.sort();
    hsig.sort();
    if gsig != hsig {
        return Ok(None);
    }

    let mut order: Vec<VertexId> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));

    let mut image = alloc::vec![usize::MAX; n];
    let mut used = alloc::vec![false; n];

    fn extend(
        g: &Graph,
        h: &Graph,
        order: &[VertexId],
        depth: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..h.vertex_count() {
            if used[w] || g.degree(v) != h.degree(w) || g.is_looped(v) != h.is_looped(w) {
                continue;
            }
            let consistent = order[..depth].iter().all(|&u| {
                g.has_edge(v, u) == h.has_edge(w, image[u])
            });
            if !consistent {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if extend(g, h, order, depth + 1, image, used) {
                return true;
            }
            image[v] = usize::MAX;
            used[w] = false;
        }
        false
    }

    if extend(g, h, &order, 0, &mut image, &mut used) {
        Ok(Some(GraphMap::from_image(image)))
    } else {
        Ok(None)
    }
}
