//! Simplicial realizations and their computable invariants.
//!
//! Posets are realized by their order complex (faces are the chains) and
//! reflexive graphs by their clique complex (faces are the cliques of looped
//! vertices). Both constructions reduce to enumerating cliques of a
//! comparability or adjacency relation. Invariants are path components,
//! reduced Betti numbers over GF(2) from boundary-matrix ranks, the Euler
//! characteristic, and a homological connectivity estimate.
//!
//! The connectivity estimate is homological over GF(2), not homotopical:
//! computing true topological connectivity would need homotopy groups and
//! integer coefficients. The estimate can overstate connectivity when GF(2)
//! homology misses fundamental-group or torsion phenomena, so consumers
//! label it as an estimate. On spheres, circles and tori it is exact.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hom::HomPoset;

/// Faces of one dimension, flattened with stride `dim + 1`. Each face is an
/// ascending vertex tuple; faces are sorted lexicographically with no
/// duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLayer {
    stride: usize,
    data: Vec<u32>,
}

impl FaceLayer {
    fn new(stride: usize) -> Self {
        FaceLayer {
            stride,
            data: Vec::new(),
        }
    }

    pub fn count(&self) -> usize {
        self.data.len() / self.stride
    }

    pub fn face(&self, i: usize) -> &[u32] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks_exact(self.stride)
    }

    pub fn index_of(&self, face: &[u32]) -> Option<usize> {
        debug_assert_eq!(face.len(), self.stride);
        let mut lo = 0;
        let mut hi = self.count();
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.face(mid).cmp(face) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    fn push(&mut self, face: &[u32]) {
        debug_assert_eq!(face.len(), self.stride);
        self.data.extend_from_slice(face);
    }
}

/// A finite simplicial complex, faces listed per dimension and closed under
/// taking subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    layers: Vec<FaceLayer>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { layers: Vec::new() }
    }

    /// Dimension of the complex, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.layers.len().checked_sub(1)
    }

    pub fn face_count(&self, d: usize) -> usize {
        self.layers.get(d).map_or(0, FaceLayer::count)
    }

    pub fn total_faces(&self) -> usize {
        self.layers.iter().map(FaceLayer::count).sum()
    }

    pub fn layer(&self, d: usize) -> Option<&FaceLayer> {
        self.layers.get(d)
    }

    /// Alternating sum of face counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.layers
            .iter()
            .enumerate()
            .map(|(d, l)| {
                let c = l.count() as i64;
                if d % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// Maximal faces: those not contained in any higher face.
    pub fn maximal_faces(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for (d, layer) in self.layers.iter().enumerate() {
            for face in layer.iter() {
                let covered = self.layers.get(d + 1).is_some_and(|above| {
                    above
                        .iter()
                        .any(|big| face.iter().all(|v| big.contains(v)))
                });
                if !covered {
                    out.push(face.to_vec());
                }
            }
        }
        out
    }

    /// Rebuild a complex from (not necessarily maximal) faces by closing
    /// downward. Used by the file-format readers.
    pub fn from_faces(faces: &[Vec<u32>], caps: &Caps) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Vec<u32>>> = Vec::new();
        let mut total: u64 = 0;
        for face in faces {
            let mut sorted = face.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.is_empty() {
                return Err(Error::domain("empty face in complex input"));
            }
            // Every nonempty subset is a face.
            let k = sorted.len();
            for mask in 1u64..(1 << k) {
                let sub: Vec<u32> = (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| sorted[i])
                    .collect();
                let d = sub.len() - 1;
                while by_dim.len() <= d {
                    by_dim.push(BTreeSet::new());
                }
                if by_dim[d].insert(sub) {
                    total += 1;
                    if total > caps.faces {
                        return Err(Error::resource("simplicial complex faces", caps.faces));
                    }
                }
            }
        }
        let mut layers = Vec::with_capacity(by_dim.len());
        for (d, set) in by_dim.into_iter().enumerate() {
            let mut layer = FaceLayer::new(d + 1);
            for face in set {
                layer.push(&face);
            }
            layers.push(layer);
        }
        Ok(SimplicialComplex { layers })
    }
}

/// Enumerate all cliques of a relation given by `labels` (ascending) and,
/// for each position, the positions of later related vertices. Faces carry
/// the labels. This covers both complex constructions: chains are the
/// cliques of comparability, and graph cliques are cliques of adjacency.
fn clique_expansion(labels: &[u32], succ: &[Vec<u32>], caps: &Caps) -> Result<SimplicialComplex> {
    let mut layers: Vec<FaceLayer> = Vec::new();
    let mut total: u64 = 0;
    let mut face: Vec<u32> = Vec::new();

    fn emit(
        labels: &[u32],
        face: &[u32],
        layers: &mut Vec<FaceLayer>,
        total: &mut u64,
        caps: &Caps,
    ) -> Result<()> {
        *total += 1;
        if *total > caps.faces {
            return Err(Error::resource("simplicial complex faces", caps.faces));
        }
        let d = face.len() - 1;
        while layers.len() <= d {
            layers.push(FaceLayer::new(layers.len() + 1));
        }
        let labeled: Vec<u32> = face.iter().map(|&p| labels[p as usize]).collect();
        layers[d].push(&labeled);
        Ok(())
    }

    fn extend(
        labels: &[u32],
        succ: &[Vec<u32>],
        candidates: &[u32],
        face: &mut Vec<u32>,
        layers: &mut Vec<FaceLayer>,
        total: &mut u64,
        caps: &Caps,
    ) -> Result<()> {
        for (i, &c) in candidates.iter().enumerate() {
            face.push(c);
            emit(labels, face, layers, total, caps)?;
            // Remaining candidates must also relate to c.
            let next: Vec<u32> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|x| succ[c as usize].binary_search(x).is_ok())
                .collect();
            if !next.is_empty() {
                extend(labels, succ, &next, face, layers, total, caps)?;
            }
            face.pop();
        }
        Ok(())
    }

    let all: Vec<u32> = (0..labels.len() as u32).collect();
    if !all.is_empty() {
        // Top-level candidates relate trivially; filtering happens per branch.
        for (i, &c) in all.iter().enumerate() {
            face.push(c);
            emit(labels, &face, &mut layers, &mut total, caps)?;
            let next: Vec<u32> = all[i + 1..]
                .iter()
                .copied()
                .filter(|x| succ[c as usize].binary_search(x).is_ok())
                .collect();
            if !next.is_empty() {
                extend(labels, succ, &next, &mut face, &mut layers, &mut total, caps)?;
            }
            face.pop();
        }
    }
    Ok(SimplicialComplex { layers })
}

/// Order complex of an abstract poset given by size and order relation:
/// vertices are the elements, `d`-faces are the chains of length `d + 1`.
pub fn order_complex_generic<F>(n: usize, leq: F, caps: &Caps) -> Result<SimplicialComplex>
where
    F: Fn(usize, usize) -> bool,
{
    let labels: Vec<u32> = (0..n as u32).collect();
    let mut succ: Vec<Vec<u32>> = alloc::vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if leq(i, j) || leq(j, i) {
                succ[i].push(j as u32);
            }
        }
    }
    clique_expansion(&labels, &succ, caps)
}

/// Order complex of a multihomomorphism poset.
pub fn order_complex(poset: &HomPoset, caps: &Caps) -> Result<SimplicialComplex> {
    order_complex_generic(poset.len(), |i, j| poset.leq(i, j), caps)
}

/// The 1-skeleton of the order complex: elements and comparable pairs.
/// Path components of a complex are decided entirely by its 1-skeleton, so
/// this computes component counts of order complexes whose full chain list
/// would blow past the face cap.
pub fn order_complex_skeleton(poset: &HomPoset, caps: &Caps) -> Result<SimplicialComplex> {
    let n = poset.len();
    let mut total: u64 = n as u64;
    if total > caps.faces {
        return Err(Error::resource("simplicial complex faces", caps.faces));
    }
    let mut layers = Vec::new();
    if n > 0 {
        let mut vertices = FaceLayer::new(1);
        for i in 0..n as u32 {
            vertices.push(&[i]);
        }
        let mut edges = FaceLayer::new(2);
        for i in 0..n {
            for j in i + 1..n {
                if poset.comparable(i, j) {
                    total += 1;
                    if total > caps.faces {
                        return Err(Error::resource("simplicial complex faces", caps.faces));
                    }
                    edges.push(&[i as u32, j as u32]);
                }
            }
        }
        layers.push(vertices);
        if edges.count() > 0 {
            layers.push(edges);
        }
    }
    Ok(SimplicialComplex { layers })
}

/// Clique complex: vertices are the looped vertices of `g`, faces the vertex
/// sets that are pairwise adjacent (loops required on every member).
pub fn clique_complex(g: &Graph, caps: &Caps) -> Result<SimplicialComplex> {
    let looped: Vec<u32> = g.looped_vertices().iter().map(|v| v as u32).collect();
    let mut succ: Vec<Vec<u32>> = alloc::vec![Vec::new(); looped.len()];
    for (i, &v) in looped.iter().enumerate() {
        for (j, &w) in looped.iter().enumerate().skip(i + 1) {
            if g.has_edge(v as usize, w as usize) {
                succ[i].push(j as u32);
            }
        }
    }
    clique_expansion(&looped, &succ, caps)
}

/// Path components of the 1-skeleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub count: usize,
    /// `(vertex label, component index)` for every vertex, in vertex order.
    /// Component indices are assigned by first appearance.
    pub labels: Vec<(u32, usize)>,
}

pub fn path_components(x: &SimplicialComplex) -> ComponentLabeling {
    let Some(vertices) = x.layer(0) else {
        return ComponentLabeling {
            count: 0,
            labels: Vec::new(),
        };
    };
    let n = vertices.count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    if let Some(edges) = x.layer(1) {
        for e in edges.iter() {
            let u = vertices.index_of(&[e[0]]).expect("closed downward");
            let v = vertices.index_of(&[e[1]]).expect("closed downward");
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut next = 0;
    let mut label_of_root = alloc::vec![usize::MAX; n];
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let root = find(&mut parent, i);
        if label_of_root[root] == usize::MAX {
            label_of_root[root] = next;
            next += 1;
        }
        labels.push((vertices.face(i)[0], label_of_root[root]));
    }
    ComponentLabeling {
        count: next,
        labels,
    }
}

/// Reduced GF(2) Betti numbers together with the Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    /// Reduced Betti numbers in degrees `0..=dim`.
    pub reduced: Vec<usize>,
    pub euler: i64,
}

/// GF(2) rank of a boundary matrix given by its columns (each a sorted list
/// of row indices). Dense bitset elimination below the size threshold,
/// sparse column reduction above; both compute the same rank.
fn rank_gf2(rows: usize, columns: Vec<Vec<u32>>) -> usize {
    const DENSE_LIMIT: usize = 2000;
    if rows.max(columns.len()) < DENSE_LIMIT {
        rank_gf2_dense(rows, &columns)
    } else {
        rank_gf2_sparse(rows, columns)
    }
}

fn rank_gf2_dense(rows: usize, columns: &[Vec<u32>]) -> usize {
    let mut pivot_of_row: Vec<Option<usize>> = alloc::vec![None; rows];
    let mut pivots: Vec<BitSet> = Vec::new();
    let mut rank = 0;
    for col in columns {
        let mut v = BitSet::new(rows);
        for &r in col {
            v.insert(r as usize);
        }
        loop {
            let Some(top) = v.last() else { break };
            match pivot_of_row[top] {
                Some(p) => v.xor_with(&pivots[p]),
                None => {
                    pivot_of_row[top] = Some(pivots.len());
                    pivots.push(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn rank_gf2_sparse(rows: usize, columns: Vec<Vec<u32>>) -> usize {
    let mut owner: Vec<Option<usize>> = alloc::vec![None; rows];
    let mut stored: Vec<Vec<u32>> = Vec::new();
    let mut rank = 0;
    for mut col in columns {
        loop {
            let Some(&low) = col.last() else { break };
            match owner[low as usize] {
                Some(k) => col = xor_sorted(&col, &stored[k]),
                None => {
                    owner[low as usize] = Some(stored.len());
                    stored.push(col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Symmetric difference of two ascending lists.
fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Columns of the boundary matrix from dimension `d` to `d - 1`.
fn boundary_columns(x: &SimplicialComplex, d: usize) -> Vec<Vec<u32>> {
    let layer = x.layer(d).expect("dimension in range");
    let below = x.layer(d - 1).expect("dimension in range");
    let mut scratch: Vec<u32> = Vec::with_capacity(d);
    layer
        .iter()
        .map(|face| {
            let mut col: Vec<u32> = (0..face.len())
                .map(|skip| {
                    scratch.clear();
                    scratch.extend(face.iter().enumerate().filter_map(|(k, &v)| {
                        if k == skip {
                            None
                        } else {
                            Some(v)
                        }
                    }));
                    below.index_of(&scratch).expect("closed downward") as u32
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect()
}

#[cfg(debug_assertions)]
fn assert_boundary_squares_to_zero(x: &SimplicialComplex, d: usize) {
    // Each (d-2)-subface of a d-face lies in exactly two of its boundary
    // faces, so the GF(2) boundary of the boundary cancels.
    if d < 2 {
        return;
    }
    let layer = x.layer(d).expect("dimension in range");
    for face in layer.iter() {
        let mut acc: BTreeSet<Vec<u32>> = BTreeSet::new();
        for skip in 0..face.len() {
            let sub: Vec<u32> = face
                .iter()
                .enumerate()
                .filter_map(|(k, &v)| if k == skip { None } else { Some(v) })
                .collect();
            for skip2 in 0..sub.len() {
                let sub2: Vec<u32> = sub
                    .iter()
                    .enumerate()
                    .filter_map(|(k, &v)| if k == skip2 { None } else { Some(v) })
                    .collect();
                if !acc.remove(&sub2) {
                    acc.insert(sub2);
                }
            }
        }
        debug_assert!(acc.is_empty(), "boundary of boundary is nonzero");
    }
}

/// Reduced GF(2) Betti numbers from boundary-matrix ranks. Degree 0 is
/// reduced through the augmentation, so a connected nonempty complex has
/// `reduced[0] == 0`. Asserts the Euler consistency identity.
pub fn betti_gf2(x: &SimplicialComplex) -> BettiVector {
    let Some(dim) = x.dim() else {
        return BettiVector {
            reduced: Vec::new(),
            euler: 0,
        };
    };

    // rank[d] = rank of the boundary map out of dimension d; the
    // augmentation makes rank[0] = 1 on a nonempty complex.
    let mut rank = alloc::vec![0usize; dim + 2];
    rank[0] = 1;
    for d in 1..=dim {
        #[cfg(debug_assertions)]
        assert_boundary_squares_to_zero(x, d);
        rank[d] = rank_gf2(x.face_count(d - 1), boundary_columns(x, d));
    }

    let reduced: Vec<usize> = (0..=dim)
        .map(|d| {
            let kernel = x.face_count(d) - rank[d];
            kernel - rank[d + 1]
        })
        .collect();

    let euler = x.euler_characteristic();
    let reduced_alt: i64 = reduced
        .iter()
        .enumerate()
        .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    assert_eq!(euler, 1 + reduced_alt, "Euler consistency violated");

    BettiVector { reduced, euler }
}

/// Homological connectivity estimate over GF(2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connectivity {
    /// The empty complex; conventional value -2.
    Empty,
    /// More than one path component; value -1.
    Disconnected,
    /// Largest `k` with vanishing reduced homology in all degrees `<= k`.
    Value(usize),
    /// Every computed reduced Betti number vanishes; the estimate is at
    /// least the top dimension of the complex.
    AtLeast(usize),
}

impl Connectivity {
    /// The guaranteed lower bound as an integer.
    pub fn lower_bound(&self) -> i64 {
        match *self {
            Connectivity::Empty => -2,
            Connectivity::Disconnected => -1,
            Connectivity::Value(k) => k as i64,
            Connectivity::AtLeast(d) => d as i64,
        }
    }

    pub fn is_open_ended(&self) -> bool {
        matches!(self, Connectivity::AtLeast(_))
    }
}

pub fn connectivity_estimate(x: &SimplicialComplex) -> Connectivity {
    if x.dim().is_none() {
        return Connectivity::Empty;
    }
    let betti = betti_gf2(x);
    connectivity_from_betti(&betti, x.dim().expect("nonempty"))
}

/// The estimate when the Betti vector is already known.
pub fn connectivity_from_betti(betti: &BettiVector, dim: usize) -> Connectivity {
    match betti.reduced.iter().position(|&b| b > 0) {
        Some(0) => Connectivity::Disconnected,
        Some(d) => Connectivity::Value(d - 1),
        None => Connectivity::AtLeast(dim),
    }
}

/// Reduced Betti vector of a product of nonempty spaces from the reduced
/// vectors of the factors, by convolving the unreduced vectors over GF(2).
/// An empty input stands for the empty space, whose product is empty.
pub fn kunneth_reduced(a: &[usize], b: &[usize]) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let unreduce = |v: &[usize]| {
        let mut u = v.to_vec();
        u[0] += 1;
        u
    };
    let ua = unreduce(a);
    let ub = unreduce(b);
    let mut conv = alloc::vec![0usize; ua.len() + ub.len() - 1];
    for (i, &x) in ua.iter().enumerate() {
        for (j, &y) in ub.iter().enumerate() {
            conv[i + j] += x * y;
        }
    }
    conv[0] -= 1;
    conv
}
