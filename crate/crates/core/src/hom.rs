//! The poset of multihomomorphisms between two graphs.
//!
//! An element assigns to every vertex `x` of the domain a nonempty set
//! `η(x)` of codomain vertices such that each edge `(x, y)` maps across
//! completely: every pair in `η(x) × η(y)` is an edge (a loop at `x` forces
//! `η(x)` to span a reflexive clique). The order is pointwise containment.
//! Singleton-valued elements, the atoms, are exactly the graph
//! homomorphisms.
//!
//! Enumeration processes domain vertices in a fixed order; the candidate
//! sets for vertex `x` are the nonempty subsets of the common-neighborhood
//! constraint imposed by the already-assigned neighbors, which prunes the
//! subset blowup because feasibility is monotone decreasing under adding
//! members.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exponential::{categorical_exponential, ExponentialGraph};
use crate::graph::{categorical_product, pair_decode, pair_encode, Graph, GraphMap, VertexId};

/// One multihomomorphism: a nonempty vertex subset of the codomain for each
/// domain vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiHom {
    sets: Vec<BitSet>,
}

impl MultiHom {
    /// Validated constructor: every set nonempty.
    pub fn new(sets: Vec<BitSet>) -> Result<Self> {
        if sets.iter().any(BitSet::is_empty) {
            return Err(Error::domain("multihomomorphism with an empty value set"));
        }
        Ok(MultiHom { sets })
    }

    pub(crate) fn from_sets_unchecked(sets: Vec<BitSet>) -> Self {
        MultiHom { sets }
    }

    pub fn from_map(map: &GraphMap, cod_n: usize) -> Self {
        MultiHom {
            sets: map
                .image()
                .iter()
                .map(|&w| BitSet::singleton(cod_n, w))
                .collect(),
        }
    }

    pub fn sets(&self) -> &[BitSet] {
        &self.sets
    }

    pub fn set(&self, x: VertexId) -> &BitSet {
        &self.sets[x]
    }

    pub fn dom_len(&self) -> usize {
        self.sets.len()
    }

    /// Pointwise containment.
    pub fn leq(&self, other: &MultiHom) -> bool {
        self.sets.len() == other.sets.len()
            && self
                .sets
                .iter()
                .zip(&other.sets)
                .all(|(a, b)| a.is_subset(b))
    }

    pub fn is_atom(&self) -> bool {
        self.sets.iter().all(|s| s.count() == 1)
    }

    /// The homomorphism this element is, when it is an atom.
    pub fn to_map(&self) -> Option<GraphMap> {
        let mut image = Vec::with_capacity(self.sets.len());
        for s in &self.sets {
            if s.count() != 1 {
                return None;
            }
            image.push(s.first().expect("nonempty"));
        }
        Some(GraphMap::from_image(image))
    }

    /// Full check of the defining cross-edge condition against `g` and `h`.
    pub fn satisfies(&self, g: &Graph, h: &Graph) -> bool {
        if self.sets.len() != g.vertex_count() {
            return false;
        }
        if self.sets.iter().any(BitSet::is_empty) {
            return false;
        }
        for (x, y) in g.ordered_edges() {
            let allowed = common_neighbors(h, &self.sets[x]);
            if !self.sets[y].is_subset(&allowed) {
                return false;
            }
        }
        true
    }
}

impl Ord for MultiHom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sets.cmp(&other.sets)
    }
}

impl PartialOrd for MultiHom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Vertices of `h` adjacent to everything in `set`.
fn common_neighbors(h: &Graph, set: &BitSet) -> BitSet {
    let mut out = BitSet::full(h.vertex_count());
    for s in set.iter() {
        out.intersect_with(h.row(s));
    }
    out
}

/// The enumerated poset of multihomomorphisms `g -> h`, canonically sorted
/// (lexicographically on the per-vertex sets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoset {
    dom_n: usize,
    cod_n: usize,
    elements: Vec<MultiHom>,
}

impl HomPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dom_count(&self) -> usize {
        self.dom_n
    }

    pub fn cod_count(&self) -> usize {
        self.cod_n
    }

    pub fn element(&self, i: usize) -> &MultiHom {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[MultiHom] {
        &self.elements
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.elements[i].leq(&self.elements[j])
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Position in the canonical order.
    pub fn index_of(&self, element: &MultiHom) -> Option<usize> {
        self.elements.binary_search(element).ok()
    }

    /// Indices of singleton-valued elements, in order.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.elements[i].is_atom())
            .collect()
    }

    /// Connected components of the comparability graph. Chains connect
    /// exactly what comparability connects, so this matches the path
    /// components of the order complex.
    pub fn comparability_components(&self) -> (usize, Vec<usize>) {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.comparable(i, j) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut label = alloc::vec![usize::MAX; n];
        let mut count = 0;
        for i in 0..n {
            let root = find(&mut parent, i);
            if label[root] == usize::MAX {
                label[root] = count;
                count += 1;
            }
            label[i] = label[root];
        }
        (count, label)
    }
}

/// Enumerate every multihomomorphism `g -> h`, each exactly once, sorted
/// canonically. The empty poset is a legal value. Capped by
/// `caps.hom_elements`.
pub fn enumerate_hom(g: &Graph, h: &Graph, caps: &Caps) -> Result<HomPoset> {
    let gn = g.vertex_count();
    let hn = h.vertex_count();
    let mut elements = Vec::new();

    if gn == 0 {
        // The empty assignment is the unique element.
        elements.push(MultiHom::from_sets_unchecked(Vec::new()));
        return Ok(HomPoset {
            dom_n: 0,
            cod_n: hn,
            elements,
        });
    }
    if hn == 0 {
        return Ok(HomPoset {
            dom_n: gn,
            cod_n: 0,
            elements,
        });
    }

    let looped_h = h.looped_vertices();
    let mut assignment: Vec<BitSet> = Vec::with_capacity(gn);
    let mut comm: Vec<BitSet> = Vec::with_capacity(gn);

    fn recurse(
        g: &Graph,
        h: &Graph,
        looped_h: &BitSet,
        caps: &Caps,
        assignment: &mut Vec<BitSet>,
        comm: &mut Vec<BitSet>,
        elements: &mut Vec<MultiHom>,
    ) -> Result<()> {
        let x = assignment.len();
        if x == g.vertex_count() {
            if elements.len() as u64 >= caps.hom_elements {
                return Err(Error::resource(
                    "multihomomorphism elements",
                    caps.hom_elements,
                ));
            }
            elements.push(MultiHom::from_sets_unchecked(assignment.clone()));
            return Ok(());
        }

        let mut allowed = if g.is_looped(x) {
            looped_h.clone()
        } else {
            BitSet::full(h.vertex_count())
        };
        for y in g.row(x).iter() {
            if y < x {
                allowed.intersect_with(&comm[y]);
            }
        }
        let candidates: Vec<VertexId> = allowed.iter().collect();
        if candidates.is_empty() {
            return Ok(());
        }

        // Depth-first over include/skip for each candidate; a loop at `x`
        // additionally requires the chosen set to be pairwise adjacent.
        // Feasibility is monotone decreasing in the set, so when `x` still
        // has unassigned neighbors and the running common neighborhood
        // empties, every superset is dead and the include branch is cut.
        let clique = g.is_looped(x);
        let has_later_neighbor = g.row(x).iter().any(|y| y > x);
        let mut current = BitSet::new(h.vertex_count());
        let full = BitSet::full(h.vertex_count());

        #[allow(clippy::too_many_arguments)]
        fn subsets(
            g: &Graph,
            h: &Graph,
            looped_h: &BitSet,
            caps: &Caps,
            candidates: &[VertexId],
            pos: usize,
            clique: bool,
            prune_on_empty_comm: bool,
            current: &mut BitSet,
            current_comm: &BitSet,
            assignment: &mut Vec<BitSet>,
            comm: &mut Vec<BitSet>,
            elements: &mut Vec<MultiHom>,
        ) -> Result<()> {
            if pos == candidates.len() {
                if current.is_empty() {
                    return Ok(());
                }
                assignment.push(current.clone());
                comm.push(current_comm.clone());
                let r = recurse(g, h, looped_h, caps, assignment, comm, elements);
                assignment.pop();
                comm.pop();
                return r;
            }
            let v = candidates[pos];
            // Include v when allowed.
            if !clique || current.is_subset(h.row(v)) {
                let mut next_comm = current_comm.clone();
                next_comm.intersect_with(h.row(v));
                if !(prune_on_empty_comm && next_comm.is_empty()) {
                    current.insert(v);
                    subsets(
                        g,
                        h,
                        looped_h,
                        caps,
                        candidates,
                        pos + 1,
                        clique,
                        prune_on_empty_comm,
                        current,
                        &next_comm,
                        assignment,
                        comm,
                        elements,
                    )?;
                    current.remove(v);
                }
            }
            // Skip v.
            subsets(
                g,
                h,
                looped_h,
                caps,
                candidates,
                pos + 1,
                clique,
                prune_on_empty_comm,
                current,
                current_comm,
                assignment,
                comm,
                elements,
            )
        }

        subsets(
            g,
            h,
            looped_h,
            caps,
            &candidates,
            0,
            clique,
            has_later_neighbor,
            &mut current,
            &full,
            assignment,
            comm,
            elements,
        )
    }

    recurse(
        g,
        h,
        &looped_h,
        caps,
        &mut assignment,
        &mut comm,
        &mut elements,
    )?;
    elements.sort();
    Ok(HomPoset {
        dom_n: gn,
        cod_n: hn,
        elements,
    })
}

/// Elementwise covariant action: postcompose the value sets with `f`.
pub fn push_multihom(f: &GraphMap, alpha: &MultiHom, cod2_n: usize) -> MultiHom {
    let sets = alpha
        .sets()
        .iter()
        .map(|s| {
            let mut out = BitSet::new(cod2_n);
            for v in s.iter() {
                out.insert(f.apply(v));
            }
            out
        })
        .collect();
    MultiHom::from_sets_unchecked(sets)
}

/// Elementwise contravariant action: precompose with `f`.
pub fn pull_multihom(f: &GraphMap, beta: &MultiHom) -> MultiHom {
    MultiHom::from_sets_unchecked(f.image().iter().map(|&v| beta.set(v).clone()).collect())
}

/// The poset map `Hom(T, H1) -> Hom(T, H2)` induced by a homomorphism
/// `f: H1 -> H2`, as an index table into `to`.
pub fn push_map(f: &GraphMap, from: &HomPoset, to: &HomPoset) -> Result<Vec<usize>> {
    from.elements()
        .iter()
        .map(|alpha| {
            let image = push_multihom(f, alpha, to.cod_count());
            to.index_of(&image)
                .ok_or_else(|| Error::domain("pushed element missing from the target poset"))
        })
        .collect()
}

/// The poset map `Hom(G2, T) -> Hom(G1, T)` induced by a homomorphism
/// `f: G1 -> G2`, as an index table into `to`.
pub fn pull_map(f: &GraphMap, from: &HomPoset, to: &HomPoset) -> Result<Vec<usize>> {
    from.elements()
        .iter()
        .map(|beta| {
            let image = pull_multihom(f, beta);
            to.index_of(&image)
                .ok_or_else(|| Error::domain("pulled element missing from the target poset"))
        })
        .collect()
}

/// Composition `Hom(G,H) x Hom(H,K) -> Hom(G,K)`: values are unions of
/// images, monotone in both arguments.
pub fn compose_multihoms(alpha: &MultiHom, beta: &MultiHom, cod_n: usize) -> Result<MultiHom> {
    let sets = alpha
        .sets()
        .iter()
        .map(|s| {
            let mut out = BitSet::new(cod_n);
            for y in s.iter() {
                if y >= beta.dom_len() {
                    return Err(Error::domain("composition over mismatched middle graph"));
                }
                out.union_with(beta.set(y));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiHom::from_sets_unchecked(sets))
}

/// All vertex ids of `exp` whose decoded map picks its value at each `b`
/// inside `choices[b]`; the product set `Π_b choices[b]` under the
/// mixed-radix encoding.
fn product_set(exp: &ExponentialGraph, choices: &[BitSet]) -> BitSet {
    let mut out = BitSet::new(exp.vertex_count());
    let mut picks: Vec<VertexId> = Vec::with_capacity(choices.len());
    fn rec(exp: &ExponentialGraph, choices: &[BitSet], picks: &mut Vec<VertexId>, out: &mut BitSet) {
        if picks.len() == choices.len() {
            let id = exp
                .encode(&GraphMap::from_image(picks.clone()))
                .expect("within exponential universe");
            out.insert(id);
            return;
        }
        let b = picks.len();
        for v in choices[b].iter() {
            picks.push(v);
            rec(exp, choices, picks, out);
            picks.pop();
        }
    }
    rec(exp, choices, &mut picks, &mut out);
    out
}

/// The closure-retract pair exhibiting `Hom(A x B, C)` inside
/// `Hom(A, C^B)`: an injective poset map `j` and a closure `c` with the
/// same image.
pub struct AdjunctionRetract {
    /// `Hom(A x B, C)`.
    pub source: HomPoset,
    /// `Hom(A, C^B)`.
    pub target: HomPoset,
    /// The exponential `C^B`.
    pub exponential: ExponentialGraph,
    /// `j`: source index -> target index.
    pub inclusion: Vec<usize>,
    /// `c`: target index -> target index.
    pub closure: Vec<usize>,
}

pub fn adjunction_retract(
    a: &Graph,
    b: &Graph,
    c: &Graph,
    caps: &Caps,
) -> Result<AdjunctionRetract> {
    let exponential = categorical_exponential(b, c, caps)?;
    let (product, _, _) = categorical_product(a, b);
    let source = enumerate_hom(&product, c, caps)?;
    let target = enumerate_hom(a, exponential.graph(), caps)?;

    let bn = b.vertex_count();
    let inclusion = source
        .elements()
        .iter()
        .map(|alpha| {
            let sets = (0..a.vertex_count())
                .map(|av| {
                    let choices: Vec<BitSet> = (0..bn)
                        .map(|bv| alpha.set(pair_encode(bn, av, bv)).clone())
                        .collect();
                    product_set(&exponential, &choices)
                })
                .collect();
            let image = MultiHom::from_sets_unchecked(sets);
            target
                .index_of(&image)
                .ok_or_else(|| Error::domain("inclusion image missing from Hom(A, C^B)"))
        })
        .collect::<Result<Vec<_>>>()?;

    let closure = target
        .elements()
        .iter()
        .map(|gamma| {
            let sets = (0..a.vertex_count())
                .map(|av| {
                    // Per-coordinate value sets collected from the decoded maps.
                    let mut per_b = alloc::vec![BitSet::new(c.vertex_count()); bn];
                    for id in gamma.set(av).iter() {
                        let map = exponential.decode(id);
                        for (bv, slot) in per_b.iter_mut().enumerate() {
                            slot.insert(map.apply(bv));
                        }
                    }
                    product_set(&exponential, &per_b)
                })
                .collect();
            let image = MultiHom::from_sets_unchecked(sets);
            target
                .index_of(&image)
                .ok_or_else(|| Error::domain("closure image missing from Hom(A, C^B)"))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(AdjunctionRetract {
        source,
        target,
        exponential,
        inclusion,
        closure,
    })
}

/// The closure-retract pair exhibiting `Hom(T,G) x Hom(T,H)` inside
/// `Hom(T, G x H)`.
pub struct ProductRetract {
    /// `Hom(T, G)`.
    pub left: HomPoset,
    /// `Hom(T, H)`.
    pub right: HomPoset,
    /// `Hom(T, G x H)`.
    pub target: HomPoset,
    /// `i`: pair index `li * right.len() + ri` -> target index.
    pub inclusion: Vec<usize>,
    /// `c`: target index -> target index.
    pub closure: Vec<usize>,
}

pub fn product_retract(t: &Graph, g: &Graph, h: &Graph, caps: &Caps) -> Result<ProductRetract> {
    let left = enumerate_hom(t, g, caps)?;
    let right = enumerate_hom(t, h, caps)?;
    let (product, _, _) = categorical_product(g, h);
    let target = enumerate_hom(t, &product, caps)?;

    let hn = h.vertex_count();
    let pair_universe = product.vertex_count();
    let mut inclusion = Vec::with_capacity(left.len() * right.len());
    for alpha in left.elements() {
        for beta in right.elements() {
            let sets = (0..t.vertex_count())
                .map(|v| {
                    let mut out = BitSet::new(pair_universe);
                    for a in alpha.set(v).iter() {
                        for b in beta.set(v).iter() {
                            out.insert(pair_encode(hn, a, b));
                        }
                    }
                    out
                })
                .collect();
            let image = MultiHom::from_sets_unchecked(sets);
            let idx = target
                .index_of(&image)
                .ok_or_else(|| Error::domain("inclusion image missing from Hom(T, G x H)"))?;
            inclusion.push(idx);
        }
    }

    let closure = target
        .elements()
        .iter()
        .map(|gamma| {
            let sets = (0..t.vertex_count())
                .map(|v| {
                    // Minimal coordinate projections A_v and B_v.
                    let mut av = BitSet::new(g.vertex_count());
                    let mut bv = BitSet::new(hn);
                    for pair in gamma.set(v).iter() {
                        let (x, y) = pair_decode(hn, pair);
                        av.insert(x);
                        bv.insert(y);
                    }
                    let mut out = BitSet::new(pair_universe);
                    for a in av.iter() {
                        for b in bv.iter() {
                            out.insert(pair_encode(hn, a, b));
                        }
                    }
                    out
                })
                .collect();
            let image = MultiHom::from_sets_unchecked(sets);
            target
                .index_of(&image)
                .ok_or_else(|| Error::domain("closure image missing from Hom(T, G x H)"))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ProductRetract {
        left,
        right,
        target,
        inclusion,
        closure,
    })
}

/// The isomorphism `Hom(A ⊔ B, C) ≅ Hom(A, C) x Hom(B, C)` given by
/// restricting to the two summands.
pub struct DomainSplit {
    pub whole: HomPoset,
    pub left: HomPoset,
    pub right: HomPoset,
    /// whole index -> (left index, right index); a bijection.
    pub to_pair: Vec<(usize, usize)>,
}

pub fn split_coproduct_domain(a: &Graph, b: &Graph, c: &Graph, caps: &Caps) -> Result<DomainSplit> {
    let (sum, _, _) = crate::graph::coproduct(a, b);
    let whole = enumerate_hom(&sum, c, caps)?;
    let left = enumerate_hom(a, c, caps)?;
    let right = enumerate_hom(b, c, caps)?;
    let an = a.vertex_count();
    let to_pair = whole
        .elements()
        .iter()
        .map(|eta| {
            let la = MultiHom::from_sets_unchecked(eta.sets()[..an].to_vec());
            let rb = MultiHom::from_sets_unchecked(eta.sets()[an..].to_vec());
            let li = left
                .index_of(&la)
                .ok_or_else(|| Error::domain("restriction missing from Hom(A, C)"))?;
            let ri = right
                .index_of(&rb)
                .ok_or_else(|| Error::domain("restriction missing from Hom(B, C)"))?;
            Ok((li, ri))
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(whole.len(), left.len() * right.len());
    Ok(DomainSplit {
        whole,
        left,
        right,
        to_pair,
    })
}

/// Which summand a `Hom(A, B ⊔ C)` element lands in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left(usize),
    Right(usize),
}

/// The isomorphism `Hom(A, B ⊔ C) ≅ Hom(A, B) ⊔ Hom(A, C)`. Requires the
/// domain to be connected and not a single vertex, which forces every
/// element to live entirely in one summand.
pub struct CodomainSplit {
    pub whole: HomPoset,
    pub left: HomPoset,
    pub right: HomPoset,
    pub side: Vec<Side>,
}

pub fn split_coproduct_codomain(
    a: &Graph,
    b: &Graph,
    c: &Graph,
    caps: &Caps,
) -> Result<CodomainSplit> {
    if a.vertex_count() < 2 || !a.is_connected() {
        return Err(Error::domain(
            "codomain splitting requires a connected domain with at least two vertices",
        ));
    }
    let (sum, _, _) = crate::graph::coproduct(b, c);
    let whole = enumerate_hom(a, &sum, caps)?;
    let left = enumerate_hom(a, b, caps)?;
    let right = enumerate_hom(a, c, caps)?;
    let bn = b.vertex_count();
    let side = whole
        .elements()
        .iter()
        .map(|eta| {
            let in_left = eta.set(0).first().expect("nonempty") < bn;
            let sets = eta
                .sets()
                .iter()
                .map(|s| {
                    let universe = if in_left { bn } else { c.vertex_count() };
                    let mut out = BitSet::new(universe);
                    for v in s.iter() {
                        if in_left {
                            if v >= bn {
                                return Err(Error::domain(
                                    "element straddles the coproduct summands",
                                ));
                            }
                            out.insert(v);
                        } else {
                            if v < bn {
                                return Err(Error::domain(
                                    "element straddles the coproduct summands",
                                ));
                            }
                            out.insert(v - bn);
                        }
                    }
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()?;
            let translated = MultiHom::from_sets_unchecked(sets);
            if in_left {
                left.index_of(&translated)
                    .map(Side::Left)
                    .ok_or_else(|| Error::domain("element missing from Hom(A, B)"))
            } else {
                right
                    .index_of(&translated)
                    .map(Side::Right)
                    .ok_or_else(|| Error::domain("element missing from Hom(A, C)"))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(whole.len(), left.len() + right.len());
    Ok(CodomainSplit {
        whole,
        left,
        right,
        side,
    })
}
