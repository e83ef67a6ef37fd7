//! Exponential graphs: the right adjoints to the two graph products.
//!
//! The categorical exponential `H^G` has *all* vertex maps `V(G) -> V(H)` as
//! vertices; `f ~ f'` when every edge `v ~ v'` of `G` lands on an edge
//! `f(v) ~ f'(v')` of `H`. Its looped vertices are exactly the graph
//! homomorphisms. The cartesian exponential has only the homomorphisms as
//! vertices, adjacent when pointwise adjacent.
//!
//! Vertex ids of the categorical exponential use mixed-radix encoding with
//! digit `f(v)` in base `|V(H)|` and vertex 0 as the most significant digit,
//! fixed so serialized output is reproducible.

use alloc::vec::Vec;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{
    cartesian_product, categorical_product, enumerate_homomorphisms, pair_encode, Graph, GraphMap,
    VertexId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpKind {
    Categorical,
    Cartesian,
}

#[derive(Clone, Debug)]
pub struct ExponentialGraph {
    graph: Graph,
    kind: ExpKind,
    dom_n: usize,
    cod_n: usize,
    /// Cartesian only: the vertex list, sorted lexicographically.
    homs: Option<Vec<GraphMap>>,
}

impl ExponentialGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn kind(&self) -> ExpKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn dom_count(&self) -> usize {
        self.dom_n
    }

    pub fn cod_count(&self) -> usize {
        self.cod_n
    }

    /// The vertex map a vertex id stands for.
    pub fn decode(&self, v: VertexId) -> GraphMap {
        debug_assert!(v < self.vertex_count());
        match &self.homs {
            Some(list) => list[v].clone(),
            None => GraphMap::from_image(decode_digits(v, self.dom_n, self.cod_n)),
        }
    }

    /// The vertex id of a vertex map, if it is a vertex of this exponential.
    pub fn encode(&self, map: &GraphMap) -> Option<VertexId> {
        if map.len() != self.dom_n || map.image().iter().any(|&w| w >= self.cod_n) {
            return None;
        }
        match &self.homs {
            Some(list) => list.binary_search(map).ok(),
            None => {
                let mut id = 0usize;
                for &digit in map.image() {
                    id = id * self.cod_n + digit;
                }
                Some(id)
            }
        }
    }

    /// Ids of looped vertices in ascending order. For the categorical
    /// exponential these are exactly the homomorphisms.
    pub fn looped_vertex_ids(&self) -> Vec<VertexId> {
        self.graph
            .vertices()
            .filter(|&v| self.graph.is_looped(v))
            .collect()
    }
}

fn decode_digits(mut id: usize, dom_n: usize, cod_n: usize) -> Vec<VertexId> {
    let mut image = alloc::vec![0usize; dom_n];
    for slot in image.iter_mut().rev() {
        *slot = id % cod_n;
        id /= cod_n;
    }
    image
}

/// `H^G` for the categorical product. Capped by `caps.exp_vertices`.
pub fn categorical_exponential(g: &Graph, h: &Graph, caps: &Caps) -> Result<ExponentialGraph> {
    let dom_n = g.vertex_count();
    let cod_n = h.vertex_count();
    let count = (cod_n as u128).checked_pow(dom_n as u32);
    let count = match count {
        Some(c) if c <= caps.exp_vertices as u128 => c as usize,
        _ => {
            return Err(Error::resource(
                "categorical exponential vertices",
                caps.exp_vertices,
            ))
        }
    };

    let maps: Vec<Vec<VertexId>> = (0..count).map(|v| decode_digits(v, dom_n, cod_n)).collect();
    let edges_g = g.ordered_edges();

    let mut edges = Vec::new();
    for i in 0..count {
        'pair: for j in i..count {
            for &(v, w) in &edges_g {
                if !h.has_edge(maps[i][v], maps[j][w]) {
                    continue 'pair;
                }
            }
            edges.push((i, j));
        }
    }
    let graph = Graph::new(count, &edges).expect("exponential edges are in range");
    Ok(ExponentialGraph {
        graph,
        kind: ExpKind::Categorical,
        dom_n,
        cod_n,
        homs: None,
    })
}

/// The cartesian exponential: vertices are the homomorphisms `a -> b`,
/// adjacent when pointwise adjacent.
pub fn cartesian_exponential(a: &Graph, b: &Graph, caps: &Caps) -> Result<ExponentialGraph> {
    let homs = enumerate_homomorphisms(a, b, caps)?;
    let count = homs.len();
    let mut edges = Vec::new();
    for i in 0..count {
        'pair: for j in i..count {
            for v in 0..a.vertex_count() {
                if !b.has_edge(homs[i].apply(v), homs[j].apply(v)) {
                    continue 'pair;
                }
            }
            edges.push((i, j));
        }
    }
    let graph = Graph::new(count, &edges).expect("exponential edges are in range");
    Ok(ExponentialGraph {
        graph,
        kind: ExpKind::Cartesian,
        dom_n: a.vertex_count(),
        cod_n: b.vertex_count(),
        homs: Some(homs),
    })
}

fn expect_kind(exp: &ExponentialGraph, kind: ExpKind, b: &Graph, c: &Graph) -> Result<()> {
    if exp.kind != kind || exp.dom_n != b.vertex_count() || exp.cod_n != c.vertex_count() {
        return Err(Error::domain(
            "exponential graph does not match the requested currying",
        ));
    }
    Ok(())
}

/// Transpose a homomorphism `a x b -> c` across the product/exponential
/// adjunction: the result sends `v` to the map `w -> f(v, w)`.
pub fn curry(
    a: &Graph,
    b: &Graph,
    c: &Graph,
    exp_cb: &ExponentialGraph,
    f: &GraphMap,
) -> Result<GraphMap> {
    expect_kind(exp_cb, ExpKind::Categorical, b, c)?;
    let (product, _, _) = categorical_product(a, b);
    if !f.is_homomorphism(&product, c) {
        return Err(Error::domain("curry input is not a homomorphism"));
    }
    let bn = b.vertex_count();
    let image = (0..a.vertex_count())
        .map(|av| {
            let slice = GraphMap::from_image(
                (0..bn).map(|bv| f.apply(pair_encode(bn, av, bv))).collect(),
            );
            exp_cb.encode(&slice).expect("slice is a vertex map b -> c")
        })
        .collect();
    let out = GraphMap::from_image(image);
    debug_assert!(out.is_homomorphism(a, exp_cb.graph()));
    Ok(out)
}

/// Inverse of [`curry`].
pub fn uncurry(
    a: &Graph,
    b: &Graph,
    c: &Graph,
    exp_cb: &ExponentialGraph,
    g: &GraphMap,
) -> Result<GraphMap> {
    expect_kind(exp_cb, ExpKind::Categorical, b, c)?;
    if !g.is_homomorphism(a, exp_cb.graph()) {
        return Err(Error::domain("uncurry input is not a homomorphism"));
    }
    let bn = b.vertex_count();
    let mut image = alloc::vec![0usize; a.vertex_count() * bn];
    for av in 0..a.vertex_count() {
        let slice = exp_cb.decode(g.apply(av));
        for bv in 0..bn {
            image[pair_encode(bn, av, bv)] = slice.apply(bv);
        }
    }
    let out = GraphMap::from_image(image);
    let (product, _, _) = categorical_product(a, b);
    debug_assert!(out.is_homomorphism(&product, c));
    Ok(out)
}

/// Transpose a homomorphism `a □ b -> c` across the cartesian adjunction.
pub fn curry_cartesian(
    a: &Graph,
    b: &Graph,
    c: &Graph,
    exp_cb: &ExponentialGraph,
    f: &GraphMap,
) -> Result<GraphMap> {
    expect_kind(exp_cb, ExpKind::Cartesian, b, c)?;
    let product = cartesian_product(a, b);
    if !f.is_homomorphism(&product, c) {
        return Err(Error::domain("curry input is not a homomorphism"));
    }
    let bn = b.vertex_count();
    let image = (0..a.vertex_count())
        .map(|av| {
            let slice = GraphMap::from_image(
                (0..bn).map(|bv| f.apply(pair_encode(bn, av, bv))).collect(),
            );
            exp_cb
                .encode(&slice)
                .ok_or_else(|| Error::domain("curried slice is not a homomorphism"))
        })
        .collect::<Result<Vec<_>>>()?;
    let out = GraphMap::from_image(image);
    debug_assert!(out.is_homomorphism(a, exp_cb.graph()));
    Ok(out)
}

/// Inverse of [`curry_cartesian`].
pub fn uncurry_cartesian(
    a: &Graph,
    b: &Graph,
    c: &Graph,
    exp_cb: &ExponentialGraph,
    g: &GraphMap,
) -> Result<GraphMap> {
    expect_kind(exp_cb, ExpKind::Cartesian, b, c)?;
    if !g.is_homomorphism(a, exp_cb.graph()) {
        return Err(Error::domain("uncurry input is not a homomorphism"));
    }
    let bn = b.vertex_count();
    let mut image = alloc::vec![0usize; a.vertex_count() * bn];
    for av in 0..a.vertex_count() {
        let slice = exp_cb.decode(g.apply(av));
        for bv in 0..bn {
            image[pair_encode(bn, av, bv)] = slice.apply(bv);
        }
    }
    let out = GraphMap::from_image(image);
    let product = cartesian_product(a, b);
    debug_assert!(out.is_homomorphism(&product, c));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    #[test]
    fn k3_to_the_k2_has_six_looped_vertices() {
        let exp = categorical_exponential(&k(2), &k(3), &Caps::default()).unwrap();
        assert_eq!(exp.vertex_count(), 9);
        let looped = exp.looped_vertex_ids();
        assert_eq!(looped.len(), 6);
        // Exactly the encodings of the homomorphisms.
        let homs = enumerate_homomorphisms(&k(2), &k(3), &Caps::default()).unwrap();
        let encoded: Vec<_> = homs.iter().map(|m| exp.encode(m).unwrap()).collect();
        assert_eq!(looped, encoded);
    }

    #[test]
    fn k2_to_the_k2_loops_are_isolated_from_each_other() {
        let exp = categorical_exponential(&k(2), &k(2), &Caps::default()).unwrap();
        assert_eq!(exp.vertex_count(), 4);
        let looped = exp.looped_vertex_ids();
        assert_eq!(looped, vec![1, 2]); // 01 and 10 in mixed radix
        assert!(!exp.graph().has_edge(looped[0], looped[1]));
    }

    #[test]
    fn exponential_with_empty_domain_is_a_single_loop() {
        let exp = categorical_exponential(&Graph::empty(), &k(3), &Caps::default()).unwrap();
        assert_eq!(exp.vertex_count(), 1);
        assert!(exp.graph().is_looped(0));
        assert_eq!(exp.decode(0), GraphMap::identity(0));
    }

    #[test]
    fn exponential_cap() {
        let caps = Caps {
            exp_vertices: 8,
            ..Caps::default()
        };
        assert!(categorical_exponential(&k(2), &k(3), &caps)
            .unwrap_err()
            .is_resource());
    }

    #[test]
    fn mixed_radix_round_trip() {
        let exp = categorical_exponential(&k(2), &k(3), &Caps::default()).unwrap();
        for v in 0..exp.vertex_count() {
            assert_eq!(exp.encode(&exp.decode(v)), Some(v));
        }
        // Most significant digit is vertex 0: map [1, 2] encodes as 1*3+2.
        assert_eq!(exp.encode(&GraphMap::from_image(vec![1, 2])), Some(5));
    }

    #[test]
    fn cartesian_exponential_shapes() {
        let caps = Caps::default();
        let one = Graph::one();
        let exp = cartesian_exponential(&one, &one, &caps).unwrap();
        assert_eq!(exp.vertex_count(), 1);
        assert!(exp.graph().is_looped(0));

        let i1 = Graph::interval(1);
        let exp = cartesian_exponential(&i1, &i1, &caps).unwrap();
        assert_eq!(exp.vertex_count(), 4);
        assert!(exp.graph().is_reflexive());

        let exp = cartesian_exponential(&k(2), &k(2), &caps).unwrap();
        assert_eq!(exp.vertex_count(), 2);
        assert_eq!(exp.looped_vertex_ids(), Vec::<usize>::new());
    }

    #[test]
    fn curry_round_trip_and_counts() {
        let caps = Caps::default();
        let corpus = [k(2), k(3), Graph::interval(1)];
        for a in &corpus {
            for b in &corpus {
                for c in &corpus {
                    let exp = categorical_exponential(b, c, &caps).unwrap();
                    let (product, _, _) = categorical_product(a, b);
                    let product_homs = enumerate_homomorphisms(&product, c, &caps).unwrap();
                    let curried_homs = enumerate_homomorphisms(a, exp.graph(), &caps).unwrap();
                    assert_eq!(product_homs.len(), curried_homs.len());
                    for f in &product_homs {
                        let g = curry(a, b, c, &exp, f).unwrap();
                        assert_eq!(uncurry(a, b, c, &exp, &g).unwrap(), *f);
                    }
                    for g in &curried_homs {
                        let f = uncurry(a, b, c, &exp, g).unwrap();
                        assert_eq!(curry(a, b, c, &exp, &f).unwrap(), *g);
                    }
                }
            }
        }
    }

    #[test]
    fn curry_with_terminal_domain_hits_looped_vertices() {
        let caps = Caps::default();
        let one = Graph::one();
        let (g, h) = (k(2), k(3));
        let exp = categorical_exponential(&g, &h, &caps).unwrap();
        let (product, _, _) = categorical_product(&one, &g);
        let homs = enumerate_homomorphisms(&product, &h, &caps).unwrap();
        assert_eq!(homs.len(), 6);
        let mut hit: Vec<_> = homs
            .iter()
            .map(|f| curry(&one, &g, &h, &exp, f).unwrap().apply(0))
            .collect();
        hit.sort_unstable();
        assert_eq!(hit, exp.looped_vertex_ids());
    }

    #[test]
    fn curry_rejects_non_homomorphism() {
        let caps = Caps::default();
        let exp = categorical_exponential(&k(2), &k(3), &caps).unwrap();
        let not_hom = GraphMap::from_image(vec![0, 0, 0, 0]);
        assert!(curry(&k(2), &k(2), &k(3), &exp, &not_hom).is_err());
    }

    #[test]
    fn cartesian_curry_round_trip() {
        let caps = Caps::default();
        let corpus = [Graph::one(), Graph::interval(1), Graph::interval(2)];
        for a in &corpus {
            for b in &corpus {
                for c in &corpus {
                    let exp = cartesian_exponential(b, c, &caps).unwrap();
                    let product = cartesian_product(a, b);
                    let product_homs = enumerate_homomorphisms(&product, c, &caps).unwrap();
                    let curried_homs = enumerate_homomorphisms(a, exp.graph(), &caps).unwrap();
                    assert_eq!(product_homs.len(), curried_homs.len());
                    for f in &product_homs {
                        let g = curry_cartesian(a, b, c, &exp, f).unwrap();
                        assert_eq!(uncurry_cartesian(a, b, c, &exp, &g).unwrap(), *f);
                    }
                }
            }
        }
    }

    #[test]
    fn naturality_of_the_adjunction() {
        // For f: a -> a2 and g: c -> c2, transposing g . alpha . (f x id_b)
        // equals precomposing f and postcomposing g on the transpose of alpha.
        let caps = Caps::default();
        let (a, a2, b, c, c2) = (k(2), k(3), k(2), k(3), k(3));
        let exp_cb = categorical_exponential(&b, &c, &caps).unwrap();
        let exp_c2b = categorical_exponential(&b, &c2, &caps).unwrap();
        let (prod_a2b, _, _) = categorical_product(&a2, &b);

        let fs = enumerate_homomorphisms(&a, &a2, &caps).unwrap();
        let gs = enumerate_homomorphisms(&c, &c2, &caps).unwrap();
        let alphas = enumerate_homomorphisms(&prod_a2b, &c, &caps).unwrap();

        let bn = b.vertex_count();
        for f in fs.iter().take(3) {
            for g in gs.iter().take(3) {
                for alpha in alphas.iter().take(5) {
                    // Left: curry of the composite (a x b) -> c2.
                    let composite = GraphMap::from_image(
                        (0..a.vertex_count() * bn)
                            .map(|v| {
                                let (av, bv) = crate::graph::pair_decode(bn, v);
                                g.apply(alpha.apply(pair_encode(bn, f.apply(av), bv)))
                            })
                            .collect(),
                    );
                    let left = curry(&a, &b, &c2, &exp_c2b, &composite).unwrap();

                    // Right: transpose alpha, precompose f, postcompose g.
                    let talpha = curry(&a2, &b, &c, &exp_cb, alpha).unwrap();
                    let right = GraphMap::from_image(
                        (0..a.vertex_count())
                            .map(|av| {
                                let slice = exp_cb.decode(talpha.apply(f.apply(av)));
                                exp_c2b.encode(&slice.then(g)).unwrap()
                            })
                            .collect(),
                    );
                    assert_eq!(left, right);
                }
            }
        }
    }
}
