//! Property tests for the structural invariants: constructor laws, functor
//! laws, oracle equivalence of the two enumerations, homotopy being an
//! equivalence relation, fold invariance of homology, and bound soundness.

use homkit_core::bounds::{chromatic_number, lovasz_bound};
use homkit_core::graph::{
    cartesian_product, categorical_product, coproduct, enumerate_homomorphisms, pair_encode,
};
use homkit_core::hom::enumerate_hom;
use homkit_core::homotopy::{
    apply_fold, are_x_homotopic, find_folds, homotopy_classes, is_dismantlable,
};
use homkit_core::topology::{betti_gf2, order_complex, path_components};
use homkit_core::{Caps, Graph, GraphMap};
use proptest::prelude::*;

fn caps() -> Caps {
    Caps::default()
}

/// Random graph on up to `max_n` vertices, loops allowed.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n)
        .prop_flat_map(|n| {
            let pairs = if n == 0 {
                prop::collection::vec((0..1usize, 0..1usize), 0..1).boxed()
            } else {
                prop::collection::vec((0..n, 0..n), 0..=n * 2).boxed()
            };
            (Just(n), pairs)
        })
        .prop_map(|(n, pairs)| {
            let edges: Vec<(usize, usize)> = if n == 0 { Vec::new() } else { pairs };
            Graph::new(n, &edges).expect("endpoints in range")
        })
}

fn arb_loopless_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_map(|g| {
        let edges: Vec<_> = g.edges().into_iter().filter(|&(u, v)| u != v).collect();
        Graph::new(g.vertex_count(), &edges).expect("edges in range")
    })
}

fn adjacency_is_symmetric(g: &Graph) -> bool {
    g.vertices()
        .all(|u| g.vertices().all(|v| g.has_edge(u, v) == g.has_edge(v, u)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructors_and_products_keep_adjacency_symmetric(
        g in arb_graph(5),
        h in arb_graph(4),
    ) {
        prop_assert!(adjacency_is_symmetric(&g));
        let (p, pg, ph) = categorical_product(&g, &h);
        prop_assert!(adjacency_is_symmetric(&p));
        let q = cartesian_product(&g, &h);
        prop_assert!(adjacency_is_symmetric(&q));
        let (s, ig, ih) = coproduct(&g, &h);
        prop_assert!(adjacency_is_symmetric(&s));

        // Projections and injections are homomorphisms.
        prop_assert!(pg.is_homomorphism(&p, &g));
        prop_assert!(ph.is_homomorphism(&p, &h));
        prop_assert!(ig.is_homomorphism(&g, &s));
        prop_assert!(ih.is_homomorphism(&h, &s));
    }

    #[test]
    fn product_sizes_and_loops(g in arb_graph(5), h in arb_graph(4)) {
        let hn = h.vertex_count();
        let (p, _, _) = categorical_product(&g, &h);
        prop_assert_eq!(p.vertex_count(), g.vertex_count() * hn);
        let q = cartesian_product(&g, &h);
        for a in g.vertices() {
            for b in h.vertices() {
                let v = pair_encode(hn, a, b);
                prop_assert_eq!(p.is_looped(v), g.is_looped(a) && h.is_looped(b));
                prop_assert_eq!(q.is_looped(v), g.is_looped(a) || h.is_looped(b));
            }
        }
    }

    #[test]
    fn looped_functors_compose_as_expected(g in arb_graph(6)) {
        // Adding loops then restricting to looped vertices changes nothing.
        let all_looped = g.add_loops();
        let (restricted, table) = all_looped.looped_core();
        prop_assert_eq!(&restricted, &all_looped);
        prop_assert_eq!(table.len(), g.vertex_count());
        // The looped core is always reflexive.
        let (core, _) = g.looped_core();
        prop_assert!(core.is_reflexive());
    }

    #[test]
    fn terminal_and_initial_hom_sets(g in arb_graph(5)) {
        let one = Graph::one();
        let to_one = enumerate_homomorphisms(&g, &one, &caps()).unwrap();
        prop_assert_eq!(to_one.len(), 1);
        let from_one = enumerate_homomorphisms(&one, &g, &caps()).unwrap();
        prop_assert_eq!(from_one.len(), g.looped_vertices().count());
    }

    #[test]
    fn map_enumeration_matches_filtering_all_maps(
        g in arb_graph(4),
        h in arb_graph(4),
    ) {
        let gn = g.vertex_count();
        let hn = h.vertex_count();
        let total = (hn as u64).checked_pow(gn as u32).unwrap_or(u64::MAX);
        prop_assume!(total <= 100_000);
        let fast = enumerate_homomorphisms(&g, &h, &caps()).unwrap();
        let mut slow = Vec::new();
        if gn == 0 {
            slow.push(GraphMap::identity(0));
        } else if hn > 0 {
            let mut image = vec![0usize; gn];
            loop {
                let m = GraphMap::from_image(image.clone());
                if m.is_homomorphism(&g, &h) {
                    slow.push(m);
                }
                let mut i = gn;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    image[i] += 1;
                    if image[i] < hn {
                        break;
                    }
                    image[i] = 0;
                }
                if image.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
        slow.sort();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn poset_atoms_are_the_homomorphisms(
        g in arb_graph(3),
        h in arb_graph(3),
    ) {
        let poset = enumerate_hom(&g, &h, &caps()).unwrap();
        let homs = enumerate_homomorphisms(&g, &h, &caps()).unwrap();
        let atoms: Vec<GraphMap> = poset
            .atoms()
            .into_iter()
            .map(|i| poset.element(i).to_map().unwrap())
            .collect();
        prop_assert_eq!(atoms, homs);
    }

    #[test]
    fn euler_consistency_on_random_hom_complexes(
        g in arb_graph(3),
        h in arb_graph(3),
    ) {
        let poset = enumerate_hom(&g, &h, &caps()).unwrap();
        let complex = order_complex(&poset, &caps()).unwrap();
        // betti_gf2 asserts Euler consistency internally.
        let betti = betti_gf2(&complex);
        prop_assert_eq!(betti.euler, complex.euler_characteristic());
        // Components agree between the complex and the Betti vector.
        let components = path_components(&complex).count;
        if components > 0 {
            prop_assert_eq!(betti.reduced[0] + 1, components);
        }
    }

    #[test]
    fn class_count_equals_component_count(
        g in arb_graph(3),
        h in arb_graph(3),
    ) {
        let classes = homotopy_classes(&g, &h, &caps()).unwrap();
        let poset = enumerate_hom(&g, &h, &caps()).unwrap();
        let complex = order_complex(&poset, &caps()).unwrap();
        let components = path_components(&complex);
        // Maps live in the atom part; the complex may have more components
        // only if some component carries no atom, which cannot happen:
        // every element dominates an atom. So the counts agree.
        prop_assert_eq!(classes.count, components.count);
    }

    #[test]
    fn homotopy_is_symmetric_and_transitive(
        h in arb_graph(4),
    ) {
        let g = Graph::complete(2).unwrap();
        let homs = enumerate_homomorphisms(&g, &h, &caps()).unwrap();
        prop_assume!(!homs.is_empty() && homs.len() <= 12);
        for a in &homs {
            for b in &homs {
                let ab = are_x_homotopic(&g, &h, a, b, &caps()).unwrap().is_some();
                let ba = are_x_homotopic(&g, &h, b, a, &caps()).unwrap().is_some();
                prop_assert_eq!(ab, ba);
                for c in &homs {
                    let bc = are_x_homotopic(&g, &h, b, c, &caps()).unwrap().is_some();
                    let ac = are_x_homotopic(&g, &h, a, c, &caps()).unwrap().is_some();
                    if ab && bc {
                        prop_assert!(ac);
                    }
                }
            }
        }
    }

    #[test]
    fn composition_respects_homotopy_classes(
        h in arb_graph(3),
    ) {
        // If f ~ g then h . f ~ h . g for any postcomposition target.
        let dom = Graph::complete(2).unwrap();
        let mid = h;
        let cod = Graph::complete(3).unwrap();
        let fs = enumerate_homomorphisms(&dom, &mid, &caps()).unwrap();
        let hs = enumerate_homomorphisms(&mid, &cod, &caps()).unwrap();
        prop_assume!(!fs.is_empty() && !hs.is_empty());
        prop_assume!(fs.len() <= 8 && hs.len() <= 8);
        for f in &fs {
            for g in &fs {
                let fg = are_x_homotopic(&dom, &mid, f, g, &caps()).unwrap().is_some();
                if !fg {
                    continue;
                }
                for post in &hs {
                    let pf = f.then(post);
                    let pg = g.then(post);
                    prop_assert!(are_x_homotopic(&dom, &cod, &pf, &pg, &caps())
                        .unwrap()
                        .is_some());
                }
            }
        }
    }

    #[test]
    fn folds_are_homotopy_inverse_pairs(g in arb_graph(5)) {
        let folds = find_folds(&g);
        prop_assume!(!folds.is_empty());
        let (v, u) = folds[0];
        let r = apply_fold(&g, v, u).unwrap();
        // fold . unfold = id exactly.
        prop_assert_eq!(
            r.unfold.then(&r.fold),
            GraphMap::identity(r.folded.vertex_count())
        );
        // unfold . fold ~ id.
        let round = r.fold.then(&r.unfold);
        prop_assert!(are_x_homotopic(&g, &g, &round, &GraphMap::identity(g.vertex_count()), &caps())
            .unwrap()
            .is_some());
    }

    #[test]
    fn fold_invariance_of_homology(g in arb_graph(5)) {
        let folds = find_folds(&g);
        prop_assume!(!folds.is_empty());
        let (v, u) = folds[0];
        let folded = apply_fold(&g, v, u).unwrap().folded;
        let t = Graph::complete(2).unwrap();
        for (a, b) in [(&t, &g), (&t, &folded)] {
            let _ = (a, b);
        }
        let before = betti_gf2(&order_complex(&enumerate_hom(&t, &g, &caps()).unwrap(), &caps()).unwrap());
        let after = betti_gf2(&order_complex(&enumerate_hom(&t, &folded, &caps()).unwrap(), &caps()).unwrap());
        prop_assert_eq!(trim(&before.reduced), trim(&after.reduced));
        let before = betti_gf2(&order_complex(&enumerate_hom(&g, &t, &caps()).unwrap(), &caps()).unwrap());
        let after = betti_gf2(&order_complex(&enumerate_hom(&folded, &t, &caps()).unwrap(), &caps()).unwrap());
        prop_assert_eq!(trim(&before.reduced), trim(&after.reduced));
    }

    #[test]
    fn dismantlable_iff_single_class_against_test_graphs(g in arb_graph(4)) {
        prop_assume!(g.looped_vertices().count() > 0);
        let dismantlable = is_dismantlable(&g).is_some();
        let mut single_class_everywhere = true;
        for t in [
            Graph::complete(2).unwrap(),
            Graph::complete(3).unwrap(),
            Graph::cycle(5).unwrap(),
            g.clone(),
        ] {
            let classes = homotopy_classes(&t, &g, &caps()).unwrap();
            if classes.count != 1 {
                single_class_everywhere = false;
                break;
            }
        }
        prop_assert_eq!(dismantlable, single_class_everywhere);
    }

    #[test]
    fn slice_embeddings_induce_class_bijections(g in arb_graph(3), n in 1usize..=2) {
        // v -> (v, k) into g x I_n induces a bijection on homotopy classes.
        let t = Graph::complete(2).unwrap();
        let interval = Graph::interval(n);
        let (product, _, _) = categorical_product(&g, &interval);
        let classes_g = homotopy_classes(&t, &g, &caps()).unwrap();
        let classes_p = homotopy_classes(&t, &product, &caps()).unwrap();
        prop_assert_eq!(classes_g.count, classes_p.count);
        for k in 0..=n {
            // Post-composition with the slice embedding.
            let slice = GraphMap::from_image(
                g.vertices().map(|v| pair_encode(interval.vertex_count(), v, k)).collect(),
            );
            prop_assert!(slice.is_homomorphism(&g, &product));
            let mut hit = vec![false; classes_p.count];
            for f in &classes_g.maps {
                let c = classes_p.class_of_map(&f.then(&slice)).unwrap();
                hit[c] = true;
            }
            // Injectivity on classes follows from surjectivity at equal counts.
            if classes_g.count == classes_p.count {
                let distinct: std::collections::BTreeSet<usize> = classes_g
                    .maps
                    .iter()
                    .map(|f| classes_p.class_of_map(&f.then(&slice)).unwrap())
                    .collect();
                prop_assert_eq!(distinct.len(), classes_g.count);
            }
        }
    }

    #[test]
    fn chromatic_monotone_under_homomorphism(
        g in arb_loopless_graph(5),
        h in arb_loopless_graph(5),
    ) {
        use homkit_core::graph::homomorphism_exists;
        prop_assume!(homomorphism_exists(&g, &h, &caps()).unwrap());
        let cg = chromatic_number(&g, &caps()).unwrap();
        let ch = chromatic_number(&h, &caps()).unwrap();
        prop_assert!(cg <= ch);
    }

    #[test]
    fn edge_bound_is_sound(g in arb_loopless_graph(5)) {
        // The empty graph is the one degenerate case: chi = 0 while the
        // empty-complex convention floors the bound at 1.
        prop_assume!(g.vertex_count() > 0);
        let chi = chromatic_number(&g, &caps()).unwrap();
        let entry = lovasz_bound(&g, &caps()).unwrap();
        prop_assert!(entry.bound <= chi as i64, "bound {} vs chi {}", entry.bound, chi);
    }

    #[test]
    fn product_chromatic_never_exceeds_min(
        g in arb_loopless_graph(4),
        h in arb_loopless_graph(4),
    ) {
        let (p, _, _) = categorical_product(&g, &h);
        let cp = chromatic_number(&p, &caps()).unwrap();
        let cg = chromatic_number(&g, &caps()).unwrap();
        let ch = chromatic_number(&h, &caps()).unwrap();
        prop_assert!(cp <= cg.min(ch));
    }
}

fn trim(v: &[usize]) -> Vec<usize> {
    let end = v.iter().rposition(|&b| b > 0).map_or(0, |p| p + 1);
    v[..end].to_vec()
}

/// Brute-force multihomomorphism filter, independent of the pruned
/// enumeration: all nonempty-subset assignments checked against the
/// cross-edge condition.
mod multihom_oracle {
    use super::*;
    use homkit_core::hom::MultiHom;
    use homkit_core::BitSet;

    pub fn brute_force(g: &Graph, h: &Graph) -> Vec<MultiHom> {
        let gn = g.vertex_count();
        let hn = h.vertex_count();
        if gn == 0 {
            return vec![MultiHom::new(Vec::new()).unwrap()];
        }
        if hn == 0 {
            return Vec::new();
        }
        let subsets: Vec<BitSet> = (1..(1u32 << hn))
            .map(|mask| {
                let elems: Vec<usize> = (0..hn).filter(|v| mask >> v & 1 == 1).collect();
                BitSet::from_elements(hn, &elems)
            })
            .collect();
        let mut choice = vec![0usize; gn];
        let mut out = Vec::new();
        loop {
            let cand =
                MultiHom::new(choice.iter().map(|&i| subsets[i].clone()).collect()).unwrap();
            if cand.satisfies(g, h) {
                out.push(cand);
            }
            let mut i = gn;
            let mut done = true;
            while i > 0 {
                i -= 1;
                choice[i] += 1;
                if choice[i] < subsets.len() {
                    done = false;
                    break;
                }
                choice[i] = 0;
            }
            if done {
                break;
            }
        }
        out.sort();
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn pruned_enumeration_matches_brute_force(
            g in arb_graph(3),
            h in arb_graph(3),
        ) {
            prop_assume!(g.vertex_count() * h.vertex_count() <= 9);
            let fast = enumerate_hom(&g, &h, &caps()).unwrap();
            let slow = brute_force(&g, &h);
            prop_assert_eq!(fast.elements(), slow.as_slice());
        }
    }
}
