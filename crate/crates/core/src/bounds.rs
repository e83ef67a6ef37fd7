//! Chromatic number and its topological lower bounds.
//!
//! The bounds evaluate the connectivity of the order complex of a
//! multihomomorphism poset with a small test graph in the first slot: an
//! edge gives `conn + 3`, an odd cycle gives `conn + 4`. Connectivity here
//! is the homological GF(2) estimate from the topology module, which can in
//! principle overstate the homotopical value; every report carries that
//! label. On the test corpus (spheres, circles, tori) the estimate is
//! exact.

use alloc::string::String;
use alloc::vec::Vec;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{categorical_product, homomorphism_exists, Graph};
use crate::hom::enumerate_hom;
use crate::topology::{
    betti_gf2, connectivity_from_betti, kunneth_reduced, order_complex, BettiVector, Connectivity,
};

/// Exact chromatic number by iterative deepening over homomorphisms into
/// complete graphs. Loopless graphs only; guarded by `caps.chi_vertices`.
pub fn chromatic_number(g: &Graph, caps: &Caps) -> Result<usize> {
    if let Some(v) = g.vertices().find(|&v| g.is_looped(v)) {
        return Err(Error::domain(alloc::format!(
            "chromatic number undefined: vertex {v} has a loop"
        )));
    }
    if g.vertex_count() as u64 > caps.chi_vertices {
        return Err(Error::resource("chromatic vertex count", caps.chi_vertices));
    }
    if g.vertex_count() == 0 {
        return Ok(0);
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    for k in 2..=g.vertex_count() {
        let kk = Graph::complete(k).expect("k >= 2");
        if homomorphism_exists(g, &kk, caps)? {
            return Ok(k);
        }
    }
    unreachable!("a loopless graph maps into the complete graph on its vertices")
}

/// One evaluated lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEntry {
    /// Homological connectivity estimate (GF(2)) of the relevant complex.
    pub connectivity: Connectivity,
    /// The bound value: connectivity plus the offset of the theorem.
    pub bound: i64,
    /// True when the connectivity is only known to be at least its value,
    /// so the bound is open ended too.
    pub open_ended: bool,
}

fn entry_from_connectivity(conn: Connectivity, offset: i64) -> BoundEntry {
    BoundEntry {
        connectivity: conn,
        bound: conn.lower_bound() + offset,
        open_ended: conn.is_open_ended(),
    }
}

/// `conn(Hom(K_2, G)) + 3 <= χ(G)`.
pub fn lovasz_bound(g: &Graph, caps: &Caps) -> Result<BoundEntry> {
    let edge = Graph::complete(2).expect("two vertices");
    let poset = enumerate_hom(&edge, g, caps)?;
    let complex = order_complex(&poset, caps)?;
    let conn = crate::topology::connectivity_estimate(&complex);
    Ok(entry_from_connectivity(conn, 3))
}

/// `conn(Hom(C_{2r+1}, G)) + 4 <= χ(G)`. The poset grows quickly, so the
/// input is guarded by `caps.odd_cycle_vertices`.
pub fn odd_cycle_bound(g: &Graph, r: usize, caps: &Caps) -> Result<BoundEntry> {
    if r < 1 {
        return Err(Error::domain("odd cycle bound needs r >= 1"));
    }
    if g.vertex_count() as u64 > caps.odd_cycle_vertices {
        return Err(Error::resource(
            "odd cycle bound vertex count",
            caps.odd_cycle_vertices,
        ));
    }
    let cycle = Graph::cycle(2 * r + 1).expect("length >= 3");
    let poset = enumerate_hom(&cycle, g, caps)?;
    let complex = order_complex(&poset, caps)?;
    let conn = crate::topology::connectivity_estimate(&complex);
    Ok(entry_from_connectivity(conn, 4))
}

/// The bound report the CLI prints: whichever of the quantities were
/// requested, with tightness derived when the chromatic number is known.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub name: Option<String>,
    pub chi: Option<usize>,
    pub lovasz: Option<BoundEntry>,
    /// `(r, entry)` per requested odd-cycle length.
    pub odd_cycle: Vec<(usize, BoundEntry)>,
}

impl BoundReport {
    pub fn lovasz_tight(&self) -> Option<bool> {
        match (&self.chi, &self.lovasz) {
            (Some(chi), Some(entry)) => Some(entry.bound == *chi as i64),
            _ => None,
        }
    }
}

pub fn bound_report(
    g: &Graph,
    want_chi: bool,
    want_lovasz: bool,
    odd_cycle_rs: &[usize],
    caps: &Caps,
) -> Result<BoundReport> {
    let chi = if want_chi {
        Some(chromatic_number(g, caps)?)
    } else {
        None
    };
    let lovasz = if want_lovasz {
        Some(lovasz_bound(g, caps)?)
    } else {
        None
    };
    let odd_cycle = odd_cycle_rs
        .iter()
        .map(|&r| odd_cycle_bound(g, r, caps).map(|e| (r, e)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundReport {
        name: g.name().map(String::from),
        chi,
        lovasz,
        odd_cycle,
    })
}

/// Everything the product comparison computes: chromatic numbers of the
/// factors and the product, the edge-test bounds of all three, and the
/// comparison of the product complex against the convolution of the factor
/// homology.
#[derive(Clone, Debug)]
pub struct HedetniemiProbe {
    pub chi_left: usize,
    pub chi_right: usize,
    pub chi_product: usize,
    /// Whether `χ(G x H)` equals `min(χ(G), χ(H))`.
    pub chi_matches_min: bool,
    pub lovasz_left: BoundEntry,
    pub lovasz_right: BoundEntry,
    pub lovasz_product: BoundEntry,
    pub betti_left: BettiVector,
    pub betti_right: BettiVector,
    pub betti_product: BettiVector,
    /// Convolution of the factors' reduced Betti vectors.
    pub kunneth_expected: Vec<usize>,
    pub kunneth_matches: bool,
    /// Whether the product connectivity equals the minimum of the factor
    /// connectivities (by guaranteed lower bound).
    pub connectivity_matches_min: bool,
}

pub fn hedetniemi_probe(g: &Graph, h: &Graph, caps: &Caps) -> Result<HedetniemiProbe> {
    let (product, _, _) = categorical_product(g, h);
    let chi_left = chromatic_number(g, caps)?;
    let chi_right = chromatic_number(h, caps)?;
    let chi_product = chromatic_number(&product, caps)?;

    let edge = Graph::complete(2).expect("two vertices");
    let betti_of = |target: &Graph| -> Result<(BettiVector, Connectivity)> {
        let poset = enumerate_hom(&edge, target, caps)?;
        let complex = order_complex(&poset, caps)?;
        let betti = betti_gf2(&complex);
        let conn = match complex.dim() {
            None => Connectivity::Empty,
            Some(dim) => connectivity_from_betti(&betti, dim),
        };
        Ok((betti, conn))
    };
    let (betti_left, conn_left) = betti_of(g)?;
    let (betti_right, conn_right) = betti_of(h)?;
    let (betti_product, conn_product) = betti_of(&product)?;

    let kunneth_expected = kunneth_reduced(&betti_left.reduced, &betti_right.reduced);
    // The product complex may carry extra dimensions with vanishing
    // homology, so compare up to trailing zeros.
    let trim = |v: &[usize]| {
        let end = v.iter().rposition(|&b| b > 0).map_or(0, |p| p + 1);
        v[..end].to_vec()
    };
    let kunneth_matches = trim(&kunneth_expected) == trim(&betti_product.reduced);
    let connectivity_matches_min =
        conn_product.lower_bound() == conn_left.lower_bound().min(conn_right.lower_bound());

    Ok(HedetniemiProbe {
        chi_left,
        chi_right,
        chi_product,
        chi_matches_min: chi_product == chi_left.min(chi_right),
        lovasz_left: entry_from_connectivity(conn_left, 3),
        lovasz_right: entry_from_connectivity(conn_right, 3),
        lovasz_product: entry_from_connectivity(conn_product, 3),
        betti_left,
        betti_right,
        betti_product,
        kunneth_expected,
        kunneth_matches,
        connectivity_matches_min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn chromatic_numbers_of_standard_graphs() {
        let c = caps();
        for n in 2..=5 {
            assert_eq!(chromatic_number(&k(n), &c).unwrap(), n);
        }
        assert_eq!(chromatic_number(&Graph::cycle(5).unwrap(), &c).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::cycle(4).unwrap(), &c).unwrap(), 2);
        assert_eq!(chromatic_number(&Graph::petersen(), &c).unwrap(), 3);
        let (split, _, _) = crate::graph::coproduct(&k(2), &k(3));
        assert_eq!(chromatic_number(&split, &c).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::empty(), &c).unwrap(), 0);
        assert_eq!(chromatic_number(&Graph::new(3, &[]).unwrap(), &c).unwrap(), 1);
    }

    #[test]
    fn chromatic_number_rejects_loops_and_large_inputs() {
        let c = caps();
        assert!(chromatic_number(&Graph::one(), &c).is_err());
        let tight = Caps {
            chi_vertices: 3,
            ..Caps::default()
        };
        assert!(chromatic_number(&k(4), &tight).unwrap_err().is_resource());
    }

    #[test]
    fn edge_bound_is_tight_on_small_complete_graphs_and_the_5_cycle() {
        let c = caps();
        for n in 3..=4 {
            let entry = lovasz_bound(&k(n), &c).unwrap();
            assert_eq!(entry.bound, n as i64);
            assert!(!entry.open_ended);
        }
        let entry = lovasz_bound(&Graph::cycle(5).unwrap(), &c).unwrap();
        assert_eq!(entry.bound, 3);
        // K2: two incomparable points, disconnected, bound 2 = chi.
        let entry = lovasz_bound(&k(2), &c).unwrap();
        assert_eq!(entry.connectivity, Connectivity::Disconnected);
        assert_eq!(entry.bound, 2);
    }

    #[test]
    fn odd_cycle_bound_values() {
        let c = caps();
        // No odd-cycle maps into an edge: empty complex, bound -2 + 4 = 2.
        let entry = odd_cycle_bound(&k(2), 2, &c).unwrap();
        assert_eq!(entry.connectivity, Connectivity::Empty);
        assert_eq!(entry.bound, 2);

        let chi3 = chromatic_number(&k(3), &c).unwrap() as i64;
        let entry = odd_cycle_bound(&k(3), 2, &c).unwrap();
        assert!(entry.bound <= chi3);

        let c5 = Graph::cycle(5).unwrap();
        let entry = odd_cycle_bound(&c5, 2, &c).unwrap();
        assert!(entry.bound <= 3);

        // r = 1 is the triangle: Hom(K3, K3) is six isolated atoms.
        let entry = odd_cycle_bound(&k(3), 1, &c).unwrap();
        assert_eq!(entry.connectivity, Connectivity::Disconnected);
        assert_eq!(entry.bound, 3);

        // The vertex-count guard.
        assert!(odd_cycle_bound(&Graph::cycle(7).unwrap(), 2, &c)
            .unwrap_err()
            .is_resource());
        assert!(odd_cycle_bound(&k(3), 0, &c).is_err());
    }

    #[test]
    fn bound_report_assembly() {
        let c = caps();
        let report = bound_report(&k(3), true, true, &[1], &c).unwrap();
        assert_eq!(report.chi, Some(3));
        assert_eq!(report.lovasz.as_ref().unwrap().bound, 3);
        assert_eq!(report.lovasz_tight(), Some(true));
        assert_eq!(report.odd_cycle.len(), 1);
    }

    #[test]
    fn product_probe_on_two_triangles_sees_a_torus() {
        let c = caps();
        let probe = hedetniemi_probe(&k(3), &k(3), &c).unwrap();
        assert_eq!(probe.chi_product, 3);
        assert!(probe.chi_matches_min);
        assert_eq!(&probe.betti_product.reduced[..3], &[0, 2, 1]);
        assert!(probe.betti_product.reduced[3..].iter().all(|&b| b == 0));
        assert_eq!(probe.kunneth_expected, vec![0, 2, 1]);
        assert!(probe.kunneth_matches);
        assert!(probe.connectivity_matches_min);
        assert_eq!(probe.lovasz_product.bound, 3);
    }

    #[test]
    fn product_probe_with_an_edge_factor_is_bipartite() {
        let c = caps();
        let probe = hedetniemi_probe(&k(2), &k(3), &c).unwrap();
        assert_eq!(probe.chi_product, 2);
        assert!(probe.chi_matches_min);
        assert!(probe.kunneth_matches);
    }
}
