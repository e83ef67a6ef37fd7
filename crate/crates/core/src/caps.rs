//! Resource caps.
//!
//! Every enumeration in the crate is guarded by a cap so that a desk-scale
//! request stays desk scale. The defaults keep the full verification suite
//! comfortably inside its time budgets; all of them can be raised by callers
//! that know what they are doing.

/// Limits applied by the enumeration and complex-building operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Nodes explored by the homomorphism backtracking search.
    pub search_nodes: u64,
    /// Vertices of a categorical exponential graph.
    pub exp_vertices: u64,
    /// Elements of a multihomomorphism poset.
    pub hom_elements: u64,
    /// Total faces of a simplicial complex.
    pub faces: u64,
    /// Vertex count accepted by the isomorphism search.
    pub iso_vertices: u64,
    /// Vertex count accepted by the chromatic-number search.
    pub chi_vertices: u64,
    /// Vertex count accepted by the odd-cycle bound.
    pub odd_cycle_vertices: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            search_nodes: 10_000_000,
            exp_vertices: 100_000,
            hom_elements: 1_000_000,
            faces: 10_000_000,
            iso_vertices: 16,
            chi_vertices: 16,
            odd_cycle_vertices: 5,
        }
    }
}

impl Caps {
    /// Look up a cap by its field name. Used by the CLI override plumbing.
    pub fn set_by_name(&mut self, name: &str, value: u64) -> bool {
        match name {
            "search_nodes" => self.search_nodes = value,
            "exp_vertices" => self.exp_vertices = value,
            "hom_elements" => self.hom_elements = value,
            "faces" => self.faces = value,
            "iso_vertices" => self.iso_vertices = value,
            "chi_vertices" => self.chi_vertices = value,
            "odd_cycle_vertices" => self.odd_cycle_vertices = value,
            _ => return false,
        }
        true
    }

    pub const NAMES: &'static [&'static str] = &[
        "search_nodes",
        "exp_vertices",
        "hom_elements",
        "faces",
        "iso_vertices",
        "chi_vertices",
        "odd_cycle_vertices",
    ];
}
