use horo_atoms::{Atom, AtomTree, NodeId};
use horo_graph::{Distances, LayeredGraph};
use horo_proximal::{proximal_tree, ProximalData};

use crate::TypingError;

/// Everything the morphism search needs about one tree of atoms.
pub struct TypingContext<'a> {
    pub graph: &'a LayeredGraph,
    pub dist: &'a Distances,
    pub tree: &'a AtomTree,
    /// Proximal data indexed by tree node.
    pub proximal: Vec<ProximalData>,
    /// Depth at which cones are truncated in signatures and equivalence checks.
    pub cone_depth: u32,
}

impl<'a> TypingContext<'a> {
    pub fn new(
        graph: &'a LayeredGraph,
        dist: &'a Distances,
        tree: &'a AtomTree,
        delta: u32,
        cone_depth: u32,
    ) -> Result<Self, TypingError> {
        if !graph.has_rotation() {
            return Err(TypingError::Input(
                "typing needs a source with a rotation system".into(),
            ));
        }
        let proximal = proximal_tree(graph, dist, tree, delta)?;
        Ok(TypingContext {
            graph,
            dist,
            tree,
            proximal,
            cone_depth,
        })
    }

    pub fn atom(&self, id: NodeId) -> &Atom {
        self.tree.atom(id)
    }
}
