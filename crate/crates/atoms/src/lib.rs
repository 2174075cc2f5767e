//! Atoms of finite balls and the tree they form.
//!
//! Two vertices lie in the same atom at level `n` when their distance
//! functions agree on `B_n` up to a constant. Infinite atoms at successive
//! levels nest, giving a rooted tree whose ends are horofunction classes.

mod atom;
mod error;
mod profile;
mod tree;

pub use atom::{atoms_at_level, Atom, AtomId, LevelAtoms};
pub use error::AtomError;
pub use profile::{profile, Profile};
pub use tree::{build_atom_tree, AtomTree, NodeId, TreeNode};
