//! Morphisms between atoms and their classification into types.
//!
//! A group element induces a morphism between two atoms when it carries the
//! members of one onto the members of the other level by level, child atoms
//! included. Atoms linked by morphisms share a type; the finitely many
//! types and the types of their children form the type graph.

mod classify;
mod context;
mod error;
mod frame;
mod graph;
mod morphism;

pub use classify::{classify_types, Classification};
pub use context::TypingContext;
pub use error::TypingError;
pub use frame::canonical_code as orbit_code;
pub use graph::{export_type_graph, type_name, GraphFormat, TypeEntry, TypeGraph};
pub use morphism::{
    all_morphisms, atom_signature, check_geometric_equivalence, find_morphism, AtomSignature,
    EquivalenceWitness,
};
