//! Self-similar structure on a tree of atoms.
//!
//! A rigid structure marks every atom with a group element carrying it
//! onto the representative of its type. Type graphs are brought into a
//! branching form by expanding single-chain types into a binary type and
//! fusing single-slot types, after which a complete binary prefix code
//! turns chains of atoms into binary addresses.

mod code;
mod error;
mod reduce;
mod rigid;

pub use code::{binary_address, canonical_code, complete_code, kraft_sum, PrefixCode};
pub use error::SelfSimilarError;
pub use reduce::{expand, is_branching, isolated_types, reduce, simplify, Reduction};
pub use rigid::{build_rigid_structure, RigidStructure};
