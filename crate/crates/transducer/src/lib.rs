//! Asynchronous transducers on chains of atoms.
//!
//! A transducer reads a chain of child slots and writes another. The
//! transducer of a group element is synthesized from a tree of atoms and a
//! rigid structure; machines can be composed, compared on bounded depth,
//! minimized, moved onto a reduced type graph and rewritten over bits.

mod algebra;
mod binary;
mod error;
mod machine;
mod signature;
mod synth;

pub use algebra::{
    bounded_equivalent, check_nondegenerate, compose, forced_outputs, minimize, push_outputs,
};
pub use binary::{reduce_transducer, to_binary};
pub use error::TransducerError;
pub use machine::{
    binary_graph, export_transducer, parse_word, walk, word_text, AsyncTransducer, State,
    TransducerFormat, Transition,
};
pub use signature::{mapping_triple_signature, MappingTripleSignature};
pub use synth::{
    image_atom, image_chain, synthesize_action_transducer, verify_against_tree, SynthesisConfig,
};
