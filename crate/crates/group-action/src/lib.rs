//! Graph automorphisms acting on a finite ball.
//!
//! A [`GroupElement`] is an orientation-preserving automorphism of the
//! ambient graph, pinned down by where it sends the base dart. Its action on
//! any other vertex is found by transporting along the canonical geodesic.

mod element;
mod error;
mod word;

pub use element::{
    allowed_offsets, compose, equal_on_ball, inverse, stabilizer, ActionMap, DartMap, GroupElement,
};
pub use error::GroupError;
pub use word::{element_from_word, generators, parse_word, Generator};
