//! Finite balls of locally finite hyperbolic graphs.
//!
//! A [`LayeredGraph`] is the ball of radius `R` around a base vertex, with
//! vertices grouped into spheres by their distance from the base. Built-in
//! sources are regular hyperbolic tilings, free-group Cayley trees and the
//! integer line; arbitrary graphs can be read from an edge list.

mod build;
mod cone;
mod delta;
mod distance;
mod error;
mod layered;
mod source;

pub use cone::{cone, cone_code, cone_layers, cone_signature, ConeSignature};
pub use delta::estimate_delta;
pub use distance::{distance, Distance, Distances, UNCERTIFIED};
pub use error::GraphError;
pub use layered::{ball_from_edge_list, build_ball, LayeredGraph};
pub use source::{GraphSource, SourceKind};

/// Vertex id inside a [`LayeredGraph`].
pub type Vid = u32;

/// Largest radius whose distances fit the compact distance tables.
pub const MAX_RADIUS: u32 = 120;
