//! Nearest neighbors, visible points and proximal sets.
//!
//! For a far vertex `x` and the ball `B_n`, the nearest neighbors `N` are
//! the closest points of the ball, the visible set `V` are the points that
//! some geodesic from `x` reaches without first passing another ball point,
//! and the proximal set `P ⊆ S_n` is an inductively computed superset of
//! `V` of bounded diameter. Distances on `P` alone decide atom membership.

mod sets;

pub use sets::{
    check_monotonicity, membership_test, nearest_neighbors, proximal_of_vertex, proximal_set,
    proximal_tree, visible, ProximalData, ProximalError,
};
