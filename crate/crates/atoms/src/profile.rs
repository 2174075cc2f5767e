use horo_graph::{Distances, LayeredGraph, Vid, UNCERTIFIED};
use rustc_hash::FxHashMap;

use crate::AtomError;

/// A distance function on `B_n` up to an additive constant, stored with
/// minimum 0. `values[s]` is the value at vertex id `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    pub level: u32,
    pub values: Vec<u8>,
}

impl Profile {
    fn normalized(level: u32, mut values: Vec<u8>) -> Self {
        if let Some(&min) = values.iter().min() {
            values.iter_mut().for_each(|v| *v -= min);
        }
        Profile { level, values }
    }

    /// Normalized restriction to `B_m`.
    pub fn restrict(&self, g: &LayeredGraph, m: u32) -> Profile {
        let m = m.min(self.level);
        Profile::normalized(m, self.values[..g.ball_len(m)].to_vec())
    }

    pub fn get(&self, s: Vid) -> u32 {
        self.values[s as usize] as u32
    }
}

/// Normalized restriction of `d(x, ·)` to `B_n`.
pub fn profile(g: &LayeredGraph, dist: &Distances, x: Vid, n: u32) -> Result<Profile, AtomError> {
    if !g.contains(x) {
        return Err(AtomError::Input(format!("vertex {x} is not in the ball")));
    }
    let len = g.ball_len(n);
    if len > dist.num_sources() {
        return Err(AtomError::Radius(format!(
            "distance table does not cover B_{n}"
        )));
    }
    let values = (0..len as Vid)
        .map(|s| {
            dist.get(s, x)
                .map(|d| d as u8)
                .ok_or_else(|| AtomError::Radius(format!("d({s},{x}) is not certified")))
        })
        .collect::<Result<Vec<u8>, _>>()?;
    Ok(Profile::normalized(n, values))
}

/// Profiles of every vertex at once, bucketed: returns the distinct
/// profiles in order of first appearance and the bucket of each vertex
/// (`u32::MAX` for uncertified vertices).
pub(crate) fn bucket_profiles(
    g: &LayeredGraph,
    dist: &Distances,
    n: u32,
) -> (Vec<Profile>, Vec<u32>) {
    let width = g.ball_len(n);
    let len = g.len();
    // Vertex-major copy of the relevant rows.
    let mut matrix = vec![0u8; width * len];
    for s in 0..width {
        let row = dist.row(s as Vid);
        for (x, &d) in row.iter().enumerate() {
            matrix[x * width + s] = d;
        }
    }
    let mut index: FxHashMap<Vec<u8>, u32> = FxHashMap::default();
    let mut profiles = Vec::new();
    let mut bucket = vec![u32::MAX; len];
    for x in 0..len {
        let row = &matrix[x * width..(x + 1) * width];
        if row.contains(&UNCERTIFIED) {
            continue;
        }
        let min = *row.iter().min().unwrap();
        let values: Vec<u8> = row.iter().map(|&v| v - min).collect();
        let next = profiles.len() as u32;
        let id = *index.entry(values.clone()).or_insert_with(|| {
            profiles.push(Profile { level: n, values });
            next
        });
        bucket[x] = id;
    }
    (profiles, bucket)
}
