use horo_graph::{Distances, LayeredGraph, Vid};

use crate::profile::bucket_profiles;
use crate::{AtomError, Profile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId {
    pub level: u32,
    pub index: u32,
}

/// Certified vertices sharing one profile on `B_level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub id: AtomId,
    pub profile: Profile,
    /// Sorted vertex ids.
    pub members: Vec<Vid>,
    pub infinite: bool,
}

impl Atom {
    pub fn contains(&self, x: Vid) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Members of length exactly `m`.
    pub fn members_at(&self, g: &LayeredGraph, m: u32) -> &[Vid] {
        let r = g.sphere(m);
        let lo = self.members.partition_point(|&x| x < r.start);
        let hi = self.members.partition_point(|&x| x < r.end);
        &self.members[lo..hi]
    }

    /// Length of the shortest member.
    pub fn min_length(&self, g: &LayeredGraph) -> u32 {
        g.level(self.members[0])
    }
}

/// All atoms at one level, ordered by smallest member, with a
/// vertex-to-atom lookup.
#[derive(Debug, Clone)]
pub struct LevelAtoms {
    pub level: u32,
    pub horizon: u32,
    pub atoms: Vec<Atom>,
    lookup: Vec<u32>,
}

impl LevelAtoms {
    /// Index of the atom containing `x`; `None` for uncertified vertices.
    pub fn atom_of(&self, x: Vid) -> Option<u32> {
        self.lookup
            .get(x as usize)
            .copied()
            .filter(|&a| a != u32::MAX)
    }

    pub fn infinite_count(&self) -> usize {
        self.atoms.iter().filter(|a| a.infinite).count()
    }

    /// Number of vertices assigned to some atom.
    pub fn certified_count(&self) -> usize {
        self.lookup.iter().filter(|&&a| a != u32::MAX).count()
    }
}

/// Partitions the certified vertices of the ball by their profile on
/// `B_n`. An atom is flagged infinite when it reaches `S_{n+H}`.
pub fn atoms_at_level(
    g: &LayeredGraph,
    dist: &Distances,
    n: u32,
    horizon: u32,
) -> Result<LevelAtoms, AtomError> {
    if n + horizon > g.radius() {
        return Err(AtomError::Radius(format!(
            "level {n} with horizon {horizon} needs radius {}, ball has {}",
            n + horizon,
            g.radius()
        )));
    }
    if g.ball_len(n) > dist.num_sources() {
        return Err(AtomError::Radius(format!(
            "distance table does not cover B_{n}"
        )));
    }
    let (profiles, bucket) = bucket_profiles(g, dist, n);
    let mut members: Vec<Vec<Vid>> = vec![Vec::new(); profiles.len()];
    for (x, &b) in bucket.iter().enumerate() {
        if b != u32::MAX {
            members[b as usize].push(x as Vid);
        }
    }
    // Buckets are numbered by first member, which is already id order.
    let deep = g.sphere(n + horizon);
    let atoms: Vec<Atom> = profiles
        .into_iter()
        .zip(members)
        .enumerate()
        .map(|(i, (profile, members))| {
            let infinite = members.iter().any(|x| deep.contains(x));
            Atom {
                id: AtomId {
                    level: n,
                    index: i as u32,
                },
                profile,
                members,
                infinite,
            }
        })
        .collect();
    Ok(LevelAtoms {
        level: n,
        horizon,
        atoms,
        lookup: bucket,
    })
}
