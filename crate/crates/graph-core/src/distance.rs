use rayon::prelude::*;

use crate::{GraphError, LayeredGraph, SourceKind, Vid};

/// Marker for a distance the margin rule could not certify.
pub const UNCERTIFIED: u8 = u8::MAX;

/// A graph distance together with its certification status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Distance {
    pub value: u32,
    pub certified: bool,
}

/// Certified distances from every vertex of `B_n` to every vertex of the ball.
///
/// A distance is certified when no path leaving the ball can be shorter:
/// such a path needs at least `exit(x) + 2 + exit(y)` steps, where `exit`
/// is the in-ball distance to the nearest vertex with missing neighbors.
/// For the built-in sources a distance is also accepted when the
/// breadth-first search that refuses to pass through incomplete vertices
/// finds the same value.
#[derive(Debug, Clone)]
pub struct Distances {
    sources: usize,
    len: usize,
    table: Vec<u8>,
}

impl Distances {
    /// Distances from all of `B_n`.
    pub fn new(g: &LayeredGraph, n: u32) -> Self {
        let sources = g.ball_len(n);
        let len = g.len();
        let mut table = vec![UNCERTIFIED; sources * len];
        let exit = exit_distances(g);
        table.par_chunks_mut(len).enumerate().for_each_init(
            || (vec![UNCERTIFIED; len], Vec::with_capacity(len)),
            |(scratch, queue), (src, row)| {
                certified_row(g, &exit, src as Vid, row, scratch, queue);
            },
        );
        Distances {
            sources,
            len,
            table,
        }
    }

    /// Number of source vertices; sources are ids `0..num_sources()`.
    pub fn num_sources(&self) -> usize {
        self.sources
    }

    /// Certified distance between `a` and `b`, provided one is a source.
    pub fn get(&self, a: Vid, b: Vid) -> Option<u32> {
        let (s, t) = if (a as usize) < self.sources {
            (a, b)
        } else {
            (b, a)
        };
        if (s as usize) >= self.sources || (t as usize) >= self.len {
            return None;
        }
        match self.table[s as usize * self.len + t as usize] {
            UNCERTIFIED => None,
            d => Some(d as u32),
        }
    }

    /// Raw row for a source: distance to every vertex, `UNCERTIFIED` where
    /// not certified.
    pub fn row(&self, src: Vid) -> &[u8] {
        let s = src as usize * self.len;
        &self.table[s..s + self.len]
    }
}

fn bfs_into(
    g: &LayeredGraph,
    src: Vid,
    through_incomplete: bool,
    out: &mut [u8],
    queue: &mut Vec<Vid>,
) {
    out.fill(UNCERTIFIED);
    queue.clear();
    out[src as usize] = 0;
    queue.push(src);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        if u != src && !through_incomplete && !g.is_complete(u) {
            continue;
        }
        let du = out[u as usize];
        for w in g.neighbors(u) {
            if out[w as usize] == UNCERTIFIED {
                out[w as usize] = du + 1;
                queue.push(w);
            }
        }
    }
}

/// In-ball distance from every vertex to the nearest incomplete vertex;
/// `u32::MAX` when the ball has none (a finite graph read whole).
fn exit_distances(g: &LayeredGraph) -> Vec<u32> {
    let mut exit = vec![u32::MAX; g.len()];
    let mut queue: Vec<Vid> = (0..g.len() as Vid).filter(|&x| !g.is_complete(x)).collect();
    for &x in &queue {
        exit[x as usize] = 0;
    }
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for w in g.neighbors(u) {
            if exit[w as usize] == u32::MAX {
                exit[w as usize] = exit[u as usize] + 1;
                queue.push(w);
            }
        }
    }
    exit
}

fn certified_row(
    g: &LayeredGraph,
    exit: &[u32],
    src: Vid,
    row: &mut [u8],
    scratch: &mut [u8],
    queue: &mut Vec<Vid>,
) {
    bfs_into(g, src, true, row, queue);
    let margin = g.kind() != SourceKind::File;
    if margin {
        bfs_into(g, src, false, scratch, queue);
    }
    let from_src = exit[src as usize] as u64;
    for (x, d) in row.iter_mut().enumerate() {
        if *d == UNCERTIFIED {
            continue;
        }
        let sound = (*d as u64) <= from_src + 2 + exit[x] as u64;
        if !sound && !(margin && scratch[x] == *d) {
            *d = UNCERTIFIED;
        }
    }
}

/// Distance between two arbitrary ball vertices, flagged when uncertified.
pub fn distance(g: &LayeredGraph, x: Vid, y: Vid) -> Result<Distance, GraphError> {
    for v in [x, y] {
        if !g.contains(v) {
            return Err(GraphError::UnknownVertex(v));
        }
    }
    let mut row = vec![UNCERTIFIED; g.len()];
    let mut scratch = vec![UNCERTIFIED; g.len()];
    let mut queue = Vec::new();
    bfs_into(g, x, true, &mut row, &mut queue);
    let value = row[y as usize];
    if value == UNCERTIFIED {
        return Err(GraphError::radius(format!(
            "{x} and {y} are not connected inside the ball"
        )));
    }
    certified_row(g, &exit_distances(g), x, &mut row, &mut scratch, &mut queue);
    Ok(Distance {
        value: value as u32,
        certified: row[y as usize] != UNCERTIFIED,
    })
}
