use std::collections::VecDeque;
use std::ops::Range;

use crate::build::{self, RawGraph};
use crate::{GraphError, GraphSource, SourceKind, Vid, MAX_RADIUS};

/// A finite ball `B_R` around the base vertex.
///
/// Vertex ids are assigned in order of (length, angular rank), so the sphere
/// `S_n` is the contiguous id range [`LayeredGraph::sphere`] and the ball
/// `B_n` is `0..ball_len(n)`. Ports list neighbors counterclockwise for the
/// planar sources; a `None` port is a neighbor lying outside the ball.
#[derive(Debug, Clone)]
pub struct LayeredGraph {
    radius: u32,
    kind: SourceKind,
    level: Vec<u32>,
    ports: Vec<Vec<Option<Vid>>>,
    layer_start: Vec<usize>,
    parent: Vec<Option<(Vid, u8)>>,
}

/// Builds the neighbor-complete ball of radius `radius` for `source`.
pub fn build_ball(source: &GraphSource, radius: u32) -> Result<LayeredGraph, GraphError> {
    check_radius(radius)?;
    let raw = match source {
        GraphSource::Tiling { p, q } => build::tiling(*p, *q, radius)?,
        GraphSource::Free { rank } => build::free_tree(*rank, radius),
        GraphSource::Line => build::line(radius),
        GraphSource::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| GraphError::Input(format!("{}: {e}", path.display())))?;
            build::parse_edge_list(&text)?
        }
    };
    Ok(LayeredGraph::from_raw(raw, radius, source.kind()))
}

/// Builds a ball from edge-list text (see [`GraphSource::File`]).
pub fn ball_from_edge_list(text: &str, radius: u32) -> Result<LayeredGraph, GraphError> {
    check_radius(radius)?;
    Ok(LayeredGraph::from_raw(
        build::parse_edge_list(text)?,
        radius,
        SourceKind::File,
    ))
}

fn check_radius(radius: u32) -> Result<(), GraphError> {
    if radius > MAX_RADIUS {
        return Err(GraphError::Radius(format!(
            "radius {radius} exceeds the supported maximum {MAX_RADIUS}"
        )));
    }
    Ok(())
}

impl LayeredGraph {
    fn from_raw(raw: RawGraph, radius: u32, kind: SourceKind) -> Self {
        let n = raw.ports.len();
        let mut level = vec![u32::MAX; n];
        let mut layers: Vec<Vec<u32>> = vec![vec![raw.base]];
        level[raw.base as usize] = 0;
        for d in 0..radius {
            let mut next = Vec::new();
            for &u in &layers[d as usize] {
                for &w in raw.ports[u as usize].iter().flatten() {
                    if level[w as usize] == u32::MAX {
                        level[w as usize] = d + 1;
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layers.push(next);
        }

        // Angular rank: lexicographically least sequence of ports, each
        // measured counterclockwise from the port leading back to the parent.
        let mut rank = vec![u32::MAX; n];
        let mut raw_parent: Vec<Option<(u32, u8)>> = vec![None; n];
        let mut back = vec![0usize; n];
        rank[raw.base as usize] = 0;
        for d in 1..layers.len() {
            let mut keyed: Vec<((u32, usize), u32)> = Vec::with_capacity(layers[d].len());
            for &x in &layers[d] {
                let mut best: Option<((u32, usize), u32, usize)> = None;
                for &u in raw.ports[x as usize].iter().flatten() {
                    if level[u as usize] != d as u32 - 1 {
                        continue;
                    }
                    let pu = raw.ports[u as usize]
                        .iter()
                        .position(|&t| t == Some(x))
                        .unwrap();
                    let deg = raw.ports[u as usize].len();
                    let rel = if u == raw.base {
                        pu
                    } else {
                        (pu + deg - back[u as usize]) % deg
                    };
                    let key = (rank[u as usize], rel);
                    if best.is_none_or(|(k, _, _)| key < k) {
                        best = Some((key, u, pu));
                    }
                }
                let (key, u, pu) = best.unwrap();
                raw_parent[x as usize] = Some((u, pu as u8));
                back[x as usize] = raw.ports[x as usize]
                    .iter()
                    .position(|&t| t == Some(u))
                    .unwrap();
                keyed.push((key, x));
            }
            keyed.sort_unstable();
            layers[d] = keyed.iter().map(|&(_, x)| x).collect();
            for (r, &x) in layers[d].iter().enumerate() {
                rank[x as usize] = r as u32;
            }
        }

        let mut new_id = vec![u32::MAX; n];
        let mut layer_start = vec![0usize];
        let mut next_id = 0u32;
        for layer in &layers {
            for &x in layer {
                new_id[x as usize] = next_id;
                next_id += 1;
            }
            layer_start.push(next_id as usize);
        }
        let total = next_id as usize;
        let mut new_level = vec![0u32; total];
        let mut ports = vec![Vec::new(); total];
        let mut parent = vec![None; total];
        for old in 0..n {
            let id = new_id[old];
            if id == u32::MAX {
                continue;
            }
            new_level[id as usize] = level[old];
            ports[id as usize] = raw.ports[old]
                .iter()
                .map(|t| {
                    t.and_then(|w| (new_id[w as usize] != u32::MAX).then(|| new_id[w as usize]))
                })
                .collect();
            parent[id as usize] = raw_parent[old].map(|(u, pu)| (new_id[u as usize], pu));
        }
        LayeredGraph {
            radius: (layers.len() - 1) as u32,
            kind,
            level: new_level,
            ports,
            layer_start,
            parent,
        }
        .with_requested_radius(radius)
    }

    fn with_requested_radius(mut self, radius: u32) -> Self {
        // A finite file graph may be exhausted before the requested radius.
        while self.layer_start.len() < radius as usize + 2 {
            let last = *self.layer_start.last().unwrap();
            self.layer_start.push(last);
        }
        self.radius = radius;
        self
    }

    pub fn base(&self) -> Vid {
        0
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn kind(&self) -> SourceKind {
        self.kind
    }

    /// True when ports form a genuine rotation system.
    pub fn has_rotation(&self) -> bool {
        self.kind != SourceKind::File
    }

    pub fn len(&self) -> usize {
        self.level.len()
    }

    pub fn is_empty(&self) -> bool {
        self.level.is_empty()
    }

    pub fn contains(&self, x: Vid) -> bool {
        (x as usize) < self.level.len()
    }

    /// Length `ℓ(x)`: the distance from the base vertex.
    pub fn level(&self, x: Vid) -> u32 {
        self.level[x as usize]
    }

    pub fn sphere(&self, n: u32) -> Range<Vid> {
        let n = n.min(self.radius) as usize;
        self.layer_start[n] as Vid..self.layer_start[n + 1] as Vid
    }

    pub fn sphere_len(&self, n: u32) -> usize {
        self.sphere(n).len()
    }

    /// Number of vertices in `B_n`; they are exactly ids `0..ball_len(n)`.
    pub fn ball_len(&self, n: u32) -> usize {
        self.layer_start[n.min(self.radius) as usize + 1]
    }

    /// Position of `x` in the counterclockwise order of its sphere.
    pub fn angular_rank(&self, x: Vid) -> u32 {
        x - self.layer_start[self.level(x) as usize] as Vid
    }

    pub fn ports(&self, x: Vid) -> &[Option<Vid>] {
        &self.ports[x as usize]
    }

    pub fn degree(&self, x: Vid) -> usize {
        self.ports[x as usize].len()
    }

    pub fn neighbors(&self, x: Vid) -> impl Iterator<Item = Vid> + '_ {
        self.ports[x as usize].iter().flatten().copied()
    }

    /// The port of `x` leading to `y`, if they are adjacent.
    pub fn port_to(&self, x: Vid, y: Vid) -> Option<usize> {
        self.ports[x as usize].iter().position(|&t| t == Some(y))
    }

    pub fn is_rim(&self, x: Vid) -> bool {
        self.level(x) == self.radius
    }

    /// Whether every neighbor of `x` in the ambient graph is present.
    pub fn is_complete(&self, x: Vid) -> bool {
        self.ports[x as usize].iter().all(Option::is_some)
    }

    /// Parent on the canonical geodesic to the base, with the parent's port.
    pub fn geodesic_parent(&self, x: Vid) -> Option<(Vid, usize)> {
        self.parent[x as usize].map(|(u, p)| (u, p as usize))
    }

    /// Canonical geodesic from the base to `x`, as the list of ports taken.
    pub fn geodesic_ports(&self, x: Vid) -> Vec<(Vid, usize)> {
        let mut path = Vec::with_capacity(self.level(x) as usize);
        let mut cur = x;
        while let Some((u, p)) = self.geodesic_parent(cur) {
            path.push((u, p));
            cur = u;
        }
        path.reverse();
        path
    }

    /// Neighbors one layer further out.
    pub fn successors(&self, x: Vid) -> impl Iterator<Item = Vid> + '_ {
        let l = self.level(x);
        self.neighbors(x).filter(move |&y| self.level(y) == l + 1)
    }

    /// Neighbors one layer closer to the base.
    pub fn predecessors(&self, x: Vid) -> impl Iterator<Item = Vid> + '_ {
        let l = self.level(x);
        self.neighbors(x).filter(move |&y| self.level(y) + 1 == l)
    }

    /// Breadth-first distances from `x` inside the ball; `u32::MAX` where
    /// unreachable. Vertices at length `> stop_level` are reached but not
    /// expanded.
    pub fn bfs(&self, x: Vid, stop_level: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        let mut queue = VecDeque::from([x]);
        dist[x as usize] = 0;
        while let Some(u) = queue.pop_front() {
            if u != x && self.level(u) > stop_level {
                continue;
            }
            let du = dist[u as usize];
            for w in self.neighbors(u) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Checks the layer and completeness invariants; returns a description
    /// of the first violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.level.first() != Some(&0) {
            return Err("base vertex does not have length 0".into());
        }
        for x in 0..self.len() as Vid {
            let l = self.level(x);
            for y in self.neighbors(x) {
                if self.level(y).abs_diff(l) > 1 {
                    return Err(format!("edge {x}-{y} jumps layers"));
                }
                if self.port_to(y, x).is_none() {
                    return Err(format!("edge {x}-{y} is not symmetric"));
                }
            }
            if l > 0 && self.predecessors(x).next().is_none() {
                return Err(format!("vertex {x} has no predecessor"));
            }
            if l < self.radius && !self.is_complete(x) && self.kind != SourceKind::File {
                return Err(format!("vertex {x} below the rim is missing neighbors"));
            }
        }
        Ok(())
    }

    /// For planar sources, checks that every corner of every vertex at
    /// length `≤ max_level` bounds a face with `p` sides.
    pub fn check_faces(&self, p: usize, max_level: u32) -> Result<(), String> {
        for u in 0..self.ball_len(max_level) as Vid {
            let q = self.degree(u);
            for i in 0..q {
                let (mut w, mut j) = (u, i);
                let mut steps = 0;
                loop {
                    let x = self.ports(w)[j]
                        .ok_or_else(|| format!("corner ({u},{i}) leaves the ball"))?;
                    let back = self.port_to(x, w).unwrap();
                    steps += 1;
                    w = x;
                    j = (back + self.degree(x) - 1) % self.degree(x);
                    if w == u || steps > p {
                        break;
                    }
                }
                if w != u || steps != p || j != i {
                    return Err(format!("corner ({u},{i}) bounds a face with {steps} sides"));
                }
            }
        }
        Ok(())
    }
}
