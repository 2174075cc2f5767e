//! Raw generators for the built-in sources and the edge-list file format.
//!
//! Every generator produces a port table: for each vertex, its neighbors in
//! counterclockwise order (for planar sources) with `None` marking neighbors
//! that were not generated.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use crate::GraphError;

pub(crate) struct RawGraph {
    pub ports: Vec<Vec<Option<u32>>>,
    pub base: u32,
}

/// Grows a `{p,q}` tiling face by face until every vertex closer than
/// `radius` to the base has its full star.
pub(crate) fn tiling(p: usize, q: usize, radius: u32) -> Result<RawGraph, GraphError> {
    let mut b = TilingBuilder {
        p,
        q,
        ports: Vec::new(),
        done: Vec::new(),
        level: Vec::new(),
        queue: BinaryHeap::new(),
    };
    b.add_vertex(0);
    let mut processed = Vec::new();
    // Stars are completed in order of current distance from the base; a
    // vertex whose distance later drops is queued again.
    while let Some(Reverse((d, u))) = b.queue.pop() {
        if d >= radius {
            break;
        }
        processed.resize(b.level.len(), false);
        if processed[u as usize] || b.level[u as usize] != d {
            continue;
        }
        processed[u as usize] = true;
        b.complete_star(u)?;
    }
    Ok(RawGraph {
        ports: b.ports,
        base: 0,
    })
}

struct TilingBuilder {
    p: usize,
    q: usize,
    ports: Vec<Vec<Option<u32>>>,
    /// `done[v][i]`: the face in the corner between ports `i` and `i+1` exists.
    done: Vec<Vec<bool>>,
    level: Vec<u32>,
    queue: BinaryHeap<Reverse<(u32, u32)>>,
}

impl TilingBuilder {
    fn add_vertex(&mut self, level: u32) -> u32 {
        let v = self.ports.len() as u32;
        self.ports.push(vec![None; self.q]);
        self.done.push(vec![false; self.q]);
        self.level.push(level);
        self.queue.push(Reverse((level, v)));
        v
    }

    fn relax(&mut self, start: u32) {
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let next = self.level[u as usize] + 1;
            for w in self.ports[u as usize].clone().into_iter().flatten() {
                if self.level[w as usize] > next {
                    self.level[w as usize] = next;
                    self.queue.push(Reverse((next, w)));
                    stack.push(w);
                }
            }
        }
    }

    fn port_to(&self, v: u32, u: u32) -> Result<usize, GraphError> {
        self.ports[v as usize]
            .iter()
            .position(|&n| n == Some(u))
            .ok_or_else(|| GraphError::input("tiling construction lost an edge"))
    }

    fn link(&mut self, a: u32, pa: usize, b: u32, pb: usize) -> Result<(), GraphError> {
        if self.ports[a as usize][pa].is_some() || self.ports[b as usize][pb].is_some() {
            return Err(GraphError::input("tiling construction reused a port"));
        }
        self.ports[a as usize][pa] = Some(b);
        self.ports[b as usize][pb] = Some(a);
        self.relax(a);
        self.relax(b);
        Ok(())
    }

    fn complete_star(&mut self, u: u32) -> Result<(), GraphError> {
        let q = self.q;
        let done = &self.done[u as usize];
        let start = (0..q)
            .find(|&i| !done[i] && done[(i + q - 1) % q])
            .unwrap_or(0);
        for t in 0..q {
            let i = (start + t) % q;
            if !self.done[u as usize][i] {
                self.build_face(u, i)?;
            }
        }
        Ok(())
    }

    /// Builds the face in corner `(u, i)`, reusing every vertex reachable
    /// along already known face edges from either side.
    fn build_face(&mut self, u: u32, i: usize) -> Result<(), GraphError> {
        let (p, q) = (self.p, self.q);
        let bad = || GraphError::input("tiling construction produced an inconsistent face");
        let mut fwd = vec![(u, i)];
        loop {
            let (w, j) = *fwd.last().unwrap();
            let Some(x) = self.ports[w as usize][j] else {
                break;
            };
            let back = self.port_to(x, w)?;
            let corner = (x, (back + q - 1) % q);
            if x == u {
                if corner.1 != i || fwd.len() != p {
                    return Err(bad());
                }
                for (v, k) in fwd {
                    self.done[v as usize][k] = true;
                }
                return Ok(());
            }
            fwd.push(corner);
            if fwd.len() > p {
                return Err(bad());
            }
        }
        let mut bwd: Vec<(u32, usize)> = Vec::new();
        let (mut cv, mut cj) = (u, i);
        while let Some(w) = self.ports[cv as usize][(cj + 1) % q] {
            let j = self.port_to(w, cv)?;
            bwd.push((w, j));
            cv = w;
            cj = j;
            if fwd.len() + bwd.len() > p {
                return Err(bad());
            }
        }
        let known = fwd.len() + bwd.len();
        if known > p {
            return Err(bad());
        }
        let (x, jx) = *fwd.last().unwrap();
        let (y, jy) = bwd.last().copied().unwrap_or((u, i));
        let mut corners = fwd;
        corners.extend(bwd.iter().copied());
        let (mut prev, mut prev_port) = (x, jx);
        for _ in 0..p - known {
            let z = self.add_vertex(self.level[prev as usize] + 1);
            self.link(prev, prev_port, z, 0)?;
            corners.push((z, q - 1));
            prev = z;
            prev_port = q - 1;
        }
        self.link(prev, prev_port, y, (jy + 1) % q)?;
        for (v, k) in corners {
            self.done[v as usize][k] = true;
        }
        Ok(())
    }
}

/// Cayley tree of the free group: port `i < rank` multiplies by generator
/// `i`, port `rank + i` by its inverse.
pub(crate) fn free_tree(rank: usize, radius: u32) -> RawGraph {
    let deg = 2 * rank;
    let mut ports: Vec<Vec<Option<u32>>> = vec![vec![None; deg]];
    let mut frontier = vec![(0u32, None::<usize>)];
    for _ in 0..radius {
        let mut next = Vec::new();
        for (v, back) in frontier {
            for i in 0..deg {
                if Some(i) == back {
                    continue;
                }
                let c = ports.len() as u32;
                let inv = (i + rank) % deg;
                let mut cp = vec![None; deg];
                cp[inv] = Some(v);
                ports.push(cp);
                ports[v as usize][i] = Some(c);
                next.push((c, Some(inv)));
            }
        }
        frontier = next;
    }
    RawGraph { ports, base: 0 }
}

/// The integer line: port 0 steps right, port 1 steps left.
pub(crate) fn line(radius: u32) -> RawGraph {
    let r = radius as i64;
    let index = |x: i64| -> u32 {
        if x >= 0 {
            (2 * x) as u32
        } else {
            (2 * (-x) - 1) as u32
        }
    };
    let mut ports = vec![vec![None; 2]; (2 * r + 1) as usize];
    for x in -r..=r {
        let v = index(x) as usize;
        if x < r {
            ports[v][0] = Some(index(x + 1));
        }
        if x > -r {
            ports[v][1] = Some(index(x - 1));
        }
    }
    RawGraph { ports, base: 0 }
}

/// Parses the edge-list format. Ports are neighbors sorted by file id.
pub(crate) fn parse_edge_list(text: &str) -> Result<RawGraph, GraphError> {
    let mut base: Option<u64> = None;
    let mut adj: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<u64, GraphError> {
            s.parse()
                .map_err(|_| GraphError::input(format!("line {}: bad vertex id `{s}`", lineno + 1)))
        };
        match fields.as_slice() {
            ["base", id] => {
                if base.replace(num(id)?).is_some() {
                    return Err(GraphError::input(format!(
                        "line {}: repeated base",
                        lineno + 1
                    )));
                }
            }
            ["edge", a, b] => {
                let (a, b) = (num(a)?, num(b)?);
                if a == b {
                    return Err(GraphError::input(format!(
                        "line {}: self-loop at {a}",
                        lineno + 1
                    )));
                }
                if !adj.entry(a).or_default().insert(b) {
                    return Err(GraphError::input(format!(
                        "line {}: duplicate edge {a} {b}",
                        lineno + 1
                    )));
                }
                adj.entry(b).or_default().insert(a);
            }
            _ => {
                return Err(GraphError::input(format!(
                    "line {}: unrecognised `{line}`",
                    lineno + 1
                )))
            }
        }
    }
    let base = base.ok_or_else(|| GraphError::input("missing `base` header"))?;
    if !adj.contains_key(&base) {
        if !adj.is_empty() {
            return Err(GraphError::input(format!(
                "base vertex {base} has no edges"
            )));
        }
        adj.insert(base, BTreeSet::new());
    }
    let ids: Vec<u64> = adj.keys().copied().collect();
    let index = |id: u64| ids.binary_search(&id).unwrap() as u32;
    let ports = ids
        .iter()
        .map(|id| adj[id].iter().map(|&n| Some(index(n))).collect())
        .collect();
    Ok(RawGraph {
        ports,
        base: index(base),
    })
}
