use std::collections::{BTreeMap, HashMap};

use crate::{GraphError, LayeredGraph, Vid};

/// Canonical fingerprint of a truncated cone with its layer offsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConeSignature {
    pub depth: u32,
    pub code: Vec<u32>,
}

fn check_depth(g: &LayeredGraph, x: Vid, k: u32) -> Result<(), GraphError> {
    if !g.contains(x) {
        return Err(GraphError::UnknownVertex(x));
    }
    if g.level(x) + k > g.radius() {
        return Err(GraphError::Radius(format!(
            "cone of {x} to depth {k} leaves the ball of radius {}",
            g.radius()
        )));
    }
    Ok(())
}

/// Vertices `y` with `ℓ(y) = ℓ(x) + d(x,y)` and `d(x,y) ≤ k`, in id order.
///
/// These are exactly the vertices reachable from `x` by at most `k` steps
/// that each move one layer outward.
pub fn cone(g: &LayeredGraph, x: Vid, k: u32) -> Result<Vec<Vid>, GraphError> {
    check_depth(g, x, k)?;
    let mut out = vec![x];
    let mut frontier = vec![x];
    for _ in 0..k {
        let mut next: Vec<Vid> = frontier.iter().flat_map(|&u| g.successors(u)).collect();
        next.sort_unstable();
        next.dedup();
        out.extend_from_slice(&next);
        frontier = next;
    }
    out.sort_unstable();
    Ok(out)
}

/// Canonical signature of the cone of `x` truncated at depth `k`.
///
/// With a rotation system this is the least breadth-first encoding over all
/// starting ports at `x`, each later vertex listing its neighbors
/// counterclockwise from the edge it was discovered along. Without one it
/// falls back to colour refinement seeded by layer offsets.
pub fn cone_signature(g: &LayeredGraph, x: Vid, k: u32) -> Result<ConeSignature, GraphError> {
    let members = cone(g, x, k)?;
    let code = if g.has_rotation() {
        (0..g.degree(x).max(1))
            .map(|start| rotation_code(g, x, &members, start))
            .min()
            .unwrap_or_default()
    } else {
        refinement_code(g, x, &members)
    };
    Ok(ConeSignature { depth: k, code })
}

/// Breadth-first encoding of the truncated cone of `x`, listing each
/// vertex's neighbors counterclockwise from port `start` at `x` and from the
/// discovery edge elsewhere. Two cones related by an automorphism sending
/// the starting darts to each other have equal codes.
pub fn cone_code(g: &LayeredGraph, x: Vid, k: u32, start: usize) -> Result<Vec<u32>, GraphError> {
    let members = cone(g, x, k)?;
    Ok(rotation_code(g, x, &members, start % g.degree(x).max(1)))
}

fn rotation_code(g: &LayeredGraph, x: Vid, members: &[Vid], start: usize) -> Vec<u32> {
    let base = g.level(x);
    let inside = |v: Vid| members.binary_search(&v).is_ok();
    let mut label: HashMap<Vid, u32> = HashMap::with_capacity(members.len());
    let mut order = vec![(x, start)];
    label.insert(x, 0);
    let mut head = 0;
    while head < order.len() {
        let (u, entry) = order[head];
        head += 1;
        let deg = g.degree(u);
        for t in 0..deg {
            if let Some(w) = g.ports(u)[(entry + t) % deg] {
                if inside(w) && !label.contains_key(&w) {
                    label.insert(w, order.len() as u32);
                    order.push((w, g.port_to(w, u).unwrap()));
                }
            }
        }
    }
    let mut code = Vec::new();
    for &(u, entry) in &order {
        let deg = g.degree(u);
        code.push(g.level(u) - base);
        code.push(deg as u32);
        for t in 0..deg {
            let slot = g.ports(u)[(entry + t) % deg].filter(|&w| inside(w));
            code.push(slot.map_or(0, |w| label[&w] + 1));
        }
    }
    code
}

fn refinement_code(g: &LayeredGraph, x: Vid, members: &[Vid]) -> Vec<u32> {
    let base = g.level(x);
    let index: HashMap<Vid, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = members
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .filter_map(|w| index.get(&w).copied())
                .collect()
        })
        .collect();
    let mut colour: Vec<u32> = members
        .iter()
        .map(|&v| (g.level(v) - base) * 2 + u32::from(v == x))
        .collect();
    for _ in 0..members.len() {
        let keys: Vec<(u32, Vec<u32>)> = (0..members.len())
            .map(|i| {
                let mut nb: Vec<u32> = adj[i].iter().map(|&j| colour[j]).collect();
                nb.sort_unstable();
                (colour[i], nb)
            })
            .collect();
        let mut palette: BTreeMap<&(u32, Vec<u32>), u32> = keys.iter().map(|k| (k, 0)).collect();
        for (rank, c) in palette.values_mut().enumerate() {
            *c = rank as u32;
        }
        let refined: Vec<u32> = keys.iter().map(|k| palette[k]).collect();
        let stable = palette.len() == count_distinct(&colour);
        colour = refined;
        if stable {
            break;
        }
    }
    let mut code: Vec<u32> = colour.clone();
    code.sort_unstable();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (i, nb) in adj.iter().enumerate() {
        for &j in nb {
            let (a, b) = (colour[i], colour[j]);
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    code.push(u32::MAX);
    code.extend(edges.into_iter().flat_map(|(a, b)| [a, b]));
    code
}

fn count_distinct(v: &[u32]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

/// The truncated cone split by depth below `x`.
pub fn cone_layers(g: &LayeredGraph, x: Vid, k: u32) -> Result<Vec<Vec<Vid>>, GraphError> {
    let members = cone(g, x, k)?;
    let mut layers = vec![Vec::new(); k as usize + 1];
    for v in members {
        layers[(g.level(v) - g.level(x)) as usize].push(v);
    }
    Ok(layers)
}
