use horo_atoms::NodeId;
use horo_graph::{cone, Vid};
use horo_group::{allowed_offsets, DartMap, GroupElement};

use crate::frame::canonical_code;
use crate::{TypingContext, TypingError};

/// A group element carrying one tree atom onto another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub element: GroupElement,
    pub source: NodeId,
    pub target: NodeId,
    /// Number of levels below the atoms on which the member sets were
    /// compared.
    pub checked_depth: u32,
    /// Whether proximal sets, profiles and cones also match.
    pub geometric: bool,
    /// Target child slot of each source child slot; empty when either atom
    /// is a leaf of the computed tree.
    pub slot_map: Vec<usize>,
}

/// Canonical form of an atom's proximal set with its profile values and
/// truncated cones, minimized over frames at the nearest neighbors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomSignature(pub Vec<u32>);

pub fn atom_signature(ctx: &TypingContext, node: NodeId) -> Result<AtomSignature, TypingError> {
    let prox = &ctx.proximal[node];
    let profile = &ctx.atom(node).profile;
    let points: Vec<(Vid, u32)> = prox.proximal.iter().map(|&p| (p, profile.get(p))).collect();
    Ok(AtomSignature(canonical_code(
        ctx.graph,
        ctx.dist,
        &prox.nearest,
        &points,
        ctx.cone_depth,
    )?))
}

/// Checks the three conditions of geometric equivalence for `element`:
/// it maps the proximal set of `a` onto that of `b`, the profiles agree
/// there up to a constant, and cones at proximal points, truncated at
/// `depth`, are carried onto cones.
pub fn check_geometric_equivalence(
    ctx: &TypingContext,
    element: &GroupElement,
    a: NodeId,
    b: NodeId,
    depth: u32,
) -> Result<bool, TypingError> {
    let g = ctx.graph;
    let map = DartMap::new(
        g,
        (g.base(), 0),
        (element.base_image(), element.base_port()),
    )?;
    Ok(geometric(ctx, &map, a, b, depth))
}

fn geometric(ctx: &TypingContext, map: &DartMap, a: NodeId, b: NodeId, depth: u32) -> bool {
    let g = ctx.graph;
    let (pa, pb) = (&ctx.proximal[a].proximal, &ctx.proximal[b].proximal);
    if pa.len() != pb.len() {
        return false;
    }
    let Some(mut image) = pa.iter().map(|&p| map.get(p)).collect::<Option<Vec<Vid>>>() else {
        return false;
    };
    image.sort_unstable();
    if image != *pb {
        return false;
    }
    let (fa, fb) = (&ctx.atom(a).profile, &ctx.atom(b).profile);
    let shift = |p: Vid| fa.get(p) as i64 - fb.get(map.get(p).unwrap()) as i64;
    let s0 = shift(pa[0]);
    if pa.iter().any(|&p| shift(p) != s0) {
        return false;
    }
    let r = g.radius();
    for &p in pa {
        let q = map.get(p).unwrap();
        let k = depth.min(r - g.level(p)).min(r - g.level(q));
        let (Ok(cp), Ok(cq)) = (cone(g, p, k), cone(g, q, k)) else {
            return false;
        };
        let Some(mut moved) = cp.iter().map(|&v| map.get(v)).collect::<Option<Vec<Vid>>>() else {
            return false;
        };
        moved.sort_unstable();
        if moved != cq {
            return false;
        }
    }
    true
}

/// Compares member sets level by level down to `depth` and matches the
/// descendants of `a` with those of `b` wherever the tree has them.
/// Returns the number of levels checked and the child slot map.
fn morphism(
    ctx: &TypingContext,
    map: &DartMap,
    a: NodeId,
    b: NodeId,
    depth: u32,
) -> Option<(u32, Vec<usize>)> {
    let (g, tree) = (ctx.graph, ctx.tree);
    let (m, n) = (tree.level(a), tree.level(b));
    let k = depth.min(g.radius() - m.max(n));
    let (ma, mb) = (tree.members(a), tree.members(b));
    let upto =
        |members: &[Vid], lim: u32| members.partition_point(|&x| (x as usize) < g.ball_len(lim));
    let (ca, cb) = (upto(ma, m + k), upto(mb, n + k));
    if ca != cb {
        return None;
    }
    let atom_b = ctx.atom(b);
    for &x in &ma[..ca] {
        let y = map.get(x)?;
        if !atom_b.contains(y) || g.level(y) + m != g.level(x) + n {
            return None;
        }
    }
    let slots = match_children(ctx, map, a, b, m + k)?;
    Some((k, slots))
}

fn match_children(
    ctx: &TypingContext,
    map: &DartMap,
    a: NodeId,
    b: NodeId,
    limit: u32,
) -> Option<Vec<usize>> {
    let (g, tree) = (ctx.graph, ctx.tree);
    let (ka, kb) = (tree.children(a), tree.children(b));
    if ka.is_empty() || kb.is_empty() {
        return Some(Vec::new());
    }
    if ka.len() != kb.len() {
        return None;
    }
    let level_b = tree.level(b) + 1;
    let mut slots = Vec::with_capacity(ka.len());
    for &c in ka {
        let members = tree.members(c);
        let within = members.partition_point(|&x| (x as usize) < g.ball_len(limit));
        if within == 0 {
            // Nothing of this child is inside the compared range.
            return Some(Vec::new());
        }
        let target = tree.node_containing(level_b, map.get(members[0])?)?;
        if tree.parent(target) != Some(b) {
            return None;
        }
        for &x in &members[1..within] {
            if tree.node_containing(level_b, map.get(x)?) != Some(target) {
                return None;
            }
        }
        slots.push(tree.node(target).slot);
    }
    let mut seen = slots.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != slots.len() {
        return None;
    }
    for (i, &c) in ka.iter().enumerate() {
        match_children(ctx, map, c, kb[slots[i]], limit)?;
    }
    Some(slots)
}

fn candidates(ctx: &TypingContext, from: Vid, targets: &[Vid]) -> Vec<DartMap> {
    let g = ctx.graph;
    let offsets = allowed_offsets(g);
    let mut out = Vec::new();
    for &y in targets {
        for &o in &offsets {
            if let Ok(map) = DartMap::new(g, (from, 0), (y, o)) {
                out.push(map);
            }
        }
    }
    out
}

fn shallowest<'c>(ctx: &'c TypingContext, node: NodeId) -> &'c [Vid] {
    let atom = ctx.atom(node);
    atom.members_at(ctx.graph, atom.min_length(ctx.graph))
}

fn witness(
    ctx: &TypingContext,
    map: &DartMap,
    a: NodeId,
    b: NodeId,
    depth: u32,
    geometric: bool,
) -> Option<EquivalenceWitness> {
    let element = map.element(ctx.graph)?;
    let (checked_depth, slot_map) = morphism(ctx, map, a, b, depth)?;
    Some(EquivalenceWitness {
        element,
        source: a,
        target: b,
        checked_depth,
        geometric,
        slot_map,
    })
}

/// Searches for a group element inducing a morphism from `a` to `b`.
///
/// Frames at a nearest neighbor of `a` are first sent to frames at nearest
/// neighbors of `b`, accepting only geometric equivalences. Failing that,
/// the shallowest member of `a` is sent to each shallowest member of `b`
/// and only the member sets and the descendant atoms are compared, which
/// also finds morphisms between atoms of different levels whose proximal
/// sets differ in size.
pub fn find_morphism(
    ctx: &TypingContext,
    a: NodeId,
    b: NodeId,
    depth: u32,
) -> Option<EquivalenceWitness> {
    let (na, nb) = (&ctx.proximal[a].nearest, &ctx.proximal[b].nearest);
    if na.len() == nb.len() {
        for map in candidates(ctx, na[0], nb) {
            if geometric(ctx, &map, a, b, ctx.cone_depth) {
                if let Some(w) = witness(ctx, &map, a, b, depth, true) {
                    return Some(w);
                }
            }
        }
    }
    all_morphisms(ctx, a, b, depth).into_iter().next()
}

/// Every group element sending `a` onto `b` as far as the ball can tell.
pub fn all_morphisms(
    ctx: &TypingContext,
    a: NodeId,
    b: NodeId,
    depth: u32,
) -> Vec<EquivalenceWitness> {
    let (sa, sb) = (shallowest(ctx, a), shallowest(ctx, b));
    if sa.len() != sb.len() {
        return Vec::new();
    }
    let mut out: Vec<EquivalenceWitness> = Vec::new();
    for map in candidates(ctx, sa[0], sb) {
        if let Some(mut w) = witness(ctx, &map, a, b, depth, false) {
            w.geometric = geometric(ctx, &map, a, b, ctx.cone_depth);
            if !out.iter().any(|o| o.element == w.element) {
                out.push(w);
            }
        }
    }
    out
}
