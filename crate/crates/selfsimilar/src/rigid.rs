use horo_atoms::NodeId;
use horo_group::{compose, inverse, DartMap, GroupElement};
use horo_typing::{find_morphism, Classification, TypingContext};

use crate::SelfSimilarError;

/// One chosen morphism from every node onto the representative of its
/// type, as group elements.
#[derive(Debug, Clone)]
pub struct RigidStructure {
    pub representatives: Vec<NodeId>,
    /// `markings[v]` carries node `v` onto the representative of its type.
    pub markings: Vec<GroupElement>,
    pub checked_depth: u32,
}

/// Builds markings top down: the root is marked by the identity, and a
/// child `c` of `v` is marked by `τ_b ∘ ψ_v`, where `b = ψ_v(c)` is a child
/// of a representative and `τ_b` is a chosen morphism from `b` onto the
/// representative of its type. Every marking is then checked to carry its
/// node onto the representative, slot order included.
pub fn build_rigid_structure(
    ctx: &TypingContext,
    types: &Classification,
    depth: u32,
) -> Result<RigidStructure, SelfSimilarError> {
    let (g, tree) = (ctx.graph, ctx.tree);
    let reps = types.representatives.clone();
    let mut tau: Vec<Option<GroupElement>> = vec![None; tree.len()];
    for &r in &reps {
        for &b in tree.children(r) {
            if tau[b].is_some() {
                continue;
            }
            let target = reps[types.type_of(b)];
            let w = find_morphism(ctx, b, target, depth).ok_or_else(|| {
                SelfSimilarError::Incomplete(format!(
                    "no morphism from node {b} onto representative {target}"
                ))
            })?;
            tau[b] = Some(w.element);
        }
    }
    let mut markings = vec![GroupElement::IDENTITY; tree.len()];
    for v in 0..tree.len() {
        let Some(p) = tree.parent(v) else { continue };
        let rp = reps[types.type_of(p)];
        let b = tree.children(rp)[tree.node(v).slot];
        let t = tau[b]
            .ok_or_else(|| SelfSimilarError::Incomplete(format!("no marking for node {b}")))?;
        markings[v] = compose(g, &t, &markings[p])?;
    }
    let mut checked_depth = depth;
    for v in 0..tree.len() {
        let target = reps[types.type_of(v)];
        let k = carries(ctx, &markings[v], v, target, depth).ok_or_else(|| {
            SelfSimilarError::Incomplete(format!(
                "marking of node {v} does not carry it onto node {target}"
            ))
        })?;
        checked_depth = checked_depth.min(k);
    }
    Ok(RigidStructure {
        representatives: reps,
        markings,
        checked_depth,
    })
}

/// Checks that `e` maps the members of `a` onto those of `b` level by
/// level and each child slot onto the same slot. Returns the number of
/// levels compared.
pub(crate) fn carries(
    ctx: &TypingContext,
    e: &GroupElement,
    a: NodeId,
    b: NodeId,
    depth: u32,
) -> Option<u32> {
    let (g, tree) = (ctx.graph, ctx.tree);
    let map = DartMap::new(g, (g.base(), 0), (e.base_image(), e.base_port())).ok()?;
    let (m, n) = (tree.level(a), tree.level(b));
    let k = depth.min(g.radius() - m.max(n));
    let within = |v: NodeId, lim: u32| {
        let ms = tree.members(v);
        &ms[..ms.partition_point(|&x| (x as usize) < g.ball_len(lim))]
    };
    let (ma, mb) = (within(a, m + k), within(b, n + k));
    if ma.len() != mb.len() {
        return None;
    }
    for &x in ma {
        let y = map.get(x)?;
        if mb.binary_search(&y).is_err() || g.level(y) + m != g.level(x) + n {
            return None;
        }
    }
    let (ka, kb) = (tree.children(a), tree.children(b));
    if !ka.is_empty() && !kb.is_empty() {
        if ka.len() != kb.len() {
            return None;
        }
        for (i, &c) in ka.iter().enumerate() {
            let x = *within(c, m + k).first()?;
            if tree.node_containing(n + 1, map.get(x)?) != Some(kb[i]) {
                return None;
            }
        }
    }
    Some(k)
}

impl RigidStructure {
    pub fn marking(&self, v: NodeId) -> &GroupElement {
        &self.markings[v]
    }

    /// `φ_vw = ψ_w⁻¹ ψ_v`, carrying node `v` onto node `w` of the same type.
    pub fn morphism(
        &self,
        ctx: &TypingContext,
        v: NodeId,
        w: NodeId,
    ) -> Result<GroupElement, SelfSimilarError> {
        let g = ctx.graph;
        Ok(compose(
            g,
            &inverse(g, &self.markings[w])?,
            &self.markings[v],
        )?)
    }

    /// Checks that `φ_vw` carries `v` onto `w` to the structure's depth.
    pub fn verify_pair(
        &self,
        ctx: &TypingContext,
        v: NodeId,
        w: NodeId,
    ) -> Result<bool, SelfSimilarError> {
        let e = self.morphism(ctx, v, w)?;
        Ok(carries(ctx, &e, v, w, self.checked_depth).is_some())
    }
}
