use horo_atoms::NodeId;
use horo_graph::Vid;
use horo_group::{DartMap, GroupElement};
use horo_typing::{orbit_code, TypingContext};

use crate::TransducerError;

/// Orbit-canonical description of a mapping triple `(g, A, A')`: the moved
/// proximal set `g·P(A)` and the proximal set `P(A')`, each point tagged
/// with its set and its normalized profile value, with truncated cones,
/// read from frames at the nearest neighbors of `A'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MappingTripleSignature(pub Vec<u32>);

pub fn mapping_triple_signature(
    ctx: &TypingContext,
    g: &GroupElement,
    a: NodeId,
    image: NodeId,
) -> Result<MappingTripleSignature, TransducerError> {
    let graph = ctx.graph;
    let map = DartMap::new(graph, (graph.base(), 0), (g.base_image(), g.base_port()))?;
    let tagged = |node: NodeId, moved: bool| -> Result<Vec<(Vid, u32)>, TransducerError> {
        let profile = &ctx.atom(node).profile;
        let pts = &ctx.proximal[node].proximal;
        let low = pts.iter().map(|&p| profile.get(p)).min().unwrap_or(0);
        pts.iter()
            .map(|&p| {
                let v = profile.get(p) - low;
                let q = if moved {
                    map.get(p).ok_or_else(|| {
                        TransducerError::Radius(format!("image of {p} leaves the ball"))
                    })?
                } else {
                    p
                };
                Ok((q, 2 * v + moved as u32))
            })
            .collect()
    };
    let mut points = tagged(a, true)?;
    points.extend(tagged(image, false)?);
    let code = orbit_code(
        graph,
        ctx.dist,
        &ctx.proximal[image].nearest,
        &points,
        ctx.cone_depth,
    )?;
    Ok(MappingTripleSignature(code))
}
