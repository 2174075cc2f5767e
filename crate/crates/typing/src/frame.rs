use horo_graph::{cone_code, Distances, LayeredGraph, Vid};
use horo_group::allowed_offsets;

use crate::TypingError;

/// A dart read as a reference frame: `port` counts as relative port 0 and
/// the others follow counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Frame {
    pub vertex: Vid,
    pub port: usize,
}

const SEP: u32 = u32::MAX;

/// Lexicographically least geodesic from the frame to `to`, spelled in
/// relative ports. Each step re-anchors the frame on the edge just used, so
/// the word and the arrival frame are carried along by any automorphism
/// that moves the starting frame.
pub(crate) fn relative_word(
    g: &LayeredGraph,
    dist: &Distances,
    from: Frame,
    to: Vid,
) -> Result<(Vec<u8>, Frame), TypingError> {
    let gap = |a: Vid| {
        dist.get(a, to)
            .ok_or_else(|| TypingError::Radius(format!("d({a},{to}) is not certified")))
    };
    let mut word = Vec::new();
    let mut cur = from;
    let mut left = gap(cur.vertex)?;
    while left > 0 {
        let deg = g.degree(cur.vertex);
        let mut next = None;
        for j in 0..deg {
            let Some(y) = g.ports(cur.vertex)[(cur.port + j) % deg] else {
                continue;
            };
            if gap(y)? + 1 == left {
                next = Some((j, y));
                break;
            }
        }
        let (j, y) = next.ok_or_else(|| {
            TypingError::Radius(format!("no geodesic step from {} to {to}", cur.vertex))
        })?;
        word.push(j as u8);
        cur = Frame {
            vertex: y,
            port: g.port_to(y, cur.vertex).unwrap(),
        };
        left -= 1;
    }
    Ok((word, cur))
}

/// Encodes tagged points with their truncated cones as seen from `frame`.
/// Points are listed in order of their relative words.
pub(crate) fn framed_code(
    g: &LayeredGraph,
    dist: &Distances,
    frame: Frame,
    points: &[(Vid, u32)],
    cone_depth: u32,
) -> Result<Vec<u32>, TypingError> {
    let mut entries: Vec<Vec<u32>> = Vec::with_capacity(points.len());
    for &(p, tag) in points {
        let (word, arrival) = relative_word(g, dist, frame, p)?;
        let k = cone_depth.min(g.radius() - g.level(p));
        let mut e: Vec<u32> = word.iter().map(|&c| c as u32).collect();
        e.push(SEP);
        e.push(tag);
        e.push(k);
        e.extend(cone_code(g, p, k, arrival.port)?);
        entries.push(e);
    }
    entries.sort();
    let mut code = Vec::new();
    for e in entries {
        code.extend(e);
        code.push(SEP);
    }
    Ok(code)
}

/// Frames at the anchor vertices that automorphisms may move onto each
/// other.
pub(crate) fn anchor_frames(g: &LayeredGraph, anchors: &[Vid]) -> Vec<Frame> {
    let offsets = allowed_offsets(g);
    anchors
        .iter()
        .flat_map(|&v| {
            offsets
                .iter()
                .filter(move |&&o| o < g.degree(v))
                .map(move |&o| Frame { vertex: v, port: o })
        })
        .collect()
}

/// Least `framed_code` over all anchor frames, which is the same for any
/// two configurations related by an automorphism mapping anchors to anchors.
pub fn canonical_code(
    g: &LayeredGraph,
    dist: &Distances,
    anchors: &[Vid],
    points: &[(Vid, u32)],
    cone_depth: u32,
) -> Result<Vec<u32>, TypingError> {
    let mut best: Option<Vec<u32>> = None;
    for f in anchor_frames(g, anchors) {
        let c = framed_code(g, dist, f, points, cone_depth)?;
        if best.as_ref().is_none_or(|b| c < *b) {
            best = Some(c);
        }
    }
    best.ok_or_else(|| TypingError::Input("no anchor frame".into()))
}
