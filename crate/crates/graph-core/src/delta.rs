use rayon::prelude::*;

use crate::{Distances, GraphError, LayeredGraph, Vid};

/// Least `δ` such that every geodesic triangle with corners in
/// `B_max_radius` is `δ`-thin, checked over all geodesics.
///
/// For a point `w` on a side `[a,b]` the worst case over choices of the
/// other two sides is `min(far(a,c,w), far(b,c,w))`, where `far(a,c,w)` is
/// the largest possible distance from `w` to a geodesic `[a,c]`. That value
/// is a bottleneck path problem on the geodesic interval and is solved by a
/// single pass over the interval in distance order.
///
/// Geodesics are searched inside `B_{2·max_radius}` (clipped to the ball),
/// which contains every geodesic between corners.
pub fn estimate_delta(g: &LayeredGraph, max_radius: u32) -> Result<u32, GraphError> {
    if max_radius > g.radius() {
        return Err(GraphError::Radius(format!(
            "thinness radius {max_radius} exceeds ball radius {}",
            g.radius()
        )));
    }
    let reach = (2 * max_radius).min(g.radius());
    let dist = Distances::new(g, reach);
    let window = g.ball_len(reach);
    let corners = g.ball_len(max_radius);
    let d = |u: Vid, v: Vid| dist.get(u, v);

    let intervals: Vec<Vec<Vec<Vid>>> = (0..corners as Vid)
        .into_par_iter()
        .map(|a| {
            (0..corners as Vid)
                .map(|c| interval(&dist, window, a, c))
                .collect()
        })
        .collect();

    let far: Vec<Vec<Vec<u32>>> = (0..corners)
        .into_par_iter()
        .map(|a| {
            (0..corners)
                .map(|c| {
                    if c < a {
                        return Vec::new();
                    }
                    let iv = &intervals[a][c];
                    (0..window as Vid)
                        .map(|w| bottleneck(g, &d, iv, a as Vid, w))
                        .collect()
                })
                .collect()
        })
        .collect();
    let far_at = |a: usize, c: usize, w: Vid| -> u32 {
        if a <= c {
            far[a][c][w as usize]
        } else {
            far[c][a][w as usize]
        }
    };

    let delta = (0..corners)
        .into_par_iter()
        .map(|a| {
            let mut best = 0;
            for b in 0..corners {
                for &w in &intervals[a][b] {
                    for c in 0..corners {
                        best = best.max(far_at(a, c, w).min(far_at(b, c, w)));
                    }
                }
            }
            best
        })
        .max()
        .unwrap_or(0);
    Ok(delta)
}

/// Vertices of the window on some geodesic from `a` to `c`, sorted by
/// distance from `a`.
fn interval(dist: &Distances, window: usize, a: Vid, c: Vid) -> Vec<Vid> {
    let Some(total) = dist.get(a, c) else {
        return Vec::new();
    };
    let mut out: Vec<(u32, Vid)> = (0..window as Vid)
        .filter_map(|v| {
            let (x, y) = (dist.get(a, v)?, dist.get(v, c)?);
            (x + y == total).then_some((x, v))
        })
        .collect();
    out.sort_unstable();
    out.into_iter().map(|(_, v)| v).collect()
}

/// Largest achievable minimum distance from `w` along a geodesic through
/// the interval.
fn bottleneck(
    g: &LayeredGraph,
    d: &impl Fn(Vid, Vid) -> Option<u32>,
    iv: &[Vid],
    a: Vid,
    w: Vid,
) -> u32 {
    if iv.is_empty() {
        return 0;
    }
    let mut best: Vec<u32> = Vec::with_capacity(iv.len());
    for (i, &v) in iv.iter().enumerate() {
        let dw = d(w, v).unwrap_or(0);
        if i == 0 {
            best.push(dw);
            continue;
        }
        let dv = d(a, v).unwrap_or(0);
        let mut from = 0;
        for (j, &u) in iv[..i].iter().enumerate().rev() {
            let du = d(a, u).unwrap_or(0);
            if du + 1 < dv {
                break;
            }
            if du + 1 == dv && g.port_to(u, v).is_some() {
                from = from.max(best[j]);
            }
        }
        best.push(dw.min(from));
    }
    *best.last().unwrap()
}
