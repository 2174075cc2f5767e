use horo_atoms::{Atom, AtomId, AtomTree, NodeId};
use horo_graph::{Distances, LayeredGraph, Vid};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProximalError {
    #[error("insufficient radius: {0}")]
    Radius(String),
    #[error("input: {0}")]
    Input(String),
}

/// The three nested subsets of `S_n` attached to an atom at level `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProximalData {
    pub atom: AtomId,
    pub nearest: Vec<Vid>,
    pub visible: Vec<Vid>,
    pub proximal: Vec<Vid>,
    pub delta: u32,
}

impl ProximalData {
    /// Largest distance between two proximal points.
    pub fn diameter(&self, dist: &Distances) -> u32 {
        let p = &self.proximal;
        p.iter()
            .flat_map(|&a| p.iter().map(move |&b| (a, b)))
            .map(|(a, b)| dist.get(a, b).unwrap())
            .max()
            .unwrap_or(0)
    }
}

fn d(dist: &Distances, a: Vid, b: Vid) -> Result<u32, ProximalError> {
    dist.get(a, b)
        .ok_or_else(|| ProximalError::Radius(format!("d({a},{b}) is not certified")))
}

fn check_level(g: &LayeredGraph, dist: &Distances, n: u32) -> Result<(), ProximalError> {
    if n > g.radius() || g.ball_len(n) > dist.num_sources() {
        return Err(ProximalError::Radius(format!(
            "distance table does not cover B_{n}"
        )));
    }
    Ok(())
}

/// Points of `B_n` closest to `x`.
pub fn nearest_neighbors(
    g: &LayeredGraph,
    dist: &Distances,
    x: Vid,
    n: u32,
) -> Result<Vec<Vid>, ProximalError> {
    check_level(g, dist, n)?;
    let ds = (0..g.ball_len(n) as Vid)
        .map(|b| Ok((d(dist, b, x)?, b)))
        .collect::<Result<Vec<_>, ProximalError>>()?;
    let min = ds.iter().map(|p| p.0).min().unwrap();
    Ok(ds.into_iter().filter(|p| p.0 == min).map(|p| p.1).collect())
}

/// Points `p` of `ball` with `d(p,x) < d(p,q) + d(q,x)` for every other
/// `q` of `ball`.
pub fn visible(dist: &Distances, x: Vid, ball: &[Vid]) -> Result<Vec<Vid>, ProximalError> {
    let to_x = ball
        .iter()
        .map(|&b| d(dist, b, x))
        .collect::<Result<Vec<u32>, _>>()?;
    visible_by(dist, ball, |i| to_x[i])
}

/// `visible` for a function known only up to a constant, such as an atom's
/// profile; the comparison is unaffected by the constant.
fn visible_by(
    dist: &Distances,
    ball: &[Vid],
    value: impl Fn(usize) -> u32,
) -> Result<Vec<Vid>, ProximalError> {
    let mut out = Vec::new();
    'p: for (i, &p) in ball.iter().enumerate() {
        for (j, &q) in ball.iter().enumerate() {
            if i != j && value(i) >= d(dist, p, q)? + value(j) {
                continue 'p;
            }
        }
        out.push(p);
    }
    Ok(out)
}

/// Next proximal layer: successors of the previous layer lying within
/// `4δ+2` of every nearest neighbor at this level.
fn proximal_step(
    g: &LayeredGraph,
    dist: &Distances,
    prev: &[Vid],
    nearest: &[Vid],
    delta: u32,
) -> Result<Vec<Vid>, ProximalError> {
    let mut cand: Vec<Vid> = prev.iter().flat_map(|&p| g.successors(p)).collect();
    cand.sort_unstable();
    cand.dedup();
    let mut out = Vec::with_capacity(cand.len());
    for p in cand {
        let mut ok = true;
        for &q in nearest {
            if d(dist, p, q)? > 4 * delta + 2 {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(p);
        }
    }
    Ok(out)
}

/// `P(x, S_n)` for a vertex with `ℓ(x) ≥ n`.
pub fn proximal_of_vertex(
    g: &LayeredGraph,
    dist: &Distances,
    x: Vid,
    n: u32,
    delta: u32,
) -> Result<Vec<Vid>, ProximalError> {
    if g.level(x) < n {
        return Err(ProximalError::Input(format!(
            "vertex {x} lies inside B_{n}"
        )));
    }
    let mut layer = vec![g.base()];
    for k in 1..=n {
        let nearest = nearest_neighbors(g, dist, x, k)?;
        layer = proximal_step(g, dist, &layer, &nearest, delta)?;
    }
    Ok(layer)
}

fn zero_set(g: &LayeredGraph, atom: &Atom) -> Vec<Vid> {
    let n = atom.id.level;
    (0..g.ball_len(n) as Vid)
        .filter(|&b| atom.profile.get(b) == 0)
        .collect()
}

fn data_from(
    g: &LayeredGraph,
    dist: &Distances,
    atom: &Atom,
    proximal: Vec<Vid>,
    delta: u32,
) -> Result<ProximalData, ProximalError> {
    // Every member has length at least n, so any geodesic from a point of
    // B_{n-1} to it crosses S_n; only S_n can be visible, and only S_n
    // needs to be tried as a blocker.
    let n = atom.id.level;
    let mut sphere: Vec<Vid> = g.sphere(n).collect();
    sphere.sort_by_key(|&b| (atom.profile.get(b), b));
    let mut visible = visible_by(dist, &sphere, |i| atom.profile.get(sphere[i]))?;
    visible.sort_unstable();
    Ok(ProximalData {
        atom: atom.id,
        nearest: zero_set(g, atom),
        visible,
        proximal,
        delta,
    })
}

/// Proximal data of one tree atom, walking its ancestor chain.
pub fn proximal_set(
    g: &LayeredGraph,
    dist: &Distances,
    tree: &AtomTree,
    node: NodeId,
    delta: u32,
) -> Result<ProximalData, ProximalError> {
    let n = tree.level(node);
    check_level(g, dist, n)?;
    let chain: Vec<NodeId> = (1..=n).map(|k| tree.ancestor(node, k).unwrap()).collect();
    let mut layer = vec![g.base()];
    for &a in &chain {
        layer = proximal_step(g, dist, &layer, &zero_set(g, tree.atom(a)), delta)?;
    }
    data_from(g, dist, tree.atom(node), layer, delta)
}

/// Proximal data of every tree node, indexed by node id.
pub fn proximal_tree(
    g: &LayeredGraph,
    dist: &Distances,
    tree: &AtomTree,
    delta: u32,
) -> Result<Vec<ProximalData>, ProximalError> {
    check_level(g, dist, tree.depth())?;
    let mut out: Vec<ProximalData> = Vec::with_capacity(tree.len());
    for id in 0..tree.len() {
        let atom = tree.atom(id);
        let layer = match tree.parent(id) {
            None => vec![g.base()],
            Some(p) => proximal_step(g, dist, &out[p].proximal, &zero_set(g, atom), delta)?,
        };
        out.push(data_from(g, dist, atom, layer, delta)?);
    }
    Ok(out)
}

/// Decides `x ∈ A` from `N(A)` and `P(A)` only: `x` must lie in the cone of
/// every nearest neighbor and its distances to `P(A)` must match the
/// atom's profile there up to a constant.
pub fn membership_test(
    g: &LayeredGraph,
    dist: &Distances,
    x: Vid,
    atom: &Atom,
    prox: &ProximalData,
) -> Result<bool, ProximalError> {
    for &p in &prox.nearest {
        if g.level(x) != g.level(p) + d(dist, p, x)? {
            return Ok(false);
        }
    }
    let mut offset: Option<i64> = None;
    for &p in &prox.proximal {
        let diff = d(dist, p, x)? as i64 - atom.profile.get(p) as i64;
        if *offset.get_or_insert(diff) != diff {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that `N(x,B_n) ⊆ N(y,B_n)` implies `P(y,S_n) ⊆ P(x,S_n)`.
/// Returns a point of `P(y) \ P(x)` when the implication fails.
pub fn check_monotonicity(
    g: &LayeredGraph,
    dist: &Distances,
    x: Vid,
    y: Vid,
    n: u32,
    delta: u32,
) -> Result<Option<Vid>, ProximalError> {
    let (nx, ny) = (
        nearest_neighbors(g, dist, x, n)?,
        nearest_neighbors(g, dist, y, n)?,
    );
    if !nx.iter().all(|p| ny.contains(p)) {
        return Ok(None);
    }
    let (px, py) = (
        proximal_of_vertex(g, dist, x, n, delta)?,
        proximal_of_vertex(g, dist, y, n, delta)?,
    );
    Ok(py.into_iter().find(|p| px.binary_search(p).is_err()))
}
