use horo_graph::{LayeredGraph, SourceKind, Vid};

use crate::GroupError;

/// An automorphism of the ambient graph, stored as the image of the base
/// dart (base vertex, port 0).
///
/// Ports are carried along by transport: if a dart `(x, p)` maps to
/// `(y, p')`, the offset `p' - p` is the rotation applied at `x`, and moving
/// to a neighbor keeps the back-edge port aligned. For the built-in sources
/// every dart determines exactly one such automorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    vertex: Vid,
    port: u8,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { vertex: 0, port: 0 };

    /// The element sending the base dart to `(vertex, port)`.
    pub fn from_dart(g: &LayeredGraph, vertex: Vid, port: usize) -> Result<Self, GroupError> {
        check_rotation(g)?;
        if !g.contains(vertex) {
            return Err(GroupError::Radius(format!(
                "dart vertex {vertex} is outside the ball"
            )));
        }
        if port >= g.degree(vertex) || !allowed_offsets(g).contains(&port) {
            return Err(GroupError::Input(format!(
                "port {port} is not an allowed dart at {vertex}"
            )));
        }
        Ok(GroupElement {
            vertex,
            port: port as u8,
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    /// Image of the base vertex.
    pub fn base_image(&self) -> Vid {
        self.vertex
    }

    /// Port at the base image that the base port 0 is sent to.
    pub fn base_port(&self) -> usize {
        self.port as usize
    }

    /// `|g| = d(x₀, g·x₀)`.
    pub fn magnitude(&self, g: &LayeredGraph) -> u32 {
        g.level(self.vertex)
    }

    /// Image of a dart `(x, port)`.
    pub fn act_dart(
        &self,
        g: &LayeredGraph,
        x: Vid,
        port: usize,
    ) -> Result<(Vid, usize), GroupError> {
        let (y, off) = self.transport(g, x)?;
        let deg = g.degree(y);
        Ok((y, (port + off) % deg))
    }

    pub fn act(&self, g: &LayeredGraph, x: Vid) -> Result<Vid, GroupError> {
        Ok(self.transport(g, x)?.0)
    }

    /// Image of `x` with the port offset there.
    fn transport(&self, g: &LayeredGraph, x: Vid) -> Result<(Vid, usize), GroupError> {
        if !g.contains(x) {
            return Err(GroupError::Radius(format!(
                "vertex {x} is outside the ball"
            )));
        }
        let (mut y, mut off) = (self.vertex, self.port as usize);
        let mut cur = g.base();
        for (_, p) in g.geodesic_ports(x) {
            (cur, y, off) = step(g, cur, y, off, p)
                .ok_or_else(|| GroupError::Radius(format!("image of {x} leaves the ball")))?;
        }
        Ok((y, off))
    }
}

/// Moves the pair (x, y) along port `p` of `x` and its image port at `y`.
fn step(g: &LayeredGraph, x: Vid, y: Vid, off: usize, p: usize) -> Option<(Vid, Vid, usize)> {
    let x2 = g.ports(x)[p]?;
    let y2 = g.ports(y)[(p + off) % g.degree(y)]?;
    let bx = g.port_to(x2, x)?;
    let by = g.port_to(y2, y)?;
    let deg = g.degree(x2);
    if g.degree(y2) != deg {
        return None;
    }
    Some((x2, y2, (by + deg - bx) % deg))
}

fn check_rotation(g: &LayeredGraph) -> Result<(), GroupError> {
    if g.has_rotation() {
        Ok(())
    } else {
        Err(GroupError::Input(
            "file sources carry no rotation system, so no automorphisms".into(),
        ))
    }
}

/// Port rotations at the base that are realised by automorphisms.
///
/// Tilings and free trees admit every rotation of the star; the line admits
/// only translations, so its reflection is excluded.
pub fn allowed_offsets(g: &LayeredGraph) -> Vec<usize> {
    match g.kind() {
        SourceKind::Tiling { .. } | SourceKind::Free { .. } => (0..g.degree(g.base())).collect(),
        SourceKind::Line => vec![0],
        SourceKind::File => Vec::new(),
    }
}

/// Elements fixing the base vertex.
pub fn stabilizer(g: &LayeredGraph) -> Vec<GroupElement> {
    allowed_offsets(g)
        .into_iter()
        .map(|o| GroupElement {
            vertex: g.base(),
            port: o as u8,
        })
        .collect()
}

/// `a ∘ b`: apply `b`, then `a`.
pub fn compose(
    g: &LayeredGraph,
    a: &GroupElement,
    b: &GroupElement,
) -> Result<GroupElement, GroupError> {
    let (vertex, port) = a.act_dart(g, b.vertex, b.port as usize)?;
    Ok(GroupElement {
        vertex,
        port: port as u8,
    })
}

pub fn inverse(g: &LayeredGraph, a: &GroupElement) -> Result<GroupElement, GroupError> {
    if a.is_identity() {
        return Ok(*a);
    }
    // g⁻¹ x₀ lies on the sphere of radius |g|.
    let m = a.magnitude(g);
    for v in g.sphere(m) {
        if let Ok((y, off)) = a.transport(g, v) {
            if y == g.base() {
                let deg = g.degree(v);
                let port = (deg - off % deg) % deg;
                return Ok(GroupElement {
                    vertex: v,
                    port: port as u8,
                });
            }
        }
    }
    Err(GroupError::Radius(
        "inverse image of the base lies outside the ball".into(),
    ))
}

/// The action of one element on every vertex of the ball at once.
#[derive(Debug, Clone)]
pub struct ActionMap {
    image: Vec<Option<(Vid, u8)>>,
}

impl ActionMap {
    /// Images of all vertices of `B_radius`; entries are `None` where the
    /// image leaves the ball.
    pub fn new(g: &LayeredGraph, a: &GroupElement, radius: u32) -> Self {
        let n = g.ball_len(radius);
        let mut image: Vec<Option<(Vid, u8)>> = vec![None; n];
        image[0] = Some((a.vertex, a.port));
        for x in 1..n as Vid {
            let (u, p) = g.geodesic_parent(x).unwrap();
            image[x as usize] = image[u as usize].and_then(|(y, off)| {
                let (_, y2, off2) = step(g, u, y, off as usize, p)?;
                Some((y2, off2 as u8))
            });
        }
        ActionMap { image }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn get(&self, x: Vid) -> Option<Vid> {
        self.image
            .get(x as usize)
            .copied()
            .flatten()
            .map(|(y, _)| y)
    }

    pub fn get_dart(&self, x: Vid, port: usize, g: &LayeredGraph) -> Option<(Vid, usize)> {
        let (y, off) = self.image.get(x as usize).copied().flatten()?;
        Some((y, (port + off as usize) % g.degree(y)))
    }
}

/// True iff `a` and `b` send every vertex of `B_radius` to the same place.
/// Vertices whose images leave the ball must do so for both.
pub fn equal_on_ball(g: &LayeredGraph, a: &GroupElement, b: &GroupElement, radius: u32) -> bool {
    let (ma, mb) = (ActionMap::new(g, a, radius), ActionMap::new(g, b, radius));
    (0..ma.len() as Vid).all(|x| match (ma.image[x as usize], mb.image[x as usize]) {
        (Some(p), Some(q)) => p.0 == q.0,
        (None, None) => true,
        _ => false,
    })
}

/// The automorphism pinned down by sending one dart to another, evaluated
/// on the whole ball by breadth-first transport from the source dart.
///
/// Unlike [`ActionMap`] this needs no path through the base vertex, so it
/// stays defined for elements that move the base far out.
#[derive(Debug, Clone)]
pub struct DartMap {
    image: Vec<Option<(Vid, u8)>>,
}

impl DartMap {
    pub fn new(g: &LayeredGraph, from: (Vid, usize), to: (Vid, usize)) -> Result<Self, GroupError> {
        check_rotation(g)?;
        for v in [from.0, to.0] {
            if !g.contains(v) {
                return Err(GroupError::Radius(format!(
                    "dart vertex {v} is outside the ball"
                )));
            }
        }
        let deg = g.degree(from.0);
        if g.degree(to.0) != deg || from.1 >= deg || to.1 >= deg {
            return Err(GroupError::Input(format!(
                "darts {from:?} and {to:?} do not match"
            )));
        }
        let mut image: Vec<Option<(Vid, u8)>> = vec![None; g.len()];
        let mut seen = vec![false; g.len()];
        image[from.0 as usize] = Some((to.0, ((to.1 + deg - from.1) % deg) as u8));
        seen[from.0 as usize] = true;
        let mut queue = std::collections::VecDeque::from([from.0]);
        while let Some(x) = queue.pop_front() {
            let here = image[x as usize];
            for (p, w) in g.ports(x).iter().enumerate() {
                let Some(w) = *w else { continue };
                if seen[w as usize] {
                    continue;
                }
                seen[w as usize] = true;
                queue.push_back(w);
                image[w as usize] = here.and_then(|(y, off)| {
                    let (_, y2, off2) = step(g, x, y, off as usize, p)?;
                    Some((y2, off2 as u8))
                });
            }
        }
        Ok(DartMap { image })
    }

    pub fn get(&self, x: Vid) -> Option<Vid> {
        self.image
            .get(x as usize)
            .copied()
            .flatten()
            .map(|(y, _)| y)
    }

    /// The same automorphism as a [`GroupElement`], if the base vertex has
    /// an image inside the ball and its rotation is allowed.
    pub fn element(&self, g: &LayeredGraph) -> Option<GroupElement> {
        let (vertex, port) = self.image[g.base() as usize]?;
        allowed_offsets(g)
            .contains(&(port as usize))
            .then_some(GroupElement { vertex, port })
    }
}
