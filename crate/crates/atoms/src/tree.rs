use horo_graph::{Distances, LayeredGraph, Vid};

use crate::{atoms_at_level, Atom, AtomError, AtomId, LevelAtoms, Profile};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub atom: AtomId,
    pub parent: Option<NodeId>,
    /// Position among the parent's children.
    pub slot: usize,
    pub children: Vec<NodeId>,
}

/// Infinite atoms of levels `0..=depth` linked by containment.
///
/// Nodes are numbered breadth first with children in slot order, so the
/// numbering depends only on the tree and its child ordering.
#[derive(Debug, Clone)]
pub struct AtomTree {
    depth: u32,
    horizon: u32,
    levels: Vec<LevelAtoms>,
    nodes: Vec<TreeNode>,
    level_start: Vec<usize>,
    node_of: Vec<Vec<Option<NodeId>>>,
    audited: Vec<u32>,
}

/// Builds the tree of atoms to `depth`, auditing infinite flags against
/// horizon `H + 1` on every level the ball allows.
pub fn build_atom_tree(
    g: &LayeredGraph,
    dist: &Distances,
    depth: u32,
    horizon: u32,
) -> Result<AtomTree, AtomError> {
    let levels: Vec<LevelAtoms> = (0..=depth)
        .map(|n| atoms_at_level(g, dist, n, horizon))
        .collect::<Result<_, _>>()?;

    let mut audited = Vec::new();
    for lv in &levels {
        let n = lv.level;
        if n + horizon < g.radius() {
            let deeper = g.sphere(n + horizon + 1);
            for a in &lv.atoms {
                let flag = a.members.iter().any(|x| deeper.contains(x));
                if flag != a.infinite {
                    return Err(AtomError::Audit(format!(
                        "atom {n}:{} is {} at horizon {horizon} but not at {}",
                        a.id.index,
                        if a.infinite { "infinite" } else { "finite" },
                        horizon + 1
                    )));
                }
            }
            audited.push(n);
        }
    }

    let root = &levels[0];
    if root.atoms.len() != 1 || !root.atoms[0].infinite {
        return Err(AtomError::Audit(format!(
            "level 0 has {} atoms",
            root.atoms.len()
        )));
    }

    // Parent of each infinite atom, by containment.
    let mut kids: Vec<Vec<Vec<u32>>> = levels
        .iter()
        .map(|lv| vec![Vec::new(); lv.atoms.len()])
        .collect();
    for n in 1..=depth as usize {
        for a in levels[n].atoms.iter().filter(|a| a.infinite) {
            let up = &levels[n - 1];
            let p = up.atom_of(a.members[0]).unwrap();
            if a.members.iter().any(|&x| up.atom_of(x) != Some(p)) {
                return Err(AtomError::Audit(format!(
                    "atom {n}:{} does not refine level {}",
                    a.id.index,
                    n - 1
                )));
            }
            if !up.atoms[p as usize].infinite {
                return Err(AtomError::Audit(format!(
                    "infinite atom {n}:{} has a finite parent",
                    a.id.index
                )));
            }
            kids[n - 1][p as usize].push(a.id.index);
        }
    }

    let mut nodes = vec![TreeNode {
        atom: root.atoms[0].id,
        parent: None,
        slot: 0,
        children: Vec::new(),
    }];
    let mut node_of: Vec<Vec<Option<NodeId>>> =
        levels.iter().map(|lv| vec![None; lv.atoms.len()]).collect();
    node_of[0][0] = Some(0);
    let mut level_start = vec![0, 1];
    for n in 0..depth as usize {
        let (lo, hi) = (level_start[n], level_start[n + 1]);
        for id in lo..hi {
            let atom = nodes[id].atom;
            let parent = &levels[n].atoms[atom.index as usize];
            let mut children: Vec<&Atom> = kids[n][atom.index as usize]
                .iter()
                .map(|&i| &levels[n + 1].atoms[i as usize])
                .collect();
            if children.is_empty() {
                return Err(AtomError::Audit(format!(
                    "infinite atom {n}:{} has no infinite child",
                    atom.index
                )));
            }
            order_children(g, parent, &mut children, horizon);
            for (slot, c) in children.into_iter().enumerate() {
                let cid = nodes.len();
                nodes.push(TreeNode {
                    atom: c.id,
                    parent: Some(id),
                    slot,
                    children: Vec::new(),
                });
                nodes[id].children.push(cid);
                node_of[n + 1][c.id.index as usize] = Some(cid);
            }
        }
        level_start.push(nodes.len());
    }
    Ok(AtomTree {
        depth,
        horizon,
        levels,
        nodes,
        level_start,
        node_of,
        audited,
    })
}

/// Sorts sibling atoms counterclockwise.
///
/// All siblings and their parent are intersected with the sphere
/// `S_{n+1+H}`, where each member set forms a cyclic arc. Children are
/// ordered by where their arcs start, measured from the start of the
/// parent's arc; at the root, from the child holding the smallest vertex.
fn order_children(g: &LayeredGraph, parent: &Atom, children: &mut [&Atom], horizon: u32) {
    let m = (children[0].id.level + horizon).min(g.radius());
    let len = g.sphere_len(m) as u32;
    let base = if parent.id.level == 0 {
        let first = children.iter().min_by_key(|c| c.members[0]).unwrap();
        arc_start(g, first, m)
    } else {
        arc_start(g, parent, m)
    };
    children.sort_by_key(|c| ((arc_start(g, c, m) + len - base) % len, c.members[0]));
}

/// Angular rank where the atom's arc on `S_m` begins: just after the
/// largest gap between consecutive members.
fn arc_start(g: &LayeredGraph, atom: &Atom, m: u32) -> u32 {
    let ranks: Vec<u32> = atom
        .members_at(g, m)
        .iter()
        .map(|&x| g.angular_rank(x))
        .collect();
    let Some(&last) = ranks.last() else { return 0 };
    let len = g.sphere_len(m) as u32;
    let mut best = (ranks[0] + len - last, ranks[0]);
    for w in ranks.windows(2) {
        if w[1] - w[0] > best.0 {
            best = (w[1] - w[0], w[1]);
        }
    }
    best.1
}

impl AtomTree {
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    /// Levels whose infinite flags were confirmed at horizon `H + 1`.
    pub fn audited_levels(&self) -> &[u32] {
        &self.audited
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &TreeNode {
        &self.nodes[id]
    }

    pub fn atom(&self, id: NodeId) -> &Atom {
        let a = self.nodes[id].atom;
        &self.levels[a.level as usize].atoms[a.index as usize]
    }

    pub fn level(&self, id: NodeId) -> u32 {
        self.nodes[id].atom.level
    }

    pub fn members(&self, id: NodeId) -> &[Vid] {
        &self.atom(id).members
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id].children
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id].parent
    }

    pub fn nodes_at_level(&self, n: u32) -> std::ops::Range<NodeId> {
        self.level_start[n as usize]..self.level_start[n as usize + 1]
    }

    /// All atoms of a level, finite ones included.
    pub fn level_atoms(&self, n: u32) -> &LevelAtoms {
        &self.levels[n as usize]
    }

    /// The tree node at level `n` containing `x`, if `x` lies in an
    /// infinite atom there.
    pub fn node_containing(&self, n: u32, x: Vid) -> Option<NodeId> {
        let lv = self.levels.get(n as usize)?;
        self.node_of[n as usize][lv.atom_of(x)? as usize]
    }

    pub fn node_of_atom(&self, id: AtomId) -> Option<NodeId> {
        self.node_of
            .get(id.level as usize)?
            .get(id.index as usize)
            .copied()
            .flatten()
    }

    /// Child slots leading from the root to `id`.
    pub fn path(&self, id: NodeId) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            out.push(self.nodes[cur].slot);
            cur = p;
        }
        out.reverse();
        out
    }

    /// Follows child slots from `from`; `None` if a slot does not exist.
    pub fn follow(&self, from: NodeId, slots: &[usize]) -> Option<NodeId> {
        slots
            .iter()
            .try_fold(from, |id, &s| self.nodes[id].children.get(s).copied())
    }

    /// Ancestor of `id` at level `m` (itself when `m` is its level).
    pub fn ancestor(&self, id: NodeId, m: u32) -> Option<NodeId> {
        let mut cur = id;
        while self.level(cur) > m {
            cur = self.nodes[cur].parent?;
        }
        (self.level(cur) == m).then_some(cur)
    }

    /// Level-`m` profile of the horofunction class through `id`.
    pub fn horofunction_profile(&self, id: NodeId, m: u32) -> Result<Profile, AtomError> {
        let a = self.ancestor(id, m).ok_or_else(|| {
            AtomError::Input(format!(
                "level {m} exceeds the chain depth {}",
                self.level(id)
            ))
        })?;
        Ok(self.atom(a).profile.clone())
    }
}
