use std::collections::HashMap;

use horo_atoms::NodeId;

use crate::graph::{type_name, TypeEntry, TypeGraph};
use crate::morphism::{atom_signature, find_morphism, AtomSignature, EquivalenceWitness};
use crate::{TypingContext, TypingError};

/// Result of classifying every node of a tree of atoms.
#[derive(Debug, Clone)]
pub struct Classification {
    pub graph: TypeGraph,
    /// Type of every tree node.
    pub node_type: Vec<usize>,
    /// First node of each type in breadth-first order.
    pub representatives: Vec<NodeId>,
    /// Number of distinct signatures before morphism coarsening.
    pub signature_buckets: usize,
    /// Morphisms that merged signature buckets.
    pub merges: Vec<EquivalenceWitness>,
}

impl Classification {
    pub fn type_of(&self, node: NodeId) -> usize {
        self.node_type[node]
    }

    pub fn representative(&self, t: usize) -> NodeId {
        self.representatives[t]
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        // Keep the smaller index as root so classes are named by first bucket.
        self.0[a.max(b)] = a.min(b);
    }
}

/// Member counts on successive spheres, starting at the shallowest member.
fn shape(ctx: &TypingContext, node: NodeId) -> Vec<usize> {
    let g = ctx.graph;
    let atom = ctx.atom(node);
    (atom.min_length(g)..=g.radius())
        .map(|m| atom.members_at(g, m).len())
        .collect()
}

fn compatible(ctx: &TypingContext, shapes: &[Vec<usize>], a: NodeId, b: NodeId) -> bool {
    let (sa, sb) = (&shapes[a], &shapes[b]);
    let common = sa.len().min(sb.len());
    let (ka, kb) = (ctx.tree.children(a).len(), ctx.tree.children(b).len());
    sa[..common] == sb[..common] && (ka == 0 || kb == 0 || ka == kb)
}

/// Classifies tree nodes into types.
///
/// Nodes are first bucketed by [`AtomSignature`]; buckets are then merged
/// whenever [`find_morphism`] links their first nodes, with member sets
/// compared `depth` levels deep. The resulting classes must give every node
/// of a class the same sequence of child classes, and the types met on the
/// last two levels of the tree must agree.
pub fn classify_types(ctx: &TypingContext, depth: u32) -> Result<Classification, TypingError> {
    let tree = ctx.tree;
    let n = tree.len();
    let mut bucket_of: HashMap<AtomSignature, usize> = HashMap::new();
    let mut bucket = Vec::with_capacity(n);
    let mut reps: Vec<NodeId> = Vec::new();
    for id in 0..n {
        let sig = atom_signature(ctx, id)?;
        let next = reps.len();
        let b = *bucket_of.entry(sig).or_insert(next);
        if b == next {
            reps.push(id);
        }
        bucket.push(b);
    }
    let shapes: Vec<Vec<usize>> = (0..n).map(|id| shape(ctx, id)).collect();

    let mut uf = UnionFind((0..reps.len()).collect());
    let mut merges = Vec::new();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if uf.find(i) == uf.find(j) || !compatible(ctx, &shapes, reps[i], reps[j]) {
                continue;
            }
            if let Some(w) = find_morphism(ctx, reps[i], reps[j], depth) {
                uf.union(i, j);
                merges.push(w);
            }
        }
    }
    let class: Vec<usize> = bucket.iter().map(|&b| uf.find(b)).collect();

    // Child classes of each class, from any node that has children.
    let mut kids: HashMap<usize, (NodeId, Vec<usize>)> = HashMap::new();
    for id in 0..n {
        let ch = tree.children(id);
        if ch.is_empty() {
            continue;
        }
        let seq: Vec<usize> = ch.iter().map(|&c| class[c]).collect();
        match kids.get(&class[id]) {
            None => {
                kids.insert(class[id], (id, seq));
            }
            Some((first, s)) if *s != seq => {
                return Err(TypingError::Audit(format!(
                    "nodes {first} and {id} share a type but their children do not: {s:?} vs {seq:?}"
                )));
            }
            _ => {}
        }
    }

    // Name classes in breadth-first order through child slots.
    let root_class = class[tree.root()];
    let mut order = vec![root_class];
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        let Some((_, seq)) = kids.get(&c) else {
            if tree.depth() == 0 {
                continue;
            }
            let id = class.iter().position(|&k| k == c).unwrap();
            return Err(TypingError::Audit(format!(
                "node {id} (level {}) has a type seen only on the last level of the tree",
                tree.level(id)
            )));
        };
        for &k in seq {
            if !order.contains(&k) {
                order.push(k);
            }
        }
    }
    let index: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let types = order
        .iter()
        .enumerate()
        .map(|(i, c)| TypeEntry {
            name: type_name(i),
            children: kids
                .get(c)
                .map_or(Vec::new(), |(_, s)| s.iter().map(|k| index[k]).collect()),
        })
        .collect();
    let graph = TypeGraph::new(types)?;
    let node_type: Vec<usize> = class.iter().map(|c| index[c]).collect();
    let mut representatives = vec![NodeId::MAX; order.len()];
    for (id, &t) in node_type.iter().enumerate().rev() {
        representatives[t] = id;
    }

    let d = tree.depth();
    if d >= 2 {
        let seen = |lvl: u32| {
            let mut s: Vec<usize> = tree.nodes_at_level(lvl).map(|id| node_type[id]).collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        let (a, b) = (seen(d - 1), seen(d));
        if a != b {
            return Err(TypingError::Audit(format!(
                "types on level {} are {a:?} but on level {d} are {b:?}",
                d - 1
            )));
        }
    }
    Ok(Classification {
        graph,
        node_type,
        representatives,
        signature_buckets: reps.len(),
        merges,
    })
}
