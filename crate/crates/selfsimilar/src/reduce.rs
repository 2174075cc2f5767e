use horo_typing::{TypeEntry, TypeGraph};

use crate::SelfSimilarError;

/// A reduced type graph together with how it reads in the original one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub graph: TypeGraph,
    /// Original type behind each new type; `None` for the binary type added
    /// by [`expand`].
    pub origin: Vec<Option<usize>>,
    /// Original slot path behind each new slot; `None` for the slots of the
    /// binary type, which have no counterpart.
    pub paths: Vec<Vec<Option<Vec<usize>>>>,
}

impl Reduction {
    fn identity(tg: &TypeGraph) -> Self {
        Reduction {
            graph: tg.clone(),
            origin: (0..tg.len()).map(Some).collect(),
            paths: (0..tg.len())
                .map(|t| (0..tg.arity(t)).map(|i| Some(vec![i])).collect())
                .collect(),
        }
    }

    /// The new type that is binary filler, if any.
    pub fn binary_type(&self) -> Option<usize> {
        self.origin.iter().position(Option::is_none)
    }

    /// Reads `self` as a reduction of the graph `inner` was reduced from.
    pub fn after(&self, inner: &Reduction) -> Reduction {
        let origin = self
            .origin
            .iter()
            .map(|o| o.and_then(|t| inner.origin[t]))
            .collect();
        let paths = self
            .paths
            .iter()
            .enumerate()
            .map(|(t, slots)| {
                slots
                    .iter()
                    .map(|p| {
                        let p = p.as_ref()?;
                        let mut ty = self.origin[t]?;
                        let mut out = Vec::new();
                        for &s in p {
                            out.extend(inner.paths[ty][s].as_ref()?);
                            ty = inner.graph.children(ty)[s];
                        }
                        Some(out)
                    })
                    .collect()
            })
            .collect();
        Reduction {
            graph: self.graph.clone(),
            origin,
            paths,
        }
    }
}

/// Types whose subtree is a single chain: no type with two or more slots is
/// reachable from them.
pub fn isolated_types(tg: &TypeGraph) -> Vec<bool> {
    let n = tg.len();
    let mut branching: Vec<bool> = (0..n).map(|t| tg.arity(t) >= 2).collect();
    loop {
        let mut changed = false;
        for t in 0..n {
            if !branching[t] && tg.children(t).iter().any(|&c| branching[c]) {
                branching[t] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    branching.into_iter().map(|b| !b).collect()
}

fn fresh_name(tg: &TypeGraph) -> String {
    std::iter::once("Z".to_string())
        .chain((2..).map(|i| format!("Z{i}")))
        .find(|n| tg.index_of(n).is_none())
        .unwrap()
}

/// Replaces every isolated type by one binary type with two slots leading
/// back to itself. A graph whose root is isolated becomes that binary type.
pub fn expand(tg: &TypeGraph) -> Reduction {
    let iso = isolated_types(tg);
    if !iso.iter().any(|&b| b) {
        return Reduction::identity(tg);
    }
    let binary_entry = |name: String, me: usize| TypeEntry {
        name,
        children: vec![me, me],
    };
    if iso[tg.root()] {
        return Reduction {
            graph: TypeGraph::new(vec![binary_entry(fresh_name(tg), 0)]).unwrap(),
            origin: vec![None],
            paths: vec![vec![None, None]],
        };
    }
    let kept: Vec<usize> = (0..tg.len()).filter(|&t| !iso[t]).collect();
    let bin = kept.len();
    let new_index = |t: usize| {
        if iso[t] {
            bin
        } else {
            kept.iter().position(|&k| k == t).unwrap()
        }
    };
    let mut types: Vec<TypeEntry> = kept
        .iter()
        .map(|&t| TypeEntry {
            name: tg.name(t).to_string(),
            children: tg.children(t).iter().map(|&c| new_index(c)).collect(),
        })
        .collect();
    types.push(binary_entry(fresh_name(tg), bin));
    let mut origin: Vec<Option<usize>> = kept.iter().map(|&t| Some(t)).collect();
    origin.push(None);
    let mut paths: Vec<Vec<Option<Vec<usize>>>> = kept
        .iter()
        .map(|&t| (0..tg.arity(t)).map(|i| Some(vec![i])).collect())
        .collect();
    paths.push(vec![None, None]);
    Reduction {
        graph: TypeGraph::new(types).unwrap(),
        origin,
        paths,
    }
}

/// Fuses every chain of single-slot types into the slot leading into it.
/// The root is kept; a single-slot root takes over the slots of the first
/// type below it with more than one slot.
pub fn simplify(tg: &TypeGraph) -> Result<Reduction, SelfSimilarError> {
    let iso = isolated_types(tg);
    if let Some(t) = iso.iter().position(|&b| b) {
        return Err(SelfSimilarError::MustExpand(format!(
            "type {} has a single boundary point",
            tg.name(t)
        )));
    }
    let root = tg.root();
    let kept: Vec<usize> = (0..tg.len())
        .filter(|&t| t == root || tg.arity(t) != 1)
        .collect();
    // Follow forced slots from `t` until a kept type is hit.
    let run = |mut t: usize, mut path: Vec<usize>| {
        while tg.arity(t) == 1 && t != root {
            path.push(0);
            t = tg.children(t)[0];
        }
        (t, path)
    };
    let mut types = Vec::with_capacity(kept.len());
    let mut paths = Vec::with_capacity(kept.len());
    for &t in &kept {
        let (from, prefix) = if t == root && tg.arity(t) == 1 {
            let (u, p) = run(tg.children(t)[0], vec![0]);
            if u == root {
                return Err(SelfSimilarError::MustExpand(
                    "the root lies on a single chain".into(),
                ));
            }
            (u, p)
        } else {
            (t, Vec::new())
        };
        let mut children = Vec::new();
        let mut slot_paths = Vec::new();
        for (i, &c) in tg.children(from).iter().enumerate() {
            let mut p = prefix.clone();
            p.push(i);
            let (u, p) = run(c, p);
            children.push(kept.iter().position(|&k| k == u).unwrap());
            slot_paths.push(Some(p));
        }
        types.push(TypeEntry {
            name: tg.name(t).to_string(),
            children,
        });
        paths.push(slot_paths);
    }
    Ok(Reduction {
        graph: TypeGraph::new(types).unwrap(),
        origin: kept.iter().map(|&t| Some(t)).collect(),
        paths,
    })
}

/// [`expand`] followed by [`simplify`], read against the original graph.
pub fn reduce(tg: &TypeGraph) -> Result<Reduction, SelfSimilarError> {
    let e = expand(tg);
    Ok(simplify(&e.graph)?.after(&e))
}

/// Whether every type has at least two slots.
pub fn is_branching(tg: &TypeGraph) -> bool {
    (0..tg.len()).all(|t| tg.arity(t) >= 2)
}
