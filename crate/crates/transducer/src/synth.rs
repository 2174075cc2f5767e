use std::collections::HashMap;

use horo_atoms::NodeId;
use horo_graph::Vid;
use horo_group::{compose, inverse, DartMap, GroupElement};
use horo_selfsimilar::RigidStructure;
use horo_typing::{Classification, TypingContext};

use crate::algebra::check_nondegenerate;
use crate::machine::{AsyncTransducer, State, Transition};
use crate::TransducerError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthesisConfig {
    /// Members of an atom at least this many levels below it stand in for
    /// its boundary when locating image atoms.
    pub margin: u32,
    /// Synthesis fails once this many states exist without closure.
    pub max_states: usize,
    /// Input chains up to this length are checked against the tree.
    pub verify_depth: u32,
}

impl Default for SynthesisConfig {
    fn default() -> Self {
        SynthesisConfig {
            margin: 0,
            max_states: 400,
            verify_depth: 4,
        }
    }
}

/// Deepest tree node containing the images under `map` of the members of
/// `node` lying `margin` or more levels below it. Images outside the ball
/// are ignored.
pub fn image_atom(
    ctx: &TypingContext,
    map: &DartMap,
    node: NodeId,
    margin: u32,
) -> Result<NodeId, TransducerError> {
    let (g, tree) = (ctx.graph, ctx.tree);
    let from = tree.level(node) + margin;
    let images: Vec<Vid> = tree
        .members(node)
        .iter()
        .filter(|&&x| g.level(x) >= from)
        .filter_map(|&x| map.get(x))
        .collect();
    if images.is_empty() {
        return Err(TransducerError::Radius(format!(
            "no member of node {node} {margin} levels down has an image in the ball"
        )));
    }
    let shallowest = images.iter().map(|&y| g.level(y)).min().unwrap();
    let mut found = tree.root();
    for m in 1..=tree.depth().min(shallowest) {
        let Some(x) = tree.node_containing(m, images[0]) else {
            break;
        };
        if images[1..]
            .iter()
            .any(|&y| tree.node_containing(m, y) != Some(x))
        {
            break;
        }
        found = x;
    }
    Ok(found)
}

/// Image chain of `node` under `g` computed directly on the tree.
pub fn image_chain(
    ctx: &TypingContext,
    g: &GroupElement,
    node: NodeId,
    margin: u32,
) -> Result<Vec<usize>, TransducerError> {
    let graph = ctx.graph;
    let map = DartMap::new(graph, (graph.base(), 0), (g.base_image(), g.base_port()))?;
    Ok(ctx.tree.path(image_atom(ctx, &map, node, margin)?))
}

type StateKey = (GroupElement, usize, usize);

/// Builds the transducer of the boundary action of `g`.
///
/// A state is a normalized element `h` together with an input type `T` and
/// an output type `U`: `h` carries the representative of `T` into the
/// representative of `U`. Reading slot `i` moves to the child `c` of the
/// representative of `T`, locates its image atom `X` below the
/// representative of `U`, emits the slots from there down to `X`, and
/// renormalizes with the markings: `ψ_X ∘ h ∘ ψ_c⁻¹`.
pub fn synthesize_action_transducer(
    ctx: &TypingContext,
    types: &Classification,
    rigid: &RigidStructure,
    g: &GroupElement,
    config: &SynthesisConfig,
) -> Result<AsyncTransducer, TransducerError> {
    let (graph, tree) = (ctx.graph, ctx.tree);
    let root = types.graph.root();
    let mut keys: Vec<StateKey> = vec![(*g, root, root)];
    let mut index: HashMap<StateKey, usize> = HashMap::from([((*g, root, root), 0)]);
    let mut states = Vec::new();
    let mut inverse_marks: HashMap<NodeId, GroupElement> = HashMap::new();
    let mut k = 0;
    while k < keys.len() {
        let (h, t_in, t_out) = keys[k];
        let (rep_in, rep_out) = (rigid.representatives[t_in], rigid.representatives[t_out]);
        let target = tree.path(rep_out);
        let map = DartMap::new(graph, (graph.base(), 0), (h.base_image(), h.base_port()))?;
        let mut trans = Vec::new();
        for &c in tree.children(rep_in) {
            let x = image_atom(ctx, &map, c, config.margin)?;
            if tree.level(x) >= tree.depth() {
                return Err(TransducerError::Radius(format!(
                    "image of node {c} reaches the last tree level; a deeper tree is needed"
                )));
            }
            let path = tree.path(x);
            if !path.starts_with(&target) {
                return Err(TransducerError::Audit(format!(
                    "image of node {c} leaves node {rep_out}"
                )));
            }
            let psi_c_inv = match inverse_marks.get(&c) {
                Some(e) => *e,
                None => {
                    let e = inverse(graph, rigid.marking(c))?;
                    inverse_marks.insert(c, e);
                    e
                }
            };
            let next_h = compose(graph, rigid.marking(x), &compose(graph, &h, &psi_c_inv)?)?;
            let key = (next_h, types.type_of(c), types.type_of(x));
            let next = match index.get(&key) {
                Some(&q) => q,
                None => {
                    if keys.len() >= config.max_states {
                        return Err(TransducerError::Diverged(format!(
                            "{} states without closure; unresolved: {:?}",
                            keys.len(),
                            &keys[k..keys.len().min(k + 8)]
                        )));
                    }
                    keys.push(key);
                    index.insert(key, keys.len() - 1);
                    keys.len() - 1
                }
            };
            trans.push(Transition {
                next,
                output: path[target.len()..].to_vec(),
            });
        }
        states.push(State {
            in_type: t_in,
            out_type: t_out,
            trans,
        });
        k += 1;
    }
    let t = AsyncTransducer {
        input: types.graph.clone(),
        output: types.graph.clone(),
        states,
        init: 0,
    };
    t.validate()?;
    check_nondegenerate(&t)?;
    verify_against_tree(ctx, &t, g, config)?;
    Ok(t)
}

/// Checks the machine against image chains computed directly on the tree
/// for every node down to `verify_depth`. Where the image reaches the last
/// tree level the direct chain only needs to be a prefix of the output.
pub fn verify_against_tree(
    ctx: &TypingContext,
    t: &AsyncTransducer,
    g: &GroupElement,
    config: &SynthesisConfig,
) -> Result<(), TransducerError> {
    let tree = ctx.tree;
    let graph = ctx.graph;
    let map = DartMap::new(graph, (graph.base(), 0), (g.base_image(), g.base_port()))?;
    let last = config.verify_depth.min(tree.depth());
    for v in 0..tree.nodes_at_level(last).end {
        let x = match image_atom(ctx, &map, v, config.margin) {
            Ok(x) => x,
            // Deep nodes whose members leave the ball cannot be checked.
            Err(TransducerError::Radius(_)) => continue,
            Err(e) => return Err(e),
        };
        let expected = tree.path(x);
        let got = t.evaluate(&tree.path(v))?;
        let ok = if tree.level(x) < tree.depth() {
            got == expected
        } else {
            got.starts_with(&expected)
        };
        if !ok {
            return Err(TransducerError::Audit(format!(
                "node {v}: machine gives {got:?}, the tree gives {expected:?}"
            )));
        }
    }
    Ok(())
}
