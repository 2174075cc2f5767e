#![allow(dead_code)]

use horo_atoms::{build_atom_tree, AtomTree};
use horo_graph::{build_ball, Distances, GraphSource, LayeredGraph};
use horo_group::{element_from_word, GroupElement};
use horo_selfsimilar::{build_rigid_structure, RigidStructure};
use horo_transducer::*;
use horo_typing::{classify_types, Classification, TypeGraph, TypingContext};

pub struct World {
    pub g: LayeredGraph,
    pub dist: Distances,
    pub tree: AtomTree,
}

pub struct Setup {
    pub ctx: TypingContext<'static>,
    pub types: Classification,
    pub rigid: RigidStructure,
}

pub fn setup(src: GraphSource, depth: u32, horizon: u32, delta: u32) -> Setup {
    let g = build_ball(&src, 8).unwrap();
    let dist = Distances::new(&g, depth + 1);
    let tree = build_atom_tree(&g, &dist, depth, horizon).unwrap();
    let world: &'static World = Box::leak(Box::new(World { g, dist, tree }));
    let ctx = TypingContext::new(&world.g, &world.dist, &world.tree, delta, 3).unwrap();
    let types = classify_types(&ctx, 10).unwrap();
    let rigid = build_rigid_structure(&ctx, &types, 10).unwrap();
    Setup { ctx, types, rigid }
}

impl Setup {
    pub fn element(&self, word: &str) -> GroupElement {
        element_from_word(self.ctx.graph, word).unwrap()
    }

    pub fn machine(&self, word: &str) -> AsyncTransducer {
        let cfg = SynthesisConfig {
            verify_depth: self.ctx.tree.depth(),
            ..Default::default()
        };
        synthesize_action_transducer(
            &self.ctx,
            &self.types,
            &self.rigid,
            &self.element(word),
            &cfg,
        )
        .unwrap()
    }

    /// Deepest tree node whose member set holds every image of the members
    /// of `v`, found by scanning all nodes.
    pub fn brute_image(&self, e: &GroupElement, v: usize) -> usize {
        let (g, tree) = (self.ctx.graph, self.ctx.tree);
        let images: Vec<u32> = tree
            .members(v)
            .iter()
            .filter_map(|&x| e.act(g, x).ok())
            .collect();
        let mut best = tree.root();
        for w in 0..tree.len() {
            let ms = tree.members(w);
            if tree.level(w) > tree.level(best)
                && images.iter().all(|y| ms.binary_search(y).is_ok())
            {
                best = w;
            }
        }
        best
    }
}

/// Every valid input word of length exactly `len` from the root type.
pub fn words(tg: &TypeGraph, len: usize) -> Vec<Vec<usize>> {
    let mut layer = vec![(tg.root(), Vec::new())];
    for _ in 0..len {
        let mut next = Vec::new();
        for (t, w) in layer {
            for (i, &c) in tg.children(t).iter().enumerate() {
                let mut w2: Vec<usize> = w.clone();
                w2.push(i);
                next.push((c, w2));
            }
        }
        layer = next;
    }
    layer.into_iter().map(|x| x.1).collect()
}

pub fn reference(name: &str) -> AsyncTransducer {
    let text = match name {
        "r" => include_str!("../fixtures/reference_r.txt"),
        "s" => include_str!("../fixtures/reference_s.txt"),
        _ => unreachable!(),
    };
    AsyncTransducer::parse(text).unwrap()
}
