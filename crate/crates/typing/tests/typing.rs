use std::sync::OnceLock;

use horo_atoms::{build_atom_tree, AtomTree};
use horo_graph::{build_ball, Distances, GraphSource, LayeredGraph, Vid};
use horo_group::{element_from_word, GroupElement};
use horo_typing::*;

struct Fixture {
    g: LayeredGraph,
    dist: Distances,
    tree: AtomTree,
}

fn fixture(src: GraphSource, radius: u32, depth: u32, horizon: u32) -> Fixture {
    let g = build_ball(&src, radius).unwrap();
    let dist = Distances::new(&g, depth + 1);
    let tree = build_atom_tree(&g, &dist, depth, horizon).unwrap();
    Fixture { g, dist, tree }
}

fn tiling() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| fixture(GraphSource::Tiling { p: 4, q: 5 }, 8, 4, 4))
}

fn ctx(f: &Fixture, delta: u32) -> TypingContext<'_> {
    TypingContext::new(&f.g, &f.dist, &f.tree, delta, 3).unwrap()
}

fn tiling_types() -> &'static Classification {
    static C: OnceLock<Classification> = OnceLock::new();
    C.get_or_init(|| classify_types(&ctx(tiling(), 1), 10).unwrap())
}

fn graph(layout: &[(&str, &[&str])]) -> TypeGraph {
    let names: Vec<&str> = layout.iter().map(|s| s.0).collect();
    let types = layout
        .iter()
        .map(|(n, kids)| TypeEntry {
            name: n.to_string(),
            children: kids
                .iter()
                .map(|k| names.iter().position(|x| x == k).unwrap())
                .collect(),
        })
        .collect();
    TypeGraph::new(types).unwrap()
}

fn tiling_expected() -> TypeGraph {
    graph(&[
        ("A", &["B", "C", "B", "C", "B", "C", "B", "C", "B", "C"]),
        ("B", &["B", "C", "B"]),
        ("C", &["C", "D", "C"]),
        ("D", &["B"]),
    ])
}

#[test]
fn tiling_has_four_types() {
    let c = tiling_types();
    assert_eq!(c.graph, tiling_expected());
    let tree = &tiling().tree;
    // Out-degree of a type is the child count of every node of that type.
    for id in 0..tree.len() {
        if !tree.children(id).is_empty() {
            assert_eq!(tree.children(id).len(), c.graph.arity(c.type_of(id)));
        }
    }
    assert_eq!(c.type_of(tree.root()), 0);
    assert_eq!(c.representatives, vec![0, 1, 2, 15]);
}

#[test]
fn types_per_level_stabilize() {
    let c = tiling_types();
    let tree = &tiling().tree;
    let seen = |n: u32| {
        let mut s: Vec<usize> = tree.nodes_at_level(n).map(|id| c.type_of(id)).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    assert_eq!(seen(1), vec![1, 2]);
    for n in 2..=4 {
        assert_eq!(seen(n), vec![1, 2, 3]);
    }
}

#[test]
fn identity_is_an_equivalence() {
    let f = tiling();
    let cx = ctx(f, 1);
    for id in [0, 1, 2, 15, 40] {
        assert!(check_geometric_equivalence(&cx, &GroupElement::IDENTITY, id, id, 3).unwrap());
        let w = find_morphism(&cx, id, id, 10).unwrap();
        assert!(w.element.is_identity());
    }
}

#[test]
fn rotation_moves_atoms_two_slots() {
    let f = tiling();
    let cx = ctx(f, 1);
    let r = element_from_word(&f.g, "r").unwrap();
    let slot = |i: usize| f.tree.follow(0, &[i]).unwrap();
    for i in 0..10 {
        assert!(check_geometric_equivalence(&cx, &r, slot(i), slot((i + 2) % 10), 3).unwrap());
        assert!(!check_geometric_equivalence(&cx, &r, slot(i), slot((i + 4) % 10), 3).unwrap());
    }
    let w = find_morphism(&cx, slot(1), slot(3), 10).unwrap();
    assert_eq!(w.element, r);
    assert!(w.geometric);
}

#[test]
fn types_b_and_c_are_not_linked() {
    let f = tiling();
    let cx = ctx(f, 1);
    let slot = |i: usize| f.tree.follow(0, &[i]).unwrap();
    for i in (0..10).step_by(2) {
        assert!(find_morphism(&cx, slot(i), slot(1), 10).is_none());
        assert!(find_morphism(&cx, slot(1), slot(i), 10).is_none());
    }
}

#[test]
fn no_level_one_atom_is_equivalent_to_a_level_two_atom() {
    let f = tiling();
    let cx = ctx(f, 1);
    for a in f.tree.nodes_at_level(1) {
        for b in f.tree.nodes_at_level(2) {
            for w in all_morphisms(&cx, a, b, 10) {
                assert!(!w.geometric);
                assert!(!check_geometric_equivalence(&cx, &w.element, a, b, 3).unwrap());
            }
        }
    }
    // Same-type atoms across the two levels are still linked by morphisms.
    let c = tiling_types();
    let b1 = f.tree.follow(0, &[0]).unwrap();
    let b2 = f.tree.follow(0, &[0, 0]).unwrap();
    assert_eq!(c.type_of(b1), c.type_of(b2));
    assert!(find_morphism(&cx, b1, b2, 10).is_some());
}

/// Members at every level, mapped with the element's own transport.
fn maps_members(f: &Fixture, e: &GroupElement, a: usize, b: usize, depth: u32) -> bool {
    let (m, n) = (f.tree.level(a), f.tree.level(b));
    let k = depth.min(f.g.radius() - m.max(n));
    let src: Vec<Vid> = f
        .tree
        .members(a)
        .iter()
        .copied()
        .filter(|&x| f.g.level(x) <= m + k)
        .collect();
    let mut img: Vec<Vid> = src.iter().map(|&x| e.act(&f.g, x).unwrap()).collect();
    img.sort_unstable();
    let dst: Vec<Vid> = f
        .tree
        .members(b)
        .iter()
        .copied()
        .filter(|&x| f.g.level(x) <= n + k)
        .collect();
    img == dst
        && src
            .iter()
            .all(|&x| f.g.level(e.act(&f.g, x).unwrap()) + m == f.g.level(x) + n)
}

#[test]
fn witnesses_are_sound_and_keep_types() {
    let f = tiling();
    let c = tiling_types();
    assert!(!c.merges.is_empty());
    for w in &c.merges {
        assert!(
            maps_members(f, &w.element, w.source, w.target, w.checked_depth),
            "{w:?}"
        );
        assert_eq!(c.type_of(w.source), c.type_of(w.target));
        let (ks, kt) = (f.tree.children(w.source), f.tree.children(w.target));
        for (i, &j) in w.slot_map.iter().enumerate() {
            assert_eq!(c.type_of(ks[i]), c.type_of(kt[j]));
        }
    }
}

#[test]
fn morphisms_are_unique_and_keep_slot_order() {
    let f = tiling();
    let cx = ctx(f, 1);
    let c = tiling_types();
    for b in 1..f.tree.nodes_at_level(3).end {
        let rep = c.representative(c.type_of(b));
        let ws = all_morphisms(&cx, rep, b, 10);
        assert_eq!(ws.len(), 1, "node {b}");
        let w = &ws[0];
        if !w.slot_map.is_empty() {
            assert_eq!(w.slot_map, (0..w.slot_map.len()).collect::<Vec<_>>());
        }
    }
}

#[test]
fn equal_signatures_come_from_geometric_equivalences() {
    let f = tiling();
    let cx = ctx(f, 1);
    for n in 1..=3 {
        let nodes: Vec<usize> = f.tree.nodes_at_level(n).collect();
        let sigs: Vec<AtomSignature> = nodes
            .iter()
            .map(|&id| atom_signature(&cx, id).unwrap())
            .collect();
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len().min(i + 12) {
                if sigs[i] == sigs[j] {
                    let w = find_morphism(&cx, nodes[i], nodes[j], 10).unwrap();
                    assert!(w.geometric);
                    assert!(
                        check_geometric_equivalence(&cx, &w.element, nodes[i], nodes[j], 3)
                            .unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn free_group_has_two_types() {
    let f = fixture(GraphSource::Free { rank: 2 }, 8, 4, 3);
    let c = classify_types(&ctx(&f, 0), 10).unwrap();
    // The tree of atoms of a regular tree is the tree itself: the root has
    // one child per edge, every other vertex one per edge leading away.
    let expected = graph(&[("A", &["B", "B", "B", "B"]), ("B", &["B", "B", "B"])]);
    assert_eq!(c.graph, expected);
    for n in 0..=4 {
        assert_eq!(
            f.tree.nodes_at_level(n).len() as u64,
            expected.count_paths(0, n)
        );
    }
}

#[test]
fn line_has_a_root_and_two_chains() {
    let f = fixture(GraphSource::Line, 8, 4, 4);
    let c = classify_types(&ctx(&f, 0), 10).unwrap();
    assert_eq!(
        c.graph,
        graph(&[("A", &["B", "C"]), ("B", &["B"]), ("C", &["C"])])
    );
}

#[test]
fn depth_zero_gives_a_single_type() {
    let f = fixture(GraphSource::Tiling { p: 4, q: 5 }, 4, 0, 4);
    let c = classify_types(&ctx(&f, 1), 10).unwrap();
    assert_eq!(c.graph.len(), 1);
    assert!(c.graph.children(0).is_empty());
    assert_eq!(
        c.graph.to_dot(),
        "digraph types {\n  A [shape=doublecircle];\n}\n"
    );
}

#[test]
fn dot_export_shows_edge_multiplicities() {
    let tg = &tiling_types().graph;
    let dot = export_type_graph(tg, GraphFormat::Dot);
    assert_eq!(dot.matches("shape=").count(), 4);
    let mult: Vec<usize> = tg.grouped_edges().iter().map(|e| e.2.len()).collect();
    assert_eq!(mult, vec![5, 5, 2, 1, 2, 1, 1]);
    assert!(dot.contains("A -> B [label=\"0,2,4,6,8\"];"));
    assert!(dot.contains("C -> D [label=\"1\"];"));
}

#[test]
fn text_export_round_trips() {
    let tg = &tiling_types().graph;
    let text = export_type_graph(tg, GraphFormat::Text);
    assert!(text.starts_with("type A\nchild 0 B\n"));
    assert_eq!(TypeGraph::parse(&text).unwrap(), *tg);
    assert!(TypeGraph::parse("child 0 A").is_err());
    assert!(TypeGraph::parse("type A\nchild 1 A").is_err());
    assert!(TypeGraph::parse("type A\nchild 0 Z").is_err());
    assert!(TypeGraph::parse("type A\ntype A").is_err());
}
