mod common;

use std::sync::OnceLock;

use common::*;
use horo_graph::{estimate_delta, GraphSource};
use horo_selfsimilar::reduce;
use horo_transducer::*;

fn free() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| setup(GraphSource::Free { rank: 2 }, 6, 2, 0))
}

fn line() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| setup(GraphSource::Line, 4, 4, 0))
}

#[test]
fn free_group_is_a_tree_with_two_types() {
    let st = free();
    assert_eq!(estimate_delta(st.ctx.graph, 3).unwrap(), 0);
    let tg = &st.types.graph;
    assert_eq!(tg.len(), 2);
    assert_eq!(tg.children(0), &[1, 1, 1, 1]);
    assert_eq!(tg.children(1), &[1, 1, 1]);
}

#[test]
fn free_generators_are_prefix_replacements() {
    let st = free();
    let tree = st.ctx.tree;
    for word in ["a", "b", "A", "B"] {
        let t = st.machine(word);
        let e = st.element(word);
        for w in words(&t.input, 6) {
            let out = t.evaluate(&w).unwrap();
            let ok = out.len() <= w.len() + 1 && (0..=2).any(|k| out.ends_with(&w[k..]));
            assert!(ok, "{word}: {w:?} gives {out:?}");
        }
        for v in 0..tree.len() {
            let x = st.brute_image(&e, v);
            let got = t.evaluate(&tree.path(v)).unwrap();
            if tree.level(x) < tree.depth() {
                assert_eq!(got, tree.path(x), "{word} at node {v}");
            } else {
                assert!(got.starts_with(&tree.path(x)), "{word} at node {v}");
            }
        }
    }
}

#[test]
fn free_generators_cancel_their_inverses() {
    let st = free();
    let id = AsyncTransducer::identity(&st.types.graph);
    for (x, y) in [("a", "A"), ("b", "B"), ("A", "a")] {
        let c = compose(&st.machine(x), &st.machine(y)).unwrap();
        assert!(bounded_equivalent(&c, &id, 8).unwrap(), "{x}{y}");
    }
    assert!(!bounded_equivalent(&st.machine("a b"), &st.machine("b a"), 6).unwrap());
}

#[test]
fn line_has_two_boundary_points_and_trivial_machines() {
    let st = line();
    assert_eq!(estimate_delta(st.ctx.graph, 3).unwrap(), 0);
    let tg = &st.types.graph;
    assert_eq!(tg.len(), 3);
    assert_eq!(tg.children(0), &[1, 2]);
    let red = reduce(tg).unwrap();
    assert_eq!(red.graph.len(), 2);
    assert_eq!(red.graph.children(0), &[1, 1]);
    assert_eq!(red.graph.children(1), &[1, 1]);
    let id = AsyncTransducer::identity(&red.graph);
    for word in ["t", "t t", "t^-1"] {
        let t = st.machine(word);
        check_nondegenerate(&t).unwrap();
        let reduced = reduce_transducer(&t, &red).unwrap();
        assert!(bounded_equivalent(&reduced, &id, 8).unwrap(), "{word}");
    }
}
