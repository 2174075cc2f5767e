mod common;

use std::sync::OnceLock;

use common::*;
use horo_graph::GraphSource;
use horo_selfsimilar::{binary_address, canonical_code, reduce, PrefixCode, Reduction};
use horo_transducer::*;

struct Binary {
    st: Setup,
    red: Reduction,
    code: PrefixCode,
}

fn tiling() -> &'static Binary {
    static B: OnceLock<Binary> = OnceLock::new();
    B.get_or_init(|| {
        let st = setup(GraphSource::Tiling { p: 4, q: 5 }, 4, 4, 1);
        let red = reduce(&st.types.graph).unwrap();
        let code = canonical_code(&red.graph);
        Binary { st, red, code }
    })
}

fn reduced(word: &str) -> AsyncTransducer {
    let b = tiling();
    reduce_transducer(&b.st.machine(word), &b.red).unwrap()
}

fn binary(word: &str) -> AsyncTransducer {
    to_binary(&reduced(word), &tiling().code).unwrap()
}

fn bits(w: &[bool]) -> Vec<usize> {
    w.iter().map(|&b| b as usize).collect()
}

#[test]
fn reduced_machines_keep_the_relations() {
    let b = tiling();
    let id = AsyncTransducer::identity(&b.red.graph);
    let s = reduced("s");
    assert!(bounded_equivalent(&compose(&s, &s).unwrap(), &id, 8).unwrap());
    let r = reduced("r");
    let r5 = (0..4).fold(r.clone(), |acc, _| compose(&acc, &r).unwrap());
    assert!(bounded_equivalent(&r5, &id, 8).unwrap());
    check_nondegenerate(&s).unwrap();
}

#[test]
fn reduced_machine_reads_original_chains() {
    let b = tiling();
    let (t, rt) = (b.st.machine("s"), reduced("s"));
    // Map reduced chains to original chains and compare after dropping
    // the forced symbols of the single-slot type.
    for w in words(&b.red.graph, 4) {
        let mut ty = 0;
        let mut original = Vec::new();
        for &j in &w {
            original.extend(b.red.paths[ty][j].clone().unwrap());
            ty = b.red.graph.children(ty)[j];
        }
        let full = t.evaluate(&original).unwrap();
        let short = rt.evaluate(&w).unwrap();
        let mut expanded = Vec::new();
        let mut ty = 0;
        for &j in &short {
            expanded.extend(b.red.paths[ty][j].clone().unwrap());
            ty = b.red.graph.children(ty)[j];
        }
        assert!(
            full.starts_with(&expanded) && full.len() <= expanded.len() + 1,
            "{w:?}"
        );
    }
}

#[test]
fn binary_rotation_agrees_with_addresses() {
    let b = tiling();
    let (r, br) = (reduced("r"), binary("r"));
    for w in words(&b.red.graph, 5) {
        let image = r.evaluate(&w).unwrap();
        let addr = binary_address(&b.red.graph, &b.code, &w).unwrap();
        let expected = binary_address(&b.red.graph, &b.code, &image).unwrap();
        assert_eq!(br.evaluate(&bits(&addr)).unwrap(), bits(&expected), "{w:?}");
    }
}

#[test]
fn binary_relations_hold_on_bits() {
    let id = AsyncTransducer::identity(&binary_graph());
    let br = binary("r");
    let r5 = (0..4).fold(br.clone(), |acc, _| compose(&acc, &br).unwrap());
    assert!(bounded_equivalent(&r5, &id, 12).unwrap());
    let bs = binary("s");
    assert!(bounded_equivalent(&compose(&bs, &bs).unwrap(), &id, 12).unwrap());
    assert!(!bounded_equivalent(&bs, &id, 12).unwrap());
    check_nondegenerate(&bs).unwrap();
}

#[test]
fn binary_identity_minimizes_to_one_state() {
    let bid = binary("");
    assert!(bid.len() > 1);
    let pushed = push_outputs(&bid, 64).unwrap();
    assert!(bounded_equivalent(&pushed, &bid, 12).unwrap());
    assert_eq!(
        minimize(&pushed, 20),
        AsyncTransducer::identity(&binary_graph())
    );
}

#[test]
fn binary_rewriting_needs_a_branching_graph() {
    let b = tiling();
    let t = b.st.machine("r");
    let code = canonical_code(&b.st.types.graph);
    assert!(matches!(
        to_binary(&t, &code),
        Err(TransducerError::NotBranching(_))
    ));
}
