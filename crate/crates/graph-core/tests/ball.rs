use horo_graph::*;

fn tiling(r: u32) -> LayeredGraph {
    build_ball(&"tiling:4,5".parse().unwrap(), r).unwrap()
}

fn spheres(g: &LayeredGraph) -> Vec<usize> {
    (0..=g.radius()).map(|n| g.sphere_len(n)).collect()
}

#[test]
fn tiling_sphere_sizes() {
    assert_eq!(spheres(&tiling(1)), [1, 5]);
    assert_eq!(spheres(&tiling(2)), [1, 5, 15]);
    // Growth x' = 2x + y, y' = x + y over the two cone types.
    assert_eq!(
        spheres(&tiling(8)),
        [1, 5, 15, 40, 105, 275, 720, 1885, 4935]
    );
}

#[test]
fn free_and_line_sizes() {
    let g = build_ball(&GraphSource::Free { rank: 2 }, 3).unwrap();
    assert_eq!(g.sphere_len(3), 36);
    let g = build_ball(&GraphSource::Line, 4).unwrap();
    assert_eq!(spheres(&g), [1, 2, 2, 2, 2]);
}

#[test]
fn invariants_and_faces() {
    for (p, q) in [(4, 5), (3, 7), (5, 4), (6, 6)] {
        let g = build_ball(&GraphSource::Tiling { p, q }, 5).unwrap();
        g.check_invariants().unwrap();
        g.check_faces(p, 5 - (p as u32) / 2).unwrap();
    }
    for src in ["free:3", "line"] {
        build_ball(&src.parse().unwrap(), 5)
            .unwrap()
            .check_invariants()
            .unwrap();
    }
}

#[test]
fn ids_are_stable_across_radii() {
    let small = tiling(5);
    let big = tiling(7);
    for x in 0..small.ball_len(4) as Vid {
        assert_eq!(small.ports(x), big.ports(x), "vertex {x}");
        assert_eq!(small.geodesic_parent(x), big.geodesic_parent(x));
    }
}

#[test]
fn geodesic_parents_step_inward() {
    let g = tiling(5);
    for x in 1..g.len() as Vid {
        let (u, p) = g.geodesic_parent(x).unwrap();
        assert_eq!(g.level(u) + 1, g.level(x));
        assert_eq!(g.ports(u)[p], Some(x));
        assert_eq!(g.geodesic_ports(x).len() as u32, g.level(x));
    }
    for n in 1..=5 {
        let ranks: Vec<u32> = g.sphere(n).map(|x| g.angular_rank(x)).collect();
        assert_eq!(ranks, (0..g.sphere_len(n) as u32).collect::<Vec<_>>());
    }
}

#[test]
fn distance_examples() {
    let g = tiling(4);
    let base = g.base();
    assert_eq!(
        distance(&g, base, base).unwrap(),
        Distance {
            value: 0,
            certified: true
        }
    );
    for v in g.sphere(2) {
        assert_eq!(distance(&g, base, v).unwrap().value, 2);
    }
    // Two S1 corners of a square through the base: the oracle is a plain
    // BFS restricted to B3.
    let a = g.sphere(1).start;
    let b = a + 1;
    let oracle = g.bfs(a, 2)[b as usize];
    assert_eq!(oracle, 2);
    assert_eq!(distance(&g, a, b).unwrap().value, oracle);
}

#[test]
fn certified_distances_match_a_larger_ball() {
    let g = tiling(6);
    let big = tiling(10);
    let table = Distances::new(&g, 3);
    let mut certified = 0;
    for src in 0..table.num_sources() as Vid {
        let truth = big.bfs(src, u32::MAX);
        for (x, &d) in table.row(src).iter().enumerate() {
            if d != UNCERTIFIED {
                assert_eq!(d as u32, truth[x], "d({src},{x})");
                certified += 1;
            }
        }
    }
    assert!(certified > table.num_sources() * g.len() / 2);
}

#[test]
fn uncertified_distance_is_flagged() {
    // An 8-cycle cut at radius 3: the rim vertices 3 and 5 are two steps
    // apart through the missing vertex 4, but six steps apart inside.
    let text =
        "base 0\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 5\nedge 5 6\nedge 6 7\nedge 7 0\n";
    let g = ball_from_edge_list(text, 3).unwrap();
    let (a, b) = (g.sphere(3).start, g.sphere(3).start + 1);
    assert_eq!(
        distance(&g, a, b).unwrap(),
        Distance {
            value: 6,
            certified: false
        }
    );
    assert!(distance(&g, g.base(), a).unwrap().certified);
    // Read whole, the same cycle certifies everything.
    let whole = ball_from_edge_list(text, 4).unwrap();
    let table = Distances::new(&whole, 4);
    assert!((0..whole.len() as Vid).all(|x| table.row(0)[x as usize] != UNCERTIFIED));
}

#[test]
fn cone_examples() {
    let g = tiling(4);
    for k in 0..=3 {
        let all: Vec<Vid> = (0..g.ball_len(k) as Vid).collect();
        assert_eq!(cone(&g, g.base(), k).unwrap(), all);
    }
    for v in g.sphere(2) {
        assert_eq!(cone(&g, v, 0).unwrap(), vec![v]);
    }
    // Oracle: vertices y one layer out with d(v, y) = 1.
    for v in g.sphere(1) {
        let dist = g.bfs(v, u32::MAX);
        let mut oracle: Vec<Vid> = g
            .sphere(2)
            .filter(|&y| dist[y as usize] == 1)
            .chain([v])
            .collect();
        oracle.sort_unstable();
        assert_eq!(cone(&g, v, 1).unwrap(), oracle);
        assert_eq!(oracle.len(), 5, "every S1 vertex has four successors");
    }
    assert!(matches!(
        cone(&g, g.sphere(3).start, 2),
        Err(GraphError::Radius(_))
    ));
}

#[test]
fn cone_matches_geodesic_enumeration() {
    let g = tiling(5);
    let dist0 = g.bfs(g.base(), u32::MAX);
    for x in 0..g.ball_len(2) as Vid {
        let dx = g.bfs(x, u32::MAX);
        for k in 0..=2 {
            let got = cone(&g, x, k).unwrap();
            let want: Vec<Vid> = (0..g.ball_len(g.level(x) + k) as Vid)
                .filter(|&y| {
                    dx[y as usize] <= k && dist0[y as usize] == g.level(x) + dx[y as usize]
                })
                .collect();
            assert_eq!(got, want, "cone({x},{k})");
        }
    }
}

#[test]
fn signature_examples() {
    let g = tiling(5);
    let s1: Vec<ConeSignature> = g
        .sphere(1)
        .map(|v| cone_signature(&g, v, 2).unwrap())
        .collect();
    assert!(s1.windows(2).all(|w| w[0] == w[1]));
    let two_preds = g
        .sphere(2)
        .find(|&w| g.predecessors(w).count() == 2)
        .unwrap();
    assert_ne!(s1[0], cone_signature(&g, two_preds, 2).unwrap());

    let f = build_ball(&GraphSource::Free { rank: 2 }, 5).unwrap();
    for k in 0..=2 {
        let sigs: Vec<ConeSignature> = (1..f.ball_len(3) as Vid)
            .map(|v| cone_signature(&f, v, k).unwrap())
            .collect();
        assert!(sigs.windows(2).all(|w| w[0] == w[1]));
    }
}

#[test]
fn file_signatures_are_isomorphism_invariant() {
    // The same 6-cycle with two different labelings.
    let a = "base 0\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 5\nedge 5 0\n";
    let b = "base 10\nedge 10 42\nedge 42 7\nedge 7 3\nedge 3 99\nedge 99 1\nedge 1 10\n";
    let ga = ball_from_edge_list(a, 3).unwrap();
    let gb = ball_from_edge_list(b, 3).unwrap();
    assert_eq!(
        cone_signature(&ga, 0, 3).unwrap(),
        cone_signature(&gb, 0, 3).unwrap()
    );
    assert_eq!(spheres(&ga), [1, 2, 2, 1]);
}

#[test]
fn cone_types_stabilize() {
    let count = |r: u32| {
        let g = tiling(r);
        let mut sigs: Vec<ConeSignature> = (1..g.ball_len(3) as Vid)
            .map(|v| cone_signature(&g, v, 2).unwrap())
            .collect();
        sigs.sort();
        sigs.dedup();
        sigs.len()
    };
    assert_eq!(count(5), 2);
    assert_eq!(count(6), 2);
}

/// Exhaustive thinness over explicitly enumerated geodesics.
fn brute_delta(g: &LayeredGraph, r: u32) -> u32 {
    let all: Vec<Vec<u32>> = (0..g.len() as Vid).map(|x| g.bfs(x, u32::MAX)).collect();
    let d = |x: Vid, y: Vid| all[x as usize][y as usize];
    fn geodesics(g: &LayeredGraph, d: &dyn Fn(Vid, Vid) -> u32, a: Vid, c: Vid) -> Vec<Vec<Vid>> {
        if a == c {
            return vec![vec![a]];
        }
        let mut out = Vec::new();
        for w in g.neighbors(a).filter(|&w| d(w, c) + 1 == d(a, c)) {
            for mut p in geodesics(g, d, w, c) {
                p.insert(0, a);
                out.push(p);
            }
        }
        out
    }
    let n = g.ball_len(r) as Vid;
    let far = |w: Vid, paths: &[Vec<Vid>]| {
        paths
            .iter()
            .map(|p| p.iter().map(|&y| d(w, y)).min().unwrap())
            .max()
            .unwrap()
    };
    let mut best = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (ab, ac, bc) = (
                    geodesics(g, &d, a, b),
                    geodesics(g, &d, a, c),
                    geodesics(g, &d, b, c),
                );
                for w in ab.iter().flatten() {
                    best = best.max(far(*w, &ac).min(far(*w, &bc)));
                }
            }
        }
    }
    best
}

#[test]
fn delta_examples() {
    let f = build_ball(&GraphSource::Free { rank: 2 }, 6).unwrap();
    let l = build_ball(&GraphSource::Line, 8).unwrap();
    for r in 0..=3 {
        assert_eq!(estimate_delta(&f, r).unwrap(), 0);
        assert_eq!(estimate_delta(&l, r).unwrap(), 0);
    }
    let g = tiling(7);
    let deltas: Vec<u32> = (0..=3).map(|r| estimate_delta(&g, r).unwrap()).collect();
    assert!(deltas.windows(2).all(|w| w[0] <= w[1]));
    assert!(deltas[3] >= 1);
    assert_eq!(deltas[2], brute_delta(&g, 2));
    assert!(matches!(
        estimate_delta(&tiling(2), 3),
        Err(GraphError::Radius(_))
    ));
}

#[test]
fn source_parsing() {
    assert_eq!(
        "tiling:4,5".parse::<GraphSource>().unwrap(),
        GraphSource::Tiling { p: 4, q: 5 }
    );
    assert_eq!(
        "free:2".parse::<GraphSource>().unwrap().to_string(),
        "free:2"
    );
    for bad in ["tiling:4,4", "tiling:3,6", "free:0", "torus", "tiling:4"] {
        assert!(
            matches!(bad.parse::<GraphSource>(), Err(GraphError::Input(_))),
            "{bad}"
        );
    }
}

#[test]
fn edge_list_errors() {
    for bad in [
        "edge 0 1\n",
        "base 0\nbase 1\nedge 0 1\n",
        "base 0\nedge 0 0\n",
        "base 0\nedge 0 1\nedge 1 0\n",
        "base 5\nedge 0 1\n",
        "base 0\nvertex 3\n",
    ] {
        assert!(
            matches!(ball_from_edge_list(bad, 2), Err(GraphError::Input(_))),
            "{bad:?}"
        );
    }
    assert!(matches!(
        build_ball(&GraphSource::Line, MAX_RADIUS + 1),
        Err(GraphError::Radius(_))
    ));
}
