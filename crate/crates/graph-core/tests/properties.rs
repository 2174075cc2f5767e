use horo_graph::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn source() -> impl Strategy<Value = GraphSource> {
    prop_oneof![
        Just(GraphSource::Tiling { p: 4, q: 5 }),
        Just(GraphSource::Tiling { p: 3, q: 7 }),
        Just(GraphSource::Tiling { p: 5, q: 4 }),
        (1usize..=3).prop_map(|rank| GraphSource::Free { rank }),
        Just(GraphSource::Line),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn layers_are_consistent(src in source(), r in 0u32..5) {
        let g = build_ball(&src, r).unwrap();
        prop_assert!(g.check_invariants().is_ok());
        let mut total = 0;
        for n in 0..=r {
            for x in g.sphere(n) {
                prop_assert_eq!(g.level(x), n);
            }
            total += g.sphere_len(n);
            prop_assert_eq!(g.ball_len(n), total);
        }
    }

    #[test]
    fn distance_is_a_metric(src in source(), seed in any::<u64>()) {
        let g = build_ball(&src, 5).unwrap();
        let table = Distances::new(&g, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = table.num_sources() as Vid;
        for _ in 0..40 {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let (ab, bc, ac) = (table.get(a, b).unwrap(), table.get(b, c).unwrap(), table.get(a, c).unwrap());
            prop_assert_eq!(ab, table.get(b, a).unwrap());
            prop_assert!(ac <= ab + bc);
            prop_assert_eq!(ab == 0, a == b);
        }
    }

    #[test]
    fn certified_distance_matches_fresh_bfs(seed in any::<u64>()) {
        let g = build_ball(&GraphSource::Tiling { p: 4, q: 5 }, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..40 {
            let a = rng.gen_range(0..g.ball_len(3) as Vid);
            let b = rng.gen_range(0..g.len() as Vid);
            let d = distance(&g, a, b).unwrap();
            if d.certified {
                // Full BFS from a vertex well inside agrees with the certified value.
                prop_assert_eq!(d.value, g.bfs(a, u32::MAX)[b as usize]);
            }
        }
    }

    #[test]
    fn cone_is_successor_closed(src in source(), k in 0u32..3) {
        let g = build_ball(&src, 4).unwrap();
        for x in 0..g.ball_len(2) as Vid {
            let c = cone(&g, x, k).unwrap();
            prop_assert!(c.contains(&x));
            for &y in &c {
                if g.level(y) < g.level(x) + k {
                    for z in g.successors(y) {
                        prop_assert!(c.binary_search(&z).is_ok());
                    }
                }
            }
        }
    }
}
