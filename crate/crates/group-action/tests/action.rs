use horo_graph::{build_ball, distance, Distances, GraphSource, LayeredGraph, Vid};
use horo_group::*;

fn tiling(r: u32) -> LayeredGraph {
    build_ball(&GraphSource::Tiling { p: 4, q: 5 }, r).unwrap()
}

fn word(g: &LayeredGraph, w: &str) -> GroupElement {
    element_from_word(g, w).unwrap()
}

#[test]
fn identity_word() {
    let g = tiling(4);
    let e = word(&g, "");
    assert!(e.is_identity());
    for x in 0..g.len() as Vid {
        assert_eq!(e.act(&g, x).unwrap(), x);
    }
}

#[test]
fn rotation_fixes_base_and_cycles_the_first_sphere() {
    let g = tiling(4);
    let r = word(&g, "r");
    assert_eq!(r.act(&g, g.base()).unwrap(), g.base());
    assert_eq!(r.magnitude(&g), 0);
    let s1: Vec<Vid> = g.sphere(1).collect();
    let image: Vec<Vid> = s1.iter().map(|&v| r.act(&g, v).unwrap()).collect();
    // Counterclockwise: port i goes to port i + 1.
    for (i, &v) in s1.iter().enumerate() {
        let p = g.port_to(g.base(), v).unwrap();
        assert_eq!(Some(image[i]), g.ports(g.base())[(p + 1) % 5]);
    }
    let mut sorted = image.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, s1);
}

#[test]
fn tiling_relations() {
    let g = tiling(7);
    for rel in ["r^5", "ss", "(rs)^4", "(sr)^4", "r s s r^-1"] {
        let e = word(&g, rel);
        assert!(e.is_identity(), "{rel}");
        assert!(equal_on_ball(&g, &e, &GroupElement::IDENTITY, 4), "{rel}");
    }
    let r = word(&g, "r");
    let five = (0..5)
        .try_fold(GroupElement::IDENTITY, |acc, _| compose(&g, &r, &acc))
        .unwrap();
    assert!(equal_on_ball(&g, &five, &GroupElement::IDENTITY, 5));
    let s = word(&g, "s");
    assert_eq!(inverse(&g, &s).unwrap(), s);
    assert!(!equal_on_ball(&g, &r, &word(&g, "r^2"), 1));
}

#[test]
fn magnitude_of_s_matches_bfs() {
    let g = tiling(4);
    let s = word(&g, "s");
    let image = s.act(&g, g.base()).unwrap();
    assert_eq!(s.magnitude(&g), g.bfs(g.base(), u32::MAX)[image as usize]);
    assert_eq!(s.magnitude(&g), 1);
}

#[test]
fn stabilizer_is_cyclic_of_order_five() {
    let g = tiling(4);
    let stab = stabilizer(&g);
    assert_eq!(stab.len(), 5);
    let r = word(&g, "r");
    let mut powers = vec![GroupElement::IDENTITY];
    for _ in 1..5 {
        powers.push(compose(&g, &r, powers.last().unwrap()).unwrap());
    }
    powers.sort();
    let mut stab = stab;
    stab.sort();
    assert_eq!(powers, stab);
}

#[test]
fn action_is_an_isometry() {
    let g = tiling(7);
    let table = Distances::new(&g, 3);
    for w in ["s", "rs", "srs", "r^2 s r"] {
        let e = word(&g, w);
        let map = ActionMap::new(&g, &e, 3);
        for x in 0..g.ball_len(2) as Vid {
            for y in 0..g.ball_len(3) as Vid {
                let (gx, gy) = (map.get(x).unwrap(), map.get(y).unwrap());
                assert_eq!(
                    distance(&g, gx, gy).unwrap().value,
                    table.get(x, y).unwrap(),
                    "{w}: d({x},{y})"
                );
            }
        }
    }
}

#[test]
fn action_map_matches_transport() {
    let g = tiling(7);
    let e = word(&g, "s r^2 s");
    let map = ActionMap::new(&g, &e, 4);
    for x in 0..g.ball_len(4) as Vid {
        assert_eq!(map.get(x), e.act(&g, x).ok());
        for p in 0..5 {
            assert_eq!(map.get_dart(x, p, &g), e.act_dart(&g, x, p).ok());
        }
    }
}

#[test]
fn composition_and_inverse() {
    let g = tiling(8);
    let elems: Vec<GroupElement> = ["", "r", "s", "rs", "sr^2", "s r s"]
        .iter()
        .map(|w| word(&g, w))
        .collect();
    for a in &elems {
        assert_eq!(compose(&g, a, &GroupElement::IDENTITY).unwrap(), *a);
        let inv = inverse(&g, a).unwrap();
        assert!(compose(&g, &inv, a).unwrap().is_identity());
        assert_eq!(inv.magnitude(&g), a.magnitude(&g));
        for b in &elems {
            let ab = compose(&g, a, b).unwrap();
            assert!(ab.magnitude(&g) <= a.magnitude(&g) + b.magnitude(&g));
            for x in 0..g.ball_len(3) as Vid {
                assert_eq!(
                    ab.act(&g, x).unwrap(),
                    a.act(&g, b.act(&g, x).unwrap()).unwrap()
                );
            }
        }
    }
}

#[test]
fn words_read_left_to_right() {
    let g = tiling(6);
    let (r, s) = (word(&g, "r"), word(&g, "s"));
    assert_eq!(word(&g, "rs"), compose(&g, &s, &r).unwrap());
    assert_eq!(word(&g, "r s"), word(&g, "rs"));
    assert_eq!(word(&g, "rs^2"), r);
    assert_eq!(word(&g, "(rs)^-1"), inverse(&g, &word(&g, "rs")).unwrap());
}

#[test]
fn out_of_ball_is_a_radius_error() {
    let g = tiling(2);
    assert!(matches!(
        element_from_word(&g, "(s r^2)^4 s"),
        Err(GroupError::Radius(_))
    ));
    let s = word(&g, "s");
    let rim = g.sphere(2).start;
    assert!(s.act(&g, rim).is_err() || g.level(s.act(&g, rim).unwrap()) <= 2);
}

#[test]
fn bad_words() {
    let g = tiling(3);
    for w in ["x", "r^", "(rs", "^2", "r^a"] {
        assert!(
            matches!(element_from_word(&g, w), Err(GroupError::Input(_))),
            "{w}"
        );
    }
    let file = horo_graph::ball_from_edge_list("base 0\nedge 0 1\n", 1).unwrap();
    assert!(matches!(generators(&file), Err(GroupError::Input(_))));
}

#[test]
fn free_and_line_generators() {
    let f = build_ball(&GraphSource::Free { rank: 2 }, 6).unwrap();
    let names: Vec<String> = generators(&f)
        .unwrap()
        .into_iter()
        .map(|x| x.name)
        .collect();
    assert_eq!(names, ["a", "A", "b", "B"]);
    for rel in ["aA", "Bb", "ab B A"] {
        assert!(word(&f, rel).is_identity(), "{rel}");
    }
    assert_eq!(word(&f, "ab").magnitude(&f), 2);
    // Left multiplication keeps generator labels: a sends port i at x0 to
    // port i at a.
    let a = word(&f, "a");
    for p in 0..4 {
        let (y, q) = a.act_dart(&f, f.base(), p).unwrap();
        assert_eq!((y, q), (f.ports(f.base())[0].unwrap(), p));
    }
    let l = build_ball(&GraphSource::Line, 6).unwrap();
    assert_eq!(allowed_offsets(&l), [0]);
    let t3 = word(&l, "t^3");
    assert_eq!(t3.magnitude(&l), 3);
    assert!(word(&l, "t^3 t^-3").is_identity());
}

#[test]
fn dart_map_agrees_with_the_element() {
    let g = tiling(7);
    for w in ["s", "r s r^3", "s r^2 s r s"] {
        let e = word(&g, w);
        // Send some dart x to its image under e.
        let x = g.sphere(2).start + 3;
        let (y, p) = e.act_dart(&g, x, 1).unwrap();
        let map = DartMap::new(&g, (x, 1), (y, p)).unwrap();
        assert_eq!(map.element(&g), Some(e));
        for v in 0..g.ball_len(4) as Vid {
            if let Some(img) = map.get(v) {
                assert_eq!(Ok(img), e.act(&g, v));
            }
        }
    }
    assert!(DartMap::new(&g, (0, 0), (0, 7)).is_err());
}
