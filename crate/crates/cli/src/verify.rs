use horo_atoms::AtomTree;
use horo_graph::{GraphSource, Vid};
use horo_group::generators;
use horo_proximal::membership_test;
use horo_selfsimilar::{binary_address, canonical_code, reduce};
use horo_transducer::{
    binary_graph, bounded_equivalent, check_nondegenerate, compose, minimize, reduce_transducer,
    to_binary, AsyncTransducer,
};
use horo_typing::TypeGraph;

use crate::pipeline::{Ball, Typed};
use crate::{CliError, RunConfig};

/// Hand-encoded machines of the rotation `r` and the half turn `s` of the
/// order-5 square tiling.
pub const REFERENCE_R: &str = include_str!("../golden/reference_r.txt");
pub const REFERENCE_S: &str = include_str!("../golden/reference_s.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    /// Detail on success, reason on failure.
    pub result: Result<String, String>,
}

fn check(name: &str, f: impl FnOnce() -> Result<String, String>) -> Check {
    Check {
        name: name.into(),
        result: f(),
    }
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn is_tiling_4_5(cfg: &RunConfig) -> bool {
    matches!(cfg.graph_source(), Ok(GraphSource::Tiling { p: 4, q: 5 }))
}

/// Type graph `A -> (B,C)x5`, `B -> (B,C,B)`, `C -> (C,D,C)`, `D -> (B)`,
/// compared up to renaming of the non-root types.
pub fn is_order5_square_types(tg: &TypeGraph) -> bool {
    if tg.len() != 4 {
        return false;
    }
    let root = tg.children(tg.root());
    if root.len() != 10 {
        return false;
    }
    let (b, c) = (root[0], root[1]);
    let d = tg.children(c).get(1).copied();
    let Some(d) = d else { return false };
    let mut seen = vec![tg.root(), b, c, d];
    seen.sort_unstable();
    seen.dedup();
    seen.len() == 4
        && root.chunks(2).all(|p| p == [b, c])
        && tg.children(b) == [b, c, b]
        && tg.children(c) == [c, d, c]
        && tg.children(d) == [b]
}

fn all_words(tg: &TypeGraph, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![(tg.root(), Vec::new())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (t, w) in layer {
            for (i, &c) in tg.children(t).iter().enumerate() {
                let mut w2: Vec<usize> = w.clone();
                w2.push(i);
                out.push(w2.clone());
                next.push((c, w2));
            }
        }
        layer = next;
    }
    out
}

fn relations(cfg: &RunConfig, names: &[String]) -> Vec<String> {
    let mut out: Vec<String> = names.iter().map(|x| format!("{x} {x}^-1")).collect();
    if let Ok(GraphSource::Tiling { p, q }) = cfg.graph_source() {
        out.push(format!("r^{q}"));
        out.push("s^2".into());
        out.push(format!("(r s)^{p}"));
    }
    out
}

fn sphere_check(cfg: &RunConfig, ball: &Ball) -> Result<String, String> {
    let g = &ball.graph;
    g.check_invariants()?;
    if let Ok(GraphSource::Tiling { p, .. }) = cfg.graph_source() {
        g.check_faces(p, g.radius().saturating_sub(1 + p as u32 / 2))?;
    }
    let sizes: Vec<usize> = (0..=g.radius().min(4)).map(|n| g.sphere_len(n)).collect();
    if is_tiling_4_5(cfg) {
        ensure(sizes == [1, 5, 15, 40, 105], || {
            format!("sphere sizes {sizes:?}")
        })?;
    }
    Ok(format!("sphere sizes {sizes:?}"))
}

fn atom_checks(cfg: &RunConfig, ball: &Ball, tree: &AtomTree) -> Result<String, String> {
    let g = &ball.graph;
    for n in 0..=tree.depth() {
        let lv = tree.level_atoms(n);
        let mut seen = vec![false; g.len()];
        for a in &lv.atoms {
            for &x in &a.members {
                ensure(!seen[x as usize], || {
                    format!("vertex {x} lies in two atoms of level {n}")
                })?;
                seen[x as usize] = true;
            }
        }
        ensure(
            seen.iter().filter(|&&s| s).count() == lv.certified_count(),
            || format!("level {n} is not a partition"),
        )?;
        if n > 0 {
            let up = tree.level_atoms(n - 1);
            for a in &lv.atoms {
                let p = up.atom_of(a.members[0]);
                ensure(a.members.iter().all(|&x| up.atom_of(x) == p), || {
                    format!("level {n} does not refine level {}", n - 1)
                })?;
            }
            for x in 0..g.ball_len(n - 1) as Vid {
                let a = lv.atom_of(x).map(|i| &lv.atoms[i as usize]);
                ensure(a.is_some_and(|a| a.members == [x]), || {
                    format!("vertex {x} is not a singleton at level {n}")
                })?;
            }
        }
    }
    let counts: Vec<(usize, usize)> = (0..=tree.depth().min(2))
        .map(|n| {
            (
                tree.level_atoms(n).atoms.len(),
                tree.level_atoms(n).infinite_count(),
            )
        })
        .collect();
    if is_tiling_4_5(cfg) {
        ensure(counts == [(1, 1), (11, 10), (36, 30)], || {
            format!("atom counts {counts:?}")
        })?;
    }
    Ok(format!("(atoms, infinite) per level {counts:?}"))
}

fn proximal_checks(cfg: &RunConfig, typed: &Typed) -> Result<String, String> {
    let ctx = &typed.ctx;
    let (g, dist, tree) = (ctx.graph, ctx.dist, ctx.tree);
    let delta = cfg.delta().map_err(|e| e.to_string())?;
    let sub = |a: &[Vid], b: &[Vid]| a.iter().all(|x| b.contains(x));
    let mut widest = 0;
    for (id, p) in ctx.proximal.iter().enumerate() {
        ensure(
            sub(&p.nearest, &p.visible) && sub(&p.visible, &p.proximal),
            || format!("sets of node {id} are not nested"),
        )?;
        let d = p.diameter(dist);
        widest = widest.max(d);
        ensure(d <= 8 * delta + 4, || {
            format!("proximal set of node {id} has diameter {d}")
        })?;
    }
    if is_tiling_4_5(cfg) && delta == 1 {
        for n in 1..=tree.depth().min(3) {
            for id in tree.nodes_at_level(n) {
                ensure(
                    ctx.proximal[id].proximal.iter().copied().eq(g.sphere(n)),
                    || format!("proximal set of node {id} is not the whole sphere"),
                )?;
            }
        }
    }
    // Membership against profiles, on a fixed stride through each level.
    let mut tested = 0;
    for id in 1..tree.len() {
        let n = tree.level(id);
        let atom = tree.atom(id);
        let lo = g.ball_len(n - 1) as Vid;
        for x in (lo..g.len() as Vid)
            .step_by(37 + id % 11)
            .chain(tree.members(id).iter().copied().step_by(13))
        {
            let brute =
                horo_atoms::profile(g, dist, x, n).map_err(|e| e.to_string())? == atom.profile;
            let fast =
                membership_test(g, dist, x, atom, &ctx.proximal[id]).map_err(|e| e.to_string())?;
            ensure(brute == fast, || format!("membership of {x} in node {id}"))?;
            tested += 1;
        }
    }
    // Reconstruction of distances through the proximal set.
    for id in (0..tree.len()).step_by(3) {
        let n = tree.level(id);
        for &x in tree.members(id).iter().step_by(5) {
            for b in 0..g.ball_len(n) as Vid {
                let via = ctx.proximal[id]
                    .proximal
                    .iter()
                    .map(|&p| dist.get(b, p).unwrap() + dist.get(p, x).unwrap())
                    .min();
                ensure(via == dist.get(b, x), || {
                    format!("reconstruction fails for {b} and {x} at node {id}")
                })?;
            }
        }
    }
    Ok(format!(
        "largest diameter {widest}, {tested} membership tests"
    ))
}

fn type_checks(cfg: &RunConfig, typed: &Typed) -> Result<String, String> {
    let tg = &typed.types.graph;
    if is_tiling_4_5(cfg) {
        ensure(is_order5_square_types(tg), || {
            format!("unexpected type graph\n{}", tg.to_text())
        })?;
    }
    // Every node must carry the child types of its type.
    let tree = typed.ctx.tree;
    for v in 0..tree.nodes_at_level(tree.depth()).start {
        let t = typed.types.type_of(v);
        let kids: Vec<usize> = tree
            .children(v)
            .iter()
            .map(|&c| typed.types.type_of(c))
            .collect();
        ensure(kids == tg.children(t), || {
            format!("node {v} does not follow its type {}", tg.name(t))
        })?;
    }
    Ok(format!("{} types", tg.len()))
}

fn rigid_checks(typed: &Typed) -> Result<String, String> {
    let tree = typed.ctx.tree;
    let mut pairs = 0;
    let last = tree.nodes_at_level(tree.depth().saturating_sub(1)).end;
    for v in (0..last).step_by(7) {
        for w in (0..last)
            .step_by(5)
            .filter(|&w| typed.types.type_of(w) == typed.types.type_of(v))
        {
            let ok = typed
                .rigid
                .verify_pair(&typed.ctx, v, w)
                .map_err(|e| e.to_string())?;
            ensure(ok, || format!("morphism from {v} to {w} is not a morphism"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn machine_checks(typed: &Typed, names: &[String]) -> Result<String, String> {
    let mut sizes = Vec::new();
    for name in names {
        for word in [name.clone(), format!("{name}^-1")] {
            // Synthesis already compares the machine with the tree.
            let m = typed.machine(&word).map_err(|e| e.to_string())?;
            check_nondegenerate(&m).map_err(|e| format!("{word}: {e}"))?;
            let k = typed
                .element(&word)
                .map_err(|e| e.to_string())?
                .magnitude(typed.ctx.graph) as usize;
            for w in all_words(&typed.types.graph, 5) {
                let out = m.evaluate(&w).map_err(|e| e.to_string())?.len();
                ensure(out + k >= w.len() && out <= w.len() + k, || {
                    format!("{word} stretches {w:?} to {out} symbols")
                })?;
            }
            sizes.push(format!("{word}:{}", m.len()));
        }
    }
    Ok(format!("states {}", sizes.join(" ")))
}

fn relation_checks(cfg: &RunConfig, typed: &Typed, names: &[String]) -> Result<String, String> {
    let id = AsyncTransducer::identity(&typed.types.graph);
    let rels = relations(cfg, names);
    for rel in &rels {
        let m = typed.word_machine(rel).map_err(|e| e.to_string())?;
        let ok = bounded_equivalent(&m, &id, cfg.equiv_depth).map_err(|e| e.to_string())?;
        ensure(ok, || {
            format!("`{rel}` is not the identity to depth {}", cfg.equiv_depth)
        })?;
    }
    Ok(rels.join(", "))
}

fn golden_machines(typed: &Typed) -> Result<String, String> {
    let parse = |t: &str| AsyncTransducer::parse(t).map_err(|e| e.to_string());
    let (ref_r, ref_s) = (parse(REFERENCE_R)?, parse(REFERENCE_S)?);
    let r = minimize(&typed.machine("r").map_err(|e| e.to_string())?, 20);
    ensure(
        bounded_equivalent(&r, &ref_r, 8).map_err(|e| e.to_string())?,
        || "r differs from the reference".into(),
    )?;
    let s = minimize(&typed.machine("s").map_err(|e| e.to_string())?, 20);
    ensure(
        bounded_equivalent(&s, &ref_s, 8).map_err(|e| e.to_string())?,
        || "s differs from the reference".into(),
    )?;
    ensure(s.len() == 13, || format!("s has {} classes", s.len()))?;
    Ok(format!("r {} states, s {} classes", r.len(), s.len()))
}

fn binary_checks(cfg: &RunConfig, typed: &Typed, names: &[String]) -> Result<String, String> {
    let red = reduce(&typed.types.graph).map_err(|e| e.to_string())?;
    let code = canonical_code(&red.graph);
    code.validate(&red.graph).map_err(|e| e.to_string())?;
    let mut addrs = Vec::new();
    for w in all_words(&red.graph, 8) {
        addrs.push(binary_address(&red.graph, &code, &w).map_err(|e| e.to_string())?);
    }
    let total = addrs.len();
    addrs.sort();
    addrs.dedup();
    ensure(addrs.len() == total, || {
        "two chains share an address".into()
    })?;
    let bin = |word: &str| -> Result<AsyncTransducer, String> {
        let m = typed.machine(word).map_err(|e| e.to_string())?;
        to_binary(
            &reduce_transducer(&m, &red).map_err(|e| e.to_string())?,
            &code,
        )
        .map_err(|e| e.to_string())
    };
    let id = AsyncTransducer::identity(&binary_graph());
    let mut rels: Vec<(String, Vec<String>)> = names
        .iter()
        .map(|x| (format!("{x} {x}^-1"), vec![x.clone(), format!("{x}^-1")]))
        .collect();
    if let Ok(GraphSource::Tiling { q, .. }) = cfg.graph_source() {
        rels.push((format!("r^{q}"), vec!["r".into(); q]));
        rels.push(("s^2".into(), vec!["s".into(); 2]));
    }
    for (rel, letters) in &rels {
        let mut m = id.clone();
        for l in letters {
            m = compose(&m, &bin(l)?).map_err(|e| e.to_string())?;
        }
        ensure(
            bounded_equivalent(&m, &id, 12).map_err(|e| e.to_string())?,
            || format!("binary `{rel}` is not the identity"),
        )?;
    }
    Ok(format!(
        "{} reduced types, {total} addresses",
        red.graph.len()
    ))
}

/// Runs the invariant suite, plus the golden comparisons when the source
/// is the order-5 square tiling.
pub fn run_checks(cfg: &RunConfig, ball: &Ball, tree: &AtomTree) -> Result<Vec<Check>, CliError> {
    let mut out = vec![
        check("spheres", || sphere_check(cfg, ball)),
        check("atoms", || atom_checks(cfg, ball, tree)),
    ];
    let typed = match Typed::new(cfg, ball, tree) {
        Ok(t) => t,
        Err(e) => {
            out.push(Check {
                name: "types".into(),
                result: Err(e.to_string()),
            });
            return Ok(out);
        }
    };
    let names: Vec<String> = generators(&ball.graph)?
        .into_iter()
        .map(|x| x.name)
        .collect();
    out.push(check("proximal", || proximal_checks(cfg, &typed)));
    out.push(check("types", || type_checks(cfg, &typed)));
    out.push(check("rigid", || rigid_checks(&typed)));
    out.push(check("generators", || machine_checks(&typed, &names)));
    out.push(check("relations", || relation_checks(cfg, &typed, &names)));
    if is_tiling_4_5(cfg) {
        out.push(check("reference machines", || golden_machines(&typed)));
    }
    out.push(check("binary", || binary_checks(cfg, &typed, &names)));
    Ok(out)
}
