use std::fmt::Write;

use horo_atoms::{atoms_at_level, build_atom_tree, AtomTree};
use horo_graph::{build_ball, estimate_delta, Distances, LayeredGraph};
use horo_group::{element_from_word, generators, inverse, parse_word, GroupElement};
use horo_selfsimilar::{
    binary_address, build_rigid_structure, canonical_code, reduce, RigidStructure,
};
use horo_transducer::{
    compose, minimize, parse_word as parse_slots, push_outputs, reduce_transducer,
    synthesize_action_transducer, to_binary, AsyncTransducer, SynthesisConfig,
};
use horo_typing::{classify_types, Classification, GraphFormat, TypingContext};

use crate::{CliError, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Dot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Ball,
    Atoms {
        level: Option<u32>,
    },
    Tree,
    Types {
        format: Format,
    },
    Transducer {
        word: String,
        format: Format,
        minimize: bool,
        binary: bool,
    },
    Verify,
    Encode {
        chain: Option<String>,
    },
}

/// A document produced by a command, written under the output directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub content: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub report: String,
    pub artifacts: Vec<Artifact>,
    /// Set by `verify` when some check failed.
    pub failed: bool,
}

/// Ball and distance table for one configuration.
pub struct Ball {
    pub graph: LayeredGraph,
    pub dist: Distances,
}

pub fn build(cfg: &RunConfig) -> Result<Ball, CliError> {
    cfg.check()?;
    let graph = build_ball(&cfg.graph_source()?, cfg.radius())?;
    let dist = Distances::new(&graph, cfg.depth + 1);
    Ok(Ball { graph, dist })
}

pub fn tree(cfg: &RunConfig, ball: &Ball) -> Result<AtomTree, CliError> {
    Ok(build_atom_tree(
        &ball.graph,
        &ball.dist,
        cfg.depth,
        cfg.horizon,
    )?)
}

/// Everything above the tree of atoms: types, markings and synthesis.
pub struct Typed<'a> {
    pub cfg: &'a RunConfig,
    pub ctx: TypingContext<'a>,
    pub types: Classification,
    pub rigid: RigidStructure,
}

impl<'a> Typed<'a> {
    pub fn new(cfg: &'a RunConfig, ball: &'a Ball, tree: &'a AtomTree) -> Result<Self, CliError> {
        let ctx = TypingContext::new(&ball.graph, &ball.dist, tree, cfg.delta()?, cfg.cone_depth)?;
        let types = classify_types(&ctx, cfg.equiv_depth)?;
        let rigid = build_rigid_structure(&ctx, &types, cfg.equiv_depth)?;
        Ok(Typed {
            cfg,
            ctx,
            types,
            rigid,
        })
    }

    pub fn synthesis(&self) -> SynthesisConfig {
        SynthesisConfig {
            margin: self.cfg.margin,
            max_states: self.cfg.max_states,
            verify_depth: self.cfg.depth,
        }
    }

    pub fn element(&self, word: &str) -> Result<GroupElement, CliError> {
        Ok(element_from_word(self.ctx.graph, word)?)
    }

    pub fn machine_of(&self, e: &GroupElement) -> Result<AsyncTransducer, CliError> {
        Ok(synthesize_action_transducer(
            &self.ctx,
            &self.types,
            &self.rigid,
            e,
            &self.synthesis(),
        )?)
    }

    pub fn machine(&self, word: &str) -> Result<AsyncTransducer, CliError> {
        self.machine_of(&self.element(word)?)
    }

    /// Composes generator machines letter by letter, so that relations
    /// are checked on machines rather than on group elements.
    pub fn word_machine(&self, word: &str) -> Result<AsyncTransducer, CliError> {
        let g = self.ctx.graph;
        let gens = generators(g)?;
        let names: Vec<&str> = gens.iter().map(|x| x.name.as_str()).collect();
        let mut out = AsyncTransducer::identity(&self.types.graph);
        for (name, exp) in parse_word(word, &names)? {
            let gen = gens.iter().find(|x| x.name == name).unwrap().element;
            let e = if exp < 0 { inverse(g, &gen)? } else { gen };
            let m = self.machine_of(&e)?;
            for _ in 0..exp.unsigned_abs() {
                out = compose(&out, &m)?;
            }
        }
        Ok(out)
    }
}

fn doc(format: Format, text: String, dot: String) -> String {
    match format {
        Format::Text => text,
        Format::Dot => dot,
    }
}

pub fn run_pipeline(cmd: &Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut out = Outcome::default();
    let r = &mut out.report;
    match cmd {
        Command::Ball => {
            let ball = build(cfg)?;
            let g = &ball.graph;
            writeln!(r, "source {} radius {}", cfg.source, g.radius()).unwrap();
            for n in 0..=g.radius() {
                writeln!(r, "|S{n}| = {}", g.sphere_len(n)).unwrap();
            }
            writeln!(r, "|B{}| = {}", g.radius(), g.len()).unwrap();
            let k = g.radius().min(3);
            writeln!(r, "thinness on B{k}: {}", estimate_delta(g, k)?).unwrap();
        }
        Command::Atoms { level } => {
            cfg.check()?;
            let radius = match level {
                Some(n) => cfg.radius.unwrap_or((n + cfg.horizon).max(8)),
                None => cfg.radius(),
            };
            let graph = build_ball(&cfg.graph_source()?, radius)?;
            let levels: Vec<u32> = match level {
                Some(n) => vec![*n],
                None => (0..=cfg.depth).collect(),
            };
            let dist = Distances::new(&graph, levels.iter().max().unwrap() + 1);
            for n in levels {
                let lv = atoms_at_level(&graph, &dist, n, cfg.horizon)?;
                writeln!(
                    r,
                    "level {n}: {} atoms, {} infinite",
                    lv.atoms.len(),
                    lv.infinite_count()
                )
                .unwrap();
            }
        }
        Command::Tree => {
            let ball = build(cfg)?;
            let t = tree(cfg, &ball)?;
            let mut text = String::new();
            for v in 0..t.len() {
                let node = t.node(v);
                let parent = node.parent.map_or("-".to_string(), |p| p.to_string());
                writeln!(
                    text,
                    "node {v} level {} parent {parent} slot {} members {}",
                    t.level(v),
                    node.slot,
                    t.members(v).len()
                )
                .unwrap();
            }
            for n in 0..=t.depth() {
                writeln!(r, "level {n}: {} nodes", t.nodes_at_level(n).len()).unwrap();
            }
            out.artifacts.push(Artifact {
                name: "tree.txt".into(),
                content: text,
            });
        }
        Command::Types { format } => {
            let ball = build(cfg)?;
            let t = tree(cfg, &ball)?;
            let typed = Typed::new(cfg, &ball, &t)?;
            let tg = &typed.types.graph;
            writeln!(
                r,
                "{} types from {} signature classes and {} merges",
                tg.len(),
                typed.types.signature_buckets,
                typed.types.merges.len()
            )
            .unwrap();
            for (i, entry) in tg.types().iter().enumerate() {
                let kids: Vec<&str> = entry.children.iter().map(|&c| tg.name(c)).collect();
                writeln!(
                    r,
                    "{} (representative node {}): {}",
                    entry.name,
                    typed.types.representative(i),
                    kids.join(" ")
                )
                .unwrap();
            }
            let name = if *format == Format::Dot {
                "types.dot"
            } else {
                "types.txt"
            };
            let content = horo_typing::export_type_graph(
                tg,
                if *format == Format::Dot {
                    GraphFormat::Dot
                } else {
                    GraphFormat::Text
                },
            );
            out.artifacts.push(Artifact {
                name: name.into(),
                content,
            });
        }
        Command::Transducer {
            word,
            format,
            minimize: min,
            binary,
        } => {
            let ball = build(cfg)?;
            let t = tree(cfg, &ball)?;
            let typed = Typed::new(cfg, &ball, &t)?;
            let mut m = typed.machine(word)?;
            writeln!(r, "word `{word}`: {} states", m.len()).unwrap();
            if *binary {
                let red = reduce(&typed.types.graph)?;
                let code = canonical_code(&red.graph);
                m = push_outputs(
                    &to_binary(&reduce_transducer(&m, &red)?, &code)?,
                    4 * m.len() as u32 + 64,
                )?;
                writeln!(r, "binary: {} states", m.len()).unwrap();
            }
            if *min {
                m = minimize(&m, cfg.equiv_depth.max(m.len() as u32));
                writeln!(r, "minimized: {} states", m.len()).unwrap();
            }
            let name = if *format == Format::Dot {
                "transducer.dot"
            } else {
                "transducer.txt"
            };
            out.artifacts.push(Artifact {
                name: name.into(),
                content: doc(*format, m.to_text(), m.to_dot()),
            });
        }
        Command::Encode { chain } => {
            let ball = build(cfg)?;
            let t = tree(cfg, &ball)?;
            let typed = Typed::new(cfg, &ball, &t)?;
            let red = reduce(&typed.types.graph)?;
            let code = canonical_code(&red.graph);
            writeln!(r, "reduced graph: {} types", red.graph.len()).unwrap();
            if let Some(c) = chain {
                let slots =
                    parse_slots(c).ok_or_else(|| CliError::Input(format!("bad chain `{c}`")))?;
                let bits = binary_address(&red.graph, &code, &slots)?;
                let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
                writeln!(r, "address {c}: {}", if s.is_empty() { "-" } else { &s }).unwrap();
            }
            let mut content = red.graph.to_text();
            content.push_str(&code.to_text(&red.graph));
            out.artifacts.push(Artifact {
                name: "code.txt".into(),
                content,
            });
        }
        Command::Verify => {
            let ball = build(cfg)?;
            let t = tree(cfg, &ball)?;
            let checks = crate::verify::run_checks(cfg, &ball, &t)?;
            for c in &checks {
                match &c.result {
                    Ok(detail) => writeln!(r, "PASS {}: {detail}", c.name).unwrap(),
                    Err(why) => writeln!(r, "FAIL {}: {why}", c.name).unwrap(),
                }
            }
            out.failed = checks.iter().any(|c| c.result.is_err());
            let passed = checks.iter().filter(|c| c.result.is_ok()).count();
            writeln!(r, "{passed}/{} checks passed", checks.len()).unwrap();
            out.artifacts.push(Artifact {
                name: "verify.txt".into(),
                content: r.clone(),
            });
        }
    }
    Ok(out)
}
