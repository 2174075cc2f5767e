use std::fmt::Write;

use horo_typing::{TypeEntry, TypeGraph};

use crate::TransducerError;

/// Output of one transition and the state it leads to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transition {
    pub next: usize,
    pub output: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    /// Type of the input chain read so far; its slots are the legal inputs.
    pub in_type: usize,
    /// Type reached by the output emitted so far.
    pub out_type: usize,
    /// One transition per slot of `in_type`.
    pub trans: Vec<Transition>,
}

/// Asynchronous transducer between the chain spaces of two type graphs.
/// Input symbols are child slots; so are output symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsyncTransducer {
    pub input: TypeGraph,
    pub output: TypeGraph,
    pub states: Vec<State>,
    pub init: usize,
}

/// Type graph of the binary alphabet: one type with two slots.
pub fn binary_graph() -> TypeGraph {
    TypeGraph::new(vec![TypeEntry {
        name: "Bit".into(),
        children: vec![0, 0],
    }])
    .unwrap()
}

/// Follows `word` from type `t`; `None` if some slot does not exist.
pub fn walk(tg: &TypeGraph, mut t: usize, word: &[usize]) -> Option<usize> {
    for &s in word {
        t = *tg.children(t).get(s)?;
    }
    Some(t)
}

impl AsyncTransducer {
    /// Checks type soundness: every state has one transition per input
    /// slot, each input slot leads to the next state's input type, and each
    /// output word is a path from the state's output type to the next
    /// state's output type.
    pub fn validate(&self) -> Result<(), TransducerError> {
        let bad = |m: String| Err(TransducerError::Audit(m));
        if self.init >= self.states.len() {
            return bad(format!("initial state {} does not exist", self.init));
        }
        if self.states[self.init].in_type != self.input.root()
            || self.states[self.init].out_type != self.output.root()
        {
            return bad("initial state is not at the root types".into());
        }
        for (q, st) in self.states.iter().enumerate() {
            if st.in_type >= self.input.len() || st.out_type >= self.output.len() {
                return bad(format!("state {q} has an unknown type"));
            }
            if st.trans.len() != self.input.arity(st.in_type) {
                return bad(format!(
                    "state {q} has {} transitions for {} slots",
                    st.trans.len(),
                    self.input.arity(st.in_type)
                ));
            }
            for (i, t) in st.trans.iter().enumerate() {
                let Some(next) = self.states.get(t.next) else {
                    return bad(format!("state {q} slot {i}: no state {}", t.next));
                };
                if self.input.children(st.in_type)[i] != next.in_type {
                    return bad(format!("state {q} slot {i}: input type mismatch"));
                }
                if walk(&self.output, st.out_type, &t.output) != Some(next.out_type) {
                    return bad(format!(
                        "state {q} slot {i}: output {:?} is not a path to the next output type",
                        t.output
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Runs `input` from state `q`; returns the final state and the output.
    pub fn run_from(
        &self,
        mut q: usize,
        input: &[usize],
    ) -> Result<(usize, Vec<usize>), TransducerError> {
        let mut out = Vec::new();
        for (k, &a) in input.iter().enumerate() {
            let st = &self.states[q];
            let t = st.trans.get(a).ok_or_else(|| {
                TransducerError::InputRejected(format!(
                    "symbol {k} ({a}) is not a slot of type {}",
                    self.input.name(st.in_type)
                ))
            })?;
            out.extend_from_slice(&t.output);
            q = t.next;
        }
        Ok((q, out))
    }

    pub fn evaluate(&self, input: &[usize]) -> Result<Vec<usize>, TransducerError> {
        Ok(self.run_from(self.init, input)?.1)
    }

    /// States reachable from the initial state, in breadth-first order.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states.len()];
        let mut order = vec![self.init];
        seen[self.init] = true;
        let mut i = 0;
        while i < order.len() {
            for t in &self.states[order[i]].trans {
                if !seen[t.next] {
                    seen[t.next] = true;
                    order.push(t.next);
                }
            }
            i += 1;
        }
        order
    }

    /// The identity on the chains of `tg`, with one state per type.
    pub fn identity(tg: &TypeGraph) -> Self {
        let states = (0..tg.len())
            .map(|t| State {
                in_type: t,
                out_type: t,
                trans: tg
                    .children(t)
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| Transition {
                        next: c,
                        output: vec![i],
                    })
                    .collect(),
            })
            .collect();
        AsyncTransducer {
            input: tg.clone(),
            output: tg.clone(),
            states,
            init: tg.root(),
        }
    }

    /// Structured text: the two type graphs, then `state <id> <in>><out>`,
    /// `init <id>` and `trans <id> <in> <id> <out-word>` lines. Output
    /// words join slots with `.`; the empty word is `-`.
    pub fn to_text(&self) -> String {
        let mut s = String::from("graph input\n");
        s.push_str(&self.input.to_text());
        if self.output == self.input {
            s.push_str("graph output same\n");
        } else {
            s.push_str("graph output\n");
            s.push_str(&self.output.to_text());
        }
        for (q, st) in self.states.iter().enumerate() {
            writeln!(
                s,
                "state {q} {}>{}",
                self.input.name(st.in_type),
                self.output.name(st.out_type)
            )
            .unwrap();
        }
        writeln!(s, "init {}", self.init).unwrap();
        for (q, st) in self.states.iter().enumerate() {
            for (i, t) in st.trans.iter().enumerate() {
                writeln!(s, "trans {q} {i} {} {}", t.next, word_text(&t.output)).unwrap();
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, TransducerError> {
        let perr = |no: usize, m: &str| TransducerError::Parse(format!("line {}: {m}", no + 1));
        let mut section = 0; // 0 before graphs, 1 input graph, 2 output graph, 3 machine
        let (mut input_text, mut output_text) = (String::new(), String::new());
        let mut same = false;
        let mut state_lines: Vec<(usize, String, String)> = Vec::new();
        let mut init = None;
        let mut trans_lines: Vec<(usize, usize, usize, Vec<usize>, usize)> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let w: Vec<&str> = line.split_whitespace().collect();
            match w.as_slice() {
                ["graph", "input"] => section = 1,
                ["graph", "output"] => section = 2,
                ["graph", "output", "same"] => {
                    same = true;
                    section = 3;
                }
                ["type", ..] | ["child", ..] if section == 1 || section == 2 => {
                    let buf = if section == 1 {
                        &mut input_text
                    } else {
                        &mut output_text
                    };
                    buf.push_str(line);
                    buf.push('\n');
                }
                ["state", id, ty] => {
                    section = 3;
                    let id: usize = id.parse().map_err(|_| perr(no, "bad state id"))?;
                    let (a, b) = ty
                        .split_once('>')
                        .ok_or_else(|| perr(no, "state type must read <in>><out>"))?;
                    state_lines.push((id, a.to_string(), b.to_string()));
                }
                ["init", id] => {
                    init = Some(
                        id.parse::<usize>()
                            .map_err(|_| perr(no, "bad initial state"))?,
                    )
                }
                ["trans", q, a, p, out] => {
                    let num = |s: &str| s.parse::<usize>().map_err(|_| perr(no, "bad number"));
                    let output = parse_word(out).ok_or_else(|| perr(no, "bad output word"))?;
                    trans_lines.push((num(q)?, num(a)?, num(p)?, output, no));
                }
                _ => return Err(perr(no, "unrecognized line")),
            }
        }
        let input = TypeGraph::parse(&input_text)?;
        let output = if same {
            input.clone()
        } else {
            TypeGraph::parse(&output_text)?
        };
        let mut states: Vec<State> = Vec::with_capacity(state_lines.len());
        for (k, (id, a, b)) in state_lines.into_iter().enumerate() {
            if id != k {
                return Err(TransducerError::Parse(format!(
                    "states must be numbered from 0 in order, found {id}"
                )));
            }
            let in_type = input
                .index_of(&a)
                .ok_or_else(|| TransducerError::Parse(format!("unknown input type {a}")))?;
            let out_type = output
                .index_of(&b)
                .ok_or_else(|| TransducerError::Parse(format!("unknown output type {b}")))?;
            states.push(State {
                in_type,
                out_type,
                trans: Vec::new(),
            });
        }
        for (q, a, p, out, no) in trans_lines {
            let st = states.get_mut(q).ok_or_else(|| perr(no, "unknown state"))?;
            if a != st.trans.len() {
                return Err(perr(no, "transitions of a state must list slots in order"));
            }
            st.trans.push(Transition {
                next: p,
                output: out,
            });
        }
        let t = AsyncTransducer {
            input,
            output,
            states,
            init: init.ok_or_else(|| TransducerError::Parse("missing init line".into()))?,
        };
        t.validate()
            .map_err(|e| TransducerError::Parse(e.to_string()))?;
        Ok(t)
    }

    /// Graphviz rendering with edges labelled `in|out`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph transducer {\n  rankdir=LR;\n  start [shape=point];\n");
        writeln!(s, "  start -> q{};", self.init).unwrap();
        for (q, st) in self.states.iter().enumerate() {
            writeln!(
                s,
                "  q{q} [label=\"q{q}\\n{}>{}\"];",
                self.input.name(st.in_type),
                self.output.name(st.out_type)
            )
            .unwrap();
        }
        for (q, st) in self.states.iter().enumerate() {
            for (i, t) in st.trans.iter().enumerate() {
                writeln!(
                    s,
                    "  q{q} -> q{} [label=\"{i}|{}\"];",
                    t.next,
                    word_text(&t.output)
                )
                .unwrap();
            }
        }
        s.push_str("}\n");
        s
    }
}

pub fn word_text(w: &[usize]) -> String {
    if w.is_empty() {
        "-".into()
    } else {
        w.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
    }
}

pub fn parse_word(s: &str) -> Option<Vec<usize>> {
    if s == "-" {
        return Some(Vec::new());
    }
    s.split('.').map(|x| x.parse().ok()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransducerFormat {
    Dot,
    Text,
}

pub fn export_transducer(t: &AsyncTransducer, format: TransducerFormat) -> String {
    match format {
        TransducerFormat::Dot => t.to_dot(),
        TransducerFormat::Text => t.to_text(),
    }
}
