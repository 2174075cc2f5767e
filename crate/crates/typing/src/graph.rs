use std::collections::HashMap;
use std::fmt::Write;

use crate::TypingError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeEntry {
    pub name: String,
    /// Type reached through each child slot, in slot order.
    pub children: Vec<usize>,
}

/// Directed multigraph of atom types. Type 0 is the root; slot `i` of a
/// type leads to the type of its `i`-th child.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeGraph {
    types: Vec<TypeEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Text,
}

impl TypeGraph {
    pub fn new(types: Vec<TypeEntry>) -> Result<Self, TypingError> {
        if types.is_empty() {
            return Err(TypingError::Input("a type graph needs a root type".into()));
        }
        let mut names = HashMap::new();
        for (i, t) in types.iter().enumerate() {
            if t.name.is_empty() || t.name.contains(char::is_whitespace) {
                return Err(TypingError::Input(format!("bad type name {:?}", t.name)));
            }
            if names.insert(t.name.as_str(), i).is_some() {
                return Err(TypingError::Input(format!("duplicate type {}", t.name)));
            }
            if let Some(&c) = t.children.iter().find(|&&c| c >= types.len()) {
                return Err(TypingError::Input(format!(
                    "type {} has a child of unknown type {c}",
                    t.name
                )));
            }
        }
        Ok(TypeGraph { types })
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn types(&self) -> &[TypeEntry] {
        &self.types
    }

    pub fn name(&self, t: usize) -> &str {
        &self.types[t].name
    }

    pub fn children(&self, t: usize) -> &[usize] {
        &self.types[t].children
    }

    pub fn arity(&self, t: usize) -> usize {
        self.types[t].children.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.types.iter().position(|t| t.name == name)
    }

    /// Number of directed paths of length `k` from type `t`.
    pub fn count_paths(&self, t: usize, k: u32) -> u64 {
        let mut counts = vec![1u64; self.len()];
        for _ in 0..k {
            counts = (0..self.len())
                .map(|s| self.children(s).iter().map(|&c| counts[c]).sum())
                .collect();
        }
        counts[t]
    }

    /// Edges grouped by (source, target) with their slot labels, in order
    /// of first slot.
    pub fn grouped_edges(&self) -> Vec<(usize, usize, Vec<usize>)> {
        let mut out: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for (s, t) in self.types.iter().enumerate() {
            for (slot, &c) in t.children.iter().enumerate() {
                match out.iter_mut().find(|e| e.0 == s && e.1 == c) {
                    Some(e) => e.2.push(slot),
                    None => out.push((s, c, vec![slot])),
                }
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph types {\n");
        for (i, t) in self.types.iter().enumerate() {
            let shape = if i == self.root() {
                "doublecircle"
            } else {
                "circle"
            };
            writeln!(s, "  {} [shape={shape}];", t.name).unwrap();
        }
        for (a, b, slots) in self.grouped_edges() {
            let label: Vec<String> = slots.iter().map(usize::to_string).collect();
            writeln!(
                s,
                "  {} -> {} [label=\"{}\"];",
                self.name(a),
                self.name(b),
                label.join(",")
            )
            .unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// `type <name>` lines, each followed by its `child <slot> <type>`
    /// lines; the root comes first.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for t in &self.types {
            writeln!(s, "type {}", t.name).unwrap();
            for (slot, &c) in t.children.iter().enumerate() {
                writeln!(s, "child {slot} {}", self.name(c)).unwrap();
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, TypingError> {
        let mut raw: Vec<(String, Vec<String>)> = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || TypingError::Input(format!("line {}: cannot parse {line:?}", no + 1));
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["type", name] => raw.push((name.to_string(), Vec::new())),
                ["child", slot, ty] => {
                    let cur = raw.last_mut().ok_or_else(bad)?;
                    if slot.parse::<usize>().ok() != Some(cur.1.len()) {
                        return Err(TypingError::Input(format!(
                            "line {}: slots must count up from 0",
                            no + 1
                        )));
                    }
                    cur.1.push(ty.to_string());
                }
                _ => return Err(bad()),
            }
        }
        let names: Vec<String> = raw.iter().map(|r| r.0.clone()).collect();
        let types = raw
            .into_iter()
            .map(|(name, kids)| {
                let children = kids
                    .iter()
                    .map(|k| {
                        names
                            .iter()
                            .position(|n| n == k)
                            .ok_or_else(|| TypingError::Input(format!("unknown type {k}")))
                    })
                    .collect::<Result<Vec<usize>, _>>()?;
                Ok(TypeEntry { name, children })
            })
            .collect::<Result<Vec<_>, TypingError>>()?;
        TypeGraph::new(types)
    }
}

pub fn export_type_graph(tg: &TypeGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dot => tg.to_dot(),
        GraphFormat::Text => tg.to_text(),
    }
}

/// Names for types in discovery order: `A`..`Z`, then `T26`, `T27`, ...
pub fn type_name(i: usize) -> String {
    if i < 26 {
        ((b'A' + i as u8) as char).to_string()
    } else {
        format!("T{i}")
    }
}
