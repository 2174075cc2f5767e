use std::fmt::Write;

use horo_typing::TypeGraph;

use crate::SelfSimilarError;

/// A complete binary prefix code for the slots of every type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCode {
    /// `words[t][i]` is the code word of slot `i` of type `t`.
    pub words: Vec<Vec<Vec<bool>>>,
}

/// Complete prefix code with `k` words: start from the empty word and split
/// the leftmost deepest leaf until there are `k` leaves. Words come out in
/// left to right order.
pub fn complete_code(k: usize) -> Vec<Vec<bool>> {
    if k == 0 {
        return Vec::new();
    }
    let mut leaves: Vec<Vec<bool>> = vec![Vec::new()];
    while leaves.len() < k {
        let deepest = leaves.iter().map(Vec::len).max().unwrap();
        let i = leaves.iter().position(|w| w.len() == deepest).unwrap();
        let w = leaves.remove(i);
        let (mut zero, mut one) = (w.clone(), w);
        zero.push(false);
        one.push(true);
        leaves.insert(i, one);
        leaves.insert(i, zero);
    }
    leaves
}

pub fn canonical_code(tg: &TypeGraph) -> PrefixCode {
    PrefixCode {
        words: (0..tg.len()).map(|t| complete_code(tg.arity(t))).collect(),
    }
}

/// Sum of 2^-|w| over the words of one type.
pub fn kraft_sum(words: &[Vec<bool>]) -> f64 {
    words.iter().map(|w| 0.5f64.powi(w.len() as i32)).sum()
}

fn bits(w: &[bool]) -> String {
    w.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl PrefixCode {
    fn check(&self, tg: &TypeGraph) -> Result<(), SelfSimilarError> {
        if self.words.len() != tg.len() {
            return Err(SelfSimilarError::CodeMismatch(format!(
                "code has {} types, graph has {}",
                self.words.len(),
                tg.len()
            )));
        }
        for t in 0..tg.len() {
            if self.words[t].len() != tg.arity(t) {
                return Err(SelfSimilarError::CodeMismatch(format!(
                    "type {} has {} slots",
                    tg.name(t),
                    tg.arity(t)
                )));
            }
        }
        Ok(())
    }

    /// Slot of type `t` whose word is exactly `w`.
    pub fn decode(&self, t: usize, w: &[bool]) -> Option<usize> {
        self.words[t].iter().position(|x| x == w)
    }

    /// Whether `w` is a proper prefix of some word of type `t`.
    pub fn is_proper_prefix(&self, t: usize, w: &[bool]) -> bool {
        self.words[t]
            .iter()
            .any(|x| x.len() > w.len() && x.starts_with(w))
    }

    /// `code <type> <slot> <bits>` lines; the empty word is written `-`.
    pub fn to_text(&self, tg: &TypeGraph) -> String {
        let mut s = String::new();
        for (t, words) in self.words.iter().enumerate() {
            for (i, w) in words.iter().enumerate() {
                let b = if w.is_empty() {
                    "-".to_string()
                } else {
                    bits(w)
                };
                writeln!(s, "code {} {i} {b}", tg.name(t)).unwrap();
            }
        }
        s
    }

    pub fn parse(text: &str, tg: &TypeGraph) -> Result<Self, SelfSimilarError> {
        let mut words: Vec<Vec<Option<Vec<bool>>>> =
            (0..tg.len()).map(|t| vec![None; tg.arity(t)]).collect();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || SelfSimilarError::Input(format!("line {}: cannot parse {line:?}", no + 1));
            let parts: Vec<&str> = line.split_whitespace().collect();
            let ["code", ty, slot, b] = parts.as_slice() else {
                return Err(bad());
            };
            let t = tg.index_of(ty).ok_or_else(bad)?;
            let i: usize = slot.parse().map_err(|_| bad())?;
            let w = if *b == "-" {
                Vec::new()
            } else {
                b.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(bad()),
                    })
                    .collect::<Result<Vec<bool>, _>>()?
            };
            *words[t].get_mut(i).ok_or_else(bad)? = Some(w);
        }
        let words = words
            .into_iter()
            .enumerate()
            .map(|(t, ws)| {
                ws.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| {
                    SelfSimilarError::CodeMismatch(format!("type {} is missing a slot", tg.name(t)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let code = PrefixCode { words };
        code.check(tg)?;
        Ok(code)
    }

    /// Checks that every type's words form a complete prefix code.
    pub fn validate(&self, tg: &TypeGraph) -> Result<(), SelfSimilarError> {
        self.check(tg)?;
        for (t, ws) in self.words.iter().enumerate() {
            for (i, a) in ws.iter().enumerate() {
                for (j, b) in ws.iter().enumerate() {
                    if i != j && b.starts_with(a) {
                        return Err(SelfSimilarError::CodeMismatch(format!(
                            "type {}: word {i} is a prefix of word {j}",
                            tg.name(t)
                        )));
                    }
                }
            }
            if !ws.is_empty() && (kraft_sum(ws) - 1.0).abs() > 1e-12 {
                return Err(SelfSimilarError::CodeMismatch(format!(
                    "type {} does not have a complete code",
                    tg.name(t)
                )));
            }
        }
        Ok(())
    }
}

/// Bits of the chain of slots `chain` read from the root type.
pub fn binary_address(
    tg: &TypeGraph,
    code: &PrefixCode,
    chain: &[usize],
) -> Result<Vec<bool>, SelfSimilarError> {
    code.check(tg)?;
    let mut t = tg.root();
    let mut out = Vec::new();
    for &i in chain {
        let w = code.words[t].get(i).ok_or_else(|| {
            SelfSimilarError::Input(format!("type {} has no slot {i}", tg.name(t)))
        })?;
        out.extend_from_slice(w);
        t = tg.children(t)[i];
    }
    Ok(out)
}
