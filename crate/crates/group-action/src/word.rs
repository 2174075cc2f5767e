use horo_graph::{LayeredGraph, SourceKind};

use crate::{compose, inverse, GroupElement, GroupError};

/// A named generator of the source's built-in group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub element: GroupElement,
}

/// Built-in generators.
///
/// - tiling: `r` rotates one click counterclockwise about the base vertex;
///   `s` is the half turn swapping the base with its port-0 neighbor.
/// - free group of rank k: `a`, `b`, ... step along ports `0..k` (left
///   multiplication); `A`, `B`, ... are their inverses.
/// - line: `t` shifts one step along port 0.
pub fn generators(g: &LayeredGraph) -> Result<Vec<Generator>, GroupError> {
    let x0 = g.base();
    let dart = |v, p| GroupElement::from_dart(g, v, p);
    let named = |name: &str, element| Generator {
        name: name.to_string(),
        element,
    };
    let neighbor =
        |p: usize| {
            g.ports(x0).get(p).copied().flatten().ok_or_else(|| {
                GroupError::Radius("generators need a ball of radius at least 1".into())
            })
        };
    Ok(match g.kind() {
        SourceKind::Tiling { .. } => {
            let v0 = neighbor(0)?;
            vec![
                named("r", dart(x0, 1)?),
                named("s", dart(v0, g.port_to(v0, x0).unwrap())?),
            ]
        }
        SourceKind::Free { rank } => {
            let mut out = Vec::with_capacity(2 * rank);
            for i in 0..rank {
                let c = (b'a' + i as u8) as char;
                out.push(named(&c.to_string(), dart(neighbor(i)?, 0)?));
                out.push(named(
                    &c.to_ascii_uppercase().to_string(),
                    dart(neighbor(rank + i)?, 0)?,
                ));
            }
            out
        }
        SourceKind::Line => vec![named("t", dart(neighbor(0)?, 0)?)],
        SourceKind::File => {
            return Err(GroupError::Input("file sources have no generators".into()))
        }
    })
}

/// A word as a list of (generator name, exponent), read left to right.
///
/// Tokens are separated by whitespace and take an optional `^k` exponent
/// (`r^-1`). A parenthesised group may be raised to a power (`(rs)^4`), and
/// a token that is not a generator name is read letter by letter.
pub fn parse_word(word: &str, names: &[&str]) -> Result<Vec<(String, i64)>, GroupError> {
    let mut out = Vec::new();
    let bad = |msg: String| GroupError::Input(msg);
    let chars: Vec<char> = word.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let grouped = c == '(';
        let (mut body, next) = if grouped {
            let mut depth = 0;
            let close = (i..chars.len())
                .find(|&j| {
                    match chars[j] {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        _ => {}
                    }
                    depth == 0
                })
                .ok_or_else(|| bad(format!("unbalanced parenthesis in `{word}`")))?;
            let inner: String = chars[i + 1..close].iter().collect();
            (parse_word(&inner, names)?, close + 1)
        } else {
            let end = (i..chars.len())
                .find(|&j| chars[j].is_whitespace() || matches!(chars[j], '^' | '(' | ')'))
                .unwrap_or(chars.len());
            let token: String = chars[i..end].iter().collect();
            if token.is_empty() {
                return Err(bad(format!("unexpected `{c}` in `{word}`")));
            }
            let letters = if names.contains(&token.as_str()) {
                vec![(token.clone(), 1)]
            } else {
                token
                    .chars()
                    .map(|ch| {
                        let s = ch.to_string();
                        if names.contains(&s.as_str()) {
                            Ok((s, 1))
                        } else {
                            Err(bad(format!("unknown generator `{token}`")))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?
            };
            (letters, end)
        };
        i = next;
        let mut power = 1i64;
        if chars.get(i) == Some(&'^') {
            let end = (i + 1..chars.len())
                .find(|&j| !(chars[j].is_ascii_digit() || (j == i + 1 && chars[j] == '-')))
                .unwrap_or(chars.len());
            let text: String = chars[i + 1..end].iter().collect();
            power = text
                .parse()
                .map_err(|_| bad(format!("bad exponent `{text}` in `{word}`")))?;
            i = end;
        }
        // Without parentheses the exponent binds to the last letter only.
        let unit = if grouped {
            body
        } else {
            let last = body.pop().unwrap();
            out.append(&mut body);
            vec![last]
        };
        if power >= 0 {
            for _ in 0..power {
                out.extend(unit.iter().cloned());
            }
        } else {
            for _ in 0..-power {
                out.extend(unit.iter().rev().map(|(n, e)| (n.clone(), -e)));
            }
        }
    }
    Ok(out)
}

/// Evaluates a word; letters act left to right, so `gh` means "apply `g`,
/// then `h`".
pub fn element_from_word(g: &LayeredGraph, word: &str) -> Result<GroupElement, GroupError> {
    let gens = generators(g)?;
    let names: Vec<&str> = gens.iter().map(|x| x.name.as_str()).collect();
    let mut acc = GroupElement::IDENTITY;
    for (name, e) in parse_word(word, &names)? {
        let gen = gens.iter().find(|x| x.name == name).unwrap().element;
        let letter = if e < 0 { inverse(g, &gen)? } else { gen };
        acc = compose(g, &letter, &acc)?;
    }
    Ok(acc)
}
