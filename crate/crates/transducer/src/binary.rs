use std::collections::HashMap;

use horo_selfsimilar::{is_branching, PrefixCode, Reduction};

use crate::machine::{binary_graph, AsyncTransducer, State, Transition};
use crate::TransducerError;

/// Where the output stands on the reduced graph: the new type reached and
/// the original symbols read since, which are a proper prefix of one of
/// its slot paths.
type OutPos = (usize, Vec<usize>);

fn feed(
    red: &Reduction,
    pos: &mut OutPos,
    symbol: usize,
    out: &mut Vec<usize>,
) -> Result<(), TransducerError> {
    if Some(pos.0) == red.binary_type() {
        // Inside a single chain every symbol is forced.
        return Ok(());
    }
    pos.1.push(symbol);
    let paths = &red.paths[pos.0];
    let mut open = false;
    for (j, p) in paths.iter().enumerate() {
        let p = p.as_deref().unwrap_or(&[]);
        if p == pos.1.as_slice() {
            out.push(j);
            *pos = (red.graph.children(pos.0)[j], Vec::new());
            return Ok(());
        }
        open |= p.starts_with(&pos.1);
    }
    if open {
        Ok(())
    } else {
        Err(TransducerError::InputRejected(format!(
            "output {:?} leaves the reduced graph",
            pos.1
        )))
    }
}

/// The same map read on the reduced graph: input slots run their original
/// paths, and outputs are regrouped into reduced slots. Where input and
/// output both enter the binary filler the map continues as the identity.
pub fn reduce_transducer(
    t: &AsyncTransducer,
    red: &Reduction,
) -> Result<AsyncTransducer, TransducerError> {
    if t.input != t.output {
        return Err(TransducerError::AlphabetMismatch(
            "reduction needs a machine from a type graph to itself".into(),
        ));
    }
    let tg = &red.graph;
    let bin = red.binary_type();
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum Key {
        Run(usize, usize, OutPos),
        Filler,
    }
    let init = if red.origin[tg.root()].is_none() {
        Key::Filler
    } else {
        Key::Run(t.init, tg.root(), (tg.root(), Vec::new()))
    };
    let mut keys = vec![init.clone()];
    let mut index: HashMap<Key, usize> = HashMap::from([(init, 0)]);
    let mut states = Vec::new();
    let mut k = 0;
    while k < keys.len() {
        let key = keys[k].clone();
        let state = match key {
            Key::Filler => {
                let b = bin.unwrap();
                let trans = (0..2)
                    .map(|i| Transition {
                        next: k,
                        output: vec![i],
                    })
                    .collect();
                State {
                    in_type: b,
                    out_type: b,
                    trans,
                }
            }
            Key::Run(q, ty, ref pos) => {
                let mut trans = Vec::new();
                for (j, p) in red.paths[ty].iter().enumerate() {
                    let p = p.as_ref().ok_or_else(|| {
                        TransducerError::Audit("filler slot outside the filler".into())
                    })?;
                    let (q2, original) = t.run_from(q, p)?;
                    let mut pos2 = pos.clone();
                    let mut out = Vec::new();
                    for &a in &original {
                        feed(red, &mut pos2, a, &mut out)?;
                    }
                    let ty2 = tg.children(ty)[j];
                    let next_key = if Some(ty2) == bin {
                        // The rest of the input is forced: run it until the
                        // output also enters a single chain.
                        let mut q3 = q2;
                        let mut steps = 0;
                        while Some(pos2.0) != bin {
                            if steps > t.len() {
                                return Err(TransducerError::Audit(
                                    "a single input chain is not sent onto a single output chain"
                                        .into(),
                                ));
                            }
                            let (q4, more) = t.run_from(q3, &[0])?;
                            for &a in &more {
                                feed(red, &mut pos2, a, &mut out)?;
                            }
                            q3 = q4;
                            steps += 1;
                        }
                        Key::Filler
                    } else {
                        Key::Run(q2, ty2, pos2)
                    };
                    let next = *index.entry(next_key.clone()).or_insert_with(|| {
                        keys.push(next_key);
                        keys.len() - 1
                    });
                    trans.push(Transition { next, output: out });
                }
                State {
                    in_type: ty,
                    out_type: pos.0,
                    trans,
                }
            }
        };
        states.push(state);
        k += 1;
    }
    let out = AsyncTransducer {
        input: tg.clone(),
        output: tg.clone(),
        states,
        init: 0,
    };
    out.validate()?;
    Ok(out)
}

/// Rewrites a machine on a branching type graph over bits: each slot is
/// replaced by its code word on both sides. A state reading part of a
/// code word waits and emits nothing.
pub fn to_binary(
    t: &AsyncTransducer,
    code: &PrefixCode,
) -> Result<AsyncTransducer, TransducerError> {
    for tg in [&t.input, &t.output] {
        if !is_branching(tg) {
            return Err(TransducerError::NotBranching(
                "every type needs two or more slots".into(),
            ));
        }
    }
    if t.input != t.output {
        return Err(TransducerError::AlphabetMismatch(
            "one code needs one type graph".into(),
        ));
    }
    code.validate(&t.input)?;
    let encode = |mut ty: usize, word: &[usize]| -> Vec<usize> {
        let mut bits = Vec::new();
        for &s in word {
            bits.extend(code.words[ty][s].iter().map(|&b| b as usize));
            ty = t.output.children(ty)[s];
        }
        bits
    };
    let mut keys: Vec<(usize, Vec<bool>)> = vec![(t.init, Vec::new())];
    let mut index: HashMap<(usize, Vec<bool>), usize> = HashMap::from([((t.init, Vec::new()), 0)]);
    let mut states = Vec::new();
    let mut k = 0;
    while k < keys.len() {
        let (q, prefix) = keys[k].clone();
        let st = &t.states[q];
        let mut trans = Vec::with_capacity(2);
        for bit in [false, true] {
            let mut p = prefix.clone();
            p.push(bit);
            let (key, output) = match code.decode(st.in_type, &p) {
                Some(j) => {
                    let tr = &st.trans[j];
                    ((tr.next, Vec::new()), encode(st.out_type, &tr.output))
                }
                None => ((q, p), Vec::new()),
            };
            let next = *index.entry(key.clone()).or_insert_with(|| {
                keys.push(key);
                keys.len() - 1
            });
            trans.push(Transition { next, output });
        }
        states.push(State {
            in_type: 0,
            out_type: 0,
            trans,
        });
        k += 1;
    }
    let bits = binary_graph();
    Ok(AsyncTransducer {
        input: bits.clone(),
        output: bits,
        states,
        init: 0,
    })
}
