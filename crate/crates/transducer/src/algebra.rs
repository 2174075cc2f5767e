use std::collections::HashMap;

use crate::machine::{walk, AsyncTransducer, State, Transition};
use crate::TransducerError;

/// `evaluate(compose(t1, t2), w) = evaluate(t2, evaluate(t1, w))`. States
/// are pairs; each output word of `t1` is fed through `t2` symbol by symbol.
pub fn compose(
    t1: &AsyncTransducer,
    t2: &AsyncTransducer,
) -> Result<AsyncTransducer, TransducerError> {
    if t1.output != t2.input {
        return Err(TransducerError::AlphabetMismatch(
            "output graph of the first machine is not the input graph of the second".into(),
        ));
    }
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs = vec![(t1.init, t2.init)];
    index.insert((t1.init, t2.init), 0);
    let mut states = Vec::new();
    let mut k = 0;
    while k < pairs.len() {
        let (q1, q2) = pairs[k];
        let (s1, s2) = (&t1.states[q1], &t2.states[q2]);
        if s1.out_type != s2.in_type {
            return Err(TransducerError::AlphabetMismatch(format!(
                "paired states {q1} and {q2} disagree on the middle type"
            )));
        }
        let mut trans = Vec::with_capacity(s1.trans.len());
        for tr in &s1.trans {
            let (p2, out) = t2.run_from(q2, &tr.output)?;
            let next = *index.entry((tr.next, p2)).or_insert_with(|| {
                pairs.push((tr.next, p2));
                pairs.len() - 1
            });
            trans.push(Transition { next, output: out });
        }
        states.push(State {
            in_type: s1.in_type,
            out_type: s2.out_type,
            trans,
        });
        k += 1;
    }
    Ok(AsyncTransducer {
        input: t1.input.clone(),
        output: t2.output.clone(),
        states,
        init: 0,
    })
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// For each state, the output that every continuation of length `depth`
/// emits in common: `lcp_0 = ε`, `lcp_k(q) = LCP_i(o(q,i) · lcp_{k-1}(t(q,i)))`.
pub fn forced_outputs(t: &AsyncTransducer, depth: u32) -> Vec<Vec<usize>> {
    let mut cur: Vec<Vec<usize>> = vec![Vec::new(); t.states.len()];
    for _ in 0..depth {
        let next = t
            .states
            .iter()
            .map(|st| {
                let mut it = st.trans.iter().map(|tr| {
                    let mut w = tr.output.clone();
                    w.extend_from_slice(&cur[tr.next]);
                    w
                });
                let Some(mut best) = it.next() else {
                    return Vec::new();
                };
                for w in it {
                    let l = common_prefix(&best, &w);
                    best.truncate(l);
                }
                best
            })
            .collect();
        cur = next;
    }
    cur
}

fn comparable(a: &[usize], b: &[usize]) -> bool {
    common_prefix(a, b) == a.len().min(b.len())
}

/// Compares the two machines on every valid input word of length at most
/// `depth`. Each output is extended by the state's forced output over
/// `depth` further symbols, which absorbs differences in output timing; the
/// two extended outputs must be prefixes of one another.
pub fn bounded_equivalent(
    t1: &AsyncTransducer,
    t2: &AsyncTransducer,
    depth: u32,
) -> Result<bool, TransducerError> {
    if t1.input != t2.input || t1.output != t2.output {
        return Err(TransducerError::AlphabetMismatch(
            "machines read or write different type graphs".into(),
        ));
    }
    let (f1, f2) = (forced_outputs(t1, depth), forced_outputs(t2, depth));
    let mut stack: Vec<(usize, usize, Vec<usize>, Vec<usize>, u32)> =
        vec![(t1.init, t2.init, Vec::new(), Vec::new(), 0)];
    while let Some((q1, q2, o1, o2, len)) = stack.pop() {
        let mut e1 = o1.clone();
        e1.extend_from_slice(&f1[q1]);
        let mut e2 = o2.clone();
        e2.extend_from_slice(&f2[q2]);
        if !comparable(&e1, &e2) {
            return Ok(false);
        }
        if len == depth {
            continue;
        }
        let (s1, s2) = (&t1.states[q1], &t2.states[q2]);
        if s1.in_type != s2.in_type {
            return Ok(false);
        }
        for (a, b) in s1.trans.iter().zip(&s2.trans) {
            let mut n1 = o1.clone();
            n1.extend_from_slice(&a.output);
            let mut n2 = o2.clone();
            n2.extend_from_slice(&b.output);
            stack.push((a.next, b.next, n1, n2, len + 1));
        }
    }
    Ok(true)
}

/// Merges reachable states that agree on types, outputs and the classes of
/// their successors, refining at most `depth` rounds. Classes are numbered
/// in breadth-first order from the initial state.
pub fn minimize(t: &AsyncTransducer, depth: u32) -> AsyncTransducer {
    let order = t.reachable();
    let mut class: Vec<usize> = vec![usize::MAX; t.states.len()];
    let mut count = assign(&order, &mut class, |q| {
        (t.states[q].in_type, t.states[q].out_type, Vec::new())
    });
    for _ in 0..depth {
        let prev = class.clone();
        let n = assign(&order, &mut class, |q| {
            let st = &t.states[q];
            let row = st
                .trans
                .iter()
                .map(|tr| (tr.output.clone(), prev[tr.next]))
                .collect::<Vec<_>>();
            (prev[q], 0, row)
        });
        if n == count {
            class = prev;
            break;
        }
        count = n;
    }
    // Renumber in breadth-first order so the initial class comes first.
    let mut renum = vec![usize::MAX; count];
    let mut reps = Vec::with_capacity(count);
    for &q in &order {
        if renum[class[q]] == usize::MAX {
            renum[class[q]] = reps.len();
            reps.push(q);
        }
    }
    let states = reps
        .iter()
        .map(|&q| {
            let st = &t.states[q];
            State {
                in_type: st.in_type,
                out_type: st.out_type,
                trans: st
                    .trans
                    .iter()
                    .map(|tr| Transition {
                        next: renum[class[tr.next]],
                        output: tr.output.clone(),
                    })
                    .collect(),
            }
        })
        .collect();
    AsyncTransducer {
        input: t.input.clone(),
        output: t.output.clone(),
        states,
        init: 0,
    }
}

type ClassKey = (usize, usize, Vec<(Vec<usize>, usize)>);

fn assign(order: &[usize], class: &mut [usize], key: impl Fn(usize) -> ClassKey) -> usize {
    let mut ids: HashMap<ClassKey, usize> = HashMap::new();
    let keys: Vec<ClassKey> = order.iter().map(|&q| key(q)).collect();
    for (&q, k) in order.iter().zip(keys) {
        let n = ids.len();
        class[q] = *ids.entry(k).or_insert(n);
    }
    ids.len()
}

/// Fails if some reachable cycle emits only empty words.
pub fn check_nondegenerate(t: &AsyncTransducer) -> Result<(), TransducerError> {
    let n = t.states.len();
    let reach = t.reachable();
    // Kahn's algorithm on the empty-output edges between reachable states.
    let mut indeg = vec![0usize; n];
    for &q in &reach {
        for tr in &t.states[q].trans {
            if tr.output.is_empty() {
                indeg[tr.next] += 1;
            }
        }
    }
    let mut queue: Vec<usize> = reach.iter().copied().filter(|&q| indeg[q] == 0).collect();
    let mut removed = 0;
    while let Some(q) = queue.pop() {
        removed += 1;
        for tr in &t.states[q].trans {
            if tr.output.is_empty() {
                indeg[tr.next] -= 1;
                if indeg[tr.next] == 0 {
                    queue.push(tr.next);
                }
            }
        }
    }
    if removed == reach.len() {
        Ok(())
    } else {
        let stuck: Vec<usize> = reach.iter().copied().filter(|&q| indeg[q] > 0).collect();
        Err(TransducerError::Audit(format!(
            "states {stuck:?} lie on a cycle with empty outputs"
        )))
    }
}

/// Moves every output forward to the earliest transition at which it is
/// determined. Each state other than the initial one gets the largest
/// output `p(q)` common to all of its continuations, found as a fixpoint
/// within `rounds` rounds, and transitions become `p(q)⁻¹ · o(q,a) · p(t(q,a))`.
pub fn push_outputs(t: &AsyncTransducer, rounds: u32) -> Result<AsyncTransducer, TransducerError> {
    let n = t.states.len();
    let mut pushed: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut stable = false;
    for _ in 0..rounds {
        let next: Vec<Vec<usize>> = (0..n)
            .map(|q| {
                if q == t.init {
                    return Vec::new();
                }
                let mut it = t.states[q].trans.iter().map(|tr| {
                    let mut w = tr.output.clone();
                    w.extend_from_slice(&pushed[tr.next]);
                    w
                });
                let Some(mut best) = it.next() else {
                    return Vec::new();
                };
                for w in it {
                    let l = common_prefix(&best, &w);
                    best.truncate(l);
                }
                best
            })
            .collect();
        if next == pushed {
            stable = true;
            break;
        }
        pushed = next;
    }
    if !stable {
        return Err(TransducerError::Audit(format!(
            "forced outputs did not settle within {rounds} rounds"
        )));
    }
    let states = t
        .states
        .iter()
        .enumerate()
        .map(|(q, st)| {
            let out_type = walk(&t.output, st.out_type, &pushed[q]).unwrap();
            let trans = st
                .trans
                .iter()
                .map(|tr| {
                    let mut w = tr.output.clone();
                    w.extend_from_slice(&pushed[tr.next]);
                    Transition {
                        next: tr.next,
                        output: w[pushed[q].len()..].to_vec(),
                    }
                })
                .collect();
            State {
                in_type: st.in_type,
                out_type,
                trans,
            }
        })
        .collect();
    Ok(AsyncTransducer {
        input: t.input.clone(),
        output: t.output.clone(),
        states,
        init: t.init,
    })
}
