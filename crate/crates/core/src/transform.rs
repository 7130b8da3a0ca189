//! Automaton constructions: synchronized product, exit-map projection,
//! the automaton-to-substitution bijection, and reversal.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{Automaton, Digit, Origin, Output, StateId};
use crate::error::Error;
use crate::letter::{Letter, Word};
use crate::substitution::Substitution;

/// A state `(a, b)` of a product automaton, with the names and outputs of
/// its two components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductState {
    pub pair: (StateId, StateId),
    pub names: (Letter, Letter),
    pub outputs: (Output, Output),
}

/// A state of a reversed automaton.
///
/// `vector[s]` is the set of original states `q` from which the mirror of
/// the word read so far leads to `s`. The output is the original output of
/// the unique `s` whose set holds the original initial state, or ε.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReverseState {
    pub vector: Vec<Vec<StateId>>,
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coordinate {
    First,
    Second,
}

/// Reachable-pairs product. A pair has a `d`-transition iff both components
/// do, so its out-degree is the smaller of the two. States are renamed
/// `a, b, c, …` in breadth-first discovery order, digits ascending.
pub fn product(left: &Automaton, right: &Automaton) -> Automaton {
    let start = (left.initial(), right.initial());
    let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::from([(start, 0)]);
    let mut pairs = vec![start];
    let mut delta: Vec<Vec<StateId>> = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some((a, b)) = queue.pop_front() {
        let degree = left.out_degree(a).min(right.out_degree(b));
        let mut row = Vec::with_capacity(degree);
        for d in 0..degree as Digit {
            let next = (left.step(a, d).unwrap(), right.step(b, d).unwrap());
            let id = *ids.entry(next).or_insert_with(|| {
                pairs.push(next);
                queue.push_back(next);
                pairs.len() - 1
            });
            row.push(id);
        }
        delta.push(row);
    }

    let n = pairs.len();
    let names: Vec<Letter> = (0..n).map(Letter::fresh).collect();
    let finals = pairs
        .iter()
        .map(|&(a, b)| left.is_final(a) && right.is_final(b))
        .collect();
    let states = pairs
        .iter()
        .map(|&(a, b)| ProductState {
            pair: (a, b),
            names: (left.name(a), right.name(b)),
            outputs: (left.output(a), right.output(b)),
        })
        .collect();
    let outputs = names.iter().copied().map(Some).collect();
    Automaton::new(names, delta, 0, finals, outputs)
        .expect("product construction is well-formed")
        .with_origin(Origin::Product(states))
}

/// Replaces every output of a product automaton by the output of the chosen
/// component.
pub fn project(prod: &Automaton, coordinate: Coordinate) -> Result<Automaton, Error> {
    let Origin::Product(states) = prod.origin() else {
        return Err(Error::NoPairOutputs);
    };
    let outputs = states
        .iter()
        .map(|p| match coordinate {
            Coordinate::First => p.outputs.0,
            Coordinate::Second => p.outputs.1,
        })
        .collect();
    Ok(prod.clone().with_outputs(outputs))
}

/// Reads an automaton back as a substitution: the rule of state `s` lists
/// its successors for digits `0, 1, …`. The initial state's rule comes first.
pub fn automaton_to_substitution(aut: &Automaton) -> Result<Substitution, Error> {
    let order = std::iter::once(aut.initial()).chain(aut.states().filter(|&s| s != aut.initial()));
    let mut rules = Vec::with_capacity(aut.num_states());
    for s in order {
        if aut.out_degree(s) == 0 {
            return Err(Error::DeadEnd(aut.name(s)));
        }
        let image: Word = aut.successors(s).iter().map(|&t| aut.name(t)).collect();
        rules.push((aut.name(s), image));
    }
    Substitution::new(rules)
}

/// Deterministic automaton reading words right to left.
///
/// Transitions are reversed and the result determinized by a subset
/// construction run separately for every original state, so the output of
/// each reached state can still be recovered. The start vector maps each
/// final state `s` to `{s}`; a `d`-step replaces every coordinate set by
/// the set of its `d`-predecessors. Every state gets all digits up to the
/// source's largest label; the all-empty vector is kept as a non-final sink
/// when it is reachable. The result is not minimized.
pub fn reverse(aut: &Automaton) -> Automaton {
    let n = aut.num_states();
    let width = aut.k_max() + 1;
    let mut preds: Vec<Vec<Vec<StateId>>> = vec![vec![Vec::new(); n]; width];
    for (s, d, t) in aut.transitions() {
        preds[d as usize][t].push(s);
    }
    for by_target in &mut preds {
        for set in by_target.iter_mut() {
            set.sort_unstable();
        }
    }

    let start: Vec<Vec<StateId>> = aut
        .states()
        .map(|s| if aut.is_final(s) { vec![s] } else { Vec::new() })
        .collect();
    let mut ids: HashMap<Vec<Vec<StateId>>, StateId> = HashMap::from([(start.clone(), 0)]);
    let mut vectors = vec![start];
    let mut delta: Vec<Vec<StateId>> = Vec::new();
    let mut next_index = 0;
    while next_index < vectors.len() {
        let current = vectors[next_index].clone();
        next_index += 1;
        let mut row = Vec::with_capacity(width);
        for by_target in &preds {
            let next: Vec<Vec<StateId>> = current
                .iter()
                .map(|set| {
                    let mut out: Vec<StateId> = set
                        .iter()
                        .flat_map(|&t| by_target[t].iter().copied())
                        .collect();
                    out.sort_unstable();
                    out.dedup();
                    out
                })
                .collect();
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    let id = vectors.len();
                    ids.insert(next.clone(), id);
                    vectors.push(next);
                    id
                }
            };
            row.push(id);
        }
        delta.push(row);
    }

    let iota = aut.initial();
    let states: Vec<ReverseState> = vectors
        .into_iter()
        .map(|vector| {
            let output = vector
                .iter()
                .position(|set| set.binary_search(&iota).is_ok())
                .and_then(|s| aut.output(s));
            ReverseState { vector, output }
        })
        .collect();
    let count = states.len();
    let names: Vec<Letter> = (0..count).map(Letter::fresh).collect();
    let outputs: Vec<Output> = states.iter().map(|r| r.output).collect();
    let finals = states
        .iter()
        .map(|r| r.vector.iter().any(|set| set.binary_search(&iota).is_ok()))
        .collect();
    Automaton::new(names, delta, 0, finals, outputs)
        .expect("reverse construction is well-formed")
        .with_origin(Origin::Reverse {
            source_names: aut.names().to_vec(),
            states,
        })
}

/// Provenance label of a constructed state: `(a, b)` for product states,
/// `{a}, ∅, {b, c} / a` for reverse states, `None` otherwise.
pub fn provenance_label(aut: &Automaton, s: StateId) -> Option<String> {
    match aut.origin() {
        Origin::Direct => None,
        Origin::Product(states) => {
            let p = &states[s];
            Some(format!("({}, {})", p.names.0, p.names.1))
        }
        Origin::Reverse {
            source_names,
            states,
        } => {
            let r = &states[s];
            let sets: Vec<String> = r
                .vector
                .iter()
                .map(|set| {
                    if set.is_empty() {
                        "∅".to_string()
                    } else {
                        let inner: Vec<String> =
                            set.iter().map(|&q| source_names[q].to_string()).collect();
                        format!("{{{}}}", inner.join(", "))
                    }
                })
                .collect();
            let out = r.output.map_or("ε".to_string(), |l| l.to_string());
            Some(format!("{} / {}", sets.join(", "), out))
        }
    }
}

/// The exit map as `(state, output)` pairs in state order.
pub fn exit_map(aut: &Automaton) -> Vec<(Letter, Output)> {
    aut.states().map(|s| (aut.name(s), aut.output(s))).collect()
}
