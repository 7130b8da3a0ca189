//! Deterministic automata with contiguous digit labels and per-state output.

use std::fmt;

use crate::error::Error;
use crate::letter::Letter;
use crate::substitution::Substitution;
use crate::transform::{ProductState, ReverseState};

pub type StateId = usize;
pub type Digit = u32;

/// Output symbol of a state: a letter, or `None` for ε.
pub type Output = Option<Letter>;

/// Where an automaton's states came from. Constructions keep the
/// provenance of each state so that it can be projected or printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Direct,
    Product(Vec<ProductState>),
    Reverse {
        source_names: Vec<Letter>,
        states: Vec<ReverseState>,
    },
}

/// A deterministic automaton over digit labels.
///
/// Transitions of state `s` are stored as a list whose `d`-th entry is the
/// target on digit `d`, so the digits leaving every state are always
/// `{0, …, d−1}` for some `d ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    names: Vec<Letter>,
    delta: Vec<Vec<StateId>>,
    initial: StateId,
    finals: Vec<bool>,
    outputs: Vec<Output>,
    origin: Origin,
}

impl Automaton {
    /// Builds an automaton from per-state successor lists.
    pub fn new(
        names: Vec<Letter>,
        delta: Vec<Vec<StateId>>,
        initial: StateId,
        finals: Vec<bool>,
        outputs: Vec<Output>,
    ) -> Result<Self, Error> {
        let n = names.len();
        if delta.len() != n || finals.len() != n || outputs.len() != n {
            return Err(Error::StateOutOfRange(n));
        }
        if initial >= n {
            return Err(Error::StateOutOfRange(initial));
        }
        if let Some(&bad) = delta.iter().flatten().find(|&&t| t >= n) {
            return Err(Error::StateOutOfRange(bad));
        }
        Ok(Automaton {
            names,
            delta,
            initial,
            finals,
            outputs,
            origin: Origin::Direct,
        })
    }

    /// Builds an automaton from `(source, digit, target)` triples, checking
    /// determinism and digit contiguity. All states are final and output
    /// their own name.
    pub fn from_transitions(
        names: Vec<Letter>,
        transitions: &[(StateId, Digit, StateId)],
        initial: StateId,
    ) -> Result<Self, Error> {
        let n = names.len();
        let mut table: Vec<Vec<Option<StateId>>> = vec![Vec::new(); n];
        for &(s, d, t) in transitions {
            if s >= n {
                return Err(Error::StateOutOfRange(s));
            }
            if t >= n {
                return Err(Error::StateOutOfRange(t));
            }
            let row = &mut table[s];
            if row.len() <= d as usize {
                row.resize(d as usize + 1, None);
            }
            if row[d as usize].replace(t).is_some() {
                return Err(Error::Nondeterministic { state: s, digit: d });
            }
        }
        let mut delta = Vec::with_capacity(n);
        for (s, row) in table.into_iter().enumerate() {
            let targets: Option<Vec<StateId>> = row.iter().copied().collect();
            match targets {
                Some(t) => delta.push(t),
                None => {
                    let missing = row.iter().position(Option::is_none).unwrap() as Digit;
                    return Err(Error::NonContiguous { state: s, missing });
                }
            }
        }
        let outputs = names.iter().copied().map(Some).collect();
        Automaton::new(names, delta, initial, vec![true; n], outputs)
    }

    pub(crate) fn from_substitution(sub: &Substitution) -> Self {
        let names = sub.alphabet().to_vec();
        let n = names.len();
        let delta = (0..n).map(|i| sub.image_indices(i).to_vec()).collect();
        let outputs = names.iter().copied().map(Some).collect();
        Automaton {
            names,
            delta,
            initial: 0,
            finals: vec![true; n],
            outputs,
            origin: Origin::Direct,
        }
    }

    pub(crate) fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = origin;
        self
    }

    pub(crate) fn with_outputs(mut self, outputs: Vec<Output>) -> Self {
        debug_assert_eq!(outputs.len(), self.names.len());
        self.outputs = outputs;
        self
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.names.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn name(&self, s: StateId) -> Letter {
        self.names[s]
    }

    pub fn names(&self) -> &[Letter] {
        &self.names
    }

    pub fn state_named(&self, name: Letter) -> Option<StateId> {
        self.names.iter().position(|&n| n == name)
    }

    pub fn is_final(&self, s: StateId) -> bool {
        self.finals[s]
    }

    pub fn output(&self, s: StateId) -> Output {
        self.outputs[s]
    }

    pub fn outputs(&self) -> &[Output] {
        &self.outputs
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// Number of digits leaving `s`.
    pub fn out_degree(&self, s: StateId) -> usize {
        self.delta[s].len()
    }

    /// Targets of `s`, indexed by digit.
    pub fn successors(&self, s: StateId) -> &[StateId] {
        &self.delta[s]
    }

    pub fn step(&self, s: StateId, d: Digit) -> Option<StateId> {
        self.delta[s].get(d as usize).copied()
    }

    /// Largest digit label, i.e. maximal out-degree minus one.
    pub fn k_max(&self) -> usize {
        self.delta
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// All transitions, states in order and digits ascending.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Digit, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(s, targets)| {
            targets
                .iter()
                .enumerate()
                .map(move |(d, &t)| (s, d as Digit, t))
        })
    }

    /// States reachable from the initial state, marked by index.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(s) = stack.pop() {
            for &t in &self.delta[s] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which some final state is reachable.
    pub fn co_reachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); n];
        for (s, _, t) in self.transitions() {
            preds[t].push(s);
        }
        let mut live = self.finals.clone();
        let mut stack: Vec<StateId> = (0..n).filter(|&s| live[s]).collect();
        while let Some(t) = stack.pop() {
            for &s in &preds[t] {
                if !live[s] {
                    live[s] = true;
                    stack.push(s);
                }
            }
        }
        live
    }
}

pub(crate) fn output_str(o: Output) -> String {
    o.map_or_else(|| "eps".to_string(), |l| l.to_string())
}

/// Text dump: `initial: <state>`, one `<state> -<digit>-> <state>` line per
/// transition, then one `output: <state> = <letter|eps>` line per state.
impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "initial: {}", self.names[self.initial])?;
        for (s, d, t) in self.transitions() {
            writeln!(f, "{} -{}-> {}", self.names[s], d, self.names[t])?;
        }
        for s in self.states() {
            writeln!(
                f,
                "output: {} = {}",
                self.names[s],
                output_str(self.outputs[s])
            )?;
        }
        Ok(())
    }
}
