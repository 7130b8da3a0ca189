//! Running digit words through automata and enumerating their languages in
//! radix order.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::analysis::AnalysisReport;
use crate::automaton::{Automaton, Digit, Output, StateId};
use crate::substitution::Substitution;

/// A digit string, most significant digit first. The empty word is ε.
///
/// Prints as concatenated digits when every digit is below 10 (`2021`),
/// dot-separated otherwise (`12.0.3`), and `eps` when empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DigitWord(Vec<Digit>);

impl DigitWord {
    pub fn empty() -> Self {
        DigitWord(Vec::new())
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<Digit> {
        self.0
    }

    pub fn mirror(&self) -> DigitWord {
        DigitWord(self.0.iter().rev().copied().collect())
    }

    pub fn has_leading_zero(&self) -> bool {
        self.0.first() == Some(&0)
    }

    pub(crate) fn push(&mut self, d: Digit) {
        self.0.push(d);
    }
}

impl Deref for DigitWord {
    type Target = [Digit];

    fn deref(&self) -> &[Digit] {
        &self.0
    }
}

impl From<Vec<Digit>> for DigitWord {
    fn from(digits: Vec<Digit>) -> Self {
        DigitWord(digits)
    }
}

impl From<&[Digit]> for DigitWord {
    fn from(digits: &[Digit]) -> Self {
        DigitWord(digits.to_vec())
    }
}

impl FromIterator<Digit> for DigitWord {
    fn from_iter<I: IntoIterator<Item = Digit>>(iter: I) -> Self {
        DigitWord(iter.into_iter().collect())
    }
}

/// Radix order: shorter words first, equal lengths compared digit by digit.
impl Ord for DigitWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for DigitWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("eps");
        }
        if self.0.iter().all(|&d| d < 10) {
            for d in &self.0 {
                write!(f, "{d}")?;
            }
        } else {
            for (i, d) in self.0.iter().enumerate() {
                if i > 0 {
                    f.write_str(".")?;
                }
                write!(f, "{d}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid digit word {0:?}")]
pub struct DigitWordParseError(pub String);

impl FromStr for DigitWord {
    type Err = DigitWordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || DigitWordParseError(s.to_string());
        if s == "eps" || s == "ε" || s.is_empty() {
            return Ok(DigitWord::empty());
        }
        if s.contains('.') {
            s.split('.')
                .map(|part| part.parse::<Digit>().map_err(|_| bad()))
                .collect()
        } else {
            s.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect()
        }
    }
}

/// Result of feeding a word to an automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    Reached(StateId),
    /// No transition for `digit` at `state`, the digit at `position`.
    Crash {
        position: usize,
        state: StateId,
        digit: Digit,
    },
}

impl RunOutcome {
    pub fn state(self) -> Option<StateId> {
        match self {
            RunOutcome::Reached(s) => Some(s),
            RunOutcome::Crash { .. } => None,
        }
    }
}

/// Follows `word` from the initial state.
pub fn run(aut: &Automaton, word: &[Digit]) -> RunOutcome {
    run_from(aut, aut.initial(), word)
}

pub fn run_from(aut: &Automaton, start: StateId, word: &[Digit]) -> RunOutcome {
    let mut state = start;
    for (position, &digit) in word.iter().enumerate() {
        match aut.step(state, digit) {
            Some(next) => state = next,
            None => {
                return RunOutcome::Crash {
                    position,
                    state,
                    digit,
                }
            }
        }
    }
    RunOutcome::Reached(state)
}

pub fn accepts(aut: &Automaton, word: &[Digit]) -> bool {
    matches!(run(aut, word), RunOutcome::Reached(s) if aut.is_final(s))
}

/// Which words an enumeration visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Listing {
    /// Every accepted word.
    All,
    /// ε, the single word `0`, then accepted words with a nonzero first digit.
    SkipLeadingZeros,
    /// ε, then accepted words with a nonzero first digit. The `n`-th word is
    /// the one that indexes position `n` of a fixed point.
    Canonical,
}

/// Breadth-first iterator over accepted words in radix order.
///
/// Digits at each state are contiguous from 0, so visiting parents in order
/// and children digit-ascending yields radix order. Only states that can
/// still reach a final state are expanded, so the iterator never spins
/// forever between two accepted words.
pub struct RadixWords<'a> {
    aut: &'a Automaton,
    live: Vec<bool>,
    listing: Listing,
    queue: VecDeque<(DigitWord, StateId, bool)>,
}

impl<'a> RadixWords<'a> {
    pub fn new(aut: &'a Automaton, listing: Listing) -> Self {
        let live = aut.co_reachable();
        let mut queue = VecDeque::new();
        if live[aut.initial()] {
            queue.push_back((DigitWord::empty(), aut.initial(), true));
        }
        RadixWords {
            aut,
            live,
            listing,
            queue,
        }
    }
}

impl Iterator for RadixWords<'_> {
    type Item = DigitWord;

    fn next(&mut self) -> Option<DigitWord> {
        while let Some((word, state, expand)) = self.queue.pop_front() {
            if expand {
                let at_root = word.is_empty();
                for (d, &t) in self.aut.successors(state).iter().enumerate() {
                    if !self.live[t] {
                        continue;
                    }
                    let mut child = word.clone();
                    child.push(d as Digit);
                    let child_expands = match (self.listing, at_root && d == 0) {
                        (_, false) | (Listing::All, true) => true,
                        (Listing::SkipLeadingZeros, true) => false,
                        (Listing::Canonical, true) => continue,
                    };
                    if child_expands || self.aut.is_final(t) {
                        self.queue.push_back((child, t, child_expands));
                    }
                }
            }
            if self.aut.is_final(state) {
                return Some(word);
            }
        }
        None
    }
}

/// The first `count` accepted words in radix order.
///
/// With `allow_leading_zeros` every accepted word is listed. Without it,
/// words of length two or more starting with 0 are skipped, which gives the
/// familiar listing `ε, 0, 1, 10, 100, 101, …` for the Fibonacci automaton.
pub fn enumerate_words(aut: &Automaton, count: usize, allow_leading_zeros: bool) -> Vec<DigitWord> {
    let listing = if allow_leading_zeros {
        Listing::All
    } else {
        Listing::SkipLeadingZeros
    };
    RadixWords::new(aut, listing).take(count).collect()
}

/// The first `count` words of the canonical numbering: ε at index 0, then
/// accepted words without leading zero in radix order.
pub fn canonical_words(aut: &Automaton, count: usize) -> Vec<DigitWord> {
    RadixWords::new(aut, Listing::Canonical)
        .take(count)
        .collect()
}

/// Output of the state reached by the `i`-th canonical word, for `i < count`.
pub fn indexed_outputs(aut: &Automaton, count: usize) -> Vec<Output> {
    canonical_words(aut, count)
        .iter()
        .map(|w| {
            let s = run(aut, w).state().expect("enumerated words never crash");
            aut.output(s)
        })
        .collect()
}

/// All accepted words of length exactly `n` (leading zeros allowed) in
/// radix order, found by extending accepted prefixes with every digit up to
/// `k_max` and keeping those the automaton accepts.
///
/// Only valid for prefix-closed languages, which includes every automaton
/// built from a substitution.
pub fn words_of_length(aut: &Automaton, n: usize) -> Vec<DigitWord> {
    let top = aut.k_max() as Digit;
    let mut level = vec![DigitWord::empty()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &level {
            for d in 0..=top {
                let mut child = w.clone();
                child.push(d);
                if accepts(aut, &child) {
                    next.push(child);
                }
            }
        }
        level = next;
    }
    level
}

/// Checks that, for every `n ≤ depth`, the states reached by the accepted
/// words of length `n` (in radix order) spell σⁿ(ι).
pub fn check_tree_correspondence(sub: &Substitution, depth: usize) -> AnalysisReport {
    let aut = sub.to_automaton();
    for n in 0..=depth {
        let expected = sub.n_word(n);
        let words = words_of_length(&aut, n);
        if words.len() != expected.len() {
            return AnalysisReport::fail(
                0..depth as u64 + 1,
                n as u64,
                format!(
                    "level {n}: {} accepted words but |sigma^{n}(iota)| = {}",
                    words.len(),
                    expected.len()
                ),
            );
        }
        for (i, (w, letter)) in words.iter().zip(expected.iter()).enumerate() {
            let reached = run(&aut, w).state().map(|s| aut.name(s));
            if reached != Some(*letter) {
                return AnalysisReport::fail(
                    0..depth as u64 + 1,
                    n as u64,
                    format!("level {n}, word {i} ({w}): reached {reached:?}, expected {letter}"),
                );
            }
        }
    }
    AnalysisReport::pass(0..depth as u64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Verdict;

    fn aut(text: &str) -> Automaton {
        Substitution::parse(text).unwrap().to_automaton()
    }

    fn w(s: &str) -> DigitWord {
        s.parse().unwrap()
    }

    fn listing(words: &[DigitWord]) -> Vec<String> {
        words.iter().map(ToString::to_string).collect()
    }

    const FIB: &str = "a -> ab\nb -> a";
    const SEMI1: &str = "a -> aab\nb -> c\nc -> aac";

    #[test]
    fn digit_word_text_forms() {
        assert_eq!(w("2021").to_string(), "2021");
        assert_eq!(DigitWord::from(vec![12, 0, 3]).to_string(), "12.0.3");
        assert_eq!(w("12.0.3"), DigitWord::from(vec![12, 0, 3]));
        assert_eq!(DigitWord::empty().to_string(), "eps");
        assert_eq!(w("eps"), DigitWord::empty());
        assert!("1x".parse::<DigitWord>().is_err());
    }

    #[test]
    fn runs() {
        let fib = aut(FIB);
        assert_eq!(run(&fib, &w("10")), RunOutcome::Reached(0));
        assert_eq!(run(&fib, &[]), RunOutcome::Reached(fib.initial()));
        let semi1 = aut(SEMI1);
        assert!(matches!(
            run(&semi1, &w("21")),
            RunOutcome::Crash {
                position: 1,
                state: 1,
                digit: 1
            }
        ));
    }

    #[test]
    fn acceptance() {
        let fib = aut(FIB);
        assert!(!accepts(&fib, &w("11")));
        assert!(accepts(&fib, &w("101")));
        assert!(accepts(&fib, &[]));
    }

    #[test]
    fn fibonacci_listing() {
        let words = enumerate_words(&aut(FIB), 13, false);
        assert_eq!(
            listing(&words),
            [
                "eps", "0", "1", "10", "100", "101", "1000", "1001", "1010", "10000", "10001",
                "10010", "10100"
            ]
        );
    }

    #[test]
    fn fixed_point_automaton_listing() {
        let words = enumerate_words(&aut("a -> ab\nb -> cb\nc -> b"), 14, false);
        assert_eq!(
            listing(&words),
            [
                "eps", "0", "1", "10", "11", "100", "110", "111", "1000", "1001", "1100", "1110",
                "1111", "10000"
            ]
        );
    }

    #[test]
    fn full_listing_keeps_leading_zeros() {
        let words = enumerate_words(&aut(FIB), 8, true);
        assert_eq!(
            listing(&words),
            ["eps", "0", "1", "00", "01", "10", "000", "001"]
        );
        assert!(enumerate_words(&aut(FIB), 0, true).is_empty());
    }

    #[test]
    fn canonical_numbering_drops_the_zero_alias() {
        let words = canonical_words(&aut(FIB), 6);
        assert_eq!(listing(&words), ["eps", "1", "10", "100", "101", "1000"]);
    }

    #[test]
    fn tree_listing_by_length() {
        let tree = aut("a -> ba\nb -> cb\nc -> b");
        assert_eq!(
            listing(&words_of_length(&tree, 2)),
            ["00", "01", "10", "11"]
        );
        assert_eq!(
            listing(&words_of_length(&tree, 3)),
            ["000", "010", "011", "100", "101", "110", "111"]
        );
    }

    #[test]
    fn tree_correspondence() {
        let tree = Substitution::parse("a -> ba\nb -> cb\nc -> b").unwrap();
        let report = check_tree_correspondence(&tree, 3);
        assert_eq!(report.verdict, Verdict::Pass);
        let a = tree.to_automaton();
        let spelled: String = words_of_length(&a, 3)
            .iter()
            .map(|w| a.name(run(&a, w).state().unwrap()).as_char())
            .collect();
        assert_eq!(spelled, "bcbcbba");

        let fib = Substitution::parse(FIB).unwrap();
        assert_eq!(check_tree_correspondence(&fib, 8).verdict, Verdict::Pass);
        let id = Substitution::parse("a -> a").unwrap();
        assert_eq!(check_tree_correspondence(&id, 5).verdict, Verdict::Pass);
    }

    #[test]
    fn finite_languages_terminate() {
        // only ε and 0 are accepted: b is a dead end and not final
        let names = vec![
            crate::letter::Letter::new('a').unwrap(),
            crate::letter::Letter::new('b').unwrap(),
        ];
        let a = Automaton::new(
            names.clone(),
            vec![vec![0, 1], vec![1]],
            0,
            vec![true, false],
            vec![Some(names[0]), None],
        )
        .unwrap();
        let all: Vec<_> = RadixWords::new(&a, Listing::All).take(4).collect();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|x| x.iter().all(|&d| d == 0)));
    }

    #[test]
    fn indexed_outputs_follow_the_fixed_point() {
        let sub = Substitution::parse(FIB).unwrap();
        let outs: String = indexed_outputs(&sub.to_automaton(), 54)
            .into_iter()
            .map(|o| o.unwrap().as_char())
            .collect();
        assert_eq!(outs, sub.fixed_point_prefix(54).unwrap().to_string());
    }
}
