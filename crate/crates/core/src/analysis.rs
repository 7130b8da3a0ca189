//! Deciders and empirical surveys over substitutions.
//!
//! Surveys check a property for every `n` below a bound. A `pass` verdict
//! means that no counterexample was found below the bound; it is not a proof.

use std::fmt;
use std::ops::Range;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::Digit;
use crate::error::Error;
use crate::language::{accepts, canonical_words, run, DigitWord};
use crate::letter::Letter;
use crate::numeration::{automatic_expansion, numeration_system, AutoOutcome};
use crate::substitution::Substitution;

/// Default bound for empirical surveys.
pub const DEFAULT_BOUND: usize = 2000;

const DIGITWISE_SEED: u64 = 0x5eed_0f5e;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Outcome of a check over a range of integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub verdict: Verdict,
    pub checked_range: Range<u64>,
    /// Present whenever the verdict is `Fail`.
    pub first_counterexample: Option<(u64, String)>,
    pub note: Option<String>,
}

impl AnalysisReport {
    pub fn pass(range: Range<u64>) -> Self {
        AnalysisReport {
            verdict: Verdict::Pass,
            checked_range: range,
            first_counterexample: None,
            note: None,
        }
    }

    pub fn fail(range: Range<u64>, n: u64, detail: impl Into<String>) -> Self {
        AnalysisReport {
            verdict: Verdict::Fail,
            checked_range: range,
            first_counterexample: Some((n, detail.into())),
            note: None,
        }
    }

    pub fn inconclusive(range: Range<u64>, reason: impl Into<String>) -> Self {
        AnalysisReport {
            verdict: Verdict::Inconclusive,
            checked_range: range,
            first_counterexample: None,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Combines reports over adjacent or overlapping shards. The smaller
    /// counterexample wins; an inconclusive shard makes a passing merge
    /// inconclusive.
    pub fn merge(self, other: AnalysisReport) -> AnalysisReport {
        let range = self.checked_range.start.min(other.checked_range.start)
            ..self.checked_range.end.max(other.checked_range.end);
        let note = self.note.clone().or_else(|| other.note.clone());
        let counterexample = match (self.first_counterexample, other.first_counterexample) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, b) => a.or(b),
        };
        let verdict = if counterexample.is_some() {
            Verdict::Fail
        } else if self.verdict == Verdict::Inconclusive || other.verdict == Verdict::Inconclusive {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        AnalysisReport {
            verdict,
            checked_range: range,
            first_counterexample: counterexample,
            note,
        }
    }
}

/// `fail [0, 10): n=5: <detail> | verdict=fail lo=0 hi=10 counterexample=5`
impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Range { start, end } = self.checked_range;
        write!(f, "{} [{start}, {end})", self.verdict)?;
        if let Some((n, detail)) = &self.first_counterexample {
            write!(f, ": n={n}: {detail}")?;
        }
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        write!(f, " | verdict={} lo={start} hi={end}", self.verdict)?;
        if let Some((n, _)) = &self.first_counterexample {
            write!(f, " counterexample={n}")?;
        }
        Ok(())
    }
}

/// Result of the σ₀-form test. `violation` names the first rule that breaks
/// the form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sigma0Check {
    pub holds: bool,
    pub violation: Option<(Letter, String)>,
}

/// σ(ι) must be `ι⁺x` and every other image `ι*x`, where `x` is a single
/// letter (ι included).
pub fn is_sigma0_form(sub: &Substitution) -> Sigma0Check {
    let iota = sub.initial();
    for (letter, image) in sub.rules() {
        let (tail_free, _) = image.split_at(image.len() - 1);
        if letter == iota && image.len() < 2 {
            return Sigma0Check {
                holds: false,
                violation: Some((
                    letter,
                    format!("image {image} of the initial letter is shorter than 2"),
                )),
            };
        }
        if let Some(pos) = tail_free.iter().position(|&l| l != iota) {
            return Sigma0Check {
                holds: false,
                violation: Some((
                    letter,
                    format!(
                        "image {image} has {} before its final position",
                        tail_free[pos]
                    ),
                )),
            };
        }
    }
    Sigma0Check {
        holds: true,
        violation: None,
    }
}

/// Letters of a σ₀-form substitution in chain order: ι, then the final
/// letter of each image in turn, until ι or an already listed letter recurs.
pub fn sigma0_chain(sub: &Substitution) -> Vec<Letter> {
    let mut chain = vec![sub.initial()];
    let mut current = sub.initial();
    loop {
        let image = sub.image(current).expect("letters in the chain have rules");
        let tail = *image.last().expect("images are nonempty");
        if chain.contains(&tail) {
            return chain;
        }
        chain.push(tail);
        current = tail;
    }
}

/// Image lengths are non-increasing along the σ₀ chain.
pub fn check_full_condition(sub: &Substitution) -> Result<bool, Error> {
    if !is_sigma0_form(sub).holds {
        return Err(Error::NotSigma0);
    }
    let lengths: Vec<usize> = sigma0_chain(sub)
        .into_iter()
        .map(|l| sub.image(l).unwrap().len())
        .collect();
    Ok(lengths.windows(2).all(|w| w[0] >= w[1]))
}

/// For every `n < bound`: the automatic expansion exists, evaluates to `n`,
/// is accepted, reaches the state `u_n` of the fixed point, and equals the
/// `n`-th canonical word of the automaton's language.
pub fn check_numeration_automatic(sub: &Substitution, bound: usize) -> AnalysisReport {
    let range = 0..bound as u64;
    let (Ok(system), Ok(fixed)) = (numeration_system(sub), sub.fixed_point_indices(bound)) else {
        return AnalysisReport::inconclusive(range, "substitution is not prolongable");
    };
    let aut = sub.to_automaton();
    let words = canonical_words(&aut, bound);
    for (n, &expected) in fixed.iter().enumerate() {
        let big = BigUint::from(n);
        let fail = |detail: String| AnalysisReport::fail(range.clone(), n as u64, detail);
        let expansion = match automatic_expansion(&aut, &system, &big) {
            AutoOutcome::Expansion(e) => e,
            AutoOutcome::Crash {
                digits,
                position,
                remaining,
            } => {
                return fail(format!(
                    "automatic expansion crashed at position {position} with {remaining} left after {digits}"
                ))
            }
        };
        let digits = &expansion.digits;
        if system.value_of(digits) != big {
            return fail(format!(
                "expansion {digits} evaluates to {}",
                system.value_of(digits)
            ));
        }
        if !accepts(&aut, digits) {
            return fail(format!("expansion {digits} is rejected by the automaton"));
        }
        let reached = run(&aut, digits)
            .state()
            .expect("accepted words do not crash");
        if reached != expected {
            return fail(format!(
                "expansion {digits} reaches {} but the fixed point has {}",
                aut.name(reached),
                aut.name(expected)
            ));
        }
        match words.get(n) {
            Some(w) if w == digits => {}
            Some(w) => {
                return fail(format!(
                    "expansion {digits} differs from word {n} of the language, {w}"
                ))
            }
            None => return fail(format!("the language has only {} words", words.len())),
        }
    }
    AnalysisReport::pass(range)
}

/// Digit-wise sum of the automatic expansions of `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitwiseSum {
    pub x: u64,
    pub y: u64,
    pub sum: DigitWord,
    /// Value of the sum word equals `x + y`.
    pub value_ok: bool,
    /// Every summed digit is at most `k_max`.
    pub within_cap: bool,
    pub accepted: bool,
}

/// `None` when either expansion crashes.
pub fn digitwise_sum(sub: &Substitution, x: u64, y: u64) -> Result<Option<DigitwiseSum>, Error> {
    let system = numeration_system(sub)?;
    let aut = sub.to_automaton();
    let expand = |n: u64| automatic_expansion(&aut, &system, &BigUint::from(n));
    let (AutoOutcome::Expansion(ex), AutoOutcome::Expansion(ey)) = (expand(x), expand(y)) else {
        return Ok(None);
    };
    let len = ex.digits.len().max(ey.digits.len());
    let pad = |d: &DigitWord| -> Vec<Digit> {
        std::iter::repeat_n(0, len - d.len())
            .chain(d.iter().copied())
            .collect()
    };
    let sum: DigitWord = pad(&ex.digits)
        .into_iter()
        .zip(pad(&ey.digits))
        .map(|(a, b)| a + b)
        .collect();
    let value_ok = system.value_of(&sum) == BigUint::from(x) + BigUint::from(y);
    let within_cap = sum.iter().all(|&d| d as usize <= sub.k_max());
    let accepted = accepts(&aut, &sum);
    Ok(Some(DigitwiseSum {
        x,
        y,
        sum,
        value_ok,
        within_cap,
        accepted,
    }))
}

/// Samples pairs `x, y < bound` and checks that the digit-wise sum of their
/// expansions is accepted whenever no summed digit exceeds `k_max`.
///
/// This reads the fullness property as a digit-cap condition on the sums;
/// the report's note says so.
pub fn check_digitwise_sum(sub: &Substitution, samples: usize, bound: u64) -> AnalysisReport {
    check_digitwise_sum_seeded(sub, samples, bound, DIGITWISE_SEED)
}

pub fn check_digitwise_sum_seeded(
    sub: &Substitution,
    samples: usize,
    bound: u64,
    seed: u64,
) -> AnalysisReport {
    const READING: &str = "digit sums capped at k_max must stay accepted";
    let range = 0..bound;
    if numeration_system(sub).is_err() {
        return AnalysisReport::inconclusive(range, "substitution is not prolongable");
    }
    if bound == 0 {
        return AnalysisReport::inconclusive(range, "empty sampling range");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0usize;
    let mut skipped = 0usize;
    let mut first: Option<(u64, String)> = None;
    for i in 0..samples {
        let x = rng.gen_range(0..bound);
        let y = rng.gen_range(0..bound);
        let Some(s) = digitwise_sum(sub, x, y).expect("prolongable") else {
            skipped += 1;
            continue;
        };
        let problem = if !s.value_ok {
            Some(format!(
                "x={x} y={y}: sum word {} does not evaluate to {}",
                s.sum,
                x + y
            ))
        } else if s.within_cap && !s.accepted {
            Some(format!("x={x} y={y}: sum word {} is rejected", s.sum))
        } else {
            None
        };
        if let Some(p) = problem {
            failures += 1;
            first.get_or_insert((i as u64, p));
        }
    }
    let note =
        format!("{READING}; {samples} samples, {failures} failures, {skipped} crashed expansions");
    match first {
        Some((i, detail)) => AnalysisReport::fail(range, i, detail).with_note(note),
        None if skipped == samples => AnalysisReport::inconclusive(range, note),
        None => AnalysisReport::pass(range).with_note(note),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(text: &str) -> Substitution {
        Substitution::parse(text).unwrap()
    }

    #[test]
    fn sigma0_recognition() {
        assert!(is_sigma0_form(&sub("a -> aab\nb -> aac\nc -> a")).holds);
        let check = is_sigma0_form(&sub("a -> ab\nb -> ca\nc -> a"));
        assert!(!check.holds);
        assert_eq!(check.violation.unwrap().0.as_char(), 'b');
        assert!(is_sigma0_form(&sub("a -> ab\nb -> ac\nc -> ad\nd -> c")).holds);
        assert!(!is_sigma0_form(&sub("a -> a")).holds);
        assert!(!is_sigma0_form(&sub("a -> ab\nb -> ba")).holds);
    }

    #[test]
    fn chains() {
        let chain: String = sigma0_chain(&sub("a -> aab\nb -> c\nc -> aac"))
            .iter()
            .map(|l| l.as_char())
            .collect();
        assert_eq!(chain, "abc");
        let chain: String = sigma0_chain(&sub("a -> ab\nb -> a"))
            .iter()
            .map(|l| l.as_char())
            .collect();
        assert_eq!(chain, "ab");
    }

    #[test]
    fn full_condition() {
        assert_eq!(check_full_condition(&sub("a -> ab\nb -> a")), Ok(true));
        assert_eq!(
            check_full_condition(&sub("a -> aab\nb -> c\nc -> aac")),
            Ok(false)
        );
        assert_eq!(
            check_full_condition(&sub("a -> ab\nb -> ac\nc -> a")),
            Ok(true)
        );
        assert_eq!(
            check_full_condition(&sub("a -> ab\nb -> ca\nc -> a")),
            Err(Error::NotSigma0)
        );
    }

    #[test]
    fn numeration_automatism() {
        assert!(check_numeration_automatic(&sub("a -> aab\nb -> c\nc -> aac"), 2000).passed());
        let report = check_numeration_automatic(&sub("a -> ab\nb -> ca\nc -> a"), 10);
        assert_eq!(report.verdict, Verdict::Fail);
        assert_eq!(report.first_counterexample.as_ref().unwrap().0, 5);
        assert!(check_numeration_automatic(&sub("a -> aa"), 2000).passed());
        let tree = check_numeration_automatic(&sub("a -> ba\nb -> cb\nc -> b"), 10);
        assert_eq!(tree.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn digitwise_pairs() {
        let fib = sub("a -> ab\nb -> a");
        let s = digitwise_sum(&fib, 1, 2).unwrap().unwrap();
        assert_eq!(s.sum.to_string(), "11");
        assert!(s.value_ok && s.within_cap && !s.accepted);

        let zero = digitwise_sum(&fib, 0, 0).unwrap().unwrap();
        assert_eq!(zero.sum, DigitWord::empty());
        assert!(zero.accepted);

        let base2 = sub("a -> aa");
        let s = digitwise_sum(&base2, 4, 3).unwrap().unwrap();
        assert_eq!(s.sum.to_string(), "111");
        assert!(s.within_cap && s.accepted);
    }

    #[test]
    fn digitwise_survey() {
        let report = check_digitwise_sum(&sub("a -> aa"), 500, 1000);
        assert!(report.passed(), "{report}");
        let report = check_digitwise_sum(&sub("a -> ab\nb -> a"), 500, 1000);
        assert_eq!(report.verdict, Verdict::Fail);
        assert!(report.note.unwrap().contains("k_max"));
    }

    #[test]
    fn rendering_and_merge() {
        let a = AnalysisReport::pass(0..100);
        let b = AnalysisReport::fail(100..200, 150, "x");
        let c = AnalysisReport::fail(200..300, 250, "y");
        let merged = c.merge(a.clone()).merge(b);
        assert_eq!(merged.verdict, Verdict::Fail);
        assert_eq!(merged.checked_range, 0..300);
        assert_eq!(merged.first_counterexample.as_ref().unwrap().0, 150);
        assert_eq!(a.to_string(), "pass [0, 100) | verdict=pass lo=0 hi=100");
        assert_eq!(
            merged.to_string(),
            "fail [0, 300): n=150: x | verdict=fail lo=0 hi=300 counterexample=150"
        );
    }
}
