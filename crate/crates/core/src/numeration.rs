//! Numeration systems generated by substitutions, greedy and
//! automaton-guided expansions, and the linear recurrence of `U`.

use std::fmt;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::analysis::AnalysisReport;
use crate::automaton::{Automaton, Digit};
use crate::error::Error;
use crate::language::DigitWord;
use crate::matrix::IncidenceMatrix;
use crate::substitution::{Substitution, GROWTH_HORIZON};

/// The sequence `U_i = |σⁱ(ι)|` of a prolongable substitution.
///
/// Terms are produced on demand from letter counts (`counts · M` gives the
/// counts of the next iterate), never by materializing σⁱ(ι). Extension is
/// guarded by a mutex, so a system can be shared between threads.
pub struct NumerationSystem {
    source: Substitution,
    matrix: IncidenceMatrix,
    cache: Mutex<Terms>,
}

struct Terms {
    values: Vec<BigUint>,
    counts: Vec<BigUint>,
}

impl NumerationSystem {
    pub fn new(sub: &Substitution) -> Result<Self, Error> {
        if !sub.is_prolongable() {
            return Err(Error::NotProlongable(sub.initial()));
        }
        let mut counts = vec![BigUint::zero(); sub.len()];
        counts[0] = BigUint::one();
        let system = NumerationSystem {
            source: sub.clone(),
            matrix: sub.incidence_matrix(),
            cache: Mutex::new(Terms {
                values: vec![BigUint::one()],
                counts,
            }),
        };
        system.extend_to(GROWTH_HORIZON)?;
        Ok(system)
    }

    pub fn source(&self) -> &Substitution {
        &self.source
    }

    fn extend_to(&self, index: usize) -> Result<(), Error> {
        let mut cache = self.cache.lock().expect("numeration cache poisoned");
        while cache.values.len() <= index {
            let next_counts = self.matrix.step(&cache.counts);
            let next: BigUint = next_counts.iter().sum();
            let i = cache.values.len();
            if &next <= cache.values.last().unwrap() {
                return Err(Error::NotIncreasing { index: i });
            }
            cache.counts = next_counts;
            cache.values.push(next);
        }
        Ok(())
    }

    /// `U_index`.
    pub fn term(&self, index: usize) -> BigUint {
        self.extend_to(index)
            .expect("terms of a prolongable substitution strictly increase");
        self.cache.lock().unwrap().values[index].clone()
    }

    /// `U_0, …, U_{count−1}`.
    pub fn terms(&self, count: usize) -> Vec<BigUint> {
        if count == 0 {
            return Vec::new();
        }
        self.extend_to(count - 1)
            .expect("terms of a prolongable substitution strictly increase");
        self.cache.lock().unwrap().values[..count].to_vec()
    }

    /// Largest `j` with `U_j ≤ n`, or `None` for `n = 0`.
    pub fn leading_position(&self, n: &BigUint) -> Option<usize> {
        if n.is_zero() {
            return None;
        }
        let mut j = 0;
        while &self.term(j + 1) <= n {
            j += 1;
        }
        Some(j)
    }

    /// `Σ digits[j] · U_{len−1−j}`.
    pub fn value_of(&self, digits: &[Digit]) -> BigUint {
        let len = digits.len();
        if len == 0 {
            return BigUint::zero();
        }
        let terms = self.terms(len);
        digits
            .iter()
            .enumerate()
            .map(|(j, &d)| &terms[len - 1 - j] * d)
            .sum()
    }
}

impl fmt::Debug for NumerationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let known = self.cache.lock().map(|c| c.values.len()).unwrap_or(0);
        f.debug_struct("NumerationSystem")
            .field("initial", &self.source.initial())
            .field("terms_cached", &known)
            .finish()
    }
}

pub fn numeration_system(sub: &Substitution) -> Result<NumerationSystem, Error> {
    NumerationSystem::new(sub)
}

/// A digit word together with the integer it represents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub digits: DigitWord,
    pub value: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GreedyOutcome {
    Expansion(Expansion),
    /// Digits were capped and `remaining` could not be absorbed.
    Leftover {
        digits: DigitWord,
        remaining: BigUint,
    },
}

impl GreedyOutcome {
    pub fn expansion(&self) -> Option<&Expansion> {
        match self {
            GreedyOutcome::Expansion(e) => Some(e),
            GreedyOutcome::Leftover { .. } => None,
        }
    }
}

/// Most-significant-first greedy expansion with digits capped at `digit_cap`.
pub fn greedy_expansion(system: &NumerationSystem, n: &BigUint, digit_cap: Digit) -> GreedyOutcome {
    let Some(top) = system.leading_position(n) else {
        return GreedyOutcome::Expansion(Expansion {
            digits: DigitWord::empty(),
            value: BigUint::zero(),
        });
    };
    let mut rem = n.clone();
    let mut digits = Vec::with_capacity(top + 1);
    for j in (0..=top).rev() {
        let u = system.term(j);
        let d = digit_for(&rem, &u, digit_cap);
        rem -= &u * d;
        digits.push(d);
    }
    if rem.is_zero() {
        GreedyOutcome::Expansion(Expansion {
            digits: digits.into(),
            value: n.clone(),
        })
    } else {
        GreedyOutcome::Leftover {
            digits: digits.into(),
            remaining: rem,
        }
    }
}

fn digit_for(rem: &BigUint, weight: &BigUint, cap: Digit) -> Digit {
    let q = rem / weight;
    q.to_u32().map_or(cap, |q| q.min(cap))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutoOutcome {
    Expansion(Expansion),
    /// The expansion could not be completed. `position` is the weight index
    /// where the walk stopped, `remaining` what was left to expand.
    Crash {
        digits: DigitWord,
        position: usize,
        remaining: BigUint,
    },
}

impl AutoOutcome {
    pub fn expansion(&self) -> Option<&Expansion> {
        match self {
            AutoOutcome::Expansion(e) => Some(e),
            AutoOutcome::Crash { .. } => None,
        }
    }

    pub fn is_crash(&self) -> bool {
        matches!(self, AutoOutcome::Crash { .. })
    }
}

/// Greedy expansion whose digit alphabet at each position is the set of
/// digits leaving the automaton state reached so far.
///
/// Starting at the largest `i` with `U_i ≤ n`, each position `j` takes the
/// largest digit `d` of the current state with `d · U_j ≤` remainder, then
/// follows the `d`-transition. Crashes when a state has no outgoing digit
/// before position 0 is written, or when something remains afterwards.
pub fn automatic_expansion(aut: &Automaton, system: &NumerationSystem, n: &BigUint) -> AutoOutcome {
    let Some(top) = system.leading_position(n) else {
        return AutoOutcome::Expansion(Expansion {
            digits: DigitWord::empty(),
            value: BigUint::zero(),
        });
    };
    let mut rem = n.clone();
    let mut state = aut.initial();
    let mut digits = Vec::with_capacity(top + 1);
    for j in (0..=top).rev() {
        let degree = aut.out_degree(state);
        if degree == 0 {
            return AutoOutcome::Crash {
                digits: digits.into(),
                position: j,
                remaining: rem,
            };
        }
        let u = system.term(j);
        let d = digit_for(&rem, &u, degree as Digit - 1);
        rem -= &u * d;
        digits.push(d);
        state = aut.step(state, d).expect("digit below out-degree");
    }
    if rem.is_zero() {
        AutoOutcome::Expansion(Expansion {
            digits: digits.into(),
            value: n.clone(),
        })
    } else {
        AutoOutcome::Crash {
            digits: digits.into(),
            position: 0,
            remaining: rem,
        }
    }
}

/// `U_n = c_1 U_{n−1} + … + c_r U_{n−r}`, valid for `n ≥ valid_from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    coefficients: Vec<BigInt>,
    valid_from: usize,
}

impl Recurrence {
    /// A recurrence that is claimed to hold from `n = order` on. Trailing
    /// zero coefficients are trimmed.
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        let mut r = Recurrence {
            coefficients,
            valid_from: 0,
        };
        r.trim();
        r.valid_from = r.order();
        r
    }

    fn trim(&mut self) {
        while self.coefficients.len() > 1 && self.coefficients.last().is_some_and(Zero::is_zero) {
            self.coefficients.pop();
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// First index from which the recurrence is guaranteed. Equals the order
    /// unless the characteristic polynomial had zero roots that were trimmed.
    pub fn valid_from(&self) -> usize {
        self.valid_from
    }

    /// `Σ c_j · terms[n − j]`.
    pub fn predict(&self, terms: &[BigInt], n: usize) -> BigInt {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(j, c)| c * &terms[n - 1 - j])
            .sum()
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Recurrence read off the characteristic polynomial of the incidence matrix.
///
/// `U_n = e_ι · Mⁿ · 1`, so Cayley–Hamilton gives a recurrence of order equal
/// to the alphabet size. Zero roots (trailing zero coefficients) are trimmed;
/// the trimmed recurrence keeps the original validity start.
pub fn recurrence_from_substitution(sub: &Substitution) -> Recurrence {
    let p = sub.incidence_matrix().characteristic_polynomial();
    let degree = p.len() - 1;
    let coefficients: Vec<BigInt> = p[1..].iter().map(|c| -c).collect();
    let mut rec = Recurrence {
        coefficients,
        valid_from: degree,
    };
    rec.trim();
    rec
}

/// Checks the recurrence on `U_n` for `max(order, valid_from) ≤ n ≤ horizon`.
pub fn verify_recurrence(
    system: &NumerationSystem,
    rec: &Recurrence,
    horizon: usize,
) -> AnalysisReport {
    let start = rec.order().max(rec.valid_from());
    let range = start as u64..horizon as u64 + 1;
    if horizon < start {
        return AnalysisReport::inconclusive(
            range,
            format!("horizon {horizon} is below order {start}"),
        );
    }
    let terms: Vec<BigInt> = system
        .terms(horizon + 1)
        .into_iter()
        .map(BigInt::from)
        .collect();
    for n in start..=horizon {
        let predicted = rec.predict(&terms, n);
        if predicted != terms[n] {
            let detail = format!(
                "U_{n} = {} but the recurrence gives {}",
                terms[n], predicted
            );
            return AnalysisReport::fail(range, n as u64, detail);
        }
    }
    AnalysisReport::pass(range)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Verdict;

    fn sub(text: &str) -> Substitution {
        Substitution::parse(text).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn terms(text: &str, count: usize) -> Vec<u64> {
        let system = numeration_system(&sub(text)).unwrap();
        system
            .terms(count)
            .iter()
            .map(|t| t.to_u64().unwrap())
            .collect()
    }

    const FIB: &str = "a -> ab\nb -> a";
    const SEMI1: &str = "a -> aab\nb -> c\nc -> aac";
    const NONSEMI: &str = "a -> ab\nb -> ca\nc -> a";
    const EX9: &str = "a -> ab\nb -> aac\nc -> d\nd -> ac";

    #[test]
    fn known_sequences() {
        assert_eq!(terms(FIB, 8), [1, 2, 3, 5, 8, 13, 21, 34]);
        assert_eq!(
            terms(SEMI1, 11),
            [1, 3, 7, 17, 43, 109, 275, 693, 1747, 4405, 11107]
        );
        assert_eq!(
            terms(NONSEMI, 12),
            [1, 2, 4, 7, 13, 24, 44, 81, 149, 274, 504, 927]
        );
        assert_eq!(terms(EX9, 10), [1, 2, 5, 10, 22, 45, 96, 199, 420, 876]);
    }

    #[test]
    fn terms_agree_with_word_lengths() {
        for text in [FIB, SEMI1, NONSEMI, EX9, "a -> ab\nb -> b"] {
            let s = sub(text);
            let system = numeration_system(&s).unwrap();
            for n in 0..12 {
                assert_eq!(system.term(n), big(s.n_word(n).len() as u64));
            }
        }
    }

    #[test]
    fn requires_prolongable() {
        assert!(matches!(
            numeration_system(&sub("a -> ba\nb -> cb\nc -> b")),
            Err(Error::NotProlongable(_))
        ));
    }

    #[test]
    fn ratio_bound() {
        for text in [FIB, SEMI1, NONSEMI, EX9, "a -> aaa"] {
            let s = sub(text);
            let system = numeration_system(&s).unwrap();
            let t = system.terms(40);
            let k = s.k_max() as u32 + 1;
            assert!(t.windows(2).all(|w| w[0] < w[1] && w[1] <= &w[0] * k));
        }
    }

    #[test]
    fn values() {
        let fib = numeration_system(&sub(FIB)).unwrap();
        assert_eq!(fib.value_of(&[1, 0, 1]), big(4));
        assert_eq!(fib.value_of(&[]), big(0));
        let semi1 = numeration_system(&sub(SEMI1)).unwrap();
        assert_eq!(semi1.value_of(&[2, 0, 2, 1]), big(41));
    }

    #[test]
    fn greedy() {
        let fib = numeration_system(&sub(FIB)).unwrap();
        let e = greedy_expansion(&fib, &big(4), 1);
        assert_eq!(e.expansion().unwrap().digits.to_string(), "101");
        let semi1 = numeration_system(&sub(SEMI1)).unwrap();
        let e = greedy_expansion(&semi1, &big(41), 2);
        assert_eq!(e.expansion().unwrap().digits.to_string(), "2100");
        assert_eq!(
            greedy_expansion(&fib, &big(0), 1)
                .expansion()
                .unwrap()
                .digits,
            DigitWord::empty()
        );
        // cap 1 in base 3 leaves something over
        let base3 = numeration_system(&sub("a -> aaa")).unwrap();
        assert!(matches!(
            greedy_expansion(&base3, &big(2), 1),
            GreedyOutcome::Leftover { remaining, .. } if remaining == big(1)
        ));
    }

    #[test]
    fn automatic() {
        let s = sub(SEMI1);
        let e = automatic_expansion(&s.to_automaton(), &numeration_system(&s).unwrap(), &big(41));
        assert_eq!(e.expansion().unwrap().digits.to_string(), "2021");

        let s = sub(NONSEMI);
        let e = automatic_expansion(&s.to_automaton(), &numeration_system(&s).unwrap(), &big(5));
        assert!(e.is_crash());

        let s = sub(FIB);
        let e = automatic_expansion(&s.to_automaton(), &numeration_system(&s).unwrap(), &big(4));
        assert_eq!(e.expansion().unwrap().digits.to_string(), "101");
        let e = automatic_expansion(&s.to_automaton(), &numeration_system(&s).unwrap(), &big(0));
        assert_eq!(e.expansion().unwrap().digits, DigitWord::empty());
    }

    #[test]
    fn zeckendorf_has_no_adjacent_ones_and_matches_greedy() {
        let s = sub(FIB);
        let aut = s.to_automaton();
        let system = numeration_system(&s).unwrap();
        for n in 0..10_000u64 {
            let auto = automatic_expansion(&aut, &system, &big(n));
            let greedy = greedy_expansion(&system, &big(n), 1);
            let digits = &auto.expansion().unwrap().digits;
            assert_eq!(
                Some(digits),
                greedy.expansion().map(|e| &e.digits),
                "n = {n}"
            );
            assert!(!digits.windows(2).any(|w| w == [1, 1]), "n = {n}");
        }
    }

    #[test]
    fn recurrences() {
        assert_eq!(
            recurrence_from_substitution(&sub(EX9)).coefficients(),
            ints(&[1, 3, -1, -1])
        );
        assert_eq!(
            recurrence_from_substitution(&sub(FIB)).coefficients(),
            ints(&[1, 1])
        );
        assert_eq!(
            recurrence_from_substitution(&sub("a -> a")).coefficients(),
            ints(&[1])
        );
    }

    #[test]
    fn recurrence_verification() {
        let s = sub(EX9);
        let system = numeration_system(&s).unwrap();
        let rec = recurrence_from_substitution(&s);
        assert_eq!(verify_recurrence(&system, &rec, 40).verdict, Verdict::Pass);

        let fib = numeration_system(&sub(FIB)).unwrap();
        let r = Recurrence::new(ints(&[1, 1]));
        assert_eq!(verify_recurrence(&fib, &r, 30).verdict, Verdict::Pass);
        let wrong = Recurrence::new(ints(&[2]));
        let report = verify_recurrence(&fib, &wrong, 5);
        assert_eq!(report.verdict, Verdict::Fail);
        assert_eq!(report.first_counterexample.unwrap().0, 2);
    }

    #[test]
    fn trimmed_zero_roots_keep_their_start() {
        // σ(b) = σ(c) gives a singular matrix
        let s = sub("a -> abc\nb -> a\nc -> a");
        let rec = recurrence_from_substitution(&s);
        assert!(rec.order() < 3);
        assert_eq!(rec.valid_from(), 3);
        let system = numeration_system(&s).unwrap();
        assert_eq!(verify_recurrence(&system, &rec, 40).verdict, Verdict::Pass);
    }

    #[test]
    fn shared_extension_is_consistent() {
        let system = numeration_system(&sub(SEMI1)).unwrap();
        std::thread::scope(|scope| {
            for k in 0..4 {
                let system = &system;
                scope.spawn(move || {
                    let t = system.terms(100 + k * 10);
                    assert_eq!(t[10], big(11107));
                });
            }
        });
    }
}
