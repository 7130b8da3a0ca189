//! Generators and reference implementations shared by the integration tests.
//!
//! The reference code here works on plain strings and `u64` so that it does
//! not share any logic with the library.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use morphic::{
    accepts, automatic_expansion, enumerate_words, numeration_system, product, run, AutoOutcome,
    DigitWord, Substitution,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(format!("{name}.sub"))
}

pub fn load(name: &str) -> Substitution {
    morphic::corpus::get(name).unwrap_or_else(|| panic!("no corpus entry {name}"))
}

pub fn sub(text: &str) -> Substitution {
    Substitution::parse(text).unwrap()
}

/// Rules as a char map, read from `.sub` text without the library parser.
pub fn rules(text: &str) -> BTreeMap<char, String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            let (lhs, rhs) = l.split_once("->").unwrap();
            (lhs.trim().chars().next().unwrap(), rhs.trim().to_string())
        })
        .collect()
}

/// Fixed point prefix by repeated rewriting.
pub fn oracle_fixed_point(rules: &BTreeMap<char, String>, initial: char, len: usize) -> String {
    let mut w = initial.to_string();
    while w.chars().count() < len {
        let next: String = w.chars().map(|c| rules[&c].as_str()).collect();
        assert!(next.len() > w.len(), "no growth");
        w = next;
    }
    w.chars().take(len).collect()
}

/// `|σⁿ(ι)|` by rewriting letter counts.
pub fn oracle_lengths(rules: &BTreeMap<char, String>, initial: char, count: usize) -> Vec<u64> {
    let mut counts: BTreeMap<char, u64> = BTreeMap::from([(initial, 1)]);
    let mut out = Vec::new();
    for _ in 0..count {
        out.push(counts.values().sum());
        let mut next = BTreeMap::new();
        for (&c, &k) in &counts {
            for d in rules[&c].chars() {
                *next.entry(d).or_insert(0) += k;
            }
        }
        counts = next;
    }
    out
}

/// Walks the digit word through the rules: digit `d` at state `x` moves to
/// the `d`-th letter of the image of `x`.
pub fn oracle_run(rules: &BTreeMap<char, String>, initial: char, digits: &[u32]) -> Option<char> {
    let mut state = initial;
    for &d in digits {
        state = rules[&state].chars().nth(d as usize)?;
    }
    Some(state)
}

/// Zeckendorf digits via the classical greedy on 1, 2, 3, 5, 8, …
pub fn oracle_zeckendorf(n: u64) -> String {
    if n == 0 {
        return String::new();
    }
    let mut fibs = vec![1u64, 2];
    while *fibs.last().unwrap() <= n {
        let k = fibs.len();
        fibs.push(fibs[k - 1] + fibs[k - 2]);
    }
    let mut rem = n;
    let mut started = false;
    let mut s = String::new();
    for &f in fibs.iter().rev() {
        if f <= rem {
            rem -= f;
            s.push('1');
            started = true;
        } else if started {
            s.push('0');
        }
    }
    s
}

pub fn digits(s: &str) -> Vec<u32> {
    s.chars().map(|c| c.to_digit(10).unwrap()).collect()
}

const LETTERS: [char; 4] = ['a', 'b', 'c', 'd'];

fn text_of(images: &[Vec<usize>]) -> String {
    images
        .iter()
        .enumerate()
        .map(|(i, img)| {
            let rhs: String = img.iter().map(|&j| LETTERS[j]).collect();
            format!("{} -> {}\n", LETTERS[i], rhs)
        })
        .collect()
}

/// Random substitutions on up to four letters, images of length 1 to 4.
/// With `prolongable`, the image of `a` starts with `a` and has length ≥ 2.
pub fn arb_substitution(prolongable: bool) -> impl Strategy<Value = Substitution> {
    (1usize..=4)
        .prop_flat_map(move |n| {
            let image = proptest::collection::vec(0..n, 1..=4);
            proptest::collection::vec(image, n..=n)
        })
        .prop_map(move |mut images| {
            if prolongable {
                images[0][0] = 0;
                let last = images.len() - 1;
                if images[0].len() < 2 {
                    images[0].push(last);
                }
            }
            Substitution::parse(&text_of(&images)).unwrap()
        })
}

pub fn arb_digit_word(max_digit: u32, max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..=max_digit, 0..=max_len)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

/// Shorter enumerations are prefixes of longer ones, and every listed word
/// is accepted.
pub fn prop_radix_prefix_stability(
    sub: &Substitution,
    n: usize,
    m: usize,
) -> Result<(), TestCaseError> {
    let (n, m) = (n.min(m), n.max(m));
    let aut = sub.to_automaton();
    for leading in [false, true] {
        let short = enumerate_words(&aut, n, leading);
        let long = enumerate_words(&aut, m, leading);
        check(long.starts_with(&short), || {
            format!("{n} words not a prefix of {m} words for\n{sub}")
        })?;
        check(long.windows(2).all(|w| w[0] < w[1]), || {
            "not strictly increasing".into()
        })?;
        check(long.iter().all(|w| accepts(&aut, w)), || {
            "listed word rejected".into()
        })?;
    }
    Ok(())
}

/// Leading zeros loop at the initial state of a prolongable substitution.
pub fn prop_leading_zero_invariance(
    sub: &Substitution,
    word: &[u32],
    zeros: usize,
) -> Result<(), TestCaseError> {
    let aut = sub.to_automaton();
    let padded: Vec<u32> = std::iter::repeat_n(0, zeros)
        .chain(word.iter().copied())
        .collect();
    check(
        run(&aut, word).state() == run(&aut, &padded).state() || !accepts(&aut, word),
        || format!("0^{zeros}{word:?} and {word:?} end in different states for\n{sub}"),
    )
}

/// A successful automatic expansion evaluates back to `n`, has no leading
/// zero, and is accepted.
pub fn prop_expansion_invariants(sub: &Substitution, n: u64) -> Result<(), TestCaseError> {
    let aut = sub.to_automaton();
    let system = numeration_system(sub).unwrap();
    if let AutoOutcome::Expansion(e) = automatic_expansion(&aut, &system, &BigUint::from(n)) {
        let d: &DigitWord = &e.digits;
        check(system.value_of(d) == BigUint::from(n), || {
            format!("{d} does not evaluate to {n}")
        })?;
        check(!d.has_leading_zero(), || format!("{d} has a leading zero"))?;
        check(accepts(&aut, d), || format!("{d} rejected"))?;
    }
    Ok(())
}

/// Out-degree of a product state is the smaller of its coordinates', and
/// there are at most `|A|·|B|` states.
pub fn prop_product_out_degree(
    left: &Substitution,
    right: &Substitution,
) -> Result<(), TestCaseError> {
    let (a, b) = (left.to_automaton(), right.to_automaton());
    let p = product(&a, &b);
    check(p.num_states() <= a.num_states() * b.num_states(), || {
        "too many states".into()
    })?;
    let morphic::Origin::Product(states) = p.origin() else {
        return Err(TestCaseError::fail("product lost its provenance"));
    };
    for (s, st) in states.iter().enumerate() {
        let (x, y) = st.pair;
        let expected = a.out_degree(x).min(b.out_degree(y));
        check(p.out_degree(s) == expected, || {
            format!(
                "state {s} = ({x}, {y}) has out-degree {} not {expected}",
                p.out_degree(s)
            )
        })?;
    }
    Ok(())
}
