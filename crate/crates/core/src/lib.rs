//! Substitutions on finite alphabets, the automata they define, and the
//! positional numeration systems read off their iterates.
//!
//! A substitution such as `a -> ab, b -> a` is also a deterministic
//! automaton: state `x` goes to the `i`-th letter of its image on digit `i`.
//! Running the automaton on the expansion of `n` lands on the `n`-th letter
//! of the fixed point, whenever the expansion is computed the right way.
//!
//! ```
//! use morphic::{numeration_system, automatic_expansion, Substitution};
//! use num_bigint::BigUint;
//!
//! let sub: Substitution = "a -> aab\nb -> c\nc -> aac".parse().unwrap();
//! let system = numeration_system(&sub).unwrap();
//! let e = automatic_expansion(&sub.to_automaton(), &system, &BigUint::from(41u32));
//! assert_eq!(e.expansion().unwrap().digits.to_string(), "2021");
//! ```

pub mod analysis;
pub mod automaton;
pub mod cli;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod language;
pub mod letter;
pub mod matrix;
pub mod numeration;
pub mod substitution;
pub mod transform;

pub use analysis::{
    check_digitwise_sum, check_digitwise_sum_seeded, check_full_condition,
    check_numeration_automatic, digitwise_sum, is_sigma0_form, sigma0_chain, AnalysisReport,
    DigitwiseSum, Sigma0Check, Verdict,
};
pub use automaton::{Automaton, Digit, Origin, Output, StateId};
pub use dot::to_dot;
pub use error::{Error, ParseError, ParseErrorKind};
pub use language::{
    accepts, canonical_words, check_tree_correspondence, enumerate_words, indexed_outputs, run,
    run_from, words_of_length, DigitWord, Listing, RadixWords, RunOutcome,
};
pub use letter::{Letter, Word};
pub use matrix::IncidenceMatrix;
pub use numeration::{
    automatic_expansion, greedy_expansion, numeration_system, recurrence_from_substitution,
    verify_recurrence, AutoOutcome, Expansion, GreedyOutcome, NumerationSystem, Recurrence,
};
pub use substitution::{Prolongability, Substitution};
pub use transform::{
    automaton_to_substitution, exit_map, product, project, provenance_label, reverse, Coordinate,
    ProductState, ReverseState,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/substitutions.md")]
    mod substitutions {}
    #[doc = include_str!("../../../book/src/numeration.md")]
    mod numeration {}
    #[doc = include_str!("../../../book/src/recurrences.md")]
    mod recurrences {}
    #[doc = include_str!("../../../book/src/products.md")]
    mod products {}
    #[doc = include_str!("../../../book/src/reversal.md")]
    mod reversal {}
    #[doc = include_str!("../../../book/src/analysis.md")]
    mod analysis {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
