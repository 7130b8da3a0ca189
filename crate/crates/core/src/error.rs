use thiserror::Error;

use crate::letter::Letter;

/// What went wrong while reading a `.sub` file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `<letter> -> <image>`")]
    MalformedRule,
    #[error("invalid letter {0:?}")]
    InvalidLetter(char),
    #[error("empty image")]
    EmptyImage,
    #[error("image must be a contiguous string of letters")]
    SplitImage,
    #[error("duplicate rule for {0}")]
    DuplicateRule(Letter),
    #[error("letter {0} has no rule")]
    UnknownLetter(Letter),
    #[error("no rules")]
    NoRules,
}

/// A syntax or validation error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid letter {0:?}")]
    InvalidLetter(char),
    #[error("letter {0} has no rule")]
    UnknownLetter(Letter),
    #[error("duplicate rule for {0}")]
    DuplicateRule(Letter),
    #[error("the image of {0} is empty")]
    EmptyImage(Letter),
    #[error("a substitution needs at least one rule")]
    NoRules,
    #[error("substitution is not prolongable: sigma({0}) must start with {0} and have length at least 2")]
    NotProlongable(Letter),
    #[error("numeration term U_{index} does not exceed its predecessor")]
    NotIncreasing { index: usize },
    #[error("state {0} has no outgoing transitions")]
    DeadEnd(Letter),
    #[error("state {state} has two transitions labeled {digit}")]
    Nondeterministic { state: usize, digit: u32 },
    #[error("digits leaving state {state} are not contiguous from 0 (missing {missing})")]
    NonContiguous { state: usize, missing: u32 },
    #[error("state index {0} out of range")]
    StateOutOfRange(usize),
    #[error("automaton has no pair outputs to project")]
    NoPairOutputs,
    #[error("substitution is not in sigma0 form")]
    NotSigma0,
}
