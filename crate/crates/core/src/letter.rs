//! Letters and words over a finite alphabet.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::Error;

/// Characters that have a meaning in the `.sub` and automaton dump formats.
const RESERVED: [char; 3] = ['#', '-', '>'];

/// A single alphabet symbol.
///
/// Any printable character other than whitespace, `#`, `-` and `>` is a
/// valid letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(char);

impl Letter {
    pub fn new(c: char) -> Result<Self, Error> {
        if Self::is_valid(c) {
            Ok(Letter(c))
        } else {
            Err(Error::InvalidLetter(c))
        }
    }

    pub fn is_valid(c: char) -> bool {
        !c.is_whitespace() && !c.is_control() && !RESERVED.contains(&c)
    }

    pub fn as_char(self) -> char {
        self.0
    }

    /// The `index`-th name of the canonical renaming used for constructed
    /// automata: `a..z`, then `A..Z`, then CJK ideographs.
    pub fn fresh(index: usize) -> Letter {
        let c = match index {
            0..=25 => (b'a' + index as u8) as char,
            26..=51 => (b'A' + (index - 26) as u8) as char,
            _ => char::from_u32(0x4E00 + (index - 52) as u32)
                .expect("renaming ran past the CJK block"),
        };
        Letter(c)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<char> for Letter {
    type Error = Error;

    fn try_from(c: char) -> Result<Self, Error> {
        Letter::new(c)
    }
}

/// A finite word; the empty word is ε.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Parses a contiguous string of letters. The empty string is ε.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars().map(Letter::new).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.0 {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "\"{self}\"")
        }
    }
}
