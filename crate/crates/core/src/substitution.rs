//! Substitutions: parsing, iteration and the bijection with automata.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::automaton::Automaton;
use crate::error::{Error, ParseError, ParseErrorKind};
use crate::letter::{Letter, Word};
use crate::matrix::IncidenceMatrix;

/// Default number of iterations over which growth of `|σⁿ(ι)|` is observed.
pub const GROWTH_HORIZON: usize = 64;

/// A substitution σ over a finite alphabet, together with its initial letter ι.
///
/// Every image is nonempty and every letter occurring in an image has a rule.
/// Letters are kept in a canonical order: ι first, then letters in order of
/// first occurrence when scanning the images in declaration order, then any
/// remaining letters in declaration order. That order fixes the state
/// numbering of [`Substitution::to_automaton`] and the layout of
/// [`Substitution::incidence_matrix`].
#[derive(Clone, Debug)]
pub struct Substitution {
    alphabet: Vec<Letter>,
    images: Vec<Vec<usize>>,
    declared: Vec<usize>,
    index: HashMap<Letter, usize>,
}

/// Outcome of the prolongability test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prolongability {
    /// σ(ι) begins with ι.
    pub starts_with_initial: bool,
    /// |σ(ι)| ≥ 2.
    pub image_grows: bool,
    /// |σⁿ(ι)| was strictly increasing for every n up to the horizon.
    pub strictly_increasing: bool,
    pub horizon: usize,
}

impl Prolongability {
    pub fn is_prolongable(&self) -> bool {
        self.starts_with_initial && self.image_grows
    }
}

impl Substitution {
    /// Builds a substitution from `(letter, image)` rules. The first rule's
    /// letter becomes the initial letter.
    pub fn new<I>(rules: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Letter, Word)>,
    {
        let rules: Vec<(Letter, Word)> = rules.into_iter().collect();
        if rules.is_empty() {
            return Err(Error::NoRules);
        }
        let mut declared_index: HashMap<Letter, usize> = HashMap::new();
        for (pos, (letter, image)) in rules.iter().enumerate() {
            if declared_index.insert(*letter, pos).is_some() {
                return Err(Error::DuplicateRule(*letter));
            }
            if image.is_empty() {
                return Err(Error::EmptyImage(*letter));
            }
        }
        for (_, image) in &rules {
            if let Some(unknown) = image.iter().find(|l| !declared_index.contains_key(l)) {
                return Err(Error::UnknownLetter(*unknown));
            }
        }

        let mut alphabet = vec![rules[0].0];
        let mut index = HashMap::from([(rules[0].0, 0)]);
        let scan = rules
            .iter()
            .flat_map(|(_, image)| image.iter().copied())
            .chain(rules.iter().map(|(letter, _)| *letter));
        for letter in scan {
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(letter) {
                slot.insert(alphabet.len());
                alphabet.push(letter);
            }
        }

        let mut images = vec![Vec::new(); alphabet.len()];
        let mut declared = Vec::with_capacity(rules.len());
        for (letter, image) in &rules {
            let i = index[letter];
            images[i] = image.iter().map(|l| index[l]).collect();
            declared.push(i);
        }
        Ok(Substitution {
            alphabet,
            images,
            declared,
            index,
        })
    }

    /// Parses the `.sub` text format.
    ///
    /// One rule `<letter> -> <image>` per line, `#` comments, blank lines
    /// ignored. The first rule's letter is ι.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut rules: Vec<(Letter, Word)> = Vec::new();
        // (line, column) of each image letter, for unknown-letter reports
        let mut positions: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut seen: HashMap<Letter, ()> = HashMap::new();

        for (line_no, raw) in text.lines().enumerate() {
            let line = line_no + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let err = |column: usize, kind| ParseError { line, column, kind };
            let chars: Vec<(usize, char)> = content
                .chars()
                .enumerate()
                .map(|(i, c)| (i + 1, c))
                .collect();

            let arrow = content.find("->").ok_or_else(|| {
                let col = chars
                    .iter()
                    .find(|(_, c)| !c.is_whitespace())
                    .map_or(1, |p| p.0);
                err(col, ParseErrorKind::MalformedRule)
            })?;
            let arrow_col = content[..arrow].chars().count() + 1;
            let (lhs, rhs) = chars.split_at(arrow_col - 1);
            let rhs = &rhs[2..];

            let lhs: Vec<&(usize, char)> = lhs.iter().filter(|(_, c)| !c.is_whitespace()).collect();
            let (col, c) = match lhs.as_slice() {
                [single] => **single,
                [] => return Err(err(arrow_col, ParseErrorKind::MalformedRule)),
                [_, second, ..] => return Err(err(second.0, ParseErrorKind::MalformedRule)),
            };
            let letter = Letter::new(c).map_err(|_| err(col, ParseErrorKind::InvalidLetter(c)))?;
            if seen.insert(letter, ()).is_some() {
                return Err(err(col, ParseErrorKind::DuplicateRule(letter)));
            }

            let body: Vec<(usize, char)> = {
                let start = rhs.iter().position(|(_, c)| !c.is_whitespace());
                let end = rhs.iter().rposition(|(_, c)| !c.is_whitespace());
                match (start, end) {
                    (Some(s), Some(e)) => rhs[s..=e].to_vec(),
                    _ => Vec::new(),
                }
            };
            if body.is_empty() {
                let col = arrow_col + 2;
                return Err(err(col, ParseErrorKind::EmptyImage));
            }
            let mut image = Vec::with_capacity(body.len());
            let mut image_pos = Vec::with_capacity(body.len());
            for (col, c) in body {
                if c.is_whitespace() {
                    return Err(err(col, ParseErrorKind::SplitImage));
                }
                let l = Letter::new(c).map_err(|_| err(col, ParseErrorKind::InvalidLetter(c)))?;
                image.push(l);
                image_pos.push((line, col));
            }
            rules.push((letter, Word::from(image)));
            positions.push(image_pos);
        }

        if rules.is_empty() {
            return Err(ParseError {
                line: text.lines().count().max(1),
                column: 1,
                kind: ParseErrorKind::NoRules,
            });
        }
        for ((_, image), pos) in rules.iter().zip(&positions) {
            for (letter, &(line, column)) in image.iter().zip(pos) {
                if !seen.contains_key(letter) {
                    return Err(ParseError {
                        line,
                        column,
                        kind: ParseErrorKind::UnknownLetter(*letter),
                    });
                }
            }
        }
        Ok(Substitution::new(rules).expect("rules validated during parsing"))
    }

    pub fn initial(&self) -> Letter {
        self.alphabet[0]
    }

    /// Letters in canonical order (ι first).
    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.alphabet.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphabet.is_empty()
    }

    pub fn index_of(&self, letter: Letter) -> Option<usize> {
        self.index.get(&letter).copied()
    }

    pub fn image(&self, letter: Letter) -> Option<Word> {
        self.index_of(letter).map(|i| self.word_of(&self.images[i]))
    }

    /// Rules in declaration order.
    pub fn rules(&self) -> impl Iterator<Item = (Letter, Word)> + '_ {
        self.declared
            .iter()
            .map(|&i| (self.alphabet[i], self.word_of(&self.images[i])))
    }

    pub(crate) fn image_indices(&self, i: usize) -> &[usize] {
        &self.images[i]
    }

    pub(crate) fn word_of(&self, indices: &[usize]) -> Word {
        indices.iter().map(|&i| self.alphabet[i]).collect()
    }

    fn indices_of(&self, w: &Word) -> Result<Vec<usize>, Error> {
        w.iter()
            .map(|l| self.index_of(*l).ok_or(Error::UnknownLetter(*l)))
            .collect()
    }

    fn apply_indices(&self, w: &[usize]) -> Vec<usize> {
        w.iter()
            .flat_map(|&i| self.images[i].iter().copied())
            .collect()
    }

    /// σ(w), the concatenation of the images of the letters of `w`.
    pub fn apply(&self, w: &Word) -> Result<Word, Error> {
        let w = self.indices_of(w)?;
        Ok(self.word_of(&self.apply_indices(&w)))
    }

    /// σⁿ(ι).
    pub fn n_word(&self, n: usize) -> Word {
        let mut w = vec![0];
        for _ in 0..n {
            w = self.apply_indices(&w);
        }
        self.word_of(&w)
    }

    pub fn is_prolongable(&self) -> bool {
        self.prolongability(GROWTH_HORIZON).is_prolongable()
    }

    /// Checks the two syntactic prolongability conditions and observes
    /// whether `|σⁿ(ι)|` strictly increases for `n ≤ horizon`.
    pub fn prolongability(&self, horizon: usize) -> Prolongability {
        let first = &self.images[0];
        let matrix = self.incidence_matrix();
        let mut counts = vec![BigUint::zero(); self.len()];
        counts[0] = BigUint::one();
        let mut length = BigUint::one();
        let mut strictly_increasing = true;
        for _ in 0..horizon {
            counts = matrix.step(&counts);
            let next: BigUint = counts.iter().sum();
            if next <= length {
                strictly_increasing = false;
                break;
            }
            length = next;
        }
        Prolongability {
            starts_with_initial: first[0] == 0,
            image_grows: first.len() >= 2,
            strictly_increasing,
            horizon,
        }
    }

    /// The first `len` letters of the fixed point `u = σ(u)` starting with ι.
    pub fn fixed_point_prefix(&self, len: usize) -> Result<Word, Error> {
        Ok(self.word_of(&self.fixed_point_indices(len)?))
    }

    /// Fixed point prefix as alphabet indices (equivalently, states of
    /// [`Substitution::to_automaton`]).
    ///
    /// Since `σ(u) = u`, the prefix is extended by appending `σ(u_i)` for
    /// successive `i`, skipping the leading ι of `σ(u_0)`. This produces the
    /// same letters as iterating σ on ι and truncating, in linear time.
    pub(crate) fn fixed_point_indices(&self, len: usize) -> Result<Vec<usize>, Error> {
        if !self.is_prolongable() {
            return Err(Error::NotProlongable(self.initial()));
        }
        let mut u: Vec<usize> = Vec::with_capacity(len + self.k_max() + 1);
        u.extend_from_slice(&self.images[0]);
        let mut i = 1;
        while u.len() < len {
            let next = u[i];
            u.extend_from_slice(&self.images[next]);
            i += 1;
        }
        u.truncate(len);
        Ok(u)
    }

    /// The automaton with states = letters and a transition `a -i-> b`
    /// whenever `b` is the letter at position `i` of σ(a).
    pub fn to_automaton(&self) -> Automaton {
        Automaton::from_substitution(self)
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let n = self.len();
        let mut entries = vec![vec![0u64; n]; n];
        for (x, image) in self.images.iter().enumerate() {
            for &y in image {
                entries[x][y] += 1;
            }
        }
        IncidenceMatrix::new(self.alphabet.clone(), entries)
    }

    /// Largest image length minus one.
    pub fn k_max(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    /// `Some(k)` when every image has length exactly `k`.
    pub fn uniform_length(&self) -> Option<usize> {
        let k = self.images[0].len();
        self.images.iter().all(|img| img.len() == k).then_some(k)
    }
}

impl PartialEq for Substitution {
    fn eq(&self, other: &Self) -> bool {
        self.initial() == other.initial()
            && self.len() == other.len()
            && self
                .rules()
                .all(|(letter, image)| other.image(letter).as_ref() == Some(&image))
    }
}

impl Eq for Substitution {}

impl FromStr for Substitution {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        Substitution::parse(s)
    }
}

/// Writes the `.sub` format, rules in declaration order.
impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (letter, image) in self.rules() {
            writeln!(f, "{letter} -> {image}")?;
        }
        Ok(())
    }
}
