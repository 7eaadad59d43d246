//! Letters, alphabets and finite words.
//!
//! Letters are dense indices `0..k`. Display names only matter when a word
//! is printed; every algorithm works on the indices.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Letter = u8;

/// Largest alphabet a [`Letter`] can index.
pub const MAX_ALPHABET: usize = Letter::MAX as usize + 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    size: usize,
    names: Option<Vec<String>>,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > MAX_ALPHABET {
            return Err(Error::invalid(format!(
                "alphabet size must be in 1..={MAX_ALPHABET}, got {size}"
            )));
        }
        Ok(Alphabet { size, names: None })
    }

    pub fn with_names(names: Vec<String>) -> Result<Self> {
        let mut alphabet = Alphabet::new(names.len())?;
        let mut sorted: Vec<&String> = names.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("alphabet display names must be distinct"));
        }
        alphabet.names = Some(names);
        Ok(alphabet)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn name(&self, letter: Letter) -> String {
        match &self.names {
            Some(names) => names[letter as usize].clone(),
            None => letter.to_string(),
        }
    }

    /// Renders `word` with the display names, concatenated when every name
    /// is a single character and comma-separated otherwise.
    pub fn render(&self, word: &[Letter]) -> String {
        let names: Vec<String> = word.iter().map(|&a| self.name(a)).collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            names.join(",")
        }
    }

    pub fn check(&self, word: &[Letter]) -> Result<()> {
        match word.iter().find(|&&a| a as usize >= self.size) {
            Some(&a) => Err(Error::invalid(format!(
                "letter {a} outside alphabet of size {}",
                self.size
            ))),
            None => Ok(()),
        }
    }
}

/// A finite word over letter indices.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn pop(&mut self) -> Option<Letter> {
        self.0.pop()
    }

    pub fn truncate(&mut self, len: usize) {
        self.0.truncate(len);
    }

    pub fn extend_from_slice(&mut self, letters: &[Letter]) {
        self.0.extend_from_slice(letters);
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(other);
        Word(letters)
    }

    /// One more than the largest letter, i.e. the smallest alphabet the
    /// word fits in (1 for the empty word).
    pub fn min_alphabet(&self) -> usize {
        self.0.iter().map(|&a| a as usize + 1).max().unwrap_or(1)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl std::borrow::Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Single digits when every letter is below 10, comma-separated indices
/// otherwise. The empty word prints as nothing.
pub fn format_letters(letters: &[Letter]) -> String {
    if letters.iter().all(|&a| a < 10) {
        letters.iter().map(|&a| char::from(b'0' + a)).collect()
    } else {
        letters
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        f.write_str(&format_letters(&self.0))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{}\")", format_letters(&self.0))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_letters(&self.0))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `"0110"` (one digit per letter) or `"0,12,3"` (comma-separated
    /// indices). `""` and `"ε"` are the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Word::new());
        }
        if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<Letter>()
                        .map_err(|_| Error::invalid(format!("bad letter index {t:?}")))
                })
                .collect()
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as Letter)
                        .ok_or_else(|| Error::invalid(format!("bad letter {c:?} in {s:?}")))
                })
                .collect()
        }
    }
}

/// Shorthand used heavily in tests: panics on malformed input.
pub fn w(s: &str) -> Word {
    s.parse().expect("valid word literal")
}

/// A set of letters, one bit per index.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct LetterSet([u64; 4]);

impl LetterSet {
    pub fn new() -> Self {
        LetterSet([0; 4])
    }

    pub fn insert(&mut self, a: Letter) -> bool {
        let (i, bit) = ((a >> 6) as usize, 1u64 << (a & 63));
        let fresh = self.0[i] & bit == 0;
        self.0[i] |= bit;
        fresh
    }

    pub fn contains(&self, a: Letter) -> bool {
        self.0[(a >> 6) as usize] & (1u64 << (a & 63)) != 0
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|x| x.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_subset(&self, other: &LetterSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..MAX_ALPHABET)
            .map(|a| a as Letter)
            .filter(|&a| self.contains(a))
    }

    pub fn of(letters: &[Letter]) -> Self {
        let mut set = LetterSet::new();
        for &a in letters {
            set.insert(a);
        }
        set
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        let mut set = LetterSet::new();
        for a in iter {
            set.insert(a);
        }
        set
    }
}
