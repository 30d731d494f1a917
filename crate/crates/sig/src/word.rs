//! Words over a finite alphabet of 1-based letters. A word of length k
//! indexes one coefficient at level k of a truncated tensor.

use crate::error::Error;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// A finite sequence of letters from `{1, ..., m}`. The empty word indexes
/// the level-0 coefficient.
///
/// Ordering is graded lexicographic: shorter words first, ties broken
/// letter by letter. This is the column order used everywhere a
/// deterministic enumeration of words matters (feature matrices, solver
/// tie-breaking, serialized output).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    /// Builds a word, rejecting the invalid letter 0.
    pub fn new(letters: Vec<u8>) -> Result<Self, Error> {
        if letters.contains(&0) {
            return Err(Error::WordParse {
                input: format!("{letters:?}"),
                reason: "letters are 1-based; 0 is not a letter".into(),
            });
        }
        Ok(Word(letters))
    }

    /// The empty word.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Single-letter word.
    pub fn letter(l: u8) -> Self {
        debug_assert!(l >= 1);
        Word(vec![l])
    }

    /// Convenience constructor for literal words in tests and examples.
    /// Panics on a zero letter.
    pub fn from_letters(letters: &[u8]) -> Self {
        Word::new(letters.to_vec()).expect("letters must be 1-based")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// `self` with `letter` appended.
    pub fn append(&self, letter: u8) -> Self {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    /// Concatenation of two words.
    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The largest letter, or 0 for the empty word. Gives the minimal
    /// alphabet this word lives in.
    pub fn max_letter(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// All words of a given length over `{1, ..., alphabet}`, in graded-lex
    /// order (which for fixed length is plain lexicographic order).
    pub fn all_of_length(len: usize, alphabet: usize) -> Vec<Word> {
        assert!(alphabet >= 1 && alphabet <= u8::MAX as usize);
        let count = alphabet.pow(len as u32);
        (0..count).map(|i| Word::at_index(len, alphabet, i)).collect()
    }

    /// The word at a base-`alphabet` positional index within its level.
    pub(crate) fn at_index(len: usize, alphabet: usize, mut index: usize) -> Word {
        let mut letters = vec![0u8; len];
        for slot in (0..len).rev() {
            letters[slot] = (index % alphabet) as u8 + 1;
            index /= alphabet;
        }
        Word(letters)
    }

    /// The positional index of this word within level `len` of an
    /// `alphabet`-letter tensor. Callers must have validated letter ranges.
    pub(crate) fn index(&self, alphabet: usize) -> usize {
        self.0
            .iter()
            .fold(0usize, |acc, &l| acc * alphabet + (l as usize - 1))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `"1,2,2"`; the empty string is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for part in trimmed.split(',') {
            let n: u32 = part.trim().parse().map_err(|e| Error::WordParse {
                input: s.to_string(),
                reason: format!("{e}"),
            })?;
            if n == 0 || n > u8::MAX as u32 {
                return Err(Error::WordParse {
                    input: s.to_string(),
                    reason: format!("letter {n} outside 1..=255"),
                });
            }
            letters.push(n as u8);
        }
        Ok(Word(letters))
    }
}
