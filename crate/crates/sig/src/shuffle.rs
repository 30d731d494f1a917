//! Shuffle products of words and rational linear combinations of words,
//! which act as linear functionals on truncated tensors.
//!
//! The key fact used throughout the crate: on a signature, the pointwise
//! product of two word functionals equals the shuffle of the words,
//! `π^I(S) · π^J(S) = π^(I ⧢ J)(S)`.

use crate::error::Error;
use crate::scalar::{Rational, Scalar};
use crate::tensor::TruncatedTensor;
use crate::word::Word;
use std::collections::BTreeMap;
use std::fmt;

/// A finite rational linear combination of words. Zero coefficients are
/// never stored; the words are kept in graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WordCombination {
    terms: BTreeMap<Word, Rational>,
}

impl WordCombination {
    pub fn new() -> Self {
        Self::default()
    }

    /// A single word with coefficient 1.
    pub fn word(word: Word) -> Self {
        let mut c = Self::new();
        c.add_term(word, Rational::one());
        c
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Word, Rational)>,
    {
        let mut c = Self::new();
        for (word, coeff) in terms {
            c.add_term(word, coeff);
        }
        c
    }

    /// Adds `coeff · word`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, word: Word, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of a word (zero when absent).
    pub fn coeff(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> + '_ {
        self.terms.keys()
    }

    /// Length of the longest word, 0 when empty. A functional needs a
    /// tensor of at least this depth to evaluate.
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// The largest letter appearing in any word.
    pub fn max_letter(&self) -> u8 {
        self.terms.keys().map(Word::max_letter).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        WordCombination {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v * c))
                .collect(),
        }
    }

    /// Appends a letter to every word (used by the shuffle recursion).
    fn appended(&self, letter: u8) -> Self {
        WordCombination {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.append(letter), c.clone()))
                .collect(),
        }
    }

    /// Bilinear extension of the word shuffle to combinations.
    pub fn shuffle(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                let piece = shuffle(u, v).scale(&(cu * cv));
                out = out.add(&piece);
            }
        }
        out
    }

    /// Applies the functional to a tensor: the sum of stored coefficients
    /// times the matching tensor coefficients. Errors if any word does not
    /// fit the tensor (too long, or a letter outside its alphabet).
    pub fn evaluate<S: Scalar>(&self, tensor: &TruncatedTensor<S>) -> Result<S, Error> {
        let mut acc = S::zero();
        for (word, coeff) in &self.terms {
            let c = tensor.coeff(word)?;
            acc = acc.add(&S::from_ratio(coeff).mul(c));
        }
        Ok(acc)
    }

    /// Serializes as `{"<word>": "p/q", ...}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (word, coeff) in &self.terms {
            map.insert(word.to_string(), serde_json::Value::String(coeff.to_string()));
        }
        serde_json::Value::Object(map)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, Error> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::CombinationJson("expected an object".into()))?;
        let mut out = Self::new();
        for (key, val) in obj {
            let word: Word = key
                .parse()
                .map_err(|e| Error::CombinationJson(format!("bad word {key:?}: {e}")))?;
            let s = val
                .as_str()
                .ok_or_else(|| Error::CombinationJson(format!("coefficient for {key:?} must be a string")))?;
            let coeff: Rational = s
                .parse()
                .map_err(|e| Error::CombinationJson(format!("bad coefficient {s:?}: {e}")))?;
            out.add_term(word, coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for WordCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (word, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{coeff}·({word})")?;
            first = false;
        }
        Ok(())
    }
}

/// Shuffle product of two words: the sum over all interleavings that keep
/// the internal order of each word, with multiplicity.
///
/// Computed by dynamic programming over prefix pairs, which memoizes the
/// textbook recursion `(u·a) ⧢ (v·b) = (u ⧢ v·b)·a + (u·a ⧢ v)·b`.
pub fn shuffle(left: &Word, right: &Word) -> WordCombination {
    let n = left.len();
    let m = right.len();
    // table[i][j] = shuffle of left[..i] and right[..j]
    let mut table: Vec<Vec<WordCombination>> = vec![vec![WordCombination::new(); m + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=m {
            if i == 0 && j == 0 {
                table[i][j] = WordCombination::word(Word::empty());
                continue;
            }
            let mut acc = WordCombination::new();
            if i > 0 {
                let letter = left.letters()[i - 1];
                acc = acc.add(&table[i - 1][j].appended(letter));
            }
            if j > 0 {
                let letter = right.letters()[j - 1];
                acc = acc.add(&table[i][j - 1].appended(letter));
            }
            table[i][j] = acc;
        }
    }
    table[n][m].clone()
}
