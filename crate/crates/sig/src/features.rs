//! Signature coefficients flattened into a design matrix.

use crate::error::Error;
use crate::scalar::Scalar;
use crate::shuffle::WordCombination;
use crate::tensor::TruncatedTensor;
use crate::word::Word;
use nalgebra::DMatrix;
use std::collections::HashMap;

/// All words of length 1..=depth over the alphabet, in graded-lexicographic
/// order. This is the feature column order; a constant column is appended
/// after them when a matrix is built.
pub fn word_columns(alphabet_size: usize, depth: usize) -> Vec<Word> {
    let mut words = Vec::new();
    for len in 1..=depth {
        words.extend(Word::all_of_length(len, alphabet_size));
    }
    words
}

/// One row per sample: the signature coefficients of every word of length
/// 1..=depth in graded-lexicographic order, then a constant-1 column.
#[derive(Clone, Debug)]
pub struct FeatureMatrix {
    words: Vec<Word>,
    column_of_word: HashMap<Word, usize>,
    matrix: DMatrix<f64>,
}

impl FeatureMatrix {
    /// Builds the matrix from per-sample signatures, which must all share
    /// one alphabet and depth.
    pub fn from_signatures(signatures: &[TruncatedTensor<f64>]) -> Result<Self, Error> {
        let first = signatures.first().ok_or_else(|| {
            Error::invalid_input("signatures", "need at least one sample")
        })?;
        for s in signatures {
            if s.alphabet_size() != first.alphabet_size() || s.depth() != first.depth() {
                return Err(Error::ShapeMismatch {
                    left_alphabet: first.alphabet_size(),
                    left_depth: first.depth(),
                    right_alphabet: s.alphabet_size(),
                    right_depth: s.depth(),
                });
            }
        }

        let words = word_columns(first.alphabet_size(), first.depth());
        let column_of_word: HashMap<Word, usize> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let n_columns = words.len() + 1;
        let mut matrix = DMatrix::zeros(signatures.len(), n_columns);
        for (row, signature) in signatures.iter().enumerate() {
            for (col, word) in words.iter().enumerate() {
                matrix[(row, col)] = *signature.coeff(word).expect("word fits shape");
            }
            matrix[(row, n_columns - 1)] = 1.0;
        }
        Ok(FeatureMatrix {
            words,
            column_of_word,
            matrix,
        })
    }

    pub fn n_samples(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn n_columns(&self) -> usize {
        self.matrix.ncols()
    }

    /// The word behind each non-constant column, in column order.
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Index of the trailing constant column.
    pub fn constant_column(&self) -> usize {
        self.matrix.ncols() - 1
    }

    pub fn column_index(&self, word: &Word) -> Option<usize> {
        self.column_of_word.get(word).copied()
    }

    /// Evaluates a word functional on one sample's row; every word in the
    /// combination must be a feature column. Matches evaluating on the
    /// sample's signature directly.
    pub fn evaluate_combination(
        &self,
        row: usize,
        combination: &WordCombination,
    ) -> Result<f64, Error> {
        let mut acc = 0.0;
        for (word, coeff) in combination.iter() {
            let col = self.column_index(word).ok_or_else(|| {
                Error::invalid_input(
                    "combination",
                    format!("word ({word}) is not a feature column"),
                )
            })?;
            acc += f64::from_ratio(coeff) * self.matrix[(row, col)];
        }
        Ok(acc)
    }
}
