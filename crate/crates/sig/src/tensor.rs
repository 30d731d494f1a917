//! The truncated tensor algebra over a finite alphabet.
//!
//! An element is a coefficient for every word of length `0..=depth` over
//! `{1, ..., alphabet_size}`. Level k is stored densely, indexed by the
//! base-m positional encoding of the word, so a tensor holds
//! `(m^(depth+1) - 1) / (m - 1)` coefficients. The product truncates at
//! `depth`; exponentials of single segments are the building blocks of
//! every signature in this crate.

use crate::error::Error;
use crate::scalar::{JsonScalar, Scalar};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedTensor<S> {
    alphabet_size: usize,
    depth: usize,
    /// `levels[k]` has `alphabet_size^k` entries.
    levels: Vec<Vec<S>>,
}

/// Bail out before allocating absurd dense levels (the CLI accepts
/// user-supplied depths).
const MAX_COEFFICIENTS: usize = 1 << 27;

fn level_sizes(alphabet_size: usize, depth: usize) -> Result<Vec<usize>, Error> {
    let mut sizes = Vec::with_capacity(depth + 1);
    let mut size = 1usize;
    let mut total = 0usize;
    for _ in 0..=depth {
        sizes.push(size);
        total = total
            .checked_add(size)
            .filter(|&t| t <= MAX_COEFFICIENTS)
            .ok_or(Error::TensorTooLarge {
                alphabet: alphabet_size,
                depth,
            })?;
        size = size
            .checked_mul(alphabet_size)
            .ok_or(Error::TensorTooLarge {
                alphabet: alphabet_size,
                depth,
            })?;
    }
    let _ = total;
    Ok(sizes)
}

impl<S: Scalar> TruncatedTensor<S> {
    /// The zero element.
    pub fn zero(alphabet_size: usize, depth: usize) -> Self {
        assert!(alphabet_size >= 1, "alphabet must have at least one letter");
        let sizes = level_sizes(alphabet_size, depth).expect("tensor dimensions out of range");
        TruncatedTensor {
            alphabet_size,
            depth,
            levels: sizes.into_iter().map(|n| vec![S::zero(); n]).collect(),
        }
    }

    /// The multiplicative unit: 1 on the empty word, 0 elsewhere.
    pub fn one(alphabet_size: usize, depth: usize) -> Self {
        let mut t = Self::zero(alphabet_size, depth);
        t.levels[0][0] = S::one();
        t
    }

    /// Builds a tensor from a coefficient function on words.
    pub fn from_fn(
        alphabet_size: usize,
        depth: usize,
        mut coeff: impl FnMut(&Word) -> S,
    ) -> Self {
        let mut t = Self::zero(alphabet_size, depth);
        for level in 0..=depth {
            for index in 0..t.levels[level].len() {
                let word = Word::at_index(level, alphabet_size, index);
                t.levels[level][index] = coeff(&word);
            }
        }
        t
    }

    /// Builds a tensor from explicit (word, coefficient) pairs; unlisted
    /// words are zero.
    pub fn from_pairs<I>(alphabet_size: usize, depth: usize, pairs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Word, S)>,
    {
        let mut t = Self::zero(alphabet_size, depth);
        for (word, value) in pairs {
            let (level, index) = t.locate(&word)?;
            t.levels[level][index] = value;
        }
        Ok(t)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Dense coefficients of one level, in word-index order.
    pub fn level(&self, k: usize) -> &[S] {
        &self.levels[k]
    }

    fn locate(&self, word: &Word) -> Result<(usize, usize), Error> {
        if word.len() > self.depth {
            return Err(Error::WordTooLong {
                word: word.clone(),
                len: word.len(),
                depth: self.depth,
            });
        }
        for &l in word.letters() {
            if l as usize > self.alphabet_size {
                return Err(Error::LetterOutOfRange {
                    word: word.clone(),
                    letter: l,
                    alphabet: self.alphabet_size,
                });
            }
        }
        Ok((word.len(), word.index(self.alphabet_size)))
    }

    /// The coefficient of `word`. Errors if the word is longer than the
    /// truncation depth or uses a letter outside the alphabet.
    pub fn coeff(&self, word: &Word) -> Result<&S, Error> {
        let (level, index) = self.locate(word)?;
        Ok(&self.levels[level][index])
    }

    fn check_shape(&self, other: &Self) -> Result<(), Error> {
        if self.alphabet_size != other.alphabet_size || self.depth != other.depth {
            return Err(Error::ShapeMismatch {
                left_alphabet: self.alphabet_size,
                left_depth: self.depth,
                right_alphabet: other.alphabet_size,
                right_depth: other.depth,
            });
        }
        Ok(())
    }

    /// Componentwise sum.
    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_shape(other)?;
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            .collect();
        Ok(TruncatedTensor {
            alphabet_size: self.alphabet_size,
            depth: self.depth,
            levels,
        })
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &S) -> Self {
        let levels = self
            .levels
            .iter()
            .map(|lvl| lvl.iter().map(|x| x.mul(c)).collect())
            .collect();
        TruncatedTensor {
            alphabet_size: self.alphabet_size,
            depth: self.depth,
            levels,
        }
    }

    /// Truncated tensor product: level n of the result sums the
    /// concatenation products of level k of `self` with level n-k of
    /// `other`. Zero coefficients are skipped, which matters a lot when one
    /// factor is a segment exponential supported on few letters.
    pub fn product(&self, other: &Self) -> Result<Self, Error> {
        self.check_shape(other)?;
        let m = self.alphabet_size;
        let mut out = Self::zero(m, self.depth);
        for n in 0..=self.depth {
            for k in 0..=n {
                let a = &self.levels[k];
                let b = &other.levels[n - k];
                let stride = b.len();
                let target = &mut out.levels[n];
                for (ia, ca) in a.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    let base = ia * stride;
                    for (ib, cb) in b.iter().enumerate() {
                        if cb.is_zero() {
                            continue;
                        }
                        let slot = &mut target[base + ib];
                        *slot = slot.add(&ca.mul(cb));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Exponential of a one-letter-at-a-time segment: the coefficient of
    /// `(i_1, ..., i_k)` is `v[i_1] * ... * v[i_k] / k!`. This is the
    /// signature of a single straight segment with increment `v`.
    pub fn exp_segment(v: &[S], depth: usize) -> Self {
        assert!(!v.is_empty(), "segment must have at least one coordinate");
        let m = v.len();
        let mut t = Self::one(m, depth);
        for k in 1..=depth {
            let (below, at) = t.levels.split_at_mut(k);
            let prev = &below[k - 1];
            let cur = &mut at[0];
            for (iu, cu) in prev.iter().enumerate() {
                if cu.is_zero() {
                    continue;
                }
                for (i, vi) in v.iter().enumerate() {
                    if vi.is_zero() {
                        continue;
                    }
                    cur[iu * m + i] = cu.mul(vi).div_whole(k as u64);
                }
            }
        }
        t
    }

    /// The same element truncated to a smaller depth.
    pub fn truncated(&self, depth: usize) -> Self {
        assert!(depth <= self.depth);
        TruncatedTensor {
            alphabet_size: self.alphabet_size,
            depth,
            levels: self.levels[..=depth].to_vec(),
        }
    }

    /// Iterates (word, coefficient) over all stored words.
    pub fn iter(&self) -> impl Iterator<Item = (Word, &S)> + '_ {
        let m = self.alphabet_size;
        self.levels.iter().enumerate().flat_map(move |(level, lvl)| {
            lvl.iter()
                .enumerate()
                .map(move |(index, c)| (Word::at_index(level, m, index), c))
        })
    }

    /// Applies a function to every coefficient, keeping the shape.
    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> TruncatedTensor<T> {
        TruncatedTensor {
            alphabet_size: self.alphabet_size,
            depth: self.depth,
            levels: self
                .levels
                .iter()
                .map(|lvl| lvl.iter().map(&mut f).collect())
                .collect(),
        }
    }

    /// Like [`map`](Self::map) but the function may fail.
    pub fn try_map<T: Scalar, E>(
        &self,
        mut f: impl FnMut(&S) -> Result<T, E>,
    ) -> Result<TruncatedTensor<T>, E> {
        let mut levels = Vec::with_capacity(self.levels.len());
        for lvl in &self.levels {
            levels.push(lvl.iter().map(&mut f).collect::<Result<Vec<_>, E>>()?);
        }
        Ok(TruncatedTensor {
            alphabet_size: self.alphabet_size,
            depth: self.depth,
            levels,
        })
    }
}

impl<S: JsonScalar> TruncatedTensor<S> {
    /// Serializes to `{"alphabet_size": m, "depth": D, "coefficients": {...}}`
    /// with one entry per stored word, keyed by the comma-separated word.
    pub fn to_json(&self) -> serde_json::Value {
        let mut coeffs = serde_json::Map::new();
        for (word, c) in self.iter() {
            coeffs.insert(word.to_string(), c.to_json());
        }
        serde_json::json!({
            "alphabet_size": self.alphabet_size,
            "depth": self.depth,
            "coefficients": coeffs,
        })
    }

    /// Reads a tensor back from [`to_json`](Self::to_json) output. Words
    /// missing from the map default to zero.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, Error> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::TensorJson("expected an object".into()))?;
        let alphabet_size = obj
            .get("alphabet_size")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::TensorJson("missing alphabet_size".into()))?
            as usize;
        let depth = obj
            .get("depth")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::TensorJson("missing depth".into()))? as usize;
        if alphabet_size == 0 {
            return Err(Error::TensorJson("alphabet_size must be positive".into()));
        }
        level_sizes(alphabet_size, depth)?;
        let coeffs = obj
            .get("coefficients")
            .and_then(|v| v.as_object())
            .ok_or_else(|| Error::TensorJson("missing coefficients".into()))?;
        let mut t = Self::zero(alphabet_size, depth);
        for (key, val) in coeffs {
            let word: Word = key
                .parse()
                .map_err(|e| Error::TensorJson(format!("bad word {key:?}: {e}")))?;
            let (level, index) = t.locate(&word)?;
            t.levels[level][index] = S::from_json(val)?;
        }
        Ok(t)
    }
}
