//! Discretely sampled streams, their lead-lag embedding, and signatures.
//!
//! A d-dimensional stream of L increments embeds into a piecewise-linear
//! path in 2d dimensions with 2L+1 vertices: at each step the lead block
//! (coordinates 1..d) jumps to the new partial sum first, then the lag
//! block (coordinates d+1..2d) catches up. The signature of the stream is
//! the signature of that path, which factors step by step into a product
//! of two segment exponentials.

use crate::error::Error;
use crate::scalar::Scalar;
use crate::tensor::TruncatedTensor;
use std::path::Path;

/// A stream of `len()` increment rows, each of fixed dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct IncrementStream<S> {
    dimension: usize,
    rows: Vec<Vec<S>>,
}

/// Multiplies `count` tensor factors as a balanced tree. The grouping is
/// free by associativity, and in floating point it keeps rounding error
/// growing with the logarithm of the factor count instead of the count.
fn balanced_product<S, F>(
    alphabet_size: usize,
    depth: usize,
    count: usize,
    factor: &F,
) -> TruncatedTensor<S>
where
    S: Scalar,
    F: Fn(usize) -> TruncatedTensor<S>,
{
    fn range<S, F>(lo: usize, hi: usize, factor: &F) -> TruncatedTensor<S>
    where
        S: Scalar,
        F: Fn(usize) -> TruncatedTensor<S>,
    {
        if hi - lo == 1 {
            return factor(lo);
        }
        let mid = lo + (hi - lo) / 2;
        range(lo, mid, factor)
            .product(&range(mid, hi, factor))
            .expect("factors share the tensor shape")
    }
    if count == 0 {
        TruncatedTensor::one(alphabet_size, depth)
    } else {
        range(0, count, factor)
    }
}

impl<S: Scalar> IncrementStream<S> {
    /// Builds a stream from increment rows, checking that every row has
    /// the stated dimension.
    pub fn from_rows(dimension: usize, rows: Vec<Vec<S>>) -> Result<Self, Error> {
        if dimension == 0 {
            return Err(Error::invalid_input("stream", "dimension must be at least 1"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dimension {
                return Err(Error::RaggedRow {
                    row: i,
                    found: row.len(),
                    expected: dimension,
                });
            }
        }
        Ok(IncrementStream { dimension, rows })
    }

    /// The empty stream of a given dimension.
    pub fn empty(dimension: usize) -> Self {
        IncrementStream {
            dimension,
            rows: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of increments L.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    /// The stream consisting of the first `n` increments.
    pub fn prefix(&self, n: usize) -> Self {
        IncrementStream {
            dimension: self.dimension,
            rows: self.rows[..n].to_vec(),
        }
    }

    /// Cumulative sums: `L + 1` points starting at the origin, with
    /// `X_n = X_{n-1} + x_n`.
    pub fn partial_sums(&self) -> Vec<Vec<S>> {
        let mut out = Vec::with_capacity(self.rows.len() + 1);
        let mut acc = vec![S::zero(); self.dimension];
        out.push(acc.clone());
        for row in &self.rows {
            for (a, x) in acc.iter_mut().zip(row) {
                *a = a.add(x);
            }
            out.push(acc.clone());
        }
        out
    }

    /// This stream followed by `other`.
    pub fn concat(&self, other: &Self) -> Result<Self, Error> {
        if self.dimension != other.dimension {
            return Err(Error::DimensionMismatch {
                left: self.dimension,
                right: other.dimension,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(IncrementStream {
            dimension: self.dimension,
            rows,
        })
    }

    /// The lead-lag path: dimension doubles, and each increment becomes two
    /// segments. Vertex 2n-1 has the lead block already at `X_n` while the
    /// lag block still sits at `X_{n-1}`; vertex 2n has both at `X_n`.
    pub fn lead_lag(&self) -> PiecewiseLinearPath<S> {
        let d = self.dimension;
        let sums = self.partial_sums();
        let mut vertices = Vec::with_capacity(2 * self.rows.len() + 1);
        vertices.push(vec![S::zero(); 2 * d]);
        for n in 1..sums.len() {
            let mut jump = Vec::with_capacity(2 * d);
            jump.extend(sums[n].iter().cloned());
            jump.extend(sums[n - 1].iter().cloned());
            vertices.push(jump);
            let mut settle = Vec::with_capacity(2 * d);
            settle.extend(sums[n].iter().cloned());
            settle.extend(sums[n].iter().cloned());
            vertices.push(settle);
        }
        PiecewiseLinearPath {
            dimension: 2 * d,
            vertices,
        }
    }

    /// The truncated signature of the lead-lag path: the ordered product
    /// over steps of the two segment exponentials (lead jump, then lag
    /// catch-up), multiplied as a balanced tree. The empty stream gives
    /// the unit.
    pub fn signature(&self, depth: usize) -> TruncatedTensor<S> {
        let d = self.dimension;
        balanced_product(2 * d, depth, self.rows.len(), &|n| {
            let row = &self.rows[n];
            let mut lead = vec![S::zero(); 2 * d];
            let mut lag = vec![S::zero(); 2 * d];
            for (i, x) in row.iter().enumerate() {
                lead[i] = x.clone();
                lag[d + i] = x.clone();
            }
            TruncatedTensor::exp_segment(&lead, depth)
                .product(&TruncatedTensor::exp_segment(&lag, depth))
                .expect("shapes agree by construction")
        })
    }
}

/// A continuous piecewise-linear path given by its vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseLinearPath<S> {
    dimension: usize,
    vertices: Vec<Vec<S>>,
}

impl<S: Scalar> PiecewiseLinearPath<S> {
    pub fn new(dimension: usize, vertices: Vec<Vec<S>>) -> Result<Self, Error> {
        if dimension == 0 {
            return Err(Error::invalid_input("path", "dimension must be at least 1"));
        }
        if vertices.is_empty() {
            return Err(Error::invalid_input("path", "a path needs at least one vertex"));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != dimension {
                return Err(Error::RaggedRow {
                    row: i,
                    found: v.len(),
                    expected: dimension,
                });
            }
        }
        Ok(PiecewiseLinearPath { dimension, vertices })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertices(&self) -> &[Vec<S>] {
        &self.vertices
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> Self {
        PiecewiseLinearPath {
            dimension: self.dimension,
            vertices: self.vertices.iter().rev().cloned().collect(),
        }
    }

    /// The truncated signature: the ordered product of the segment
    /// exponentials. A single-vertex path has the unit signature.
    pub fn signature(&self, depth: usize) -> TruncatedTensor<S> {
        let mut acc = TruncatedTensor::one(self.dimension, depth);
        for pair in self.vertices.windows(2) {
            let increment: Vec<S> = pair[1]
                .iter()
                .zip(&pair[0])
                .map(|(b, a)| b.sub(a))
                .collect();
            acc = acc
                .product(&TruncatedTensor::exp_segment(&increment, depth))
                .expect("shapes agree by construction");
        }
        acc
    }
}

/// How CSV rows are interpreted when loading a stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamMode {
    /// Each row is one increment.
    Increments,
    /// Rows are sampled level values; consecutive differences become the
    /// increments, so T rows give a stream of length T-1.
    Levels,
}

/// Loads a float stream from a CSV file with one row per time index and
/// one numeric column per coordinate. A single leading non-numeric row is
/// treated as a header and skipped.
pub fn stream_from_csv(path: impl AsRef<Path>, mode: StreamMode) -> Result<IncrementStream<f64>, Error> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(path.as_ref())?;

    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let parsed: Result<Vec<f64>, usize> = record
            .iter()
            .enumerate()
            .map(|(col, field)| field.parse::<f64>().map_err(|_| col))
            .collect();
        match parsed {
            Ok(row) => rows.push(row),
            Err(col) if i == 0 => {
                // header row
                let _ = col;
                continue;
            }
            Err(col) => {
                return Err(Error::CsvField {
                    row: i,
                    column: col,
                    value: record.get(col).unwrap_or("").to_string(),
                });
            }
        }
    }

    if rows.is_empty() {
        return Err(Error::invalid_input("csv stream", "no numeric rows found"));
    }
    let dimension = rows[0].len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dimension {
            return Err(Error::RaggedRow {
                row: i,
                found: row.len(),
                expected: dimension,
            });
        }
    }

    let increments = match mode {
        StreamMode::Increments => rows,
        StreamMode::Levels => rows
            .windows(2)
            .map(|pair| pair[1].iter().zip(&pair[0]).map(|(b, a)| b - a).collect())
            .collect(),
    };
    IncrementStream::from_rows(dimension, increments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio, Rational};
    use crate::word::Word;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn stream_1d(xs: &[i64]) -> IncrementStream<Rational> {
        IncrementStream::from_rows(1, xs.iter().map(|&x| vec![int(x)]).collect()).unwrap()
    }

    #[test]
    fn partial_sums_start_at_zero() {
        assert_eq!(stream_1d(&[]).partial_sums(), vec![vec![int(0)]]);
        assert_eq!(
            stream_1d(&[1, 2]).partial_sums(),
            vec![vec![int(0)], vec![int(1)], vec![int(3)]]
        );
        let s = IncrementStream::from_rows(
            2,
            vec![vec![int(1), int(0)], vec![int(0), int(1)]],
        )
        .unwrap();
        assert_eq!(
            s.partial_sums(),
            vec![
                vec![int(0), int(0)],
                vec![int(1), int(0)],
                vec![int(1), int(1)]
            ]
        );
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let rows = vec![vec![int(1), int(2)], vec![int(3)]];
        assert!(matches!(
            IncrementStream::from_rows(2, rows),
            Err(Error::RaggedRow { row: 1, .. })
        ));
    }

    #[test]
    fn concat_appends_rows() {
        let a = stream_1d(&[1]);
        let b = stream_1d(&[2, 3]);
        let c = a.concat(&b).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.rows()[2], vec![int(3)]);

        let d2 = IncrementStream::from_rows(2, vec![vec![int(1), int(1)]]).unwrap();
        assert!(matches!(
            a.concat(&d2),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn lead_lag_single_step() {
        let path = stream_1d(&[2]).lead_lag();
        assert_eq!(
            path.vertices(),
            &[
                vec![int(0), int(0)],
                vec![int(2), int(0)],
                vec![int(2), int(2)]
            ]
        );
    }

    #[test]
    fn lead_lag_empty_stream_is_a_point() {
        let path = stream_1d(&[]).lead_lag();
        assert_eq!(path.vertices(), &[vec![int(0), int(0)]]);
        assert_eq!(path.dimension(), 2);
    }

    #[test]
    fn lead_lag_two_dimensional() {
        let s = IncrementStream::from_rows(
            2,
            vec![vec![int(1), int(0)], vec![int(0), int(1)]],
        )
        .unwrap();
        let path = s.lead_lag();
        assert_eq!(path.dimension(), 4);
        assert_eq!(
            path.vertices(),
            &[
                vec![int(0), int(0), int(0), int(0)],
                vec![int(1), int(0), int(0), int(0)],
                vec![int(1), int(0), int(1), int(0)],
                vec![int(1), int(1), int(1), int(0)],
                vec![int(1), int(1), int(1), int(1)],
            ]
        );
    }

    #[test]
    fn lead_lag_of_concat_extends_the_vertex_sequence() {
        let a = stream_1d(&[1, -2]);
        let b = stream_1d(&[3]);
        let joined = a.concat(&b).unwrap().lead_lag();
        let head = a.lead_lag();
        // the first 2·len(a)+1 vertices agree, and the rest are the second
        // path's vertices translated to match at the junction
        assert_eq!(&joined.vertices()[..head.vertices().len()], head.vertices());
        let tail = b.lead_lag();
        let offset = head.vertices().last().unwrap().clone();
        for (i, v) in tail.vertices().iter().enumerate().skip(1) {
            let translated: Vec<Rational> =
                v.iter().zip(&offset).map(|(x, o)| x.add(o)).collect();
            assert_eq!(joined.vertices()[head.vertices().len() - 1 + i], translated);
        }
    }

    #[test]
    fn signature_of_single_increment() {
        let sig = stream_1d(&[2]).signature(2);
        assert_eq!(sig.coeff(&w("")).unwrap(), &int(1));
        assert_eq!(sig.coeff(&w("1")).unwrap(), &int(2));
        assert_eq!(sig.coeff(&w("2")).unwrap(), &int(2));
        assert_eq!(sig.coeff(&w("1,1")).unwrap(), &int(2));
        assert_eq!(sig.coeff(&w("2,2")).unwrap(), &int(2));
        assert_eq!(sig.coeff(&w("1,2")).unwrap(), &int(4));
        assert_eq!(sig.coeff(&w("2,1")).unwrap(), &int(0));
    }

    #[test]
    fn signature_of_two_increments() {
        let sig = stream_1d(&[1, 2]).signature(2);
        assert_eq!(sig.coeff(&w("1")).unwrap(), &int(3));
        assert_eq!(sig.coeff(&w("2")).unwrap(), &int(3));
        assert_eq!(sig.coeff(&w("1,1")).unwrap(), &ratio(9, 2));
        assert_eq!(sig.coeff(&w("2,2")).unwrap(), &ratio(9, 2));
        assert_eq!(sig.coeff(&w("1,2")).unwrap(), &int(7));
        assert_eq!(sig.coeff(&w("2,1")).unwrap(), &int(2));
    }

    #[test]
    fn empty_stream_has_unit_signature() {
        let sig = stream_1d(&[]).signature(3);
        assert_eq!(sig, TruncatedTensor::one(2, 3));
    }

    #[test]
    fn stream_signature_matches_lead_lag_path_signature() {
        let s = IncrementStream::from_rows(
            2,
            vec![
                vec![ratio(1, 2), int(-1)],
                vec![int(2), ratio(1, 3)],
                vec![int(-1), int(1)],
            ],
        )
        .unwrap();
        assert_eq!(s.signature(3), s.lead_lag().signature(3));
    }

    #[test]
    fn chen_identity_for_concatenation() {
        let a = stream_1d(&[1, -1]);
        let b = stream_1d(&[2]);
        let joined = a.concat(&b).unwrap().signature(3);
        let product = a.signature(3).product(&b.signature(3)).unwrap();
        assert_eq!(joined, product);
    }

    #[test]
    fn path_signature_of_one_segment_is_an_exponential() {
        let path = PiecewiseLinearPath::new(1, vec![vec![int(0)], vec![int(2)]]).unwrap();
        assert_eq!(
            path.signature(3),
            TruncatedTensor::exp_segment(&[int(2)], 3)
        );
    }

    #[test]
    fn path_reversal_inverts_the_signature() {
        let path = PiecewiseLinearPath::new(
            2,
            vec![
                vec![int(0), int(0)],
                vec![int(2), int(0)],
                vec![int(2), int(2)],
                vec![int(1), int(-1)],
            ],
        )
        .unwrap();
        let forward = path.signature(3);
        let backward = path.reversed().signature(3);
        assert_eq!(
            forward.product(&backward).unwrap(),
            TruncatedTensor::one(2, 3)
        );
    }

    #[test]
    fn single_vertex_path_has_unit_signature() {
        let path = PiecewiseLinearPath::new(2, vec![vec![int(1), int(1)]]).unwrap();
        assert_eq!(path.signature(2), TruncatedTensor::one(2, 2));
    }

    #[test]
    fn degree_one_coefficients_are_total_increments() {
        let s = IncrementStream::from_rows(
            2,
            vec![vec![int(1), int(2)], vec![int(3), int(-1)]],
        )
        .unwrap();
        let sig = s.signature(1);
        // lead and lag blocks both end at the total increment
        assert_eq!(sig.coeff(&w("1")).unwrap(), &int(4));
        assert_eq!(sig.coeff(&w("2")).unwrap(), &int(1));
        assert_eq!(sig.coeff(&w("3")).unwrap(), &int(4));
        assert_eq!(sig.coeff(&w("4")).unwrap(), &int(1));
    }

    #[test]
    fn lag_before_lead_vanishes_on_a_single_step() {
        let s = IncrementStream::from_rows(2, vec![vec![int(3), int(5)]]).unwrap();
        let sig = s.signature(2);
        for i in 1..=2u8 {
            for j in 1..=2u8 {
                let word = Word::from_letters(&[i + 2, j]);
                assert_eq!(
                    sig.coeff(&word).unwrap(),
                    &int(0),
                    "lag letter {} before lead letter {}",
                    i + 2,
                    j
                );
            }
        }
    }

    #[test]
    fn repeated_lead_letter_accumulates_the_power() {
        // coefficient of (1,...,1) with k lead letters is X_L^k / k!
        let s = stream_1d(&[1, 2, -1]);
        let sig = s.signature(4);
        let total = int(2); // 1 + 2 - 1
        let mut expected = int(1);
        for k in 1..=4usize {
            expected = expected * &total / int(k as i64);
            let word = Word::from_letters(&vec![1u8; k]);
            assert_eq!(sig.coeff(&word).unwrap(), &expected, "k = {k}");
        }
    }

    #[test]
    fn csv_round_trip_with_header_and_levels() {
        let dir = std::env::temp_dir().join(format!("sig-stream-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("levels.csv");
        std::fs::write(&path, "a,b\n0,0\n1,0.5\n3,1.5\n").unwrap();
        let s = stream_from_csv(&path, StreamMode::Levels).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.rows()[0], vec![1.0, 0.5]);
        assert_eq!(s.rows()[1], vec![2.0, 1.0]);

        let path2 = dir.join("increments.csv");
        std::fs::write(&path2, "1,0.5\n2,1\n").unwrap();
        let s2 = stream_from_csv(&path2, StreamMode::Increments).unwrap();
        assert_eq!(s2.rows(), s.rows());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn csv_rejects_malformed_interior_rows() {
        let dir = std::env::temp_dir().join(format!("sig-stream-bad-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.csv");
        std::fs::write(&path, "1,2\n3,oops\n").unwrap();
        let err = stream_from_csv(&path, StreamMode::Increments).unwrap_err();
        assert!(matches!(err, Error::CsvField { row: 1, column: 1, .. }));
        std::fs::remove_dir_all(&dir).ok();
    }
}
