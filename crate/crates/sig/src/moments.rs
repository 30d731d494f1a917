//! Moment recovery: exact word functionals that read increment moments
//! off a stream's lead-lag signature.
//!
//! Each constructor solves an exact rational linear system against the
//! symbolic signature (so the produced combination is correct for every
//! stream of the solve length, not just on sampled data) and then
//! re-certifies the result numerically on random rational streams of a
//! strictly longer length. Degree-p coefficient polynomials only ever see
//! monomials supported on at most p distinct steps, so any combination
//! valid at length p+1 is valid at every length; the certification pass
//! exists to catch implementation slips, not mathematical ones.

use crate::error::Error;
use crate::rng::{random_rational_stream, SplitMix64};
use crate::scalar::{ratio, Rational};
use crate::shuffle::WordCombination;
use crate::solver::solve_pinned;
use crate::stream::IncrementStream;
use crate::symbolic::{symbolic_signature, variable_index, Monomial, MultivariatePolynomial};
use crate::tensor::TruncatedTensor;
use crate::word::Word;
use num::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::OnceLock;

const CERTIFICATION_TRIALS: usize = 20;
const CERTIFICATION_SEED: u64 = 0x9D1A_77E3_42B5_06C4;

/// How a functional was obtained and how it was checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalReport {
    /// Stream length of the exact symbolic solve.
    #[serde(rename = "solved_at_L")]
    pub solved_at_length: usize,
    /// Stream length of the numeric re-certification.
    #[serde(rename = "certified_at_L")]
    pub certified_at_length: usize,
    /// Number of random rational streams the functional was re-checked on.
    pub trials: usize,
    /// Constants whose certified values differ from the values they are
    /// usually quoted as.
    #[serde(rename = "paper_constant_discrepancies")]
    pub constant_discrepancies: Vec<Discrepancy>,
}

/// A named constant, the value it is usually quoted as, and the value the
/// exact solve certifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub quantity: String,
    pub stated: String,
    pub certified: String,
}

/// A moment of a stream's increments that can be computed directly, used
/// as ground truth when certifying functionals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MomentTarget {
    /// Sum of p-th powers of the increments of a one-dimensional stream.
    PowerSum { degree: usize },
    /// Sum over steps of the product of two coordinates' increments.
    Covariance { i1: usize, i2: usize },
    /// Sum over steps of the product of three coordinates' increments.
    ThirdMoment { i1: usize, i2: usize, i3: usize },
}

impl MomentTarget {
    /// Computes the moment from the increments themselves.
    pub fn direct_moment(&self, stream: &IncrementStream<Rational>) -> Result<Rational, Error> {
        let d = stream.dimension();
        let coordinate = |index: usize| -> Result<usize, Error> {
            if index < 1 || index > d {
                Err(Error::CoordinateOutOfRange {
                    index,
                    dimension: d,
                })
            } else {
                Ok(index - 1)
            }
        };
        match self {
            MomentTarget::PowerSum { degree } => {
                if d != 1 {
                    return Err(Error::invalid_input(
                        "stream",
                        "power sums are defined for one-dimensional streams",
                    ));
                }
                let mut acc = Rational::zero();
                for row in stream.rows() {
                    let mut term = Rational::from_integer(1.into());
                    for _ in 0..*degree {
                        term = &term * &row[0];
                    }
                    acc = acc + term;
                }
                Ok(acc)
            }
            MomentTarget::Covariance { i1, i2 } => {
                let (a, b) = (coordinate(*i1)?, coordinate(*i2)?);
                let mut acc = Rational::zero();
                for row in stream.rows() {
                    acc = acc + &row[a] * &row[b];
                }
                Ok(acc)
            }
            MomentTarget::ThirdMoment { i1, i2, i3 } => {
                let (a, b, c) = (coordinate(*i1)?, coordinate(*i2)?, coordinate(*i3)?);
                let mut acc = Rational::zero();
                for row in stream.rows() {
                    acc = acc + &(&row[a] * &row[b]) * &row[c];
                }
                Ok(acc)
            }
        }
    }
}

/// Finds rational coefficients on `support` whose combination of symbolic
/// signature coefficients equals `target` for every `dimension`-dimensional
/// stream of length `stream_length`. Underdetermined systems resolve to
/// the canonical representative supported on the earliest words in the
/// given order; an unreachable target yields [`Error::Infeasible`].
pub fn fit_combination(
    support: &[Word],
    target: &MultivariatePolynomial,
    dimension: usize,
    stream_length: usize,
) -> Result<WordCombination, Error> {
    let depth = support.iter().map(Word::len).max().unwrap_or(0);
    let sym = symbolic_signature(stream_length, dimension, depth)?;
    let mut columns = Vec::with_capacity(support.len());
    for word in support {
        columns.push(sym.coeff(word)?);
    }

    let mut monomials: BTreeSet<Monomial> = BTreeSet::new();
    for column in &columns {
        monomials.extend(column.terms().map(|(m, _)| m.clone()));
    }
    monomials.extend(target.terms().map(|(m, _)| m.clone()));

    let matrix: Vec<Vec<Rational>> = monomials
        .iter()
        .map(|m| columns.iter().map(|c| c.coefficient(m)).collect())
        .collect();
    let rhs: Vec<Rational> = monomials.iter().map(|m| target.coefficient(m)).collect();

    let solution = solve_pinned(matrix, rhs).ok_or(Error::Infeasible)?;
    let mut combination = WordCombination::new();
    for (word, coeff) in support.iter().zip(solution) {
        combination.add_term(word.clone(), coeff);
    }

    // re-substitute, so a solver defect cannot slip through silently
    let mut check = MultivariatePolynomial::zero();
    for (word, coeff) in combination.iter() {
        check.add_assign(&sym.coeff(word)?.scale(coeff));
    }
    if &check != target {
        return Err(Error::CertificationFailed {
            length: stream_length,
            witness: "symbolic increments".to_string(),
            expected: target.to_string(),
            actual: check.to_string(),
        });
    }
    Ok(combination)
}

fn describe_stream(stream: &IncrementStream<Rational>) -> String {
    let rows: Vec<String> = stream
        .rows()
        .iter()
        .map(|row| {
            let entries: Vec<String> = row.iter().map(Rational::to_string).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Checks a functional against per-stream ground truth on random rational
/// streams, comparing exactly.
fn certify_against<F>(
    functional: &WordCombination,
    dimension: usize,
    stream_length: usize,
    trials: usize,
    mut expected_value: F,
) -> Result<(), Error>
where
    F: FnMut(&IncrementStream<Rational>, &TruncatedTensor<Rational>) -> Result<Rational, Error>,
{
    let depth = functional.max_word_len();
    let mut rng = SplitMix64::substream(
        CERTIFICATION_SEED,
        (dimension as u64) << 32 | stream_length as u64,
    );
    for _ in 0..trials {
        let stream = random_rational_stream(&mut rng, stream_length, dimension);
        let signature = stream.signature(depth);
        let actual = functional.evaluate(&signature)?;
        let expected = expected_value(&stream, &signature)?;
        if actual != expected {
            return Err(Error::CertificationFailed {
                length: stream_length,
                witness: describe_stream(&stream),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }
    Ok(())
}

/// Re-checks `functional` against `target` on `trials` random rational
/// streams of the given shape; any exact mismatch is reported with the
/// offending stream.
pub fn certify_functional(
    functional: &WordCombination,
    target: &MomentTarget,
    dimension: usize,
    stream_length: usize,
    trials: usize,
) -> Result<(), Error> {
    certify_against(functional, dimension, stream_length, trials, |stream, _| {
        target.direct_moment(stream)
    })
}

/// One exact mismatch found by [`verify_functional`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationFailure {
    pub length: usize,
    pub witness: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of re-checking a functional against directly computed moments;
/// mismatches are collected rather than raised.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<VerificationFailure>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates `functional` on random rational streams of random lengths up
/// to `max_length` and compares exactly against the directly computed
/// moment. Failures are data, not errors.
pub fn verify_functional(
    functional: &WordCombination,
    target: &MomentTarget,
    dimension: usize,
    trials: usize,
    max_length: usize,
) -> Result<VerificationReport, Error> {
    assert!(max_length >= 1);
    let depth = functional.max_word_len();
    let mut rng = SplitMix64::substream(
        CERTIFICATION_SEED,
        0x8000_0000_0000_0000 | (dimension as u64) << 32 | max_length as u64,
    );
    let mut failures = Vec::new();
    for _ in 0..trials {
        let length = 1 + rng.next_index(max_length);
        let stream = random_rational_stream(&mut rng, length, dimension);
        let signature = stream.signature(depth);
        let actual = functional.evaluate(&signature)?;
        let expected = target.direct_moment(&stream)?;
        if actual != expected {
            failures.push(VerificationFailure {
                length,
                witness: describe_stream(&stream),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }
    Ok(VerificationReport {
        trials,
        passes: trials - failures.len(),
        failures,
    })
}

fn class_support(length: usize, class_letter: u8) -> Vec<Word> {
    Word::all_of_length(length, 2)
        .into_iter()
        .filter(|w| w.last() == Some(class_letter))
        .collect()
}

fn validate_class_letter(class_letter: u8) -> Result<(), Error> {
    if class_letter == 1 || class_letter == 2 {
        Ok(())
    } else {
        Err(Error::invalid_input(
            "class letter",
            format!("must be 1 or 2, got {class_letter}"),
        ))
    }
}

fn power_sum_target(degree: usize, stream_length: usize) -> MultivariatePolynomial {
    let mut target = MultivariatePolynomial::zero();
    for step in 1..=stream_length {
        target.add_term(
            Monomial::power(variable_index(step, 1, 1), degree as u32),
            ratio(1, 1),
        );
    }
    target
}

/// A functional computing the sum of p-th powers of a one-dimensional
/// stream's increments, supported on length-p words over the lead-lag
/// alphabet {1, 2} that end in `class_letter`.
///
/// Solved exactly at length p+1 and re-certified at length p+3.
pub fn power_sum_functional(
    degree: usize,
    class_letter: u8,
) -> Result<(WordCombination, FunctionalReport), Error> {
    if degree == 0 {
        return Err(Error::invalid_input("degree", "must be at least 1"));
    }
    validate_class_letter(class_letter)?;

    let solve_length = degree + 1;
    let certify_length = degree + 3;
    let support = class_support(degree, class_letter);
    let target = power_sum_target(degree, solve_length);
    let functional = fit_combination(&support, &target, 1, solve_length)?;
    certify_functional(
        &functional,
        &MomentTarget::PowerSum { degree },
        1,
        certify_length,
        CERTIFICATION_TRIALS,
    )?;

    Ok((
        functional,
        FunctionalReport {
            solved_at_length: solve_length,
            certified_at_length: certify_length,
            trials: CERTIFICATION_TRIALS,
            constant_discrepancies: Vec::new(),
        },
    ))
}

/// Rewrites the functional of a single word over {1, 2} as a combination
/// of same-length words ending in `class_letter`, valid on the lead-lag
/// signature of every one-dimensional stream.
pub fn rewrite_in_class(
    word: &Word,
    class_letter: u8,
) -> Result<(WordCombination, FunctionalReport), Error> {
    validate_class_letter(class_letter)?;
    if word.is_empty() {
        return Err(Error::invalid_input("word", "must be non-empty"));
    }
    if word.max_letter() > 2 {
        let letter = *word.letters().iter().find(|&&l| l > 2).expect("checked");
        return Err(Error::LetterOutOfRange {
            word: word.clone(),
            letter,
            alphabet: 2,
        });
    }

    let length = word.len();
    let solve_length = length + 1;
    let certify_length = length + 3;
    let support = class_support(length, class_letter);
    let sym = symbolic_signature(solve_length, 1, length)?;
    let target = sym.coeff(word)?.clone();
    let functional = fit_combination(&support, &target, 1, solve_length)?;
    certify_against(
        &functional,
        1,
        certify_length,
        CERTIFICATION_TRIALS,
        |_, signature| signature.coeff(word).cloned(),
    )?;

    Ok((
        functional,
        FunctionalReport {
            solved_at_length: solve_length,
            certified_at_length: certify_length,
            trials: CERTIFICATION_TRIALS,
            constant_discrepancies: Vec::new(),
        },
    ))
}

fn validate_coordinate(index: usize, dimension: usize) -> Result<(), Error> {
    if index < 1 || index > dimension {
        Err(Error::CoordinateOutOfRange { index, dimension })
    } else {
        Ok(())
    }
}

fn validate_dimension(dimension: usize) -> Result<(), Error> {
    if dimension == 0 {
        Err(Error::invalid_input("dimension", "must be at least 1"))
    } else if dimension > 127 {
        Err(Error::invalid_input(
            "dimension",
            "must be at most 127 so lead-lag letters fit in a byte",
        ))
    } else {
        Ok(())
    }
}

/// A functional computing the sum over steps of the product of coordinates
/// `i1` and `i2` of the increments: 2(i1, i2+d) - 2(i1, i2) over the
/// lead-lag alphabet of a d-dimensional stream. `i1 == i2` is allowed and
/// yields the sum of squared increments.
///
/// The combination is verified symbolically at length 2 (which realizes
/// every monomial pattern a degree-2 coefficient can have) and then
/// re-certified numerically at length 5.
pub fn covariance_functional(
    i1: usize,
    i2: usize,
    dimension: usize,
) -> Result<(WordCombination, FunctionalReport), Error> {
    validate_dimension(dimension)?;
    validate_coordinate(i1, dimension)?;
    validate_coordinate(i2, dimension)?;

    let lead = |i: usize| i as u8;
    let lag = |i: usize| (i + dimension) as u8;
    let mut functional = WordCombination::new();
    functional.add_term(Word::from_letters(&[lead(i1), lag(i2)]), ratio(2, 1));
    functional.add_term(Word::from_letters(&[lead(i1), lead(i2)]), ratio(-2, 1));

    let solve_length = 2;
    let certify_length = 5;
    let sym = symbolic_signature(solve_length, dimension, 2)?;
    let mut symbolic_value = MultivariatePolynomial::zero();
    for (word, coeff) in functional.iter() {
        symbolic_value.add_assign(&sym.coeff(word)?.scale(coeff));
    }
    let mut target = MultivariatePolynomial::zero();
    for step in 1..=solve_length {
        target.add_term(
            Monomial::variable(variable_index(step, i1, dimension))
                .mul(&Monomial::variable(variable_index(step, i2, dimension))),
            ratio(1, 1),
        );
    }
    if symbolic_value != target {
        return Err(Error::CertificationFailed {
            length: solve_length,
            witness: "symbolic increments".to_string(),
            expected: target.to_string(),
            actual: symbolic_value.to_string(),
        });
    }

    certify_functional(
        &functional,
        &MomentTarget::Covariance { i1, i2 },
        dimension,
        certify_length,
        CERTIFICATION_TRIALS,
    )?;

    Ok((
        functional,
        FunctionalReport {
            solved_at_length: solve_length,
            certified_at_length: certify_length,
            trials: CERTIFICATION_TRIALS,
            constant_discrepancies: Vec::new(),
        },
    ))
}

/// The value the third-moment prefactor is usually quoted as.
const THIRD_MOMENT_STATED: (i64, i64) = (6, 5);

static THIRD_MOMENT_CONSTANT: OnceLock<Rational> = OnceLock::new();

fn third_moment_bracket(i1: usize, i2: usize, i3: usize, dimension: usize) -> WordCombination {
    let lead = |i: usize| i as u8;
    let lag = |i: usize| (i + dimension) as u8;
    let mut bracket = WordCombination::new();
    bracket.add_term(Word::from_letters(&[lead(i1), lead(i2), lead(i3)]), ratio(1, 1));
    bracket.add_term(Word::from_letters(&[lead(i1), lead(i2), lag(i3)]), ratio(1, 1));
    bracket.add_term(Word::from_letters(&[lag(i1), lead(i2), lag(i3)]), ratio(-1, 1));
    bracket.add_term(Word::from_letters(&[lead(i1), lag(i2), lag(i3)]), ratio(-1, 1));
    bracket
}

/// Solves for the single constant c with c * bracket = third-moment sum,
/// symbolically in the canonical three-dimensional setting. The bracket
/// only involves the three chosen coordinates, so the constant carries
/// over to any dimension.
fn solve_third_moment_constant() -> Result<Rational, Error> {
    let (dimension, solve_length) = (3, 2);
    let sym = symbolic_signature(solve_length, dimension, 3)?;
    let bracket = third_moment_bracket(1, 2, 3, dimension);
    let mut column = MultivariatePolynomial::zero();
    for (word, coeff) in bracket.iter() {
        column.add_assign(&sym.coeff(word)?.scale(coeff));
    }
    let mut target = MultivariatePolynomial::zero();
    for step in 1..=solve_length {
        let m = Monomial::variable(variable_index(step, 1, dimension))
            .mul(&Monomial::variable(variable_index(step, 2, dimension)))
            .mul(&Monomial::variable(variable_index(step, 3, dimension)));
        target.add_term(m, ratio(1, 1));
    }

    let mut monomials: BTreeSet<Monomial> = column.terms().map(|(m, _)| m.clone()).collect();
    monomials.extend(target.terms().map(|(m, _)| m.clone()));
    let matrix: Vec<Vec<Rational>> = monomials.iter().map(|m| vec![column.coefficient(m)]).collect();
    let rhs: Vec<Rational> = monomials.iter().map(|m| target.coefficient(m)).collect();
    let solution = solve_pinned(matrix, rhs).ok_or(Error::Infeasible)?;
    Ok(solution.into_iter().next().expect("one column"))
}

fn certified_third_moment_constant() -> Result<&'static Rational, Error> {
    if let Some(c) = THIRD_MOMENT_CONSTANT.get() {
        return Ok(c);
    }
    let c = solve_third_moment_constant()?;
    Ok(THIRD_MOMENT_CONSTANT.get_or_init(|| c))
}

/// The certified third-moment prefactor next to the value it is usually
/// quoted as (6/5); the exact solve certifies 6.
pub fn third_moment_discrepancy() -> Result<Discrepancy, Error> {
    let certified = certified_third_moment_constant()?;
    Ok(Discrepancy {
        quantity: "third_moment_constant".to_string(),
        stated: format!("{}/{}", THIRD_MOMENT_STATED.0, THIRD_MOMENT_STATED.1),
        certified: certified.to_string(),
    })
}

/// A functional computing the sum over steps of the product of three
/// pairwise distinct coordinates' increments, as the certified constant
/// times the four-word bracket
/// (i1,i2,i3) + (i1,i2,i3+d) - (i1+d,i2,i3+d) - (i1,i2+d,i3+d).
pub fn third_moment_functional(
    i1: usize,
    i2: usize,
    i3: usize,
    dimension: usize,
) -> Result<(WordCombination, FunctionalReport), Error> {
    validate_dimension(dimension)?;
    validate_coordinate(i1, dimension)?;
    validate_coordinate(i2, dimension)?;
    validate_coordinate(i3, dimension)?;
    if i1 == i2 || i1 == i3 || i2 == i3 {
        return Err(Error::IndicesNotDistinct { i1, i2, i3 });
    }

    let constant = certified_third_moment_constant()?.clone();
    let functional = third_moment_bracket(i1, i2, i3, dimension).scale(&constant);

    let solve_length = 2;
    let certify_length = 6;
    certify_functional(
        &functional,
        &MomentTarget::ThirdMoment { i1, i2, i3 },
        dimension,
        certify_length,
        CERTIFICATION_TRIALS,
    )?;

    let stated = ratio(THIRD_MOMENT_STATED.0, THIRD_MOMENT_STATED.1);
    let constant_discrepancies = if constant != stated {
        vec![third_moment_discrepancy()?]
    } else {
        Vec::new()
    };

    Ok((
        functional,
        FunctionalReport {
            solved_at_length: solve_length,
            certified_at_length: certify_length,
            trials: CERTIFICATION_TRIALS,
            constant_discrepancies,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn terms(combination: &WordCombination) -> Vec<(String, Rational)> {
        combination
            .iter()
            .map(|(word, coeff)| (word.to_string(), coeff.clone()))
            .collect()
    }

    #[test]
    fn power_sum_degree_one_is_the_endpoint_coordinate() {
        let (f1, _) = power_sum_functional(1, 1).unwrap();
        assert_eq!(terms(&f1), vec![("1".to_string(), int(1))]);
        let (f2, _) = power_sum_functional(1, 2).unwrap();
        assert_eq!(terms(&f2), vec![("2".to_string(), int(1))]);
    }

    #[test]
    fn power_sum_degree_two_both_classes() {
        let (f1, _) = power_sum_functional(2, 1).unwrap();
        assert_eq!(
            terms(&f1),
            vec![("1,1".to_string(), int(2)), ("2,1".to_string(), int(-2))]
        );
        let (f2, report) = power_sum_functional(2, 2).unwrap();
        assert_eq!(
            terms(&f2),
            vec![("1,2".to_string(), int(2)), ("2,2".to_string(), int(-2))]
        );
        assert_eq!(report.solved_at_length, 3);
        assert_eq!(report.certified_at_length, 5);
        assert_eq!(report.trials, 20);
        assert!(report.constant_discrepancies.is_empty());
    }

    #[test]
    fn power_sum_degree_three_both_classes() {
        let (f2, _) = power_sum_functional(3, 2).unwrap();
        assert_eq!(
            terms(&f2),
            vec![
                ("1,1,2".to_string(), int(6)),
                ("1,2,2".to_string(), int(-6)),
                ("2,1,2".to_string(), int(-6)),
                ("2,2,2".to_string(), int(6)),
            ]
        );
        let (f1, _) = power_sum_functional(3, 1).unwrap();
        assert_eq!(
            terms(&f1),
            vec![
                ("1,1,1".to_string(), int(6)),
                ("1,2,1".to_string(), int(-6)),
                ("2,1,1".to_string(), int(-6)),
                ("2,2,1".to_string(), int(6)),
            ]
        );
    }

    #[test]
    fn power_sums_evaluate_correctly_on_a_concrete_stream() {
        let stream =
            IncrementStream::from_rows(1, vec![vec![int(1)], vec![int(2)]]).unwrap();
        let (f2, _) = power_sum_functional(2, 2).unwrap();
        assert_eq!(f2.evaluate(&stream.signature(2)).unwrap(), int(5));
        let (f3, _) = power_sum_functional(3, 2).unwrap();
        assert_eq!(f3.evaluate(&stream.signature(3)).unwrap(), int(9));
        let (g3, _) = power_sum_functional(3, 1).unwrap();
        assert_eq!(g3.evaluate(&stream.signature(3)).unwrap(), int(9));
    }

    #[test]
    fn power_sums_match_direct_moments_on_random_streams() {
        let mut rng = SplitMix64::new(402);
        for degree in 1..=3usize {
            for class_letter in [1u8, 2] {
                let (functional, _) = power_sum_functional(degree, class_letter).unwrap();
                for _ in 0..5 {
                    let stream = random_rational_stream(&mut rng, 6, 1);
                    let expected = MomentTarget::PowerSum { degree }
                        .direct_moment(&stream)
                        .unwrap();
                    let actual = functional.evaluate(&stream.signature(degree)).unwrap();
                    assert_eq!(actual, expected, "p={degree} class={class_letter}");
                }
            }
        }
    }

    #[test]
    fn power_sum_rejects_bad_arguments() {
        assert!(matches!(
            power_sum_functional(0, 1),
            Err(Error::InvalidInput { .. })
        ));
        assert!(matches!(
            power_sum_functional(2, 3),
            Err(Error::InvalidInput { .. })
        ));
    }

    #[test]
    fn rewrite_known_words() {
        let (f, report) = rewrite_in_class(&w("2,1"), 2).unwrap();
        assert_eq!(
            terms(&f),
            vec![("1,2".to_string(), int(-1)), ("2,2".to_string(), int(2))]
        );
        assert_eq!(report.solved_at_length, 3);
        assert_eq!(report.certified_at_length, 5);

        let (f, _) = rewrite_in_class(&w("1,1"), 2).unwrap();
        assert_eq!(terms(&f), vec![("2,2".to_string(), int(1))]);

        let (f, _) = rewrite_in_class(&w("1,2"), 1).unwrap();
        assert_eq!(
            terms(&f),
            vec![("1,1".to_string(), int(2)), ("2,1".to_string(), int(-1))]
        );

        let (f, _) = rewrite_in_class(&w("1,1,1"), 2).unwrap();
        assert_eq!(terms(&f), vec![("2,2,2".to_string(), int(1))]);
    }

    #[test]
    fn rewrite_of_a_word_already_in_class_can_stay_put() {
        let (f, _) = rewrite_in_class(&w("2,1"), 1).unwrap();
        assert_eq!(terms(&f), vec![("2,1".to_string(), int(1))]);
    }

    #[test]
    fn rewrite_rejects_bad_words() {
        assert!(matches!(
            rewrite_in_class(&Word::empty(), 2),
            Err(Error::InvalidInput { .. })
        ));
        assert!(matches!(
            rewrite_in_class(&w("1,3"), 2),
            Err(Error::LetterOutOfRange { letter: 3, .. })
        ));
    }

    #[test]
    fn covariance_has_the_two_term_form() {
        let (f, report) = covariance_functional(1, 2, 2).unwrap();
        assert_eq!(
            terms(&f),
            vec![("1,2".to_string(), int(-2)), ("1,4".to_string(), int(2))]
        );
        assert_eq!(report.solved_at_length, 2);
        assert_eq!(report.certified_at_length, 5);
        assert!(report.constant_discrepancies.is_empty());
    }

    #[test]
    fn covariance_evaluates_on_a_single_step() {
        let stream = IncrementStream::from_rows(2, vec![vec![int(1), int(3)]]).unwrap();
        let (f, _) = covariance_functional(1, 2, 2).unwrap();
        assert_eq!(f.evaluate(&stream.signature(2)).unwrap(), int(3));
    }

    #[test]
    fn covariance_with_equal_indices_is_the_squared_sum() {
        let stream =
            IncrementStream::from_rows(1, vec![vec![int(1)], vec![int(2)]]).unwrap();
        let (f, _) = covariance_functional(1, 1, 1).unwrap();
        assert_eq!(f.evaluate(&stream.signature(2)).unwrap(), int(5));
    }

    #[test]
    fn covariance_rejects_out_of_range_coordinates() {
        assert!(matches!(
            covariance_functional(1, 3, 2),
            Err(Error::CoordinateOutOfRange {
                index: 3,
                dimension: 2
            })
        ));
        assert!(matches!(
            covariance_functional(0, 1, 2),
            Err(Error::CoordinateOutOfRange { index: 0, .. })
        ));
    }

    #[test]
    fn third_moment_constant_certifies_to_six() {
        assert_eq!(certified_third_moment_constant().unwrap(), &int(6));
        let entry = third_moment_discrepancy().unwrap();
        assert_eq!(entry.quantity, "third_moment_constant");
        assert_eq!(entry.stated, "6/5");
        assert_eq!(entry.certified, "6");
    }

    #[test]
    fn third_moment_functional_form_and_report() {
        let (f, report) = third_moment_functional(1, 2, 3, 3).unwrap();
        assert_eq!(
            terms(&f),
            vec![
                ("1,2,3".to_string(), int(6)),
                ("1,2,6".to_string(), int(6)),
                ("1,5,6".to_string(), int(-6)),
                ("4,2,6".to_string(), int(-6)),
            ]
        );
        assert_eq!(report.constant_discrepancies.len(), 1);
        assert_eq!(report.constant_discrepancies[0].certified, "6");
    }

    #[test]
    fn third_moment_evaluates_on_a_single_step() {
        let stream =
            IncrementStream::from_rows(3, vec![vec![int(2), int(3), int(5)]]).unwrap();
        let (f, _) = third_moment_functional(1, 2, 3, 3).unwrap();
        assert_eq!(f.evaluate(&stream.signature(3)).unwrap(), int(30));
    }

    #[test]
    fn third_moment_rejects_repeated_indices() {
        assert!(matches!(
            third_moment_functional(1, 1, 2, 3),
            Err(Error::IndicesNotDistinct { .. })
        ));
    }

    #[test]
    fn certification_catches_a_wrong_functional() {
        let mut wrong = WordCombination::new();
        wrong.add_term(w("1,2"), int(1));
        let err = certify_functional(
            &wrong,
            &MomentTarget::PowerSum { degree: 2 },
            1,
            5,
            CERTIFICATION_TRIALS,
        )
        .unwrap_err();
        match err {
            Error::CertificationFailed { length, witness, .. } => {
                assert_eq!(length, 5);
                assert!(witness.starts_with('['));
            }
            other => panic!("expected CertificationFailed, got {other:?}"),
        }
    }

    #[test]
    fn covariance_is_symmetric_in_its_indices() {
        let (f12, _) = covariance_functional(1, 2, 3).unwrap();
        let (f21, _) = covariance_functional(2, 1, 3).unwrap();
        let mut rng = SplitMix64::new(77);
        for _ in 0..5 {
            let stream = random_rational_stream(&mut rng, 4, 3);
            let signature = stream.signature(2);
            assert_eq!(
                f12.evaluate(&signature).unwrap(),
                f21.evaluate(&signature).unwrap()
            );
        }
    }

    #[test]
    fn verify_reports_all_passes_for_a_correct_functional() {
        let (f, _) = power_sum_functional(2, 2).unwrap();
        let report =
            verify_functional(&f, &MomentTarget::PowerSum { degree: 2 }, 1, 25, 8).unwrap();
        assert!(report.all_passed());
        assert_eq!(report.passes, 25);
    }

    #[test]
    fn verify_collects_failures_with_witnesses() {
        let f = WordCombination::word(w("1"));
        let report =
            verify_functional(&f, &MomentTarget::PowerSum { degree: 2 }, 1, 10, 6).unwrap();
        assert!(!report.all_passed());
        assert_eq!(report.passes + report.failures.len(), 10);
        assert!(report.failures[0].witness.starts_with('['));
    }

    #[test]
    fn fit_combination_reports_unreachable_targets() {
        // X^2/2 alone cannot produce the sum of squared increments
        let support = vec![w("1,1")];
        let target = power_sum_target(2, 3);
        match fit_combination(&support, &target, 1, 3) {
            Err(Error::Infeasible) => {}
            other => panic!("expected Infeasible, got {other:?}"),
        }
    }

    #[test]
    fn report_serializes_with_the_wire_keys() {
        let report = FunctionalReport {
            solved_at_length: 3,
            certified_at_length: 5,
            trials: 20,
            constant_discrepancies: vec![],
        };
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["solved_at_L"], 3);
        assert_eq!(json["certified_at_L"], 5);
        assert_eq!(json["trials"], 20);
        assert!(json["paper_constant_discrepancies"].as_array().unwrap().is_empty());
    }
}
