//! Signature coefficients as exact polynomials in the increments.
//!
//! Every coefficient of a stream signature is a polynomial with rational
//! coefficients in the entries of the stream. This example builds those
//! polynomials symbolically, reads off closed forms, substitutes concrete
//! numbers, and fits a word combination to a polynomial target.
//!
//! Run with `cargo run --example symbolic_signatures`.

use sig::moments::fit_combination;
use sig::rng::{random_rational_stream, SplitMix64};
use sig::scalar::int;
use sig::symbolic::{substitute, symbolic_signature, variable_index, MultivariatePolynomial};
use sig::Word;

fn main() -> Result<(), sig::Error> {
    // Two steps of a scalar stream, embedded with letter 1 leading and
    // letter 2 lagging; the increments are the variables x1 and x2.
    let sym = symbolic_signature(2, 1, 2)?;
    for text in ["1", "2", "1,2", "2,1", "1,1"] {
        let word: Word = text.parse()?;
        println!("pi^({text}) = {}", sym.coeff(&word)?);
    }

    // The area between lead and lag picks out the sum of squares.
    let mut area = sym.coeff(&"1,2".parse()?)?.clone();
    area.add_assign(&sym.coeff(&"2,1".parse()?)?.scale(&int(-1)));
    println!("pi^(1,2) - pi^(2,1) = {area}\n");

    // Substituting concrete increments reproduces the numeric signature.
    let mut rng = SplitMix64::new(7);
    let stream = random_rational_stream(&mut rng, 2, 1);
    assert_eq!(substitute(&sym, &stream)?, stream.signature(2));
    println!("substitution matches the directly computed signature\n");

    // A degree-2 coefficient polynomial touches at most two distinct
    // steps, so matching a degree-2 target on a 3-step stream pins it
    // down for streams of every length.
    let mut target = MultivariatePolynomial::zero();
    for step in 1..=3 {
        target.add_assign(&MultivariatePolynomial::variable_power(
            variable_index(step, 1, 1),
            2,
        ));
    }
    let support: Vec<Word> = ["1,1", "1,2", "2,1", "2,2"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let fitted = fit_combination(&support, &target, 1, 3)?;
    println!("fit of x1^2 + x2^2 + x3^2 on three steps: {fitted}");

    let longer = random_rational_stream(&mut rng, 9, 1);
    let direct = longer
        .rows()
        .iter()
        .fold(int(0), |acc, row| acc + &row[0] * &row[0]);
    assert_eq!(fitted.evaluate(&longer.signature(2))?, direct);
    println!("  still exact on a 9-step stream: {direct}\n");

    // Some targets are simply not linear in the signature: no combination
    // of the depth-1 words sees the first increment alone.
    let first_step = MultivariatePolynomial::variable(variable_index(1, 1, 1));
    let depth_one: Vec<Word> = vec!["1".parse()?, "2".parse()?];
    match fit_combination(&depth_one, &first_step, 1, 3) {
        Err(sig::Error::Infeasible) => {
            println!("x1 alone is infeasible over the depth-1 words, as it should be");
        }
        other => panic!("expected an infeasible fit, got {other:?}"),
    }
    Ok(())
}
