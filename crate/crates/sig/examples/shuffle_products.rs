//! The shuffle product of words and why it matters: on a signature,
//! multiplying two word functionals pointwise equals applying the shuffle
//! of the words.
//!
//! Run with `cargo run --example shuffle_products`.

use sig::rng::{random_rational_stream, SplitMix64};
use sig::scalar::{int, ratio};
use sig::{shuffle, Word, WordCombination};

fn main() -> Result<(), sig::Error> {
    let u: Word = "1,2".parse()?;
    let v: Word = "2".parse()?;
    let product = shuffle(&u, &v);
    println!("({u}) shuffle ({v}) = {product}");

    // all six interleavings of two distinct two-letter words
    let a: Word = "1,2".parse()?;
    let b: Word = "3,4".parse()?;
    println!("({a}) shuffle ({b}) = {}", shuffle(&a, &b));

    // repeated letters produce multiplicities: (1) shuffle (1) = 2*(1,1)
    let single: Word = "1".parse()?;
    println!("({single}) shuffle ({single}) = {}", shuffle(&single, &single));

    // the identity that makes word combinations an algebra of functionals:
    // evaluate both sides on the signature of a random stream
    let mut rng = SplitMix64::new(7);
    let stream = random_rational_stream(&mut rng, 5, 2);
    let signature = stream.signature(5);

    let f = WordCombination::from_terms([(u.clone(), int(1))]);
    let g = WordCombination::from_terms([(v.clone(), int(1))]);
    let lhs = f.evaluate(&signature)? * g.evaluate(&signature)?;
    let rhs = product.evaluate(&signature)?;
    assert_eq!(lhs, rhs);
    println!("\npi^({u})(S) * pi^({v})(S) = pi^(({u}) shuffle ({v}))(S) = {rhs}");

    // the same identity holds for arbitrary combinations
    let mut f = WordCombination::new();
    f.add_term("1".parse()?, ratio(1, 2));
    f.add_term("2,1".parse()?, int(-3));
    let g_words = shuffle(&"1,1".parse()?, &"2".parse()?);
    let combined = f.shuffle(&g_words);
    let lhs = f.evaluate(&signature)? * g_words.evaluate(&signature)?;
    assert_eq!(lhs, combined.evaluate(&signature)?);
    println!("the identity extends linearly: both sides give {lhs}");
    Ok(())
}
