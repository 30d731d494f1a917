//! Streams, the lead-lag embedding, and truncated signatures.
//!
//! Run with `cargo run --example signature_basics`.

use sig::scalar::{int, ratio, Rational};
use sig::{IncrementStream, TruncatedTensor, Word};

fn row(values: &[Rational]) -> String {
    let parts: Vec<String> = values.iter().map(Rational::to_string).collect();
    format!("({})", parts.join(", "))
}

fn main() -> Result<(), sig::Error> {
    // a one-dimensional stream of three increments, kept exact
    let stream = IncrementStream::from_rows(
        1,
        vec![vec![int(1)], vec![int(2)], vec![ratio(-1, 2)]],
    )?;
    let rows: Vec<String> = stream.rows().iter().map(|r| row(r)).collect();
    println!("stream increments: {}", rows.join(" "));
    let sums: Vec<String> = stream.partial_sums().iter().map(|r| row(r)).collect();
    println!("partial sums:      {}\n", sums.join(" "));

    // the lead-lag path doubles the dimension: letter 1 is the lead copy,
    // letter 2 the lag copy, and each increment becomes two segments
    let path = stream.lead_lag();
    println!("lead-lag vertices ({}-dimensional):", path.dimension());
    for v in path.vertices() {
        println!("  {}", row(v));
    }

    // the signature truncated at depth 3: one rational per word of length
    // <= 3 over the two letters
    let signature = stream.signature(3);
    println!("\nsignature coefficients up to depth 3:");
    for (word, coeff) in signature.iter() {
        println!("  ({word}) -> {coeff}");
    }

    // computing it through the path gives the same tensor
    assert_eq!(signature, path.signature(3));

    // Chen's identity: concatenating streams multiplies signatures
    let head = stream.prefix(2);
    let tail = IncrementStream::from_rows(1, vec![vec![ratio(-1, 2)]])?;
    let product = head.signature(3).product(&tail.signature(3))?;
    assert_eq!(product, signature);
    println!("\nChen: signature(head + tail) = signature(head) * signature(tail)");

    // traversing a path backwards inverts its signature
    let forward = path.signature(3);
    let backward = path.reversed().signature(3);
    assert_eq!(
        forward.product(&backward)?,
        TruncatedTensor::one(2, 3)
    );
    println!("reversal: S(path) * S(path reversed) = 1");

    // a single coefficient on demand
    let word: Word = "1,2".parse()?;
    println!("\ncoefficient of (1,2): {}", signature.coeff(&word)?);
    Ok(())
}
