//! What the lead-lag embedding encodes: the area between the lead and lag
//! copies of a coordinate picks up sums of squares, which a plain
//! piecewise-linear interpolation of the same data cannot see.
//!
//! Run with `cargo run --example lead_lag_paths`.

use sig::scalar::{int, Rational};
use sig::{IncrementStream, PiecewiseLinearPath, Word};

fn main() -> Result<(), sig::Error> {
    let xs = [3i64, -1, 2, 2];
    let stream = IncrementStream::from_rows(1, xs.iter().map(|&x| vec![int(x)]).collect())?;

    // the lead coordinate jumps first, the lag coordinate follows
    let path = stream.lead_lag();
    println!("increments {xs:?} embed as {} vertices in 2d:", path.vertices().len());
    for v in path.vertices() {
        println!("  ({}, {})", v[0], v[1]);
    }

    // both letters see the same endpoint...
    let signature = stream.signature(2);
    let lead: Word = "1".parse()?;
    let lag: Word = "2".parse()?;
    let total: i64 = xs.iter().sum();
    assert_eq!(signature.coeff(&lead)?, &int(total));
    assert_eq!(signature.coeff(&lag)?, &int(total));
    println!("\nboth copies end at the total increment {total}");

    // ...but the antisymmetric area between them is the sum of squares
    let sum_of_squares: i64 = xs.iter().map(|x| x * x).sum();
    let area = signature.coeff(&"1,2".parse()?)?.clone()
        - signature.coeff(&"2,1".parse()?)?.clone();
    assert_eq!(area, int(sum_of_squares));
    println!("pi^(1,2) - pi^(2,1) = {area} = sum of squared increments");

    // a plain linear interpolation of the same partial sums has no such
    // second channel: its signature is the exponential of the total and
    // every antisymmetric part vanishes
    let flat_points: Vec<Vec<Rational>> = stream
        .partial_sums()
        .iter()
        .map(|p| vec![p[0].clone(), p[0].clone()])
        .collect();
    let flat = PiecewiseLinearPath::new(2, flat_points)?.signature(2);
    let flat_area = flat.coeff(&"1,2".parse()?)?.clone()
        - flat.coeff(&"2,1".parse()?)?.clone();
    assert_eq!(flat_area, int(0));
    println!("running both coordinates through the same interpolation leaves zero area");
    Ok(())
}
