//! Recovering polynomial moments of the increments from the signature
//! alone: power sums, covariances, and third moments, each constructed by
//! an exact symbolic solve and re-certified on random rational streams.
//!
//! Run with `cargo run --example moment_recovery`.

use sig::moments::{
    covariance_functional, power_sum_functional, rewrite_in_class, third_moment_functional,
    verify_functional, MomentTarget,
};
use sig::rng::{random_rational_stream, SplitMix64};

fn main() -> Result<(), sig::Error> {
    // sum of cubes from words ending in the lag letter
    let (cubes, report) = power_sum_functional(3, 2)?;
    println!("sum of cubes = {cubes}");
    println!(
        "  solved exactly at length {}, re-certified at length {} on {} random streams",
        report.solved_at_length, report.certified_at_length, report.trials
    );

    let mut rng = SplitMix64::new(12);
    let stream = random_rational_stream(&mut rng, 6, 1);
    let value = cubes.evaluate(&stream.signature(3))?;
    let direct = MomentTarget::PowerSum { degree: 3 }.direct_moment(&stream)?;
    assert_eq!(value, direct);
    println!("  on a random length-6 stream: {value} (matches the direct sum)\n");

    // the same sum of cubes from words ending in the lead letter
    let (cubes_lead, _) = power_sum_functional(3, 1)?;
    assert_eq!(cubes_lead.evaluate(&stream.signature(3))?, direct);
    println!("dual class:   {cubes_lead}\n");

    // covariance of two coordinates of a 3-dimensional stream
    let (covariance, _) = covariance_functional(1, 3, 3)?;
    println!("sum of x1*x3 = {covariance}");
    let stream3 = random_rational_stream(&mut rng, 5, 3);
    let value = covariance.evaluate(&stream3.signature(2))?;
    let direct = MomentTarget::Covariance { i1: 1, i2: 3 }.direct_moment(&stream3)?;
    assert_eq!(value, direct);
    println!("  on a random 3-dimensional stream: {value}\n");

    // third mixed moment; the report records that the constant usually
    // quoted for this bracket differs from the certified one
    let (third, report) = third_moment_functional(1, 2, 3, 3)?;
    println!("sum of x1*x2*x3 = {third}");
    for d in &report.constant_discrepancies {
        println!(
            "  discrepancy in {}: usually quoted {}, certified {}",
            d.quantity, d.stated, d.certified
        );
    }
    let value = third.evaluate(&stream3.signature(3))?;
    let direct = MomentTarget::ThirdMoment { i1: 1, i2: 2, i3: 3 }.direct_moment(&stream3)?;
    assert_eq!(value, direct);
    println!("  on the same stream: {value}\n");

    // any word over the lead-lag letters rewrites into either class
    let word = "2,1".parse()?;
    let (rewritten, _) = rewrite_in_class(&word, 2)?;
    println!("pi^(2,1) = {rewritten} on every lead-lag signature\n");

    // verification is data, not doctrine: check a functional against a
    // target on fresh random streams and look at the failures
    let report = verify_functional(
        &cubes,
        &MomentTarget::PowerSum { degree: 3 },
        1,
        50,
        12,
    )?;
    println!(
        "verify sum-of-cubes on 50 streams of length <= 12: {}/{} passed",
        report.passes, report.trials
    );

    let (squares, _) = power_sum_functional(2, 2)?;
    let wrong = verify_functional(
        &squares,
        &MomentTarget::PowerSum { degree: 3 },
        1,
        10,
        6,
    )?;
    println!(
        "verify sum-of-squares against sum of cubes: {}/{} passed; first witness: {}",
        wrong.passes,
        wrong.trials,
        wrong.failures[0].witness
    );
    Ok(())
}
