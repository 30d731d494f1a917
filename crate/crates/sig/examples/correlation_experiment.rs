//! Estimating the correlation of a two-dimensional random walk from its
//! signature features by ordinary least squares, against the empirical
//! Pearson coefficient of the same draws as a benchmark.
//!
//! Run with `cargo run --release --example correlation_experiment`.

use sig::experiments::{run_correlation_experiment, ExperimentConfig};

fn main() -> Result<(), sig::Error> {
    // Smaller than the command-line defaults so the example runs in a
    // few seconds; `sig experiment correlation` uses 200 samples of 120
    // steps each.
    let mut config = ExperimentConfig::correlation_defaults(11);
    config.sample_count = 120;
    config.stream_length = 60;

    let (report, rows) = run_correlation_experiment(&config)?;
    println!(
        "{} walks of {} steps, correlation drawn uniformly from [0, 1]",
        config.sample_count, config.stream_length
    );
    println!(
        "{} signature features per walk, {} train / {} test",
        report.feature_count, report.train_samples, report.test_samples
    );
    println!("regression mse  train {:.5}  test {:.5}", report.regression_train_mse, report.regression_test_mse);
    println!("benchmark mse   test {:.5}", report.benchmark_test_mse);
    if let Some(err) = report.covariance_recovery_max_rel_error {
        println!("covariance functional vs direct product sums: max rel err {err:.3e}");
    }

    println!("\nfirst rows (true / regression / empirical):");
    for row in rows.iter().take(5) {
        println!(
            "  sample {:3}  {:+.4}  {:+.4}  {:+.4}",
            row.sample_id, row.true_value, row.predicted_value, row.benchmark_value
        );
    }

    // Ninety training rows spread thin over 85 features; truncating at
    // depth 2 leaves 21 and edges out the empirical estimator.
    let mut shallow = config.clone();
    shallow.truncation_depth = 2;
    let (depth2, _) = run_correlation_experiment(&shallow)?;
    println!(
        "\ndepth 2 instead ({} features): test mse {:.5}",
        depth2.feature_count, depth2.regression_test_mse
    );

    // Pinning the true correlation makes the target constant and the
    // residual collapses to numerical noise.
    let mut pinned = config.clone();
    pinned.fixed_rho = Some(0.6);
    let (pinned_report, _) = run_correlation_experiment(&pinned)?;
    println!(
        "true correlation pinned at 0.6: test mse {:.2e}",
        pinned_report.regression_test_mse
    );
    Ok(())
}
