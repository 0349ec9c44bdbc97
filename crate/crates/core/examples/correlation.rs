//! Pearson correlation with its t-test, a least-squares fit and the 95%
//! band around it.

use skintone::stats::CorrelationResult;
use skintone::{ols_fit, pearson};

fn main() -> skintone::Result<()> {
    // significance of a correlation reported to two decimals
    for (r, n) in [(-0.25, 237), (-0.28, 50), (-0.09, 1_000_000)] {
        println!("r = {r} over n = {n}: {}", CorrelationResult::from_r(r, n)?);
    }

    let tone = [2.1, 2.4, 2.2, 2.9, 3.1, 2.6, 3.4, 2.0, 2.8, 3.0];
    let sentiment = [0.62, 0.55, 0.60, 0.41, 0.44, 0.50, 0.35, 0.58, 0.49, 0.40];
    let corr = pearson(&tone, &sentiment)?;
    let fit = ols_fit(&tone, &sentiment)?;
    println!("\n{corr}");
    println!("sentiment = {:.3} + {:.3} * tone", fit.intercept, fit.slope);
    for x in [2.0, 2.7, 3.4] {
        let (lo, hi) = fit.confidence_band(x, 0.95)?;
        println!("  at tone {x}: {:.3} in [{lo:.3}, {hi:.3}]", fit.predict(x));
    }
    Ok(())
}
