//! Harmonic means and cost bound of every published table.
//!
//! ```text
//! cargo run --release --example evaluate_fixtures
//! ```

use std::time::Instant;

use mdmap::fixtures::{fixture, FIXTURES};
use mdmap::metrics::{evaluate, BEFORE_FEEDBACK_LIMIT};

fn main() -> mdmap::Result<()> {
    println!(
        "{:<12} {:>2} {:>10} {:>10} {:>10} {:>8}",
        "table", "n", "phi", "phi_hat", "delta", "secs"
    );
    for (name, _) in FIXTURES {
        let base = fixture(name)?;
        let dims: &[u32] = if base.m() == 3 { &[2, 3] } else { &[2] };
        for &n in dims {
            let mapping = base.with_n(n)?;
            let start = Instant::now();
            let report = evaluate(&mapping, BEFORE_FEEDBACK_LIMIT)?;
            let before = report
                .phi_before
                .map_or_else(|| "-".to_string(), |v| format!("{v:.4}"));
            println!(
                "{:<12} {:>2} {:>10} {:>10.4} {:>10.4} {:>8.2}",
                name,
                n,
                before,
                report.phi_after,
                report.delta,
                start.elapsed().as_secs_f64()
            );
        }
    }
    Ok(())
}
