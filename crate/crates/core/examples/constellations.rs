//! Prints every supported signal set with its energy and minimum distance.
//!
//! ```text
//! cargo run --release --example constellations
//! ```

use mdmap::{Constellation, ConstellationKind};

fn min_distance(c: &Constellation) -> f64 {
    let mut best = f64::INFINITY;
    for a in 0..c.len() {
        for b in a + 1..c.len() {
            best = best.min(c.dist2(a, b));
        }
    }
    best.sqrt()
}

fn main() -> mdmap::Result<()> {
    let sets = [
        (ConstellationKind::Psk, 3),
        (ConstellationKind::Optimum8Qam, 3),
        (ConstellationKind::SquareQam, 4),
        (ConstellationKind::CrossQam, 5),
        (ConstellationKind::SquareQam, 6),
        (ConstellationKind::CrossQam, 7),
        (ConstellationKind::SquareQam, 8),
    ];
    println!("{:<8} {:>5} {:>8} {:>8}", "kind", "size", "energy", "d_min");
    for (kind, m) in sets {
        let c = Constellation::new(kind, m)?;
        println!(
            "{:<8} {:>5} {:>8.4} {:>8.4}",
            kind.name(),
            c.len(),
            c.energy(),
            min_distance(&c)
        );
    }

    // Symbol order of 32-QAM as used by the mapping tables, S1 first.
    println!();
    print!("{}", Constellation::cross_qam(5)?.to_csv());

    // Per-symbol energy for 4-D vectors.
    let half = Constellation::square_qam(4)?.scale_for_vector(2)?;
    println!("\n16-QAM scaled for n=2: energy {:.3}", half.energy());
    Ok(())
}
