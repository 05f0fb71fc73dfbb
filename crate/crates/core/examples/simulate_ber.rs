//! BER of the iterative receiver for the published 4-D 16-QAM mapping and
//! a seeded random mapping, Rayleigh fading, 7 iterations.
//!
//! ```text
//! cargo run --release --example simulate_ber [frames]
//! ```

use mdmap::fixtures::fixture;
use mdmap::sim::{run_bicmid, SimConfig};
use mdmap::{MdMapping, VectorLabeling};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> mdmap::Result<()> {
    let frames: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(100);
    let proposed = fixture("16qam_4d")?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let structured = MdMapping::random(&proposed.parts().constellation, 2, &mut rng)?.labeling()?;
    let unstructured = VectorLabeling::random(4, 2, proposed.constellation(), &mut rng)?;
    let grid: Vec<f64> = (0..=8).map(|k| 5.0 + 0.5 * k as f64).collect();
    for (name, labeling) in [
        ("proposed", proposed.labeling()?),
        ("random four-way", structured),
        ("random bijection", unstructured),
    ] {
        let mut cfg = SimConfig::new(labeling, grid.clone());
        cfg.interleaver_len = 2400;
        cfg.min_bit_errors = 200;
        cfg.max_frames = frames;
        cfg.seed = 1;
        println!("{name}");
        for p in run_bicmid(&cfg)? {
            println!(
                "  {:>5.1} dB  BER {:.3e}  ({} errors / {} frames)",
                p.ebn0_db, p.ber, p.bit_errors, p.frames
            );
        }
    }
    Ok(())
}
