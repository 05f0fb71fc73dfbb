//! Error floor with genie feedback: every bit is detected with all other
//! bits of its vector known. Compares the published 4-D 16-QAM mapping, a
//! single round of vector-level switching (close in harmonic mean to the
//! published switching baseline) and a random mapping.
//!
//! ```text
//! cargo run --release --example genie_floor
//! ```

use mdmap::fixtures::fixture;
use mdmap::metrics::phi_after;
use mdmap::optimizer::md_bsa;
use mdmap::sim::{genie_floor, SimConfig};
use mdmap::{MdMapping, VectorLabeling};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> mdmap::Result<()> {
    let proposed = fixture("16qam_4d")?;
    let scaled = proposed.constellation().clone();
    let mut initial: Vec<usize> = (0..256).collect();
    initial.shuffle(&mut ChaCha8Rng::seed_from_u64(2));
    let switched = md_bsa(4, 2, &scaled, initial, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let random = MdMapping::random(&proposed.parts().constellation, 2, &mut rng)?.labeling()?;
    let labelings: [(&str, VectorLabeling); 3] = [
        ("proposed", proposed.labeling()?),
        ("switched", switched),
        ("random", random),
    ];
    for (name, labeling) in labelings {
        let phi = phi_after(&labeling);
        let mut cfg = SimConfig::new(labeling, vec![0.0, 1.0, 2.0]);
        cfg.interleaver_len = 2400;
        cfg.min_bit_errors = 400;
        cfg.max_frames = 1000;
        let points = genie_floor(&cfg)?;
        let bers: Vec<String> = points.iter().map(|p| format!("{:.2e}", p.ber)).collect();
        println!(
            "{name:<9} phi_hat {phi:.4}  BER at 0/1/2 dB: {}",
            bers.join(" ")
        );
    }
    Ok(())
}
