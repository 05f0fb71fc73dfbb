//! EXIT curves of the demapper for the published and a random 4-D 16-QAM
//! mapping, the decoder curve of the (13,15) code, and the Eb/N0 at which
//! the tunnel between them first opens.
//!
//! ```text
//! cargo run --release --example exit_chart
//! ```

use mdmap::fixtures::fixture;
use mdmap::sim::{exit_decoder, exit_demapper, ia_grid, trajectory, ChannelKind};
use mdmap::VectorLabeling;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> mdmap::Result<()> {
    let grid = ia_grid(11);
    let decoder = exit_decoder(&grid, 20_000, 5)?;
    print!("decoder\n{}", decoder.csv());

    let proposed = fixture("16qam_4d")?;
    let random = VectorLabeling::random(
        4,
        2,
        proposed.constellation(),
        &mut ChaCha8Rng::seed_from_u64(7),
    )?;
    for (name, labeling) in [("proposed", proposed.labeling()?), ("random", random)] {
        let curve = exit_demapper(&labeling, 6.0, &grid, 4000, ChannelKind::Rayleigh, 5)?;
        print!("{name} demapper at 6 dB\n{}", curve.csv());
        let opening = (0..=24).map(|k| 2.0 + 0.5 * k as f64).find(|&snr| {
            exit_demapper(&labeling, snr, &grid, 4000, ChannelKind::Rayleigh, 5)
                .map(|c| trajectory(&c, &decoder, 0.99, 200).open)
                .unwrap_or(false)
        });
        match opening {
            Some(snr) => println!("{name}: tunnel open from {snr:.1} dB\n"),
            None => println!("{name}: tunnel closed up to 14 dB\n"),
        }
    }
    Ok(())
}
