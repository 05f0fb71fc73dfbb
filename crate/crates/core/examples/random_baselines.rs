//! Harmonic means of seeded random 4-D 16-QAM mappings, both with the
//! four-way structure and as unstructured label-to-vector bijections.

use mdmap::metrics::{phi_after, phi_before};
use mdmap::{Constellation, MdMapping, VectorLabeling};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> mdmap::Result<()> {
    let qam = Constellation::square_qam(4)?;
    let scaled = qam.scale_for_vector(2)?;
    println!("seed  structured(phi, phi_hat)  unstructured(phi, phi_hat)");
    for seed in 0..8 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let md = MdMapping::random(&qam, 2, &mut rng)?.labeling()?;
        let flat = VectorLabeling::random(4, 2, &scaled, &mut rng)?;
        println!(
            "{seed:>4}  {:.4} {:.4}             {:.4} {:.4}",
            phi_before(&md)?,
            phi_after(&md),
            phi_before(&flat)?,
            phi_after(&flat)
        );
    }
    Ok(())
}
