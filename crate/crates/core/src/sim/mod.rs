//! BICM-ID link simulation: convolutional code, interleaver, fading
//! channel, soft demapper, iterative receiver and EXIT analysis.

mod bicmid;
mod channel;
mod code;
mod demapper;
mod exit;
mod interleaver;

pub use bicmid::{
    ber_csv, genie_floor, random_bits, round_interleaver_len, run_bicmid, BerPoint, SimConfig,
    RATE, SIM_LABEL_LIMIT,
};
pub use channel::{draw_gain, draw_noise, noise_variance, transmit, ChannelKind};
pub use code::{BcjrOutput, ConvCode, MEMORY};
pub use demapper::Demapper;
pub use exit::{
    exit_decoder, exit_demapper, gaussian_apriori, ia_grid, j_function, j_inverse,
    mutual_information, trajectory, ExitCurve, ExitSide, Trajectory,
};
pub use interleaver::Interleaver;

use crate::error::{Error, Result};
use crate::mapping::VectorLabeling;

/// Groups bits into labels of the labeling's width and returns the
/// flattened symbol vectors.
pub fn modulate(labeling: &VectorLabeling, bits: &[u8]) -> Result<Vec<num_complex::Complex64>> {
    let w = labeling.width() as usize;
    if !bits.len().is_multiple_of(w) {
        return Err(Error::Length {
            expected: bits.len().div_ceil(w) * w,
            got: bits.len(),
        });
    }
    let mut out = Vec::with_capacity(bits.len() / w * labeling.n() as usize);
    for group in bits.chunks(w) {
        let label = group
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | (b & 1) as usize);
        out.extend_from_slice(labeling.points(label));
    }
    Ok(out)
}
