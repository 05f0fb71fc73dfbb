use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ChannelKind {
    /// One real Rayleigh gain per vector with `E[h^2] = 1`, known at the receiver.
    #[default]
    Rayleigh,
    Awgn,
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelKind::Rayleigh => "rayleigh",
            ChannelKind::Awgn => "awgn",
        })
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rayleigh" => Ok(ChannelKind::Rayleigh),
            "awgn" => Ok(ChannelKind::Awgn),
            other => Err(Error::Config(format!("unknown channel `{other}`"))),
        }
    }
}

/// Complex noise variance for a given `Eb/N0` when a vector of `bits`
/// coded bits has unit energy and the code rate is `rate`:
/// `Eb = 1 / (bits * rate)` and `N0 = Eb / 10^(Eb/N0 / 10)`.
pub fn noise_variance(ebn0_db: f64, bits_per_vector: u32, rate: f64) -> f64 {
    1.0 / (bits_per_vector as f64 * rate * 10f64.powf(ebn0_db / 10.0))
}

/// Draws one gain: `|CN(0,1)|` for Rayleigh, 1 for AWGN.
pub fn draw_gain<R: Rng + ?Sized>(kind: ChannelKind, rng: &mut R) -> f64 {
    match kind {
        ChannelKind::Awgn => 1.0,
        ChannelKind::Rayleigh => {
            let a: f64 = rng.sample(StandardNormal);
            let b: f64 = rng.sample(StandardNormal);
            ((a * a + b * b) / 2.0).sqrt()
        }
    }
}

/// Circular complex Gaussian sample with variance `n0`.
pub fn draw_noise<R: Rng + ?Sized>(n0: f64, rng: &mut R) -> Complex64 {
    let s = (n0 / 2.0).sqrt();
    let a: f64 = rng.sample(StandardNormal);
    let b: f64 = rng.sample(StandardNormal);
    Complex64::new(s * a, s * b)
}

/// Passes vectors of `n` symbols (flattened) through the channel. Returns
/// the received symbols and one gain per vector.
pub fn transmit<R: Rng + ?Sized>(
    symbols: &[Complex64],
    n: usize,
    n0: f64,
    kind: ChannelKind,
    rng: &mut R,
) -> Result<(Vec<Complex64>, Vec<f64>)> {
    if n == 0 || !symbols.len().is_multiple_of(n) {
        return Err(Error::Length {
            expected: n.max(1) * (symbols.len() / n.max(1)),
            got: symbols.len(),
        });
    }
    let mut received = Vec::with_capacity(symbols.len());
    let mut gains = Vec::with_capacity(symbols.len() / n);
    for vector in symbols.chunks(n) {
        let h = draw_gain(kind, rng);
        gains.push(h);
        for &x in vector {
            let noise = if n0 > 0.0 {
                draw_noise(n0, rng)
            } else {
                Complex64::new(0.0, 0.0)
            };
            received.push(x * h + noise);
        }
    }
    Ok((received, gains))
}
