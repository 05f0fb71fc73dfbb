//! Extrinsic information transfer curves.
//!
//! A priori LLRs are drawn as consistent Gaussians, `L = (2b - 1) s^2 / 2 +
//! s z`, with `s = J^-1(I_A)`. Mutual information of output LLRs is
//! estimated from 64-bin histograms of the LLRs conditioned on the bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::bicmid::{random_bits, RATE};
use super::channel::{noise_variance, transmit, ChannelKind};
use super::code::ConvCode;
use super::demapper::Demapper;
use crate::error::{Error, Result};
use crate::mapping::VectorLabeling;

const H1: f64 = 0.3073;
const H2: f64 = 0.8935;
const H3: f64 = 1.1064;

/// Mutual information between a bit and a consistent Gaussian LLR with
/// standard deviation `sigma` (closed-form approximation).
pub fn j_function(sigma: f64) -> f64 {
    if sigma <= 0.0 {
        return 0.0;
    }
    (1.0 - 2f64.powf(-H1 * sigma.powf(2.0 * H2))).powf(H3)
}

pub fn j_inverse(info: f64) -> f64 {
    if info <= 0.0 {
        return 0.0;
    }
    let info = info.min(1.0 - 1e-12);
    (-(1.0 - info.powf(1.0 / H3)).log2() / H1).powf(1.0 / (2.0 * H2))
}

/// LLR for `bit` with a priori information matching `sigma`.
pub fn gaussian_apriori<R: Rng + ?Sized>(bit: u8, sigma: f64, rng: &mut R) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    let sign = if bit == 1 { 1.0 } else { -1.0 };
    sign * sigma * sigma / 2.0 + sigma * z
}

/// Histogram estimate of `I(B; L)` with 64 bins over the observed LLR range.
pub fn mutual_information(llrs: &[f64], bits: &[u8]) -> f64 {
    const BINS: usize = 64;
    let finite = llrs.iter().filter(|v| v.is_finite());
    let lo = finite.clone().cloned().fold(f64::INFINITY, f64::min);
    let hi = finite.cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi <= lo {
        return 0.0;
    }
    let width = (hi - lo) / BINS as f64;
    let mut hist = [[0u64; BINS]; 2];
    let mut count = [0u64; 2];
    for (&l, &b) in llrs.iter().zip(bits) {
        let l = l.clamp(lo, hi);
        let k = (((l - lo) / width) as usize).min(BINS - 1);
        hist[b as usize][k] += 1;
        count[b as usize] += 1;
    }
    if count[0] == 0 || count[1] == 0 {
        return 0.0;
    }
    let mut info = 0.0;
    for (&h0, &h1) in hist[0].iter().zip(&hist[1]) {
        let p0 = h0 as f64 / count[0] as f64;
        let p1 = h1 as f64 / count[1] as f64;
        for p in [p0, p1] {
            if p > 0.0 {
                info += 0.5 * p * (2.0 * p / (p0 + p1)).log2();
            }
        }
    }
    info.clamp(0.0, 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitSide {
    Demapper,
    Decoder,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExitCurve {
    pub side: ExitSide,
    pub ebn0_db: Option<f64>,
    pub ia: Vec<f64>,
    pub ie: Vec<f64>,
}

impl ExitCurve {
    pub const CSV_HEADER: &'static str = "ia,ie";

    pub fn csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for (a, e) in self.ia.iter().zip(&self.ie) {
            out.push_str(&format!("{a:.6},{e:.6}\n"));
        }
        out
    }

    /// Linear interpolation of `ie` at `ia`.
    pub fn eval(&self, ia: f64) -> f64 {
        let x = &self.ia;
        if ia <= x[0] {
            return self.ie[0];
        }
        for k in 1..x.len() {
            if ia <= x[k] {
                let t = (ia - x[k - 1]) / (x[k] - x[k - 1]);
                return self.ie[k - 1] + t * (self.ie[k] - self.ie[k - 1]);
            }
        }
        *self.ie.last().expect("nonempty curve")
    }
}

/// Evenly spaced grid `0, 1/(points-1), ..` capped just below 1.
pub fn ia_grid(points: usize) -> Vec<f64> {
    (0..points)
        .map(|k| (k as f64 / (points - 1).max(1) as f64).min(0.999))
        .collect()
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty()
        || grid.iter().any(|&v| !(0.0..1.0).contains(&v))
        || grid.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::Config(
            "I_A grid must be strictly increasing within [0, 1)".into(),
        ));
    }
    Ok(())
}

/// Demapper transfer curve from `vectors` random vectors per grid point.
pub fn exit_demapper(
    labeling: &VectorLabeling,
    ebn0_db: f64,
    grid: &[f64],
    vectors: usize,
    channel: ChannelKind,
    seed: u64,
) -> Result<ExitCurve> {
    check_grid(grid)?;
    if vectors < 100 {
        return Err(Error::Config(
            "EXIT estimation needs at least 100 vectors".into(),
        ));
    }
    let w = labeling.width() as usize;
    let n = labeling.n() as usize;
    let n0 = noise_variance(ebn0_db, labeling.width(), RATE);
    let mut demapper = Demapper::new(labeling);
    let mut ie = Vec::with_capacity(grid.len());
    for (g, &ia) in grid.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(g as u64);
        let sigma = j_inverse(ia);
        let mut bits = Vec::with_capacity(vectors * w);
        let mut llrs = vec![0.0; vectors * w];
        let mut apriori = vec![0.0; w];
        for v in 0..vectors {
            let label = rng.random_range(0..labeling.len());
            let own: Vec<u8> = (0..w).map(|k| ((label >> (w - 1 - k)) & 1) as u8).collect();
            let (rx, gains) = transmit(labeling.points(label), n, n0, channel, &mut rng)?;
            for (slot, &b) in apriori.iter_mut().zip(&own) {
                *slot = gaussian_apriori(b, sigma, &mut rng);
            }
            demapper.extrinsic(&rx, gains[0], &apriori, n0, &mut llrs[v * w..(v + 1) * w]);
            bits.extend(own);
        }
        ie.push(mutual_information(&llrs, &bits));
    }
    Ok(ExitCurve {
        side: ExitSide::Demapper,
        ebn0_db: Some(ebn0_db),
        ia: grid.to_vec(),
        ie,
    })
}

/// Decoder transfer curve: coded-bit extrinsic information of the BCJR for
/// Gaussian a priori input, `info_bits` per grid point.
pub fn exit_decoder(grid: &[f64], info_bits: usize, seed: u64) -> Result<ExitCurve> {
    check_grid(grid)?;
    if info_bits < 100 {
        return Err(Error::Config(
            "EXIT estimation needs at least 100 bits".into(),
        ));
    }
    let code = ConvCode::default();
    let mut ie = Vec::with_capacity(grid.len());
    for (g, &ia) in grid.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(g as u64);
        let sigma = j_inverse(ia);
        let info = random_bits(info_bits, &mut rng);
        let coded = code.encode(&info);
        let llrs: Vec<f64> = coded
            .iter()
            .map(|&b| gaussian_apriori(b, sigma, &mut rng))
            .collect();
        let out = code.bcjr(&llrs, info_bits)?;
        ie.push(mutual_information(&out.extrinsic, &coded));
    }
    Ok(ExitCurve {
        side: ExitSide::Decoder,
        ebn0_db: None,
        ia: grid.to_vec(),
        ie,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    /// `(demapper I_A, demapper I_E)` per iteration.
    pub steps: Vec<(f64, f64)>,
    pub open: bool,
}

/// Staircase between the demapper curve and the decoder curve (whose `ia`
/// axis is the demapper output). The tunnel is open when the exchange
/// reaches `target` decoder output.
pub fn trajectory(
    demapper: &ExitCurve,
    decoder: &ExitCurve,
    target: f64,
    max_steps: usize,
) -> Trajectory {
    let mut ia = 0.0;
    let mut steps = Vec::new();
    let mut open = false;
    for _ in 0..max_steps {
        let ie = demapper.eval(ia);
        steps.push((ia, ie));
        let next = decoder.eval(ie);
        if next >= target {
            open = true;
            break;
        }
        if next <= ia + 1e-4 {
            break;
        }
        ia = next;
    }
    Trajectory { steps, open }
}
