//! Monte-Carlo BER of the iterative receiver.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::channel::{noise_variance, transmit, ChannelKind};
use super::code::ConvCode;
use super::demapper::Demapper;
use super::interleaver::Interleaver;
use crate::error::{Error, Result};
use crate::mapping::VectorLabeling;

/// Code rate of the outer code.
pub const RATE: f64 = 0.5;

/// Default limit on label bits for simulation; demapping cost grows as `2^(mN)`.
pub const SIM_LABEL_LIMIT: u32 = 14;

/// Largest per-frame table of channel metrics kept across iterations.
const CHANNEL_CACHE_LIMIT: usize = 1 << 22;

#[derive(Clone, Debug)]
pub struct SimConfig {
    pub labeling: VectorLabeling,
    pub ebn0_db: Vec<f64>,
    /// Coded bits per frame, tail included.
    pub interleaver_len: usize,
    pub iterations: usize,
    pub min_bit_errors: u64,
    pub max_frames: u64,
    pub channel: ChannelKind,
    pub seed: u64,
    pub label_limit: u32,
}

impl SimConfig {
    /// Defaults: about 10000 coded bits, 7 iterations, Rayleigh fading,
    /// stop at 300 bit errors or 2000 frames.
    pub fn new(labeling: VectorLabeling, ebn0_db: Vec<f64>) -> Self {
        let len = round_interleaver_len(10_000, labeling.width());
        Self {
            labeling,
            ebn0_db,
            interleaver_len: len,
            iterations: 7,
            min_bit_errors: 300,
            max_frames: 2000,
            channel: ChannelKind::Rayleigh,
            seed: 0,
            label_limit: SIM_LABEL_LIMIT,
        }
    }

    pub fn info_len(&self) -> usize {
        self.interleaver_len / 2 - super::code::MEMORY
    }

    pub fn validate(&self) -> Result<()> {
        let w = self.labeling.width();
        if w > self.label_limit {
            return Err(Error::Guard {
                what: "simulation demapper",
                bits: w,
                limit: self.label_limit,
            });
        }
        if !self.interleaver_len.is_multiple_of(w as usize)
            || !self.interleaver_len.is_multiple_of(2)
        {
            return Err(Error::Config(format!(
                "interleaver length {} must be even and divisible by {w}",
                self.interleaver_len
            )));
        }
        if self.interleaver_len < 2 * (super::code::MEMORY + 1) {
            return Err(Error::Config("interleaver too short".into()));
        }
        if self.iterations == 0 || self.max_frames == 0 {
            return Err(Error::Config(
                "iterations and max_frames must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Nearest length to `target` that is even and divisible by `width`.
pub fn round_interleaver_len(target: usize, width: u32) -> usize {
    let w = width as usize;
    let step = if w.is_multiple_of(2) { w } else { 2 * w };
    ((target + step / 2) / step).max(1) * step
}

#[derive(Clone, Debug, PartialEq)]
pub struct BerPoint {
    pub ebn0_db: f64,
    pub ber: f64,
    pub frames: u64,
    pub bit_errors: u64,
    pub info_bits_per_frame: usize,
    /// Information bit errors after each iteration (the last one is `bit_errors`).
    pub errors_by_iteration: Vec<u64>,
}

impl BerPoint {
    pub const CSV_HEADER: &'static str = "ebn0_db,ber,frames,bit_errors";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:e},{},{}",
            self.ebn0_db, self.ber, self.frames, self.bit_errors
        )
    }

    pub fn total_bits(&self) -> u64 {
        self.frames * self.info_bits_per_frame as u64
    }

    /// BER after iteration `i` (0-based).
    pub fn ber_after(&self, i: usize) -> f64 {
        self.errors_by_iteration[i] as f64 / self.total_bits() as f64
    }
}

pub fn ber_csv(points: &[BerPoint]) -> String {
    let mut out = String::from(BerPoint::CSV_HEADER);
    out.push('\n');
    for p in points {
        out.push_str(&p.csv_row());
        out.push('\n');
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Receiver {
    Iterative,
    Genie,
}

struct Frame {
    errors: Vec<u64>,
}

fn frame_rng(seed: u64, point: usize, frame: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((point as u64) << 40) | frame);
    rng
}

fn run_frame(
    cfg: &SimConfig,
    code: &ConvCode,
    interleaver: &Interleaver,
    n0: f64,
    receiver: Receiver,
    rng: &mut ChaCha8Rng,
) -> Frame {
    let labeling = &cfg.labeling;
    let w = labeling.width() as usize;
    let n = labeling.n() as usize;
    let info_len = cfg.info_len();
    let info = random_bits(info_len, rng);
    let coded = code.encode(&info);
    let bits = interleaver.interleave(&coded).expect("length matches");
    let labels: Vec<usize> = bits
        .chunks(w)
        .map(|g| g.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize))
        .collect();
    let mut tx = Vec::with_capacity(labels.len() * n);
    for &l in &labels {
        tx.extend_from_slice(labeling.points(l));
    }
    let (rx, gains) = transmit(&tx, n, n0, cfg.channel, rng).expect("whole vectors");

    let mut demapper = Demapper::new(labeling);
    let vectors = labels.len();
    // channel metrics do not change across iterations; keep them when small
    let cached =
        matches!(receiver, Receiver::Iterative) && vectors * labeling.len() <= CHANNEL_CACHE_LIMIT;
    let mut channel = Vec::new();
    if cached {
        channel = vec![0.0; vectors * labeling.len()];
        for ((y, &h), slot) in rx
            .chunks(n)
            .zip(&gains)
            .zip(channel.chunks_mut(labeling.len()))
        {
            demapper.channel_metrics(y, h, n0, slot);
        }
    }
    let mut apriori = vec![0.0; bits.len()];
    let mut channel_llrs = vec![0.0; bits.len()];
    let rounds = match receiver {
        Receiver::Iterative => cfg.iterations,
        Receiver::Genie => 1,
    };
    let mut errors = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        for (v, ((y, &h), out)) in rx
            .chunks(n)
            .zip(&gains)
            .zip(channel_llrs.chunks_mut(w))
            .enumerate()
        {
            let prior = &apriori[v * w..(v + 1) * w];
            match receiver {
                Receiver::Iterative if cached => {
                    let size = labeling.len();
                    demapper.extrinsic_from(&channel[v * size..(v + 1) * size], prior, out)
                }
                Receiver::Iterative => demapper.extrinsic(y, h, prior, n0, out),
                Receiver::Genie => demapper.genie(y, h, labels[v], n0, out),
            }
        }
        let decoder_in = interleaver
            .deinterleave(&channel_llrs)
            .expect("length matches");
        let dec = code.bcjr(&decoder_in, info_len).expect("length matches");
        errors.push(
            dec.decisions
                .iter()
                .zip(&info)
                .filter(|(a, b)| a != b)
                .count() as u64,
        );
        apriori = interleaver
            .interleave(&dec.extrinsic)
            .expect("length matches");
    }
    Frame { errors }
}

fn run(cfg: &SimConfig, receiver: Receiver) -> Result<Vec<BerPoint>> {
    cfg.validate()?;
    let code = ConvCode::default();
    let interleaver = Interleaver::new(cfg.interleaver_len, cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
    let batch = (rayon::current_num_threads() * 2).max(1) as u64;
    let rounds = match receiver {
        Receiver::Iterative => cfg.iterations,
        Receiver::Genie => 1,
    };
    let mut points = Vec::with_capacity(cfg.ebn0_db.len());
    for (p, &ebn0) in cfg.ebn0_db.iter().enumerate() {
        let n0 = noise_variance(ebn0, cfg.labeling.width(), RATE);
        let mut errors = vec![0u64; rounds];
        let mut frames = 0u64;
        'outer: while frames < cfg.max_frames {
            let end = (frames + batch).min(cfg.max_frames);
            let results: Vec<Frame> = (frames..end)
                .into_par_iter()
                .map(|f| {
                    let mut rng = frame_rng(cfg.seed, p, f);
                    run_frame(cfg, &code, &interleaver, n0, receiver, &mut rng)
                })
                .collect();
            // frames are accounted in index order so the stopping point
            // does not depend on the number of workers
            for frame in results {
                frames += 1;
                for (acc, e) in errors.iter_mut().zip(&frame.errors) {
                    *acc += e;
                }
                if errors[rounds - 1] >= cfg.min_bit_errors {
                    break 'outer;
                }
            }
        }
        let info_bits = cfg.info_len();
        let bit_errors = errors[rounds - 1];
        points.push(BerPoint {
            ebn0_db: ebn0,
            ber: bit_errors as f64 / (frames * info_bits as u64) as f64,
            frames,
            bit_errors,
            info_bits_per_frame: info_bits,
            errors_by_iteration: errors,
        });
    }
    Ok(points)
}

/// BER of the iterative receiver after the configured number of iterations.
pub fn run_bicmid(cfg: &SimConfig) -> Result<Vec<BerPoint>> {
    run(cfg, Receiver::Iterative)
}

/// BER with genie feedback: each bit is detected with every other bit of
/// its vector known, followed by one decoding pass.
pub fn genie_floor(cfg: &SimConfig) -> Result<Vec<BerPoint>> {
    run(cfg, Receiver::Genie)
}

/// Draws random bits.
pub fn random_bits<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<u8> {
    (0..len).map(|_| rng.random::<bool>() as u8).collect()
}
