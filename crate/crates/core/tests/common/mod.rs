//! Independent oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use mdmap::fixtures::fixture;
use mdmap::optimizer::{IncrementalCosts, SwitchCost};
use mdmap::sim::{draw_gain, transmit, ChannelKind, ConvCode, Demapper, Interleaver, MEMORY};
use mdmap::{MdMapping, VectorLabeling};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn bits_of(value: usize, width: usize) -> Vec<u8> {
    (0..width)
        .map(|k| ((value >> (width - 1 - k)) & 1) as u8)
        .collect()
}

pub fn lse(values: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = values.collect();
    let top = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    top + v.iter().map(|x| (x - top).exp()).sum::<f64>().ln()
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

/// a^(l) and a^(r): count even labels and flips landing on (alpha, beta) in
/// the first or second chunk.
pub fn enumerate_coefficients(m: u32, n: u32, chunk: u32) -> Vec<Vec<u64>> {
    let size = 1usize << m;
    let w = m * n;
    let shift = m * (n - 1 - chunk);
    let mut a = vec![vec![0u64; size]; size];
    for l in 0u64..1 << w {
        if l.count_ones() % 2 != 0 {
            continue;
        }
        for i in 0..w {
            let f = l ^ (1 << i);
            let alpha = ((l >> shift) as usize) & (size - 1);
            let beta = ((f >> shift) as usize) & (size - 1);
            a[alpha][beta] += 1;
        }
    }
    a
}

/// Psi'_l and Psi'_r summed over every even label and single-bit flip.
pub fn enumerated_psi(mapping: &MdMapping) -> (f64, f64) {
    let (m, n) = (mapping.m(), mapping.n());
    let c = mapping.constellation();
    let size = 1u64 << m;
    let w = m * n;
    let (mut left, mut right) = (0.0, 0.0);
    for l in 0u64..1 << w {
        if l.count_ones() % 2 != 0 {
            continue;
        }
        for i in 0..w {
            let f = l ^ (1 << i);
            let chunk = |v: u64, j: u32| ((v >> (m * (n - 1 - j))) & (size - 1)) as usize;
            let x = mapping.lambda_el().symbol(chunk(l, 0));
            let y = mapping.lambda_ol().symbol(chunk(f, 0));
            left += 1.0 / c.dist2(x, y);
            for j in 1..n {
                let x = mapping.lambda_er().symbol(chunk(l, j));
                let y = mapping.lambda_or().symbol(chunk(f, j));
                right += 1.0 / c.dist2(x, y);
            }
        }
    }
    (left, right)
}

/// Applies `switches` random exchanges and compares the cached costs with a
/// fresh evaluation after each one. Returns the first mismatch.
pub fn check_incremental<C: SwitchCost>(
    oracle: &C,
    seed: u64,
    switches: usize,
) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = oracle.len();
    let mut labels: Vec<usize> = (0..len).collect();
    labels.shuffle(&mut rng);
    let mut state = IncrementalCosts::new(oracle, labels);
    for step in 0..switches {
        let a = rng.random_range(0..len);
        let b = rng.random_range(0..len);
        let before = state.total();
        let predicted = state.switch_delta(a, b);
        state.switch(a, b);
        if state.costs() != state.recomputed().as_slice() {
            return Err(format!("costs differ after switch {step} ({a}, {b})"));
        }
        let actual = state.total() - before;
        if predicted.is_finite()
            && actual.is_finite()
            && (predicted - actual).abs() > 1e-9 * before.abs().max(state.total().abs()).max(1.0)
        {
            return Err(format!("delta {predicted} vs {actual} at switch {step}"));
        }
    }
    Ok(())
}

/// Information bits and the codeword they encode to.
type Codeword = (Vec<u8>, Vec<u8>);

/// Largest relative gap between the BCJR and per-bit MAP over all
/// codewords of a length-8 block, for `trials` random LLR vectors.
pub fn bcjr_vs_exhaustive(trials: usize, seed: u64) -> f64 {
    let code = ConvCode::default();
    let info_len = 8;
    let codewords: Vec<Codeword> = (0..1usize << info_len)
        .map(|u| {
            let info = bits_of(u, info_len);
            let coded = code.encode(&info);
            (info, coded)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let llrs: Vec<f64> = (0..ConvCode::coded_len(info_len))
            .map(|_| 2.0 * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let out = code.bcjr(&llrs, info_len).expect("block length matches");
        let score = |c: &[u8]| {
            c.iter()
                .zip(&llrs)
                .map(|(&b, &l)| b as f64 * l)
                .sum::<f64>()
        };
        let side = |pick: &dyn Fn(&Codeword) -> bool| {
            lse(codewords.iter().filter(|w| pick(w)).map(|(_, c)| score(c)))
        };
        for (j, &l) in llrs.iter().enumerate() {
            let expected = side(&|(_, c)| c[j] == 1) - side(&|(_, c)| c[j] == 0) - l;
            worst = worst.max(rel_err(out.extrinsic[j], expected));
        }
        for k in 0..info_len {
            let expected = side(&|(u, _)| u[k] == 1) - side(&|(u, _)| u[k] == 0);
            worst = worst.max(rel_err(out.info_llrs[k], expected));
            if out.decisions[k] != (out.info_llrs[k] > 0.0) as u8 {
                worst = f64::INFINITY;
            }
        }
    }
    worst
}

/// Largest relative gap between the demapper and explicit posteriors with
/// the a priori of the detected bit left out, at `n0 = 1`.
pub fn demapper_vs_probabilities(labeling: &VectorLabeling, trials: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = labeling.width() as usize;
    let n = labeling.n() as usize;
    let mut demapper = Demapper::new(labeling);
    let n0 = 1.0;
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let y: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)) * 0.7)
            .collect();
        let h = draw_gain(ChannelKind::Rayleigh, &mut rng);
        let apriori: Vec<f64> = (0..w)
            .map(|_| 1.5 * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let mut out = vec![0.0; w];
        demapper.extrinsic(&y, h, &apriori, n0, &mut out);

        let p_one: Vec<f64> = apriori.iter().map(|l| 1.0 / (1.0 + (-l).exp())).collect();
        let likelihood: Vec<f64> = (0..labeling.len())
            .map(|c| {
                let d: f64 = labeling
                    .points(c)
                    .iter()
                    .zip(&y)
                    .map(|(x, r)| (r - x * h).norm_sqr())
                    .sum();
                (-d / n0).exp()
            })
            .collect();
        for k in 0..w {
            let (mut num, mut den) = (0.0, 0.0);
            for (c, &like) in likelihood.iter().enumerate() {
                let bits = bits_of(c, w);
                let mut p = like;
                for (j, &b) in bits.iter().enumerate() {
                    if j != k {
                        p *= if b == 1 { p_one[j] } else { 1.0 - p_one[j] };
                    }
                }
                if bits[k] == 1 {
                    num += p;
                } else {
                    den += p;
                }
            }
            worst = worst.max(rel_err(out[k], (num / den).ln()));
        }
    }
    worst
}

/// Encode, interleave, modulate, fade without noise, demap, deinterleave
/// and decode one frame; true when the information bits come back.
pub fn noiseless_chain(name: &str, seed: u64) -> bool {
    let code = ConvCode::default();
    let labeling = fixture(name)
        .and_then(|m| m.labeling())
        .expect("fixture loads");
    let w = labeling.width() as usize;
    let n = labeling.n() as usize;
    let coded_len = 2 * w * 20;
    let info_len = coded_len / 2 - MEMORY;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let info: Vec<u8> = (0..info_len).map(|_| rng.random_range(0..2)).collect();
    let interleaver = Interleaver::new(coded_len, seed);
    let bits = interleaver
        .interleave(&code.encode(&info))
        .expect("length matches");
    let tx = mdmap::sim::modulate(&labeling, &bits).expect("whole labels");
    let (rx, gains) =
        transmit(&tx, n, 0.0, ChannelKind::Rayleigh, &mut rng).expect("whole vectors");
    let clean = rx
        .chunks(n)
        .zip(tx.chunks(n))
        .zip(&gains)
        .all(|((r, x), &h)| r.iter().zip(x).all(|(a, b)| *a == b * h));
    let mut demapper = Demapper::new(&labeling);
    let mut llrs = vec![0.0; coded_len];
    let zero = vec![0.0; w];
    for ((y, &h), out) in rx.chunks(n).zip(&gains).zip(llrs.chunks_mut(w)) {
        demapper.extrinsic(y, h, &zero, 1e-2, out);
    }
    let llrs = interleaver.deinterleave(&llrs).expect("length matches");
    clean
        && code
            .bcjr(&llrs, info_len)
            .expect("block length matches")
            .decisions
            == info
}
