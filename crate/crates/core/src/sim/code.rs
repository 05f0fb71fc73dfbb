//! Rate-1/2 feedforward convolutional code and its log-MAP decoder.

use crate::error::{Error, Result};

/// Encoder memory of the default code.
pub const MEMORY: usize = 3;

#[inline]
fn max_star(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    a.max(b) + (-(a - b).abs()).exp().ln_1p()
}

/// Memory-3 feedforward code with two generator polynomials in octal.
///
/// The encoder state holds the previous three inputs, most recent first.
/// Generator bit 3 taps the current input and bit 0 the oldest, so `0o13`
/// is `1 + D^2 + D^3` and `0o15` is `1 + D + D^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvCode {
    generators: [u32; 2],
    next: [[usize; 2]; 8],
    out: [[[u8; 2]; 2]; 8],
}

impl Default for ConvCode {
    fn default() -> Self {
        Self::new(0o13, 0o15).expect("valid generators")
    }
}

impl ConvCode {
    pub fn new(g0: u32, g1: u32) -> Result<Self> {
        if g0 == 0 || g1 == 0 || g0 > 0o17 || g1 > 0o17 {
            return Err(Error::Config(format!(
                "generators must be nonzero 4-bit values, got {g0:o}, {g1:o}"
            )));
        }
        let mut next = [[0; 2]; 8];
        let mut out = [[[0; 2]; 2]; 8];
        for s in 0..8 {
            for u in 0..2 {
                let reg = ((u as u32) << 3) | s as u32;
                next[s][u] = (reg >> 1) as usize;
                out[s][u] = [
                    ((reg & g0).count_ones() & 1) as u8,
                    ((reg & g1).count_ones() & 1) as u8,
                ];
            }
        }
        Ok(Self {
            generators: [g0, g1],
            next,
            out,
        })
    }

    pub fn generators(&self) -> [u32; 2] {
        self.generators
    }

    /// Coded length for `info_len` information bits, tail included.
    pub fn coded_len(info_len: usize) -> usize {
        2 * (info_len + MEMORY)
    }

    /// Encodes and terminates the trellis with `MEMORY` zero bits. Output
    /// bits alternate between the two generators.
    pub fn encode(&self, info: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(Self::coded_len(info.len()));
        let mut s = 0;
        for &u in info.iter().chain(std::iter::repeat_n(&0u8, MEMORY)) {
            let u = (u & 1) as usize;
            out.extend_from_slice(&self.out[s][u]);
            s = self.next[s][u];
        }
        out
    }

    /// Log-MAP decoding of a terminated block.
    ///
    /// `llrs` are `ln P(c=1)/P(c=0)` for every coded bit. Returns the
    /// extrinsic LLRs of the coded bits (posterior minus input) and the
    /// posterior LLRs of the information bits.
    #[allow(clippy::needless_range_loop)]
    pub fn bcjr(&self, llrs: &[f64], info_len: usize) -> Result<BcjrOutput> {
        let steps = info_len + MEMORY;
        if llrs.len() != 2 * steps {
            return Err(Error::Length {
                expected: 2 * steps,
                got: llrs.len(),
            });
        }
        let ninf = f64::NEG_INFINITY;
        let gamma = |t: usize, s: usize, u: usize| -> f64 {
            let c = self.out[s][u];
            c[0] as f64 * llrs[2 * t] + c[1] as f64 * llrs[2 * t + 1]
        };
        let allowed = |t: usize, u: usize| t < info_len || u == 0;

        let mut alpha = vec![[ninf; 8]; steps + 1];
        alpha[0][0] = 0.0;
        for t in 0..steps {
            let mut next = [ninf; 8];
            for s in 0..8 {
                if alpha[t][s] == ninf {
                    continue;
                }
                for u in 0..2 {
                    if !allowed(t, u) {
                        continue;
                    }
                    let ns = self.next[s][u];
                    next[ns] = max_star(next[ns], alpha[t][s] + gamma(t, s, u));
                }
            }
            let top = next.iter().cloned().fold(ninf, f64::max);
            for v in next.iter_mut() {
                *v -= top;
            }
            alpha[t + 1] = next;
        }

        let mut beta = vec![[ninf; 8]; steps + 1];
        beta[steps][0] = 0.0;
        for t in (0..steps).rev() {
            let mut cur = [ninf; 8];
            for (s, slot) in cur.iter_mut().enumerate() {
                for u in 0..2 {
                    if !allowed(t, u) {
                        continue;
                    }
                    let ns = self.next[s][u];
                    if beta[t + 1][ns] == ninf {
                        continue;
                    }
                    *slot = max_star(*slot, gamma(t, s, u) + beta[t + 1][ns]);
                }
            }
            let top = cur.iter().cloned().fold(ninf, f64::max);
            for v in cur.iter_mut() {
                *v -= top;
            }
            beta[t] = cur;
        }

        let mut extrinsic = vec![0.0; 2 * steps];
        let mut info_llrs = vec![0.0; info_len];
        for t in 0..steps {
            let mut info = [ninf; 2];
            let mut coded = [[ninf; 2]; 2];
            for s in 0..8 {
                if alpha[t][s] == ninf {
                    continue;
                }
                for u in 0..2 {
                    if !allowed(t, u) {
                        continue;
                    }
                    let ns = self.next[s][u];
                    if beta[t + 1][ns] == ninf {
                        continue;
                    }
                    let c = self.out[s][u];
                    let base = alpha[t][s] + beta[t + 1][ns];
                    info[u] = max_star(info[u], base + gamma(t, s, u));
                    // leave out the bit's own input for the extrinsic value
                    let e0 = base + c[1] as f64 * llrs[2 * t + 1];
                    let e1 = base + c[0] as f64 * llrs[2 * t];
                    coded[0][c[0] as usize] = max_star(coded[0][c[0] as usize], e0);
                    coded[1][c[1] as usize] = max_star(coded[1][c[1] as usize], e1);
                }
            }
            for j in 0..2 {
                extrinsic[2 * t + j] = coded[j][1] - coded[j][0];
            }
            if t < info_len {
                info_llrs[t] = info[1] - info[0];
            }
        }
        let decisions = info_llrs.iter().map(|&l| (l > 0.0) as u8).collect();
        Ok(BcjrOutput {
            extrinsic,
            info_llrs,
            decisions,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BcjrOutput {
    pub extrinsic: Vec<f64>,
    pub info_llrs: Vec<f64>,
    pub decisions: Vec<u8>,
}
