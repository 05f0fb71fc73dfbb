//! Binary switching directly on the vector labeling, minimizing the
//! after-feedback sum. Serves as the unstructured baseline.

use super::bsa::{simplified_bsa, SwitchCost};
use crate::constellation::Constellation;
use crate::error::Result;
use crate::mapping::VectorLabeling;

/// Cost of a vector: `sum_i 1 / |x - x_i|^2` over the vectors whose labels
/// differ from that of `x` in one bit.
pub struct VectorSwitchCost {
    width: u32,
    n: usize,
    size: usize,
    dist: Vec<f64>,
    digits: Vec<u32>,
}

impl VectorSwitchCost {
    pub fn new(m: u32, n: u32, constellation: &Constellation) -> Self {
        let size = 1usize << m;
        let count = 1usize << (m * n);
        let nn = n as usize;
        let mut digits = vec![0u32; count * nn];
        for v in 0..count {
            let mut rest = v;
            for i in (0..nn).rev() {
                digits[v * nn + i] = (rest % size) as u32;
                rest /= size;
            }
        }
        Self {
            width: m * n,
            n: nn,
            size,
            dist: constellation.distance_table(),
            digits,
        }
    }

    #[inline]
    fn vector_dist(&self, u: usize, v: usize) -> f64 {
        let n = self.n;
        (0..n)
            .map(|i| {
                let a = self.digits[u * n + i] as usize;
                let b = self.digits[v * n + i] as usize;
                self.dist[a * self.size + b]
            })
            .sum()
    }

    /// Symbols of vector `v`.
    pub fn digits(&self, v: usize) -> &[u32] {
        &self.digits[v * self.n..(v + 1) * self.n]
    }
}

impl SwitchCost for VectorSwitchCost {
    fn len(&self) -> usize {
        1 << self.width
    }

    fn cost(&self, labels: &[usize], symbols: &[usize], v: usize) -> f64 {
        let l = labels[v];
        (0..self.width)
            .map(|i| 1.0 / self.vector_dist(v, symbols[l ^ (1 << i)]))
            .sum()
    }

    fn affected(
        &self,
        labels: &[usize],
        symbols: &[usize],
        a: usize,
        b: usize,
        out: &mut Vec<usize>,
    ) {
        out.push(a);
        out.push(b);
        for l in [labels[a], labels[b]] {
            for i in 0..self.width {
                out.push(symbols[l ^ (1 << i)]);
            }
        }
    }
}

/// Runs binary switching on a full vector labeling. `initial[v]` is the
/// starting label of vector `v` (vectors indexed by their symbols in base
/// `2^m`, first symbol most significant). `constellation` is used as given.
pub fn md_bsa(
    m: u32,
    n: u32,
    constellation: &Constellation,
    initial: Vec<usize>,
    max_rounds: usize,
) -> Result<VectorLabeling> {
    let oracle = VectorSwitchCost::new(m, n, constellation);
    let out = simplified_bsa(&oracle, initial, max_rounds);
    let mut vector_of = vec![0usize; out.labels.len()];
    for (v, &l) in out.labels.iter().enumerate() {
        vector_of[l] = v;
    }
    VectorLabeling::from_fn(m, n, constellation, |l, slot| {
        for (s, &d) in slot.iter_mut().zip(oracle.digits(vector_of[l as usize])) {
            *s = d as usize;
        }
    })
}
