//! Soft demapping over all vectors of a labeling.

use num_complex::Complex64;

use crate::mapping::VectorLabeling;

/// Exact bitwise demapper.
///
/// For received `y`, gain `h` and a priori LLRs `L_j = ln P(b_j=1)/P(b_j=0)`,
/// each label `c` gets the metric
/// `-|y - h x(c)|^2 / n0 + sum_j c_j L_j`. The output for bit `k` is
/// `ln sum_{c_k=1} e^metric - ln sum_{c_k=0} e^metric - L_k`.
/// Bit `0` is the first (most significant) label bit.
pub struct Demapper<'a> {
    labeling: &'a VectorLabeling,
    width: usize,
    metrics: Vec<f64>,
    channel: Vec<f64>,
    low: Vec<f64>,
    high: Vec<f64>,
}

impl<'a> Demapper<'a> {
    pub fn new(labeling: &'a VectorLabeling) -> Self {
        let width = labeling.width() as usize;
        let low_bits = width / 2;
        Self {
            labeling,
            width,
            metrics: vec![0.0; labeling.len()],
            channel: vec![0.0; labeling.len()],
            low: vec![0.0; 1 << low_bits],
            high: vec![0.0; 1 << (width - low_bits)],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Extrinsic LLRs for one received vector.
    pub fn extrinsic(
        &mut self,
        y: &[Complex64],
        h: f64,
        apriori: &[f64],
        n0: f64,
        out: &mut [f64],
    ) {
        let mut channel = std::mem::take(&mut self.channel);
        self.channel_metrics(y, h, n0, &mut channel);
        self.extrinsic_from(&channel, apriori, out);
        self.channel = channel;
    }

    /// Channel term `-|y - h x(c)|^2 / n0` for every label `c`.
    pub fn channel_metrics(&self, y: &[Complex64], h: f64, n0: f64, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.labeling.len());
        for (c, slot) in out.iter_mut().enumerate() {
            let d: f64 = self
                .labeling
                .points(c)
                .iter()
                .zip(y)
                .map(|(x, r)| (r - x * h).norm_sqr())
                .sum();
            *slot = -d / n0;
        }
    }

    /// Extrinsic LLRs from precomputed channel metrics.
    pub fn extrinsic_from(&mut self, channel: &[f64], apriori: &[f64], out: &mut [f64]) {
        let w = self.width;
        debug_assert_eq!(apriori.len(), w);
        debug_assert_eq!(out.len(), w);
        let low_bits = w / 2;
        // a priori sums split into two halves of the label
        fill_prior(&mut self.low, &apriori[w - low_bits..]);
        fill_prior(&mut self.high, &apriori[..w - low_bits]);
        let low_mask = (1usize << low_bits) - 1;
        let mut top = f64::NEG_INFINITY;
        for (c, &ch) in channel.iter().enumerate() {
            let t = ch + self.low[c & low_mask] + self.high[c >> low_bits];
            self.metrics[c] = t;
            top = top.max(t);
        }
        let mut sums = [[0.0f64; 2]; 64];
        for (c, &t) in self.metrics.iter().enumerate() {
            let e = (t - top).exp();
            for (k, slot) in sums.iter_mut().enumerate().take(w) {
                slot[(c >> (w - 1 - k)) & 1] += e;
            }
        }
        for k in 0..w {
            let [s0, s1] = sums[k];
            let llr = if s0 > 1e-250 && s1 > 1e-250 {
                s1.ln() - s0.ln()
            } else {
                self.side_lse(k, 1) - self.side_lse(k, 0)
            };
            out[k] = llr - apriori[k];
        }
    }

    // log-sum-exp of the metrics whose bit k equals `value`, with its own maximum
    fn side_lse(&self, k: usize, value: usize) -> f64 {
        let shift = self.width - 1 - k;
        let side = self
            .metrics
            .iter()
            .enumerate()
            .filter(|(c, _)| (c >> shift) & 1 == value);
        let top = side
            .clone()
            .map(|(_, &t)| t)
            .fold(f64::NEG_INFINITY, f64::max);
        top + side.map(|(_, &t)| (t - top).exp()).sum::<f64>().ln()
    }

    /// LLRs when every bit other than the one detected is known:
    /// bit `k` is decided between `label` with bit `k` set and cleared.
    pub fn genie(&self, y: &[Complex64], h: f64, label: usize, n0: f64, out: &mut [f64]) {
        let w = self.width;
        let dist = |c: usize| -> f64 {
            self.labeling
                .points(c)
                .iter()
                .zip(y)
                .map(|(x, r)| (r - x * h).norm_sqr())
                .sum()
        };
        for (k, slot) in out.iter_mut().enumerate().take(w) {
            let bit = 1usize << (w - 1 - k);
            let one = label | bit;
            let zero = label & !bit;
            *slot = (dist(zero) - dist(one)) / n0;
        }
    }
}

// table[v] = sum of apriori[j] over the set bits of v (bit 0 of v is the last entry)
fn fill_prior(table: &mut [f64], apriori: &[f64]) {
    let bits = apriori.len();
    table[0] = 0.0;
    for v in 1..table.len() {
        let low = v.trailing_zeros() as usize;
        table[v] = table[v & (v - 1)] + apriori[bits - 1 - low];
    }
}
