/// Neumaier compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Number of label-range shards used by the parallel sums. Fixed so the
/// reduction order does not depend on the worker count.
pub(crate) const SHARDS: usize = 64;

/// Sums `f(label)` over `0..count` in fixed shards, in parallel, merging the
/// shard totals in index order.
pub(crate) fn sharded_sum<F>(count: usize, f: F) -> f64
where
    F: Fn(usize, &mut CompensatedSum) + Sync,
{
    use rayon::prelude::*;
    let shards = SHARDS.min(count.max(1));
    let per = count.div_ceil(shards);
    let partials: Vec<CompensatedSum> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut acc = CompensatedSum::new();
            for l in s * per..((s + 1) * per).min(count) {
                f(l, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = CompensatedSum::new();
    for p in partials {
        total.merge(p);
    }
    total.value()
}
