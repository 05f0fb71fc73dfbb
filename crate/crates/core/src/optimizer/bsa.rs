//! Binary switching on a labeling with per-symbol costs.
//!
//! A labeling assigns the labels `0..len` to the symbols `0..len`. Each
//! symbol has a cost that depends on the labeling; the total is their sum.
//! Switching the labels of two symbols changes only the costs of the
//! symbols reported by [`SwitchCost::affected`], so candidate switches are
//! scored from those alone.

/// Per-symbol cost oracle for [`simplified_bsa`].
pub trait SwitchCost {
    /// Number of symbols (and labels).
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cost of `symbol` under `labels` (`labels[s]` is the label of symbol
    /// `s`, `symbols[l]` the symbol of label `l`).
    fn cost(&self, labels: &[usize], symbols: &[usize], symbol: usize) -> f64;

    /// Pushes every symbol whose cost may change when `a` and `b` exchange
    /// labels, including `a` and `b`. The set must be the same before and
    /// after the switch.
    fn affected(
        &self,
        labels: &[usize],
        symbols: &[usize],
        a: usize,
        b: usize,
        out: &mut Vec<usize>,
    );
}

/// A labeling with cached per-symbol costs kept current across switches.
#[derive(Clone, Debug)]
pub struct IncrementalCosts<'c, C: SwitchCost> {
    oracle: &'c C,
    labels: Vec<usize>,
    symbols: Vec<usize>,
    costs: Vec<f64>,
    scratch: Vec<usize>,
}

impl<'c, C: SwitchCost> IncrementalCosts<'c, C> {
    pub fn new(oracle: &'c C, labels: Vec<usize>) -> Self {
        assert_eq!(labels.len(), oracle.len(), "labeling size mismatch");
        let mut symbols = vec![0; labels.len()];
        for (s, &l) in labels.iter().enumerate() {
            symbols[l] = s;
        }
        let costs = (0..labels.len())
            .map(|s| oracle.cost(&labels, &symbols, s))
            .collect();
        Self {
            oracle,
            labels,
            symbols,
            costs,
            scratch: Vec::new(),
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn into_labels(self) -> Vec<usize> {
        self.labels
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    /// Sum of the cached costs, in symbol order.
    pub fn total(&self) -> f64 {
        self.costs.iter().sum()
    }

    /// Every cost recomputed from scratch, in symbol order.
    pub fn recomputed(&self) -> Vec<f64> {
        (0..self.labels.len())
            .map(|s| self.oracle.cost(&self.labels, &self.symbols, s))
            .collect()
    }

    fn exchange(&mut self, a: usize, b: usize) {
        let (la, lb) = (self.labels[a], self.labels[b]);
        self.labels.swap(a, b);
        self.symbols[la] = b;
        self.symbols[lb] = a;
    }

    fn collect_affected(&mut self, a: usize, b: usize) {
        self.scratch.clear();
        let mut out = std::mem::take(&mut self.scratch);
        self.oracle
            .affected(&self.labels, &self.symbols, a, b, &mut out);
        out.sort_unstable();
        out.dedup();
        self.scratch = out;
    }

    /// Change in total cost if `a` and `b` exchanged labels.
    pub fn switch_delta(&mut self, a: usize, b: usize) -> f64 {
        if a == b {
            return 0.0;
        }
        self.collect_affected(a, b);
        let before: f64 = self.scratch.iter().map(|&s| self.costs[s]).sum();
        self.exchange(a, b);
        let after: f64 = self
            .scratch
            .iter()
            .map(|&s| self.oracle.cost(&self.labels, &self.symbols, s))
            .sum();
        self.exchange(a, b);
        after - before
    }

    /// Exchanges the labels of `a` and `b` and refreshes affected costs.
    pub fn switch(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.collect_affected(a, b);
        self.exchange(a, b);
        for i in 0..self.scratch.len() {
            let s = self.scratch[i];
            self.costs[s] = self.oracle.cost(&self.labels, &self.symbols, s);
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BsaOutcome {
    pub labels: Vec<usize>,
    pub initial_total: f64,
    pub total: f64,
    pub switches: usize,
    pub rounds: usize,
    /// Total cost after each committed switch.
    pub history: Vec<f64>,
}

/// Greedy label switching with per-symbol cost bookkeeping.
///
/// Each round orders the symbols by decreasing cost and visits them in that
/// order. For the visited symbol the best exchange partner is found; the
/// exchange is made only if it lowers the total. The search stops after a
/// round without any exchange or after `max_rounds` rounds.
pub fn simplified_bsa<C: SwitchCost>(
    oracle: &C,
    labels: Vec<usize>,
    max_rounds: usize,
) -> BsaOutcome {
    let mut state = IncrementalCosts::new(oracle, labels);
    let initial_total = state.total();
    let len = oracle.len();
    let mut switches = 0;
    let mut rounds = 0;
    let mut history = Vec::new();
    let mut total = initial_total;
    while rounds < max_rounds {
        rounds += 1;
        let mut order: Vec<usize> = (0..len).collect();
        order.sort_by(|&a, &b| state.costs[b].total_cmp(&state.costs[a]).then(a.cmp(&b)));
        let mut improved = false;
        for &s in &order {
            let mut best = (0.0, s);
            for t in 0..len {
                if t == s {
                    continue;
                }
                let d = state.switch_delta(s, t);
                if d < best.0 {
                    best = (d, t);
                }
            }
            let threshold = -1e-12 * total.abs();
            if best.1 != s && best.0 < threshold {
                state.switch(s, best.1);
                total = state.total();
                history.push(total);
                switches += 1;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    BsaOutcome {
        total: state.total(),
        labels: state.into_labels(),
        initial_total,
        switches,
        rounds,
        history,
    }
}
