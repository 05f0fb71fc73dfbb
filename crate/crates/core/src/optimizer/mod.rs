//! Search for the four 2-D mappings by alternating binary switching.
//!
//! The remaining-position pair `(lambda_er, lambda_or)` is optimized first:
//! one mapping is switched while the other is held, then their roles are
//! exchanged. The even first-position half is read off `lambda_er` (labels
//! below `2^(m-1)`), and the half mappings are optimized the same way.
//! Several independent restarts are run and the one with the largest
//! after-feedback harmonic mean wins.

mod bsa;
mod md_bsa;

pub use bsa::{simplified_bsa, BsaOutcome, IncrementalCosts, SwitchCost};
pub use md_bsa::{md_bsa, VectorSwitchCost};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constellation::{Constellation, ConstellationKind};
use crate::error::{Error, Result};
use crate::mapping::{FullMapping2D, HalfMapping2D, MdMapping, MdParts};
use crate::metrics::{self, psi_l, psi_r, CostTables, MetricReport};

/// Stand-in for `1/0` when a neighbourhood label of the partner sits on the
/// same symbol. Finite so that switch deltas stay comparable; far above any
/// `1/d^2` of a unit-energy constellation with up to 1024 points.
const COINCIDENCE_PENALTY: f64 = 1e12;

/// Per-symbol cost of a full mapping against a held partner:
/// `sum_{beta in B(alpha)} a / |x - partner(beta)|^2` with `alpha` the label
/// of `x`.
pub struct FullPairCost<'a> {
    dist: Vec<f64>,
    size: usize,
    partner: &'a FullMapping2D,
    tables: &'a CostTables,
}

impl<'a> FullPairCost<'a> {
    pub fn new(
        constellation: &Constellation,
        partner: &'a FullMapping2D,
        tables: &'a CostTables,
    ) -> Self {
        Self {
            dist: constellation.distance_table(),
            size: constellation.len(),
            partner,
            tables,
        }
    }
}

impl SwitchCost for FullPairCost<'_> {
    fn len(&self) -> usize {
        self.size
    }

    fn cost(&self, labels: &[usize], _symbols: &[usize], symbol: usize) -> f64 {
        let row = &self.dist[symbol * self.size..(symbol + 1) * self.size];
        self.tables
            .neighborhood(labels[symbol])
            .map(|(beta, a)| {
                let d = row[self.partner.symbol(beta)];
                if d == 0.0 {
                    a * COINCIDENCE_PENALTY
                } else {
                    a / d
                }
            })
            .sum()
    }

    fn affected(
        &self,
        _labels: &[usize],
        _symbols: &[usize],
        a: usize,
        b: usize,
        out: &mut Vec<usize>,
    ) {
        out.push(a);
        out.push(b);
    }
}

/// Per-symbol cost of a half mapping against the held opposite half.
///
/// Symbols are positions in `members` (the half being labeled); labels are
/// `(m-1)`-bit residues, each standing for the pair `r, r + 2^(m-1)`.
pub struct HalfPairCost<'a> {
    dist: Vec<f64>,
    size: usize,
    members: &'a [usize],
    partner: &'a HalfMapping2D,
    tables: &'a CostTables,
}

impl<'a> HalfPairCost<'a> {
    pub fn new(
        constellation: &Constellation,
        members: &'a [usize],
        partner: &'a HalfMapping2D,
        tables: &'a CostTables,
    ) -> Self {
        Self {
            dist: constellation.distance_table(),
            size: constellation.len(),
            members,
            partner,
            tables,
        }
    }
}

impl SwitchCost for HalfPairCost<'_> {
    fn len(&self) -> usize {
        self.members.len()
    }

    fn cost(&self, labels: &[usize], _symbols: &[usize], position: usize) -> f64 {
        let x = self.members[position];
        let row = &self.dist[x * self.size..(x + 1) * self.size];
        let half = self.members.len();
        let r = labels[position];
        [r, r + half]
            .into_iter()
            .flat_map(|alpha| self.tables.neighborhood(alpha))
            .map(|(beta, a)| a / row[self.partner.symbol(beta)])
            .sum()
    }

    fn affected(
        &self,
        _labels: &[usize],
        _symbols: &[usize],
        a: usize,
        b: usize,
        out: &mut Vec<usize>,
    ) {
        out.push(a);
        out.push(b);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub kind: ConstellationKind,
    pub m: u32,
    pub n: u32,
    pub it_num_r: usize,
    pub it_num_l: usize,
    pub it_num: usize,
    pub bsa_max_rounds: usize,
    pub seed: u64,
    /// Label-width limit for the before-feedback value in the final report.
    pub before_limit: u32,
}

impl SearchConfig {
    /// Default budgets: 10 alternations per cost, `2^m` BSA rounds, 32 restarts.
    pub fn new(kind: ConstellationKind, m: u32, n: u32) -> Self {
        Self {
            kind,
            m,
            n,
            it_num_r: 10,
            it_num_l: 10,
            it_num: 32,
            bsa_max_rounds: 1 << m,
            seed: 0,
            before_limit: 12,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.it_num_r == 0 || self.it_num_l == 0 || self.it_num == 0 || self.bsa_max_rounds == 0
        {
            return Err(Error::Config("iteration counts must be at least 1".into()));
        }
        if self.n < 2 {
            return Err(Error::Config("search needs n >= 2".into()));
        }
        if !(2..=10).contains(&self.m) {
            return Err(Error::Config(format!("m={} outside 2..=10", self.m)));
        }
        Ok(())
    }

    /// Random stream for one restart.
    pub fn restart_rng(&self, restart: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(restart as u64);
        rng
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRecord {
    pub restart: usize,
    pub psi_r: f64,
    pub psi_l: f64,
    pub delta: f64,
    pub phi_after: f64,
}

impl TraceRecord {
    pub const CSV_HEADER: &'static str = "restart,psi_r,psi_l,delta,phi_after";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.9},{:.9},{:.9},{:.9}",
            self.restart, self.psi_r, self.psi_l, self.delta, self.phi_after
        )
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub mapping: MdMapping,
    pub report: MetricReport,
    pub restarts_run: usize,
    pub winner: usize,
    pub trace: Vec<TraceRecord>,
}

impl SearchResult {
    pub fn trace_csv(&self) -> String {
        let mut out = String::from(TraceRecord::CSV_HEADER);
        out.push('\n');
        for r in &self.trace {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }
}

/// Removes positions where `er` and `or` give the same symbol by exchanging
/// labels of `or` between symbols.
pub fn repair_coincidences(er: &FullMapping2D, or: &mut FullMapping2D) {
    let size = er.size();
    for alpha in 0..size {
        if er.symbol(alpha) != or.symbol(alpha) {
            continue;
        }
        for k in 1..size {
            let beta = (alpha + k) % size;
            let (sa, sb) = (or.symbol(alpha), or.symbol(beta));
            if sb != er.symbol(alpha) && sa != er.symbol(beta) {
                or.swap_symbols(sa, sb);
                break;
            }
        }
    }
}

/// Alternating minimization of the remaining-position cost. Returns
/// `(lambda_er, lambda_or, psi_r)`; `constellation` should be vector-normalized.
pub fn optimize_psi_r<R: Rng + ?Sized>(
    config: &SearchConfig,
    constellation: &Constellation,
    rng: &mut R,
) -> Result<(FullMapping2D, FullMapping2D, f64)> {
    let tables = CostTables::new(config.m, config.n)?;
    let er = FullMapping2D::random(config.m, rng);
    let mut or = FullMapping2D::random(config.m, rng);
    repair_coincidences(&er, &mut or);
    // pair[0] is switched, pair[1] is held; they trade places each pass
    let mut pair = [er, or];
    let mut er_is_first = true;
    for _ in 0..config.it_num_r {
        let oracle = FullPairCost::new(constellation, &pair[1], &tables);
        let out = simplified_bsa(&oracle, pair[0].labels().to_vec(), config.bsa_max_rounds);
        pair[0] = FullMapping2D::from_labels(out.labels)?;
        pair.swap(0, 1);
        er_is_first = !er_is_first;
    }
    let [a, b] = pair;
    let (er, or) = if er_is_first { (a, b) } else { (b, a) };
    let cost = psi_r(&er, &or, constellation, &tables);
    Ok((er, or, cost))
}

/// Symbols whose `lambda_er` label has a zero first bit, ascending.
pub fn derive_chi_el(lambda_er: &FullMapping2D) -> Vec<usize> {
    let half = lambda_er.size() / 2;
    (0..lambda_er.size())
        .filter(|&s| lambda_er.label(s) < half)
        .collect()
}

/// Alternating minimization of the first-position cost over half mappings
/// on `chi_el` and its complement. Returns `(lambda_el, lambda_ol, psi_l)`.
pub fn optimize_psi_l<R: Rng + ?Sized>(
    config: &SearchConfig,
    constellation: &Constellation,
    chi_el: &[usize],
    rng: &mut R,
) -> Result<(HalfMapping2D, HalfMapping2D, f64)> {
    let tables = CostTables::new(config.m, config.n)?;
    let size = 1usize << config.m;
    let chi_ol: Vec<usize> = (0..size)
        .filter(|s| chi_el.binary_search(s).is_err())
        .collect();
    let el = HalfMapping2D::random(config.m, chi_el, rng)?;
    let ol = HalfMapping2D::random(config.m, &chi_ol, rng)?;
    let mut pair = [(el, chi_el.to_vec()), (ol, chi_ol)];
    let mut el_is_first = true;
    for _ in 0..config.it_num_l {
        let (held, _) = &pair[1];
        let (moving, members) = &pair[0];
        // position j of `members` carries residue labels[j]
        let labels: Vec<usize> = members
            .iter()
            .map(|&s| moving.residue_of(s).expect("member of this half"))
            .collect();
        let oracle = HalfPairCost::new(constellation, members, held, &tables);
        let out = simplified_bsa(&oracle, labels, config.bsa_max_rounds);
        let mut by_residue = vec![0; members.len()];
        for (j, &r) in out.labels.iter().enumerate() {
            by_residue[r] = members[j];
        }
        pair[0].0 = HalfMapping2D::from_residues(config.m, by_residue)?;
        pair.swap(0, 1);
        el_is_first = !el_is_first;
    }
    let [(a, _), (b, _)] = pair;
    let (el, ol) = if el_is_first { (a, b) } else { (b, a) };
    let cost = psi_l(&el, &ol, constellation, &tables)?;
    Ok((el, ol, cost))
}

/// One restart: both cost minimizations and assembly.
pub fn run_restart(config: &SearchConfig, restart: usize) -> Result<(MdMapping, TraceRecord)> {
    let base = Constellation::new(config.kind, config.m)?;
    let scaled = base.scale_for_vector(config.n)?;
    let mut rng = config.restart_rng(restart);
    let (er, or, psi_r_value) = optimize_psi_r(config, &scaled, &mut rng)?;
    let chi_el = derive_chi_el(&er);
    let (el, ol, psi_l_value) = optimize_psi_l(config, &scaled, &chi_el, &mut rng)?;
    let mapping = MdMapping::new(MdParts {
        m: config.m,
        n: config.n,
        constellation: base,
        lambda_er: er,
        lambda_or: or,
        lambda_el: el,
        lambda_ol: ol,
        chi_el,
    })?;
    let phi_after = metrics::phi_after(&mapping.labeling()?);
    let record = TraceRecord {
        restart,
        psi_r: psi_r_value,
        psi_l: psi_l_value,
        delta: metrics::delta(psi_l_value, psi_r_value, config.m, config.n),
        phi_after,
    };
    Ok((mapping, record))
}

/// Runs all restarts and keeps the mapping with the largest after-feedback
/// harmonic mean; ties go to the lowest restart index.
pub fn search(config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let runs: Vec<Result<(MdMapping, TraceRecord)>> = (0..config.it_num)
        .into_par_iter()
        .map(|r| run_restart(config, r))
        .collect();
    let mut best: Option<(MdMapping, TraceRecord)> = None;
    let mut trace = Vec::with_capacity(config.it_num);
    for run in runs {
        let (mapping, record) = run?;
        trace.push(record);
        if best
            .as_ref()
            .is_none_or(|(_, b)| record.phi_after > b.phi_after)
        {
            best = Some((mapping, record));
        }
    }
    let (mapping, record) = best.expect("at least one restart");
    let report = metrics::evaluate(&mapping, config.before_limit)?;
    Ok(SearchResult {
        mapping,
        report,
        restarts_run: config.it_num,
        winner: record.restart,
        trace,
    })
}
