//! Cost functions on the 2-D component mappings and the resulting lower
//! bound on the after-feedback harmonic mean.

use crate::constellation::Constellation;
use crate::error::{Error, Result};
use crate::mapping::{FullMapping2D, HalfMapping2D, MdMapping};

/// Coefficients weighting each `(alpha, beta)` label pair in the 2-D costs.
///
/// `beta` ranges over `B(alpha)`: `alpha` itself and its `m` one-bit
/// neighbours. The weight counts how often an even label whose chunk is
/// `alpha` has a one-bit-flip image whose chunk in the same position is
/// `beta`. Both cost functions share the same counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CostTables {
    m: u32,
    n: u32,
    same: u64,
    neighbor: u64,
}

impl CostTables {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if !(1..=10).contains(&m) {
            return Err(Error::Config(format!(
                "cost tables need 1 <= m <= 10, got {m}"
            )));
        }
        if n < 2 {
            return Err(Error::Config(format!("cost tables need n >= 2, got {n}")));
        }
        let rest = m * (n - 1);
        if rest > 62 {
            return Err(Error::Config(
                "label width too large for cost tables".into(),
            ));
        }
        let base = 1u64 << (rest - 1);
        Ok(Self {
            m,
            n,
            same: rest as u64 * base,
            neighbor: base,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Weight for `beta == alpha`.
    pub fn same(&self) -> u64 {
        self.same
    }

    /// Weight for `beta` one bit away from `alpha`.
    pub fn neighbor(&self) -> u64 {
        self.neighbor
    }

    /// Weight of any pair; zero outside `B(alpha)`.
    pub fn weight(&self, alpha: usize, beta: usize) -> u64 {
        match (alpha ^ beta).count_ones() {
            0 => self.same,
            1 => self.neighbor,
            _ => 0,
        }
    }

    /// `B(alpha)` with `alpha` first, then the neighbours by flipped bit
    /// from the first bit on.
    pub fn neighborhood(&self, alpha: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let m = self.m;
        std::iter::once((alpha, self.same as f64))
            .chain((0..m).map(move |i| (alpha ^ (1 << (m - 1 - i)), self.neighbor as f64)))
    }
}

/// First-position cost: `sum_alpha sum_{beta in B(alpha)} a / |el(alpha) - ol(beta)|^2`.
pub fn psi_l(
    lambda_el: &HalfMapping2D,
    lambda_ol: &HalfMapping2D,
    constellation: &Constellation,
    tables: &CostTables,
) -> Result<f64> {
    let size = 1usize << tables.m();
    let mut total = 0.0;
    for alpha in 0..size {
        let x = lambda_el.symbol(alpha);
        for (beta, a) in tables.neighborhood(alpha) {
            let y = lambda_ol.symbol(beta);
            if x == y {
                return Err(Error::InvalidMapping(format!(
                    "lambda_el and lambda_ol share symbol {}",
                    x + 1
                )));
            }
            total += a / constellation.dist2(x, y);
        }
    }
    Ok(total)
}

/// Remaining-positions cost:
/// `(n - 1) sum_alpha sum_{beta in B(alpha)} a / |er(alpha) - or(beta)|^2`.
///
/// A position where both mappings give the same symbol makes the cost
/// infinite.
pub fn psi_r(
    lambda_er: &FullMapping2D,
    lambda_or: &FullMapping2D,
    constellation: &Constellation,
    tables: &CostTables,
) -> f64 {
    let size = 1usize << tables.m();
    let mut total = 0.0;
    for alpha in 0..size {
        let x = lambda_er.symbol(alpha);
        for (beta, a) in tables.neighborhood(alpha) {
            let y = lambda_or.symbol(beta);
            if x == y {
                return f64::INFINITY;
            }
            total += a / constellation.dist2(x, y);
        }
    }
    (tables.n() - 1) as f64 * total
}

/// `1 / (m n^2 2^(mn))`.
pub fn k_const(m: u32, n: u32) -> f64 {
    let w = (m * n) as i32;
    1.0 / ((m * n * n) as f64 * 2f64.powi(w))
}

/// Lower bound on the after-feedback harmonic mean, `1 / (2K (psi_l + psi_r))`.
/// Infinite costs give zero.
pub fn delta(psi_l: f64, psi_r: f64, m: u32, n: u32) -> f64 {
    let psi = psi_l + psi_r;
    if !psi.is_finite() {
        return 0.0;
    }
    1.0 / (2.0 * k_const(m, n) * psi)
}

/// `(psi_l, psi_r)` of a mapping, on its vector-normalized constellation.
pub fn psi_pair(mapping: &MdMapping) -> Result<(f64, f64)> {
    let tables = CostTables::new(mapping.m(), mapping.n())?;
    let c = mapping.constellation();
    let l = psi_l(mapping.lambda_el(), mapping.lambda_ol(), c, &tables)?;
    let r = psi_r(mapping.lambda_er(), mapping.lambda_or(), c, &tables);
    Ok((l, r))
}
