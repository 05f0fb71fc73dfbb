//! Harmonic mean of the minimum squared Euclidean distance and the 2-D cost
//! functions used to optimize it.
//!
//! For a labeling of width `w = mN` over `2^w` vectors, both harmonic means
//! have the form `w 2^w / sum_x sum_i 1 / d_i(x)`. After feedback, `d_i(x)`
//! is the squared distance from `x` to the vector whose label differs from
//! that of `x` in bit `i` only. Before feedback it is the squared distance to
//! the nearest vector whose label has the opposite value in bit `i`.
//! Distances are in units where a symbol vector has unit average energy.

mod cost;
pub(crate) mod neighbors;
mod sum;

pub use cost::{delta, k_const, psi_l, psi_pair, psi_r, CostTables};
pub use sum::CompensatedSum;

use crate::error::{Error, Result};
use crate::mapping::{MdMapping, Parity, VectorLabeling};
use neighbors::NeighborOrder;
use sum::sharded_sum;

/// Default label-width limit for the before-feedback metric.
pub const BEFORE_FEEDBACK_LIMIT: u32 = 16;

/// Sum of `1 / d_i(x)` over the flip neighbours of every label in `labels`.
fn flip_sum(labeling: &VectorLabeling, parity: Option<Parity>) -> f64 {
    let w = labeling.width();
    sharded_sum(labeling.len(), |l, acc| {
        if parity.is_some_and(|p| Parity::of(l as u64) != p) {
            return;
        }
        for i in 0..w {
            let d = labeling.dist2(l, l ^ (1 << i));
            acc.add(1.0 / d);
        }
    })
}

/// After-feedback harmonic mean. Returns 0 for a labeling where some label
/// and its one-bit flip share a vector.
pub fn phi_after(labeling: &VectorLabeling) -> f64 {
    let w = labeling.width() as f64;
    let s = flip_sum(labeling, None);
    if !s.is_finite() {
        return 0.0;
    }
    w * labeling.len() as f64 / s
}

/// The after-feedback sum restricted to labels of one parity, with the same
/// normalization as [`phi_after`]; the two halves are equal and
/// `phi_after = 1 / (2 omega)`.
pub fn omega(labeling: &VectorLabeling, parity: Parity) -> f64 {
    let w = labeling.width() as f64;
    flip_sum(labeling, Some(parity)) / (w * labeling.len() as f64)
}

/// Before-feedback harmonic mean, exact.
///
/// For each vector the other vectors are visited in increasing distance
/// until every bit position has met a label with the opposite bit.
pub fn phi_before(labeling: &VectorLabeling) -> Result<f64> {
    phi_before_with_limit(labeling, BEFORE_FEEDBACK_LIMIT)
}

pub fn phi_before_with_limit(labeling: &VectorLabeling, limit: u32) -> Result<f64> {
    let w = labeling.width();
    if w > limit {
        return Err(Error::Guard {
            what: "before-feedback harmonic mean",
            bits: w,
            limit,
        });
    }
    let n = labeling.n() as usize;
    let order = NeighborOrder::new(labeling.constellation(), n);
    let full = (1u64 << w) - 1;
    let s = sharded_sum(labeling.len(), |x, acc| {
        let mut nearest = [0.0f64; 64];
        let mut found = 0u64;
        let mut walk = order.walk(labeling.symbols(x));
        while found != full {
            let Some((d, v)) = walk.next_vector() else {
                break;
            };
            let y = labeling.label_of_symbols(&v[..n]);
            let mut fresh = (x ^ y) as u64 & !found;
            found |= fresh;
            while fresh != 0 {
                let bit = fresh.trailing_zeros();
                nearest[bit as usize] = d;
                fresh &= fresh - 1;
            }
        }
        for &d in nearest[..w as usize].iter().rev() {
            acc.add(1.0 / d);
        }
    });
    Ok(w as f64 * labeling.len() as f64 / s)
}

/// All metrics of a structured mapping.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricReport {
    /// `None` when the label width exceeds the before-feedback limit.
    pub phi_before: Option<f64>,
    pub phi_after: f64,
    pub delta: f64,
    pub psi_l: f64,
    pub psi_r: f64,
    pub k_const: f64,
}

impl MetricReport {
    pub const CSV_HEADER: &'static str = "phi_before,phi_after,delta,psi_l,psi_r";

    pub fn csv_row(&self) -> String {
        let before = self
            .phi_before
            .map_or_else(|| "NA".to_string(), |v| format!("{v:.6}"));
        format!(
            "{before},{:.6},{:.6},{:.6},{:.6}",
            self.phi_after, self.delta, self.psi_l, self.psi_r
        )
    }

    pub fn json_line(&self) -> String {
        let before = self
            .phi_before
            .map_or_else(|| "null".to_string(), |v| format!("{v}"));
        format!(
            "{{\"phi_before\":{before},\"phi_after\":{},\"delta\":{},\"psi_l\":{},\"psi_r\":{},\"k_const\":{}}}",
            self.phi_after, self.delta, self.psi_l, self.psi_r, self.k_const
        )
    }
}

/// Computes every metric; the before-feedback value only when the label
/// width is at most `before_limit`.
pub fn evaluate(mapping: &MdMapping, before_limit: u32) -> Result<MetricReport> {
    let labeling = mapping.labeling()?;
    let phi_before = if mapping.width() <= before_limit {
        Some(phi_before_with_limit(&labeling, before_limit)?)
    } else {
        None
    };
    let (psi_l, psi_r) = if mapping.n() >= 2 {
        psi_pair(mapping)?
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(MetricReport {
        phi_before,
        phi_after: phi_after(&labeling),
        delta: if mapping.n() >= 2 {
            delta(psi_l, psi_r, mapping.m(), mapping.n())
        } else {
            f64::NAN
        },
        psi_l,
        psi_r,
        k_const: k_const(mapping.m(), mapping.n()),
    })
}
