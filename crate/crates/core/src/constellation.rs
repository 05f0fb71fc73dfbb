//! Two-dimensional signal sets and their symbol orderings.
//!
//! Every generator returns points in the order used by the published
//! mapping tables, so that index `k` (0-based) is the symbol written
//! `S_{k+1}` there. Decimal labels in mapping files refer to these indices.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstellationKind {
    Psk,
    SquareQam,
    CrossQam,
    Optimum8Qam,
}

impl ConstellationKind {
    pub fn name(self) -> &'static str {
        match self {
            ConstellationKind::Psk => "psk",
            ConstellationKind::SquareQam => "qam",
            ConstellationKind::CrossQam => "cross",
            ConstellationKind::Optimum8Qam => "opt8qam",
        }
    }

    /// PSK for `m <= 3`, otherwise square QAM for even `m` and cross QAM
    /// for odd `m`.
    pub fn default_for_bits(m: u32) -> Self {
        match m {
            0..=3 => ConstellationKind::Psk,
            m if m % 2 == 1 => ConstellationKind::CrossQam,
            _ => ConstellationKind::SquareQam,
        }
    }
}

impl fmt::Display for ConstellationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstellationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "psk" => Ok(ConstellationKind::Psk),
            "qam" | "square" => Ok(ConstellationKind::SquareQam),
            "cross" => Ok(ConstellationKind::CrossQam),
            "opt8qam" => Ok(ConstellationKind::Optimum8Qam),
            other => Err(Error::Constellation(format!("unknown kind `{other}`"))),
        }
    }
}

/// An ordered 2-D signal set with `2^m` points and a declared average energy.
#[derive(Clone, Debug, PartialEq)]
pub struct Constellation {
    points: Vec<Complex64>,
    kind: ConstellationKind,
    bits: u32,
    energy: f64,
}

impl Constellation {
    /// Builds any supported constellation from its kind and bits per symbol.
    pub fn new(kind: ConstellationKind, m: u32) -> Result<Self> {
        match kind {
            ConstellationKind::Psk => Self::psk(m),
            ConstellationKind::SquareQam => Self::square_qam(m),
            ConstellationKind::CrossQam => Self::cross_qam(m),
            ConstellationKind::Optimum8Qam if m == 3 => Ok(Self::optimum_8qam()),
            ConstellationKind::Optimum8Qam => Err(Error::Constellation(format!(
                "optimum 8-QAM has 3 bits per symbol, got m={m}"
            ))),
        }
    }

    /// `2^m`-PSK on the unit circle. `S_1` sits on the positive real axis and
    /// indices increase counter-clockwise.
    pub fn psk(m: u32) -> Result<Self> {
        if !(2..=10).contains(&m) {
            return Err(Error::Constellation(format!(
                "PSK needs 2 <= m <= 10, got {m}"
            )));
        }
        let size = 1usize << m;
        let points = (0..size)
            .map(|k| {
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / size as f64)
            })
            .collect();
        Ok(Self {
            points,
            kind: ConstellationKind::Psk,
            bits: m,
            energy: 1.0,
        })
    }

    /// Square `2^m`-QAM on the odd-integer grid, unit average energy.
    ///
    /// Ordering starts at the top-left corner and runs top to bottom, then
    /// left to right (column-major): for 16-QAM `S_1 = (-3, 3)`,
    /// `S_4 = (-3, -3)`, `S_13 = (3, 3)`.
    pub fn square_qam(m: u32) -> Result<Self> {
        if !m.is_multiple_of(2) || !(4..=10).contains(&m) {
            return Err(Error::Constellation(format!(
                "square QAM needs even 4 <= m <= 10, got {m}"
            )));
        }
        let side = 1i64 << (m / 2);
        // mean of x^2 + y^2 over odd levels {±1, ±3, .., ±(side-1)}
        let raw_energy = 2.0 * ((side * side - 1) as f64) / 3.0;
        let scale = raw_energy.sqrt().recip();
        let levels: Vec<i64> = (0..side).map(|i| 2 * i - (side - 1)).collect();
        let mut points = Vec::with_capacity(1 << m);
        for &x in &levels {
            for &y in levels.iter().rev() {
                points.push(Complex64::new(x as f64 * scale, y as f64 * scale));
            }
        }
        Ok(Self {
            points,
            kind: ConstellationKind::SquareQam,
            bits: m,
            energy: 1.0,
        })
    }

    /// Cross `2^m`-QAM for `m ∈ {5, 7, 9}`, unit average energy.
    ///
    /// The ordering is that of the `2^((m+1)/2) x 2^((m-1)/2)` rectangle
    /// (top to bottom, then left to right), with the outer columns folded
    /// onto the rows above and below the rectangle. See [`cross_fold`].
    pub fn cross_qam(m: u32) -> Result<Self> {
        if !matches!(m, 5 | 7 | 9) {
            return Err(Error::Constellation(format!(
                "cross QAM supports m in {{5, 7, 9}}, got {m}"
            )));
        }
        let width = 1i64 << m.div_ceil(2);
        let height = 1i64 << ((m - 1) / 2);
        // E = (31 M / 32 - 1) * 2 / 3 on the odd-integer lattice
        let size = (1u64 << m) as f64;
        let raw_energy = (31.0 * size / 32.0 - 1.0) * 2.0 / 3.0;
        let scale = raw_energy.sqrt().recip();
        let mut points = Vec::with_capacity(1 << m);
        for xi in 0..width {
            let x = 2 * xi - (width - 1);
            for yi in 0..height {
                let y = (height - 1) - 2 * yi;
                let (fx, fy) = cross_fold(m, x, y);
                points.push(Complex64::new(fx as f64 * scale, fy as f64 * scale));
            }
        }
        Ok(Self {
            points,
            kind: ConstellationKind::CrossQam,
            bits: m,
            energy: 1.0,
        })
    }

    /// The optimum 8-QAM, unit average energy.
    pub fn optimum_8qam() -> Self {
        let raw = OPTIMUM_8QAM;
        let energy: f64 = raw.iter().map(|(x, y)| x * x + y * y).sum::<f64>() / raw.len() as f64;
        let scale = energy.sqrt().recip();
        let points = raw
            .iter()
            .map(|&(x, y)| Complex64::new(x * scale, y * scale))
            .collect();
        Self {
            points,
            kind: ConstellationKind::Optimum8Qam,
            bits: 3,
            energy: 1.0,
        }
    }

    /// Returns a copy scaled so that a vector of `n` symbols has unit
    /// average energy, i.e. per-symbol energy `1/n`.
    pub fn scale_for_vector(&self, n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::Config("vector length must be at least 1".into()));
        }
        Ok(self.with_energy(1.0 / n as f64))
    }

    /// Rescales to the given average per-symbol energy.
    pub fn with_energy(&self, energy: f64) -> Self {
        let factor = (energy / self.energy).sqrt();
        Self {
            points: self.points.iter().map(|p| p * factor).collect(),
            kind: self.kind,
            bits: self.bits,
            energy,
        }
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn point(&self, index: usize) -> Complex64 {
        self.points[index]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn kind(&self) -> ConstellationKind {
        self.kind
    }

    /// Declared average per-symbol energy.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Squared Euclidean distance between two symbols.
    #[inline]
    pub fn dist2(&self, a: usize, b: usize) -> f64 {
        (self.points[a] - self.points[b]).norm_sqr()
    }

    /// Full table of squared distances, row-major `len x len`.
    pub fn distance_table(&self) -> Vec<f64> {
        let n = self.len();
        let mut table = vec![0.0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.dist2(a, b);
            }
        }
        table
    }

    /// `index,re,im` rows with 1-based indices.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,re,im\n");
        for (i, p) in self.points.iter().enumerate() {
            out.push_str(&format!("{},{:.17},{:.17}\n", i + 1, p.re, p.im));
        }
        out
    }
}

/// Places a point of the cross-QAM generating rectangle onto the cross.
///
/// The rectangle is `W x H` with `W = 2H`. Points with `|x|` beyond the
/// cross half-width `3W/4 - 1` leave their column block and fill the rows
/// above and below the rectangle, with the signs of both coordinates kept.
/// Within a quadrant, the lower half of the block (`|y| < H/2`) is mirrored
/// across `x = W/2` and lifted by `H`; the upper half is shifted left by `H`
/// and mirrored across `y = H`. For 32-QAM, `(7, 1) -> (1, 5)` and
/// `(7, 3) -> (3, 5)`.
pub fn cross_fold(m: u32, x: i64, y: i64) -> (i64, i64) {
    let width = 1i64 << m.div_ceil(2);
    let height = 1i64 << ((m - 1) / 2);
    let half_width = 3 * width / 4 - 1;
    if x.abs() <= half_width {
        return (x, y);
    }
    let (ax, ay) = (x.abs(), y.abs());
    let (fx, fy) = if ay < height / 2 {
        (width - ax, height + ay)
    } else {
        (ax - height, 2 * height - ay)
    };
    (x.signum() * fx, y.signum() * fy)
}

// Coordinates of the optimum 8-QAM in the table ordering, before scaling.
const OPTIMUM_8QAM: [(f64, f64); 8] = [
    (1.0, 1.0),
    (-1.0, 1.0),
    (-1.0, -1.0),
    (1.0, -1.0),
    (2.732_050_807_568_877, 0.0),
    (0.0, 2.732_050_807_568_877),
    (-2.732_050_807_568_877, 0.0),
    (0.0, -2.732_050_807_568_877),
];
