use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

use super::component::{FullMapping2D, HalfMapping2D};
use super::label::{Label, Parity, MAX_LABEL_BITS};
use crate::constellation::Constellation;
use crate::error::{Error, Result};

/// Largest label width for which the full label set is enumerated.
pub const ENUMERATION_LIMIT: u32 = 24;

/// The four 2-D mappings and the first-position partition, unvalidated.
///
/// This is what a mapping file describes. [`MdMapping::new`] validates it.
#[derive(Clone, Debug, PartialEq)]
pub struct MdParts {
    pub m: u32,
    pub n: u32,
    /// Unit-energy constellation; vector normalization happens on assembly.
    pub constellation: Constellation,
    pub lambda_er: FullMapping2D,
    pub lambda_or: FullMapping2D,
    pub lambda_el: HalfMapping2D,
    pub lambda_ol: HalfMapping2D,
    /// Ascending 0-based symbol indices of the first-position even half.
    pub chi_el: Vec<usize>,
}

impl MdParts {
    pub fn width(&self) -> u32 {
        self.m * self.n
    }

    pub fn chi_ol(&self) -> Vec<usize> {
        complement(&self.chi_el, 1 << self.m)
    }

    /// Symbols of `label`, using the label-to-symbol direction only.
    pub fn map_raw(&self, label: u64, out: &mut [usize]) {
        let m = self.m;
        let n = self.n as usize;
        let mask = (1u64 << m) - 1;
        let even = label.count_ones().is_multiple_of(2);
        for (i, slot) in out.iter_mut().enumerate().take(n) {
            let chunk = ((label >> (m as usize * (n - 1 - i))) & mask) as usize;
            *slot = match (i, even) {
                (0, true) => self.lambda_el.symbol(chunk),
                (0, false) => self.lambda_ol.symbol(chunk),
                (_, true) => self.lambda_er.symbol(chunk),
                (_, false) => self.lambda_or.symbol(chunk),
            };
        }
    }

    /// Inverts [`MdParts::map_raw`] through the symbol-to-label direction.
    pub fn demap_raw(&self, symbols: &[usize]) -> Option<u64> {
        let m = self.m;
        let n = self.n as usize;
        if symbols.len() != n {
            return None;
        }
        let even = self.chi_el.binary_search(&symbols[0]).is_ok();
        let residue = if even {
            self.lambda_el.residue_of(symbols[0])?
        } else {
            self.lambda_ol.residue_of(symbols[0])?
        };
        let mut rest = 0u64;
        for &s in &symbols[1..] {
            let table = if even {
                &self.lambda_er
            } else {
                &self.lambda_or
            };
            if s >= table.size() {
                return None;
            }
            rest = (rest << m) | table.label(s) as u64;
        }
        let shift = m as usize * (n - 1);
        let mut label = ((residue as u64) << shift) | rest;
        if label.count_ones().is_multiple_of(2) != even {
            label |= 1u64 << (shift + m as usize - 1);
        }
        Some(label)
    }
}

pub(crate) fn complement(set: &[usize], size: usize) -> Vec<usize> {
    let mut member = vec![false; size];
    for &s in set {
        if s < size {
            member[s] = true;
        }
    }
    (0..size).filter(|&s| !member[s]).collect()
}

/// A validated multi-dimensional mapping between `mN`-bit labels and
/// vectors of `N` symbols.
///
/// The first symbol comes from the even or odd half mapping, the others from
/// the even or odd full mapping, selected by the parity of the whole label.
#[derive(Clone, Debug, PartialEq)]
pub struct MdMapping {
    parts: MdParts,
    scaled: Constellation,
    in_chi_el: Vec<bool>,
}

impl MdMapping {
    pub fn new(parts: MdParts) -> Result<Self> {
        let m = parts.m;
        if m < 2 || parts.n < 1 || parts.width() > MAX_LABEL_BITS {
            return Err(Error::Config(format!(
                "unsupported dimensions m={m}, n={}",
                parts.n
            )));
        }
        if parts.constellation.bits() != m {
            return Err(Error::WidthMismatch {
                expected: m,
                got: parts.constellation.bits(),
            });
        }
        let size = 1usize << m;
        for (name, table) in [
            ("lambda_er", &parts.lambda_er),
            ("lambda_or", &parts.lambda_or),
        ] {
            if table.size() != size || !table.is_consistent() {
                return Err(Error::InvalidMapping(format!(
                    "{name} is not a bijection on {size} symbols"
                )));
            }
        }
        let half = size / 2;
        let mut chi = parts.chi_el.clone();
        chi.sort_unstable();
        chi.dedup();
        if chi.len() != half || chi != parts.chi_el || chi.iter().any(|&s| s >= size) {
            return Err(Error::InvalidMapping(format!(
                "chi_el must list {half} distinct ascending symbols"
            )));
        }
        if parts.lambda_el.m() != m || parts.lambda_el.symbol_set() != chi {
            return Err(Error::InvalidMapping(
                "lambda_el does not cover exactly chi_el".into(),
            ));
        }
        if parts.lambda_ol.m() != m || parts.lambda_ol.symbol_set() != parts.chi_ol() {
            return Err(Error::InvalidMapping(
                "lambda_ol does not cover exactly the complement of chi_el".into(),
            ));
        }
        let mut in_chi_el = vec![false; size];
        for &s in &chi {
            in_chi_el[s] = true;
        }
        let scaled = parts.constellation.scale_for_vector(parts.n)?;
        let mapping = Self {
            parts,
            scaled,
            in_chi_el,
        };
        if mapping.width() <= 20 {
            VectorLabeling::from_md(&mapping)?;
        }
        Ok(mapping)
    }

    /// Random four-way mapping: uniform full mappings, `chi_el` read off
    /// `lambda_er`, uniform half mappings on each side.
    pub fn random<R: Rng + ?Sized>(
        constellation: &Constellation,
        n: u32,
        rng: &mut R,
    ) -> Result<Self> {
        let m = constellation.bits();
        let lambda_er = FullMapping2D::random(m, rng);
        let lambda_or = FullMapping2D::random(m, rng);
        let size = 1usize << m;
        let chi_el: Vec<usize> = (0..size)
            .filter(|&s| lambda_er.label(s) < size / 2)
            .collect();
        let chi_ol = complement(&chi_el, size);
        let lambda_el = HalfMapping2D::random(m, &chi_el, rng)?;
        let lambda_ol = HalfMapping2D::random(m, &chi_ol, rng)?;
        Self::new(MdParts {
            m,
            n,
            constellation: constellation.clone(),
            lambda_er,
            lambda_or,
            lambda_el,
            lambda_ol,
            chi_el,
        })
    }

    pub fn parts(&self) -> &MdParts {
        &self.parts
    }

    pub fn into_parts(self) -> MdParts {
        self.parts
    }

    pub fn m(&self) -> u32 {
        self.parts.m
    }

    pub fn n(&self) -> u32 {
        self.parts.n
    }

    pub fn width(&self) -> u32 {
        self.parts.width()
    }

    /// Constellation scaled to per-symbol energy `1/n`.
    pub fn constellation(&self) -> &Constellation {
        &self.scaled
    }

    pub fn lambda_er(&self) -> &FullMapping2D {
        &self.parts.lambda_er
    }

    pub fn lambda_or(&self) -> &FullMapping2D {
        &self.parts.lambda_or
    }

    pub fn lambda_el(&self) -> &HalfMapping2D {
        &self.parts.lambda_el
    }

    pub fn lambda_ol(&self) -> &HalfMapping2D {
        &self.parts.lambda_ol
    }

    pub fn chi_el(&self) -> &[usize] {
        &self.parts.chi_el
    }

    pub fn is_in_chi_el(&self, symbol: usize) -> bool {
        self.in_chi_el[symbol]
    }

    /// Same mapping on a different dimension count.
    pub fn with_n(&self, n: u32) -> Result<Self> {
        let mut parts = self.parts.clone();
        parts.n = n;
        Self::new(parts)
    }

    /// Writes the symbols of a raw label value into `out` (length `n`).
    #[inline]
    pub fn map_index(&self, label: u64, out: &mut [usize]) {
        self.parts.map_raw(label, out)
    }

    pub fn map_label(&self, label: Label) -> Result<Vec<usize>> {
        if label.width() != self.width() {
            return Err(Error::WidthMismatch {
                expected: self.width(),
                got: label.width(),
            });
        }
        let mut out = vec![0; self.n() as usize];
        self.map_index(label.value(), &mut out);
        Ok(out)
    }

    pub fn demap(&self, symbols: &[usize]) -> Option<Label> {
        let value = self.parts.demap_raw(symbols)?;
        let label = Label::new(value, self.width()).ok()?;
        let mut check = vec![0; self.n() as usize];
        self.map_index(value, &mut check);
        (check == symbols).then_some(label)
    }

    /// All `(label, symbols)` pairs in label order.
    pub fn enumerate_pairs(&self) -> Result<impl Iterator<Item = (Label, Vec<usize>)> + '_> {
        let width = self.width();
        if width > ENUMERATION_LIMIT {
            return Err(Error::Guard {
                what: "label enumeration",
                bits: width,
                limit: ENUMERATION_LIMIT,
            });
        }
        Ok((0..1u64 << width).map(move |l| {
            let mut v = vec![0; self.n() as usize];
            self.map_index(l, &mut v);
            (Label::new(l, width).expect("in range"), v)
        }))
    }

    pub fn labeling(&self) -> Result<VectorLabeling> {
        VectorLabeling::from_md(self)
    }
}

/// Explicit table of a bijective labeling of `chi^N`, label by label.
///
/// Any mapping can be expressed this way, including ones without the
/// four-function structure, which makes it the common input of metrics and
/// simulation.
#[derive(Clone, Debug)]
pub struct VectorLabeling {
    m: u32,
    n: u32,
    constellation: Constellation,
    symbols: Vec<u32>,
    points: Vec<Complex64>,
    label_of_vector: Vec<u32>,
}

impl VectorLabeling {
    /// Builds from `f(label, out)` writing the `n` symbols of each label.
    /// `constellation` is used as given, without rescaling.
    pub fn from_fn<F>(m: u32, n: u32, constellation: &Constellation, mut f: F) -> Result<Self>
    where
        F: FnMut(u64, &mut [usize]),
    {
        let width = m * n;
        if width > ENUMERATION_LIMIT {
            return Err(Error::Guard {
                what: "label enumeration",
                bits: width,
                limit: ENUMERATION_LIMIT,
            });
        }
        if constellation.bits() != m {
            return Err(Error::WidthMismatch {
                expected: m,
                got: constellation.bits(),
            });
        }
        let count = 1usize << width;
        let size = 1usize << m;
        let nn = n as usize;
        let mut symbols = vec![0u32; count * nn];
        let mut label_of_vector = vec![u32::MAX; count];
        let mut buf = vec![0usize; nn];
        for l in 0..count {
            f(l as u64, &mut buf);
            let mut index = 0usize;
            for (i, &s) in buf.iter().enumerate() {
                if s >= size {
                    return Err(Error::InvalidMapping(format!("symbol {s} out of range")));
                }
                symbols[l * nn + i] = s as u32;
                index = index * size + s;
            }
            if label_of_vector[index] != u32::MAX {
                return Err(Error::InvalidMapping(format!(
                    "labels {} and {l} map to the same vector",
                    label_of_vector[index]
                )));
            }
            label_of_vector[index] = l as u32;
        }
        let points = symbols
            .iter()
            .map(|&s| constellation.point(s as usize))
            .collect();
        Ok(Self {
            m,
            n,
            constellation: constellation.clone(),
            symbols,
            points,
            label_of_vector,
        })
    }

    pub fn from_md(mapping: &MdMapping) -> Result<Self> {
        Self::from_fn(
            mapping.m(),
            mapping.n(),
            mapping.constellation(),
            |l, out| mapping.map_index(l, out),
        )
    }

    /// Uniformly random bijection between labels and vectors of
    /// `constellation` (used as given).
    pub fn random<R: Rng + ?Sized>(
        m: u32,
        n: u32,
        constellation: &Constellation,
        rng: &mut R,
    ) -> Result<Self> {
        let width = m * n;
        if width > ENUMERATION_LIMIT {
            return Err(Error::Guard {
                what: "label enumeration",
                bits: width,
                limit: ENUMERATION_LIMIT,
            });
        }
        let mut order: Vec<usize> = (0..1usize << width).collect();
        order.shuffle(rng);
        let size = 1usize << m;
        Self::from_fn(m, n, constellation, |l, out| {
            let mut v = order[l as usize];
            for slot in out.iter_mut().rev() {
                *slot = v % size;
                v /= size;
            }
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn width(&self) -> u32 {
        self.m * self.n
    }

    /// Number of labels, `2^(mN)`.
    pub fn len(&self) -> usize {
        self.label_of_vector.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label_of_vector.is_empty()
    }

    pub fn constellation(&self) -> &Constellation {
        &self.constellation
    }

    #[inline]
    pub fn symbols(&self, label: usize) -> &[u32] {
        let n = self.n as usize;
        &self.symbols[label * n..(label + 1) * n]
    }

    #[inline]
    pub fn points(&self, label: usize) -> &[Complex64] {
        let n = self.n as usize;
        &self.points[label * n..(label + 1) * n]
    }

    /// Label carrying the given symbol vector.
    pub fn label_of(&self, symbols: &[usize]) -> Option<usize> {
        let size = 1usize << self.m;
        let mut index = 0usize;
        for &s in symbols {
            if s >= size {
                return None;
            }
            index = index * size + s;
        }
        self.label_of_vector.get(index).map(|&l| l as usize)
    }

    /// Label carrying a symbol vector given as `u32` indices. The symbols
    /// must be in range.
    #[inline]
    pub fn label_of_symbols(&self, symbols: &[u32]) -> usize {
        let m = self.m;
        let index = symbols
            .iter()
            .fold(0usize, |acc, &s| (acc << m) | s as usize);
        self.label_of_vector[index] as usize
    }

    /// Squared Euclidean distance between the vectors of two labels.
    #[inline]
    pub fn dist2(&self, a: usize, b: usize) -> f64 {
        self.points(a)
            .iter()
            .zip(self.points(b))
            .map(|(p, q)| (p - q).norm_sqr())
            .sum()
    }

    pub fn parity(&self, label: usize) -> Parity {
        Parity::of(label as u64)
    }
}
