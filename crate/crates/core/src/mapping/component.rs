use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

fn bits_for(size: usize) -> Result<u32> {
    if size < 2 || !size.is_power_of_two() {
        return Err(Error::InvalidMapping(format!(
            "mapping size {size} is not a power of two >= 2"
        )));
    }
    Ok(size.trailing_zeros())
}

fn is_permutation(values: &[usize]) -> bool {
    let mut seen = vec![false; values.len()];
    for &v in values {
        if v >= values.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Bijection between `m`-bit labels and the `2^m` symbols of a constellation.
///
/// Both directions are stored. Constructors check that they agree;
/// [`FullMapping2D::from_raw_parts`] does not, so that inconsistent tables
/// can be represented and caught by the proposition checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullMapping2D {
    m: u32,
    symbol_of: Vec<usize>,
    label_of: Vec<usize>,
}

impl FullMapping2D {
    /// From the table layout: `labels[s]` is the decimal label of symbol `s`.
    pub fn from_labels(labels: Vec<usize>) -> Result<Self> {
        let m = bits_for(labels.len())?;
        if !is_permutation(&labels) {
            return Err(Error::InvalidMapping(
                "labels are not a permutation of 0..2^m".into(),
            ));
        }
        let mut symbol_of = vec![0; labels.len()];
        for (s, &l) in labels.iter().enumerate() {
            symbol_of[l] = s;
        }
        Ok(Self {
            m,
            symbol_of,
            label_of: labels,
        })
    }

    /// `symbols[l]` is the symbol carrying label `l`.
    pub fn from_symbols(symbols: Vec<usize>) -> Result<Self> {
        let m = bits_for(symbols.len())?;
        if !is_permutation(&symbols) {
            return Err(Error::InvalidMapping(
                "symbols are not a permutation of 0..2^m".into(),
            ));
        }
        let mut label_of = vec![0; symbols.len()];
        for (l, &s) in symbols.iter().enumerate() {
            label_of[s] = l;
        }
        Ok(Self {
            m,
            symbol_of: symbols,
            label_of,
        })
    }

    /// Stores both directions as given, without any validation.
    pub fn from_raw_parts(symbol_of: Vec<usize>, label_of: Vec<usize>) -> Self {
        let m = symbol_of.len().max(1).trailing_zeros();
        Self {
            m,
            symbol_of,
            label_of,
        }
    }

    pub fn random<R: Rng + ?Sized>(m: u32, rng: &mut R) -> Self {
        let mut labels: Vec<usize> = (0..1usize << m).collect();
        labels.shuffle(rng);
        Self::from_labels(labels).expect("shuffle yields a permutation")
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> usize {
        self.label_of.len()
    }

    #[inline]
    pub fn symbol(&self, label: usize) -> usize {
        self.symbol_of[label]
    }

    #[inline]
    pub fn label(&self, symbol: usize) -> usize {
        self.label_of[symbol]
    }

    /// Labels in symbol order (the table layout).
    pub fn labels(&self) -> &[usize] {
        &self.label_of
    }

    /// Symbols in label order.
    pub fn symbols(&self) -> &[usize] {
        &self.symbol_of
    }

    /// True when both directions are permutations and invert each other.
    pub fn is_consistent(&self) -> bool {
        self.symbol_of.len() == self.label_of.len()
            && is_permutation(&self.symbol_of)
            && is_permutation(&self.label_of)
            && self
                .symbol_of
                .iter()
                .enumerate()
                .all(|(l, &s)| self.label_of[s] == l)
    }

    /// Exchanges the labels of two symbols.
    pub fn swap_symbols(&mut self, a: usize, b: usize) {
        let (la, lb) = (self.label_of[a], self.label_of[b]);
        self.label_of.swap(a, b);
        self.symbol_of[la] = b;
        self.symbol_of[lb] = a;
    }
}

/// Mapping from `m`-bit labels onto a half of the constellation, two labels
/// per symbol.
///
/// The two labels of a symbol differ only in the first bit, so the mapping
/// is stored by the `(m-1)`-bit residue: `symbol(l) = by_residue[l mod 2^(m-1)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfMapping2D {
    m: u32,
    by_residue: Vec<usize>,
}

impl HalfMapping2D {
    /// `by_residue[r]` is the symbol carrying labels `r` and `r + 2^(m-1)`.
    pub fn from_residues(m: u32, by_residue: Vec<usize>) -> Result<Self> {
        if m < 1 || by_residue.len() != 1usize << (m - 1) {
            return Err(Error::InvalidMapping(format!(
                "half mapping for m={m} needs {} entries, got {}",
                1usize << m.saturating_sub(1),
                by_residue.len()
            )));
        }
        let mut sorted = by_residue.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.iter().any(|&s| s >= 1 << m) {
            return Err(Error::InvalidMapping(
                "half mapping assigns a symbol twice or out of range".into(),
            ));
        }
        Ok(Self { m, by_residue })
    }

    /// Assigns `pairs[j]` to `symbols[j]`. Each pair must be two labels that
    /// differ in the first bit only.
    pub fn from_pairs(m: u32, symbols: &[usize], pairs: &[(usize, usize)]) -> Result<Self> {
        let half = 1usize << (m - 1);
        if pairs.len() != half || symbols.len() != half {
            return Err(Error::Length {
                expected: half,
                got: pairs.len().min(symbols.len()),
            });
        }
        let mut by_residue = vec![usize::MAX; half];
        for (&(a, b), &s) in pairs.iter().zip(symbols) {
            if a >= 2 * half || b >= 2 * half || a ^ b != half {
                return Err(Error::InvalidMapping(format!(
                    "pair ({a},{b}) does not differ in the first bit only"
                )));
            }
            let r = a & (half - 1);
            if by_residue[r] != usize::MAX {
                return Err(Error::InvalidMapping(format!(
                    "pair ({a},{b}) is used twice"
                )));
            }
            by_residue[r] = s;
        }
        Self::from_residues(m, by_residue)
    }

    /// Random assignment of label pairs to the given symbols.
    pub fn random<R: Rng + ?Sized>(m: u32, symbols: &[usize], rng: &mut R) -> Result<Self> {
        let mut by_residue = symbols.to_vec();
        by_residue.shuffle(rng);
        Self::from_residues(m, by_residue)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn half(&self) -> usize {
        self.by_residue.len()
    }

    #[inline]
    pub fn symbol(&self, label: usize) -> usize {
        self.by_residue[label & (self.by_residue.len() - 1)]
    }

    pub fn residues(&self) -> &[usize] {
        &self.by_residue
    }

    pub fn residue_of(&self, symbol: usize) -> Option<usize> {
        self.by_residue.iter().position(|&s| s == symbol)
    }

    /// Symbols covered, ascending.
    pub fn symbol_set(&self) -> Vec<usize> {
        let mut s = self.by_residue.clone();
        s.sort_unstable();
        s
    }

    /// Label pairs `(r, r + 2^(m-1))` listed in the order of `symbols`.
    pub fn pairs_in_order(&self, symbols: &[usize]) -> Option<Vec<(usize, usize)>> {
        let half = self.half();
        symbols
            .iter()
            .map(|&s| self.residue_of(s).map(|r| (r, r + half)))
            .collect()
    }

    /// Exchanges the label pairs of the symbols held by residues `a` and `b`.
    pub fn swap_residues(&mut self, a: usize, b: usize) {
        self.by_residue.swap(a, b);
    }
}
