use std::fmt;

use crate::error::{Error, Result};

/// Widest label the crate handles.
pub const MAX_LABEL_BITS: u32 = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(value: u64) -> Self {
        if value.count_ones().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Fixed-width binary label.
///
/// Bit position 0 is the first (leftmost) bit and is the most significant
/// bit of the decimal value, so a label is below `2^(width-1)` exactly when
/// its first bit is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    value: u64,
    width: u32,
}

impl Label {
    pub fn new(value: u64, width: u32) -> Result<Self> {
        if width == 0 || width > MAX_LABEL_BITS {
            return Err(Error::Config(format!(
                "label width must be in 1..={MAX_LABEL_BITS}, got {width}"
            )));
        }
        if value >> width != 0 {
            return Err(Error::Config(format!(
                "value {value} does not fit in {width} bits"
            )));
        }
        Ok(Self { value, width })
    }

    /// Builds a label from bits listed first to last.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let width = bits.len() as u32;
        let mut value = 0u64;
        for &b in bits {
            if b > 1 {
                return Err(Error::Config(format!("bit value {b} is not binary")));
            }
            value = (value << 1) | b as u64;
        }
        Self::new(value, width)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn width(self) -> u32 {
        self.width
    }

    /// Bit at position `i`, counting from the first bit.
    pub fn bit(self, i: u32) -> u8 {
        debug_assert!(i < self.width);
        ((self.value >> (self.width - 1 - i)) & 1) as u8
    }

    pub fn bits(self) -> Vec<u8> {
        (0..self.width).map(|i| self.bit(i)).collect()
    }

    pub fn weight(self) -> u32 {
        self.value.count_ones()
    }

    pub fn parity(self) -> Parity {
        Parity::of(self.value)
    }

    pub fn distance(self, other: Label) -> Result<u32> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                got: other.width,
            });
        }
        Ok((self.value ^ other.value).count_ones())
    }

    /// Copy with bit `i` inverted.
    pub fn flip(self, i: u32) -> Label {
        debug_assert!(i < self.width);
        Label {
            value: self.value ^ (1 << (self.width - 1 - i)),
            width: self.width,
        }
    }

    /// The `index`-th group of `m` bits, counting from the first bit.
    pub fn chunk(self, m: u32, index: u32) -> u64 {
        let groups = self.width / m;
        debug_assert!(index < groups);
        (self.value >> (m * (groups - 1 - index))) & ((1 << m) - 1)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.width {
            write!(f, "{}", self.bit(i))?;
        }
        Ok(())
    }
}

pub fn hamming_weight(l: Label) -> u32 {
    l.weight()
}

pub fn hamming_distance(a: Label, b: Label) -> Result<u32> {
    a.distance(b)
}

pub fn parity(l: Label) -> Parity {
    l.parity()
}
