//! Enumeration of symbol vectors in order of distance from a fixed vector.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::constellation::Constellation;

/// Most symbols per vector supported by the walk.
pub(crate) const MAX_N: usize = 12;

/// For every symbol, all symbols sorted by distance from it.
pub(crate) struct NeighborOrder {
    size: usize,
    n: usize,
    rows: Vec<(f64, u32)>,
}

impl NeighborOrder {
    pub(crate) fn new(constellation: &Constellation, n: usize) -> Self {
        assert!(
            (1..=MAX_N).contains(&n),
            "vector length {n} outside 1..={MAX_N}"
        );
        let size = constellation.len();
        let mut rows = Vec::with_capacity(size * size);
        for s in 0..size {
            let mut row: Vec<(f64, u32)> = (0..size)
                .map(|t| (constellation.dist2(s, t), t as u32))
                .collect();
            row.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            rows.extend(row);
        }
        Self { size, n, rows }
    }

    #[inline]
    fn entry(&self, symbol: u32, rank: u16) -> (f64, u32) {
        self.rows[symbol as usize * self.size + rank as usize]
    }

    /// Vectors in non-decreasing squared distance from `origin`, starting
    /// with `origin` itself.
    pub(crate) fn walk(&self, origin: &[u32]) -> Walk<'_> {
        debug_assert_eq!(origin.len(), self.n);
        let mut o = [0u32; MAX_N];
        o[..self.n].copy_from_slice(origin);
        let mut heap = BinaryHeap::new();
        heap.push(Entry {
            dist: 0.0,
            ranks: [0; MAX_N],
            pos: 0,
        });
        Walk {
            order: self,
            origin: o,
            heap,
        }
    }
}

#[derive(Clone, Copy)]
struct Entry {
    dist: f64,
    ranks: [u16; MAX_N],
    pos: u8,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // smallest distance first out of the max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.ranks.cmp(&self.ranks))
    }
}

pub(crate) struct Walk<'a> {
    order: &'a NeighborOrder,
    origin: [u32; MAX_N],
    heap: BinaryHeap<Entry>,
}

impl Walk<'_> {
    fn distance(&self, ranks: &[u16; MAX_N]) -> f64 {
        (0..self.order.n)
            .map(|i| self.order.entry(self.origin[i], ranks[i]).0)
            .sum()
    }

    /// Next vector as `(squared distance, symbols)`; only the first `n`
    /// symbols are meaningful.
    pub(crate) fn next_vector(&mut self) -> Option<(f64, [u32; MAX_N])> {
        let top = self.heap.pop()?;
        let n = self.order.n;
        // each rank tuple has one parent: the tuple with its last nonzero
        // coordinate decremented, so children only advance from `pos` onward
        for j in top.pos as usize..n {
            if (top.ranks[j] as usize) + 1 < self.order.size {
                let mut ranks = top.ranks;
                ranks[j] += 1;
                let dist = self.distance(&ranks);
                self.heap.push(Entry {
                    dist,
                    ranks,
                    pos: j as u8,
                });
            }
        }
        let mut symbols = [0u32; MAX_N];
        for (i, slot) in symbols.iter_mut().enumerate().take(n) {
            *slot = self.order.entry(self.origin[i], top.ranks[i]).1;
        }
        Some((top.dist, symbols))
    }
}
