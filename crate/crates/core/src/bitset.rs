//! Dense fixed-width bit rows used for ancestor/descendant closures.

use alloc::vec;
use alloc::vec::Vec;

const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A square bit matrix stored row-major, one `width`-bit row per term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    width: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, width: usize) -> Self {
        let words_per_row = words_for(width);
        BitMatrix {
            width,
            words_per_row,
            words: vec![0; rows * words_per_row],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> usize {
        self.words.len().checked_div(self.words_per_row).unwrap_or(0)
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        let start = r * self.words_per_row;
        &self.words[start..start + self.words_per_row]
    }

    #[inline]
    pub fn contains(&self, r: usize, col: usize) -> bool {
        debug_assert!(col < self.width);
        let w = self.words[r * self.words_per_row + col / WORD_BITS];
        (w >> (col % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub(crate) fn insert(&mut self, r: usize, col: usize) {
        debug_assert!(col < self.width);
        self.words[r * self.words_per_row + col / WORD_BITS] |= 1 << (col % WORD_BITS);
    }

    /// `row(dst) |= row(src)`.
    pub(crate) fn union_rows(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let n = self.words_per_row;
        let (d, s) = (dst * n, src * n);
        for i in 0..n {
            let v = self.words[s + i];
            self.words[d + i] |= v;
        }
    }

    pub fn count_row(&self, r: usize) -> usize {
        popcount(self.row(r))
    }

    /// Column indices set in row `r`, ascending.
    pub fn iter_row(&self, r: usize) -> Ones<'_> {
        Ones::new(self.row(r))
    }
}

pub fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// `|a ∪ b|` without materializing the union.
pub fn union_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x | y).count_ones() as usize)
        .sum()
}

/// `|a ∩ b|`.
pub fn intersection_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

/// Iterator over the set bit positions of a word slice.
pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> Ones<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        let cur = words.first().copied().unwrap_or(0);
        Ones { words, idx: 0, cur }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD_BITS + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}
