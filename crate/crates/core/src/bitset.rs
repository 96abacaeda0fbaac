//! Dense fixed-universe bit sets.
//!
//! Every subset of a finite group is stored as one of these, indexed by the
//! group's canonical element indices. Besides the usual set algebra the type
//! supports cyclic rotation of whole words, which is what makes translates in
//! cyclic groups cost `O(n / 64)` instead of `O(n)`.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl BitSet {
    /// Empty set over the universe `0..len`.
    pub fn new(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// The whole universe `0..len`.
    pub fn full(len: usize) -> Self {
        let mut s = Self {
            len,
            words: vec![!0; word_count(len)],
        };
        s.trim();
        s
    }

    /// Builds a set from indices. Panics on an index outside the universe.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut s = Self::new(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Builds a set from the low `len` bits of `mask` (`len <= 64`).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD, "mask universe too large");
        let mut s = Self::new(len);
        if len > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    /// The set as a single machine word, for universes of at most 64 elements.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Size of the universe.
    #[inline]
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.len, "index {i} outside universe of size {}", self.len);
        let (w, b) = (i / WORD, i % WORD);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn remove(&mut self, i: usize) -> bool {
        if i >= self.len {
            return false;
        }
        let (w, b) = (i / WORD, i % WORD);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    /// Number of members.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    /// Least member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    fn check_universe(&self, other: &BitSet) {
        assert_eq!(self.len, other.len, "bit sets over different universes");
    }

    pub fn union_with(&mut self, other: &BitSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    /// Complement within the universe.
    pub fn complement(&self) -> BitSet {
        let mut s = BitSet {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `self |= src << shift`, dropping bits shifted past the universe.
    fn or_shl(&mut self, src: &BitSet, shift: usize) {
        let (ws, bs) = (shift / WORD, shift % WORD);
        let n = self.words.len();
        for w in (0..n.saturating_sub(ws)).rev() {
            let v = src.words[w];
            if v == 0 {
                continue;
            }
            self.words[w + ws] |= v << bs;
            if bs != 0 && w + ws + 1 < n {
                self.words[w + ws + 1] |= v >> (WORD - bs);
            }
        }
        self.trim();
    }

    /// `self |= src >> shift`.
    fn or_shr(&mut self, src: &BitSet, shift: usize) {
        let (ws, bs) = (shift / WORD, shift % WORD);
        let n = self.words.len();
        for w in 0..n.saturating_sub(ws) {
            let lo = src.words[w + ws] >> bs;
            let hi = if bs != 0 && w + ws + 1 < n {
                src.words[w + ws + 1] << (WORD - bs)
            } else {
                0
            };
            self.words[w] |= lo | hi;
        }
    }

    /// `self |= rotate_left(src, shift)` on the cyclic universe `0..len`,
    /// i.e. adds `{(x + shift) mod len : x in src}`.
    pub fn or_rotated(&mut self, src: &BitSet, shift: usize) {
        self.check_universe(src);
        if self.len == 0 {
            return;
        }
        let shift = shift % self.len;
        if shift == 0 {
            self.union_with(src);
            return;
        }
        self.or_shl(src, shift);
        self.or_shr(src, self.len - shift);
    }

    /// `{(x + shift) mod len : x in self}`.
    pub fn rotated(&self, shift: usize) -> BitSet {
        let mut out = BitSet::new(self.len);
        out.or_rotated(self, shift);
        out
    }
}

/// Numeric order: the set is read as the integer `sum 2^i`.
impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + t);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a BitSet {
    type Item = usize;
    type IntoIter = Ones<'a>;

    fn into_iter(self) -> Ones<'a> {
        self.iter()
    }
}
