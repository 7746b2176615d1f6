//! Fixed-capacity bitsets over element indices.

use std::fmt;

/// A set of element indices `0..capacity`, stored as packed words.
///
/// Equality, hashing and ordering are structural, so two sets over the same
/// capacity compare as sets. Ordering is lexicographic on the words, which is
/// what certificate tie-breaking uses.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet {
    words: Vec<u64>,
    capacity: usize,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl ElemSet {
    pub fn empty(capacity: usize) -> Self {
        Self {
            words: vec![0; words_for(capacity)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::empty(capacity);
        for i in 0..capacity {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(capacity: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(capacity);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.capacity && (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.capacity, "index {i} out of range {}", self.capacity);
        let w = &mut self.words[i >> 6];
        let bit = 1u64 << (i & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.capacity {
            self.words[i >> 6] &= !(1u64 << (i & 63));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Word-level helpers on raw slices, used by the search kernels which keep
/// many domains in one flat buffer.
pub(crate) mod raw {
    #[inline]
    pub fn or_into(dst: &mut [u64], src: &[u64]) {
        for (a, b) in dst.iter_mut().zip(src) {
            *a |= b;
        }
    }

    #[inline]
    pub fn and_into(dst: &mut [u64], src: &[u64]) -> bool {
        let mut changed = false;
        for (a, b) in dst.iter_mut().zip(src) {
            let n = *a & b;
            changed |= n != *a;
            *a = n;
        }
        changed
    }

    #[inline]
    pub fn is_zero(s: &[u64]) -> bool {
        s.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn count(s: &[u64]) -> u32 {
        s.iter().map(|w| w.count_ones()).sum()
    }

    #[inline]
    pub fn get(s: &[u64], i: usize) -> bool {
        (s[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(s: &mut [u64], i: usize) {
        s[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn clear(s: &mut [u64]) {
        s.iter_mut().for_each(|w| *w = 0);
    }

    pub fn ones(s: &[u64]) -> impl Iterator<Item = usize> + '_ {
        s.iter().enumerate().flat_map(|(wi, &w)| {
            let mut cur = w;
            std::iter::from_fn(move || {
                if cur == 0 {
                    None
                } else {
                    let tz = cur.trailing_zeros() as usize;
                    cur &= cur - 1;
                    Some(wi * 64 + tz)
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = ElemSet::empty(130);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        assert_eq!(s.len(), 3);
        let t = ElemSet::from_indices(130, [0, 64, 100, 129]);
        assert!(s.is_subset(&t));
        assert!(!t.is_subset(&s));
        let mut d = t.clone();
        d.difference_with(&s);
        assert_eq!(d.to_vec(), vec![100]);
        assert_eq!(raw::ones(t.words()).collect::<Vec<_>>(), t.to_vec());
    }
}
