//! Fixed-width bit vectors.
//!
//! Subsets of poset carriers and elements of downset frames are bit
//! vectors, so meets and joins of frame elements are word-parallel `&`
//! and `|`. The width is fixed at construction; all sets over the same
//! carrier share it.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    width: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(width: usize) -> usize {
    width.div_ceil(64)
}

impl Bits {
    pub fn empty(width: usize) -> Self {
        Bits {
            width,
            words: vec![0; word_count(width)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut b = Bits::empty(width);
        for i in 0..width {
            b.insert(i);
        }
        b
    }

    pub fn singleton(width: usize, i: usize) -> Self {
        let mut b = Bits::empty(width);
        b.insert(i);
        b
    }

    pub fn from_indices(width: usize, indices: &[usize]) -> Self {
        let mut b = Bits::empty(width);
        for &i in indices {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.width);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.width);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.width);
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn union(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.width, other.width);
        Bits {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn inter(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.width, other.width);
        Bits {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn minus(&self, other: &Bits) -> Bits {
        debug_assert_eq!(self.width, other.width);
        Bits {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn complement(&self) -> Bits {
        Bits::full(self.width).minus(self)
    }

    #[inline]
    pub fn union_in_place(&mut self, other: &Bits) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    #[inline]
    pub fn inter_in_place(&mut self, other: &Bits) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    #[inline]
    pub fn is_subset(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width).filter(move |&i| self.get(i))
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    /// Total order compatible with inclusion: compares cardinality first,
    /// then the words as a big integer. Used to give downset frames a
    /// deterministic element numbering that is a linear extension of `⊆`.
    pub fn canonical_cmp(&self, other: &Bits) -> Ordering {
        debug_assert_eq!(self.width, other.width);
        self.count()
            .cmp(&other.count())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for i in self.iter_ones() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ops() {
        let a = Bits::from_indices(70, &[0, 3, 65]);
        let b = Bits::from_indices(70, &[3, 64]);
        assert_eq!(a.inter(&b).to_indices(), vec![3]);
        assert_eq!(a.union(&b).to_indices(), vec![0, 3, 64, 65]);
        assert_eq!(a.minus(&b).to_indices(), vec![0, 65]);
        assert!(Bits::from_indices(70, &[3]).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.count(), 3);
    }

    #[test]
    fn canonical_order_extends_inclusion() {
        let a = Bits::from_indices(5, &[1]);
        let b = Bits::from_indices(5, &[1, 3]);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(
            Bits::empty(5).canonical_cmp(&Bits::full(5)),
            Ordering::Less
        );
    }
}
