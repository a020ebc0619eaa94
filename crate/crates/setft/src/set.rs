//! Ground sets and subset masks.
//!
//! A [`SubsetMask`] is the universal index type of this crate: it names a
//! subset of the ground set `N = {x_1, .., x_n}` as an `n`-bit vector.
//! Element `x_i` lives at bit position `i - 1` (the crate uses 0-based
//! element indices throughout; JSON files use 1-based indices).
//!
//! Dense vectors are ordered by the lexicographic order on set indicator
//! vectors with `x_1` most significant: `rank(∅) = 0`, `rank({x_n}) = 1`,
//! `rank(N) = 2^n - 1`. `Ord` on [`SubsetMask`] agrees with that rank.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Ground set `{x_1, .., x_n}` with optional element labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("ground set needs at least one element"));
        }
        Ok(GroundSet { n, labels: None })
    }

    /// Ground set whose size is the number of labels; labels must be unique.
    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut set = GroundSet::new(labels.len())?;
        let mut seen = std::collections::HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::invalid(format!("duplicate element label {label:?}")));
            }
        }
        set.labels = Some(labels);
        Ok(set)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Label of element `e` (0-based), if labels were provided.
    pub fn label(&self, e: usize) -> Option<&str> {
        self.labels
            .as_ref()
            .and_then(|l| l.get(e))
            .map(String::as_str)
    }

    pub fn empty(&self) -> SubsetMask {
        SubsetMask::empty(self.n)
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }
}

/// A subset of the ground set as a fixed-capacity bit vector.
///
/// Masks are immutable values for most purposes; the mutating helpers
/// exist for construction. All binary operations require both operands
/// to share the same ground-set size.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    n: usize,
    words: Vec<u64>,
}

impl SubsetMask {
    pub fn empty(n: usize) -> Self {
        SubsetMask {
            n,
            words: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut mask = SubsetMask {
            n,
            words: vec![u64::MAX; words_for(n)],
        };
        mask.clear_tail();
        mask
    }

    /// Single element `e` (0-based). Panics if `e >= n`.
    pub fn singleton(n: usize, e: usize) -> Self {
        let mut mask = SubsetMask::empty(n);
        mask.insert(e);
        mask
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Self {
        let mut mask = SubsetMask::empty(n);
        for e in elements {
            mask.insert(e);
        }
        mask
    }

    /// The chain prefix `{x_1, .., x_len}`.
    pub fn prefix(n: usize, len: usize) -> Self {
        assert!(len <= n, "prefix length {len} exceeds ground set size {n}");
        SubsetMask::from_elements(n, 0..len)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cardinality(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.n && self.words[e / WORD_BITS] >> (e % WORD_BITS) & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        assert!(e < self.n, "element {e} out of range for n = {}", self.n);
        self.words[e / WORD_BITS] |= 1 << (e % WORD_BITS);
    }

    pub fn remove(&mut self, e: usize) {
        assert!(e < self.n, "element {e} out of range for n = {}", self.n);
        self.words[e / WORD_BITS] &= !(1 << (e % WORD_BITS));
    }

    /// Copy with element `e` added.
    pub fn with(&self, e: usize) -> Self {
        let mut mask = self.clone();
        mask.insert(e);
        mask
    }

    /// Copy with element `e` removed.
    pub fn without(&self, e: usize) -> Self {
        let mut mask = self.clone();
        mask.remove(e);
        mask
    }

    fn zip_words(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.n, other.n, "mask size mismatch");
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| op(a, b))
            .collect();
        SubsetMask { n: self.n, words }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a & b)
    }

    /// Set difference `self \ other`.
    pub fn difference(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a ^ b)
    }

    /// Complement with respect to the ground set.
    pub fn complement(&self) -> Self {
        let mut mask = SubsetMask {
            n: self.n,
            words: self.words.iter().map(|&w| !w).collect(),
        };
        mask.clear_tail();
        mask
    }

    fn clear_tail(&mut self) {
        let used = self.n % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        assert_eq!(self.n, other.n, "mask size mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        assert_eq!(self.n, other.n, "mask size mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & b == 0)
    }

    pub fn intersection_size(&self, other: &Self) -> usize {
        assert_eq!(self.n, other.n, "mask size mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// True when `|self ∩ other|` is odd.
    pub fn intersection_parity(&self, other: &Self) -> bool {
        self.intersection_size(other) % 2 == 1
    }

    /// Elements of the subset in ascending order (0-based).
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + bit)
                }
            })
        })
    }

    /// Lexicographic rank: position of this subset in the dense vector
    /// order. Only defined for ground sets small enough to index densely.
    pub fn lex_rank(&self) -> usize {
        assert!(
            self.n < usize::BITS as usize,
            "lexicographic ranks need n < {}, got {}",
            usize::BITS,
            self.n
        );
        let mut rank = 0usize;
        for e in self.elements() {
            rank |= 1 << (self.n - 1 - e);
        }
        rank
    }

    /// Inverse of [`SubsetMask::lex_rank`].
    pub fn from_lex_rank(n: usize, rank: usize) -> Self {
        assert!(n < usize::BITS as usize, "n too large for dense ranks");
        assert!(rank < 1usize << n, "rank {rank} out of range for n = {n}");
        let mut mask = SubsetMask::empty(n);
        for e in 0..n {
            if rank >> (n - 1 - e) & 1 == 1 {
                mask.insert(e);
            }
        }
        mask
    }
}

/// All subsets of a ground set of size `n`, in dense (rank) order.
pub fn all_masks(n: usize) -> impl Iterator<Item = SubsetMask> {
    (0..1usize << n).map(move |r| SubsetMask::from_lex_rank(n, r))
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (&a, &b) in self.words.iter().zip(&other.words) {
                let diff = a ^ b;
                if diff != 0 {
                    // Lowest differing element is the most significant
                    // position of the indicator vector; whoever holds it
                    // sorts later.
                    let bit = diff & diff.wrapping_neg();
                    return if b & bit != 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n={})", self, self.n)
    }
}
