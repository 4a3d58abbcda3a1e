//! k-subsets of `[n]` as bitmasks, lexicographic comparison and combinadic
//! ranking.
//!
//! Elements are 1-based: element `i` lives in bit `i - 1`. With that layout
//! the lexicographic order (`A < B` iff the least element of `A xor B` lies
//! in `A`) is decided by the lowest differing bit, and the colexicographic
//! order coincides with numeric order of the masks.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::binom::{binom_u128, SMALL_LIMIT};
use crate::{Error, Result};

/// Largest supported ground set.
pub const MAX_N: u32 = SMALL_LIMIT;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSet {
    mask: u128,
    n: u8,
    k: u8,
}

/// 0-based position of a k-set in the lexicographic order on `C([n], k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LexRank(pub u128);

pub(crate) fn check_nk(n: u32, k: u32) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::range("n", format!("need 1 <= n <= {MAX_N}, got {n}")));
    }
    if k == 0 || k > n {
        return Err(Error::range("k", format!("need 1 <= k <= n = {n}, got {k}")));
    }
    Ok(())
}

/// Mask with the elements `1..=n` set.
#[inline]
pub fn ground_mask(n: u32) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

impl KSet {
    /// Builds a k-set from its elements (any order, 1-based). The
    /// cardinality `k` is the number of distinct elements given.
    pub fn new(n: u32, elements: &[u32]) -> Result<Self> {
        let mut mask = 0u128;
        for &x in elements {
            if x == 0 || x > n || x > MAX_N {
                return Err(Error::range("element", format!("{x} not in [1, {n}]")));
            }
            let bit = 1u128 << (x - 1);
            if mask & bit != 0 {
                return Err(Error::Shape(format!("element {x} repeated")));
            }
            mask |= bit;
        }
        Self::from_mask(n, mask)
    }

    /// Builds a k-set from a mask; `k` is its popcount.
    pub fn from_mask(n: u32, mask: u128) -> Result<Self> {
        let k = mask.count_ones();
        check_nk(n, k.max(1))?;
        if k == 0 {
            return Err(Error::Shape("empty set".into()));
        }
        if mask & !ground_mask(n) != 0 {
            return Err(Error::range(
                "element",
                format!("highest element {} exceeds n = {n}", 128 - mask.leading_zeros()),
            ));
        }
        Ok(KSet {
            mask,
            n: n as u8,
            k: k as u8,
        })
    }

    pub(crate) fn from_mask_unchecked(n: u32, k: u32, mask: u128) -> Self {
        debug_assert_eq!(mask.count_ones(), k);
        KSet {
            mask,
            n: n as u8,
            k: k as u8,
        }
    }

    /// The lex-first k-set `{1, ..., k}`.
    pub fn first(n: u32, k: u32) -> Result<Self> {
        check_nk(n, k)?;
        Ok(Self::from_mask_unchecked(n, k, ground_mask(k)))
    }

    #[inline]
    pub fn mask(&self) -> u128 {
        self.mask
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n as u32
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k as u32
    }

    pub fn context(&self) -> (u32, u32) {
        (self.n(), self.k())
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        x >= 1 && x <= self.n() && self.mask >> (x - 1) & 1 == 1
    }

    #[inline]
    pub fn min_element(&self) -> u32 {
        self.mask.trailing_zeros() + 1
    }

    #[inline]
    pub fn max_element(&self) -> u32 {
        128 - self.mask.leading_zeros()
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> Elements {
        Elements { rest: self.mask }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.elements().collect()
    }

    #[inline]
    pub fn is_disjoint(&self, other: &KSet) -> bool {
        self.mask & other.mask == 0
    }

    #[inline]
    pub fn intersection_size(&self, other: &KSet) -> u32 {
        (self.mask & other.mask).count_ones()
    }

    /// True if every element of `other` lies in `self`.
    #[inline]
    pub fn is_superset_of_mask(&self, other: u128) -> bool {
        self.mask & other == other
    }

    /// Image under the relabelling `i -> n + 1 - i`.
    pub fn reversed(&self) -> KSet {
        let n = self.n();
        let mask = self.mask.reverse_bits() >> (128 - n);
        Self::from_mask_unchecked(n, self.k(), mask)
    }

    /// Lexicographic rank in `C([n], k)`.
    pub fn lex_rank(&self) -> LexRank {
        let n = self.n() as i64;
        let k = self.k() as i64;
        let mut rank = 0u128;
        let mut prev = 0i64;
        for (j, e) in self.elements().enumerate() {
            let j = j as i64 + 1;
            let e = e as i64;
            // sets agreeing on the first j-1 elements whose j-th element is
            // x in (prev, e) come first
            for x in prev + 1..e {
                rank += binom_u128((n - x) as u32, (k - j) as u32);
            }
            prev = e;
        }
        LexRank(rank)
    }

    /// Inverse of [`KSet::lex_rank`].
    pub fn lex_unrank(rank: LexRank, n: u32, k: u32) -> Result<KSet> {
        check_nk(n, k)?;
        let total = binom_u128(n, k);
        if rank.0 >= total {
            return Err(Error::range(
                "rank",
                format!("{} not below C({n},{k}) = {total}", rank.0),
            ));
        }
        let mut rem = rank.0;
        let mut mask = 0u128;
        let mut x = 1u32;
        for j in 1..=k {
            loop {
                let block = binom_u128(n - x, k - j);
                if rem < block {
                    break;
                }
                rem -= block;
                x += 1;
            }
            mask |= 1u128 << (x - 1);
            x += 1;
        }
        Ok(Self::from_mask_unchecked(n, k, mask))
    }

    /// Successor in lexicographic order, or `None` for the lex-last set.
    pub fn lex_next(&self) -> Option<KSet> {
        let n = self.n();
        let k = self.k() as usize;
        let mut elems = self.to_vec();
        // rightmost position that can still be increased
        let mut i = k;
        while i > 0 {
            i -= 1;
            if elems[i] < n - (k - 1 - i) as u32 {
                elems[i] += 1;
                for j in i + 1..k {
                    elems[j] = elems[j - 1] + 1;
                }
                let mask = elems.iter().fold(0u128, |m, &e| m | 1u128 << (e - 1));
                return Some(Self::from_mask_unchecked(n, k as u32, mask));
            }
        }
        None
    }

    /// Successor in colexicographic order (Gosper's hack on the mask).
    pub fn colex_next(&self) -> Option<KSet> {
        let x = self.mask;
        let low = x & x.wrapping_neg();
        let ripple = x.checked_add(low)?;
        let ones = ((x ^ ripple) >> 2) >> low.trailing_zeros();
        let next = ripple | ones;
        if next & !ground_mask(self.n()) != 0 || next == 0 {
            return None;
        }
        Some(Self::from_mask_unchecked(self.n(), self.k(), next))
    }
}

/// Lexicographic comparison: `a < b` iff the least element of the symmetric
/// difference lies in `a`.
pub fn lex_compare(a: &KSet, b: &KSet) -> Result<Ordering> {
    if a.context() != b.context() {
        return Err(context_error(a.context(), b.context()));
    }
    Ok(lex_cmp_masks(a.mask, b.mask))
}

#[inline]
pub(crate) fn lex_cmp_masks(a: u128, b: u128) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        Ordering::Equal
    } else if a & diff & diff.wrapping_neg() != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

pub(crate) fn context_error(left: (u32, u32), right: (u32, u32)) -> Error {
    Error::ContextMismatch {
        left_n: left.0,
        left_k: left.1,
        right_n: right.0,
        right_k: right.1,
    }
}

impl PartialOrd for KSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by context first, then lexicographically.
impl Ord for KSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.context()
            .cmp(&other.context())
            .then_with(|| lex_cmp_masks(self.mask, other.mask))
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Serialises as the ascending element list; the ground set is carried by
/// the enclosing family or report.
impl Serialize for KSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.elements())
    }
}

/// Comma-separated elements, the line format of family files.
impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

pub struct Elements {
    rest: u128,
}

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.rest == 0 {
            return None;
        }
        let tz = self.rest.trailing_zeros();
        self.rest &= self.rest - 1;
        Some(tz + 1)
    }
}

/// All k-sets of `[n]` in lexicographic order.
pub fn lex_iter(n: u32, k: u32) -> Result<impl Iterator<Item = KSet>> {
    let first = KSet::first(n, k)?;
    Ok(std::iter::successors(Some(first), |s| s.lex_next()))
}

/// All k-sets of `[n]` in colexicographic order.
pub fn colex_iter(n: u32, k: u32) -> Result<impl Iterator<Item = KSet>> {
    let first = KSet::first(n, k)?;
    Ok(std::iter::successors(Some(first), |s| s.colex_next()))
}
