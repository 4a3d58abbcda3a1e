//! Families of k-sets and the extremal constructions.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::binom::binom_u128;
use crate::kset::{check_nk, colex_iter, context_error, ground_mask, lex_cmp_masks, lex_iter, KSet};
use crate::{Error, Result};

/// An ordered, duplicate-free collection of k-sets on a common ground set,
/// kept sorted in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: u32,
    k: u32,
    members: Vec<KSet>,
}

impl SetFamily {
    pub fn empty(n: u32, k: u32) -> Result<Self> {
        check_nk(n, k)?;
        Ok(SetFamily {
            n,
            k,
            members: Vec::new(),
        })
    }

    /// Sorts and deduplicates `sets`; every set must live in `C([n], k)`.
    pub fn new(n: u32, k: u32, sets: impl IntoIterator<Item = KSet>) -> Result<Self> {
        check_nk(n, k)?;
        let mut members = Vec::new();
        for s in sets {
            if s.context() != (n, k) {
                return Err(context_error((n, k), s.context()));
            }
            members.push(s);
        }
        members.sort_unstable_by(|a, b| lex_cmp_masks(a.mask(), b.mask()));
        members.dedup();
        Ok(SetFamily { n, k, members })
    }

    /// Builds a family from element lists.
    pub fn from_elements<I, S>(n: u32, k: u32, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut out = Vec::new();
        for s in sets {
            let set = KSet::new(n, s.as_ref())?;
            if set.k() != k {
                return Err(Error::Shape(format!(
                    "set {set} has {} elements, expected {k}",
                    set.k()
                )));
            }
            out.push(set);
        }
        Self::new(n, k, out)
    }

    pub(crate) fn from_sorted_unchecked(n: u32, k: u32, members: Vec<KSet>) -> Self {
        debug_assert!(members
            .windows(2)
            .all(|w| lex_cmp_masks(w[0].mask(), w[1].mask()).is_lt()));
        SetFamily { n, k, members }
    }

    pub(crate) fn from_masks(n: u32, k: u32, masks: impl IntoIterator<Item = u128>) -> Self {
        let mut members: Vec<KSet> = masks.into_iter().map(|m| KSet::from_mask_unchecked(n, k, m)).collect();
        members.sort_unstable_by(|a, b| lex_cmp_masks(a.mask(), b.mask()));
        members.dedup();
        SetFamily { n, k, members }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn context(&self) -> (u32, u32) {
        (self.n, self.k)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[KSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, KSet> {
        self.members.iter()
    }

    pub fn masks(&self) -> Vec<u128> {
        self.members.iter().map(KSet::mask).collect()
    }

    pub fn contains(&self, set: &KSet) -> bool {
        set.context() == self.context()
            && self
                .members
                .binary_search_by(|m| lex_cmp_masks(m.mask(), set.mask()))
                .is_ok()
    }

    pub(crate) fn contains_mask(&self, mask: u128) -> bool {
        self.members.binary_search_by(|m| lex_cmp_masks(m.mask(), mask)).is_ok()
    }

    pub fn ensure_same_context(&self, other: &SetFamily) -> Result<()> {
        if self.context() != other.context() {
            Err(context_error(self.context(), other.context()))
        } else {
            Ok(())
        }
    }

    /// Adds a set, keeping the order. Returns false if it was present.
    pub fn insert(&mut self, set: KSet) -> Result<bool> {
        if set.context() != self.context() {
            return Err(context_error(self.context(), set.context()));
        }
        match self.members.binary_search_by(|m| lex_cmp_masks(m.mask(), set.mask())) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.members.insert(pos, set);
                Ok(true)
            }
        }
    }

    pub fn remove(&mut self, set: &KSet) -> bool {
        match self.members.binary_search_by(|m| lex_cmp_masks(m.mask(), set.mask())) {
            Ok(pos) if set.context() == self.context() => {
                self.members.remove(pos);
                true
            }
            _ => false,
        }
    }

    /// Members satisfying a predicate, as a new family.
    pub fn filter(&self, mut keep: impl FnMut(&KSet) -> bool) -> SetFamily {
        let members = self.members.iter().copied().filter(|s| keep(s)).collect();
        SetFamily::from_sorted_unchecked(self.n, self.k, members)
    }

    /// Image under the relabelling `i -> n + 1 - i`.
    pub fn reversed(&self) -> SetFamily {
        Self::from_masks(self.n, self.k, self.members.iter().map(|s| s.reversed().mask()))
    }

    /// Image under an element permutation; `perm[i - 1]` is the image of `i`.
    pub fn relabel(&self, perm: &[u32]) -> Result<SetFamily> {
        if perm.len() != self.n as usize {
            return Err(Error::Shape(format!(
                "permutation has {} entries, expected {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = 0u128;
        for &p in perm {
            if p == 0 || p > self.n || seen >> (p - 1) & 1 == 1 {
                return Err(Error::Shape(format!("{perm:?} is not a permutation of [{}]", self.n)));
            }
            seen |= 1u128 << (p - 1);
        }
        let masks = self
            .members
            .iter()
            .map(|s| s.elements().fold(0u128, |m, e| m | 1u128 << (perm[e as usize - 1] - 1)));
        Ok(Self::from_masks(self.n, self.k, masks))
    }
}

impl std::fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SetFamily(n={}, k={}) ", self.n, self.k)?;
        f.debug_list().entries(self.members.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a KSet;
    type IntoIter = std::slice::Iter<'a, KSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// JSON shape shared with the family file format: `{"n":..,"k":..,"sets":[[..],..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyJson {
    pub n: u32,
    pub k: u32,
    pub sets: Vec<Vec<u32>>,
}

impl From<&SetFamily> for FamilyJson {
    fn from(f: &SetFamily) -> Self {
        FamilyJson {
            n: f.n,
            k: f.k,
            sets: f.members.iter().map(KSet::to_vec).collect(),
        }
    }
}

impl Serialize for SetFamily {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SetFamily {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = FamilyJson::deserialize(deserializer)?;
        crate::io::family_from_json_value(raw).map_err(serde::de::Error::custom)
    }
}

fn check_enumerable(n: u32, k: u32) -> Result<u128> {
    check_nk(n, k)?;
    let total = binom_u128(n, k);
    if total > 1 << 26 {
        return Err(Error::range(
            "C(n,k)",
            format!("C({n},{k}) = {total} is too large to materialise"),
        ));
    }
    Ok(total)
}

/// Every k-set of `[n]`.
pub fn all_sets(n: u32, k: u32) -> Result<SetFamily> {
    check_enumerable(n, k)?;
    Ok(SetFamily::from_sorted_unchecked(n, k, lex_iter(n, k)?.collect()))
}

/// The `s` lexicographically smallest k-sets.
pub fn lex_segment(n: u32, k: u32, s: u128) -> Result<SetFamily> {
    check_nk(n, k)?;
    let total = binom_u128(n, k);
    if s > total {
        return Err(Error::range("s", format!("need s <= C({n},{k}) = {total}, got {s}")));
    }
    if s > 1 << 26 {
        return Err(Error::range("s", format!("{s} sets is too many to materialise")));
    }
    let members = lex_iter(n, k)?.take(s as usize).collect();
    Ok(SetFamily::from_sorted_unchecked(n, k, members))
}

/// The `s` colexicographically smallest k-sets.
pub fn colex_segment(n: u32, k: u32, s: u128) -> Result<SetFamily> {
    check_nk(n, k)?;
    let total = binom_u128(n, k);
    if s > total {
        return Err(Error::range("s", format!("need s <= C({n},{k}) = {total}, got {s}")));
    }
    if s > 1 << 26 {
        return Err(Error::range("s", format!("{s} sets is too many to materialise")));
    }
    Ok(SetFamily::from_masks(
        n,
        k,
        colex_iter(n, k)?.take(s as usize).map(|x| x.mask()),
    ))
}

/// Size of `{A : |A ∩ [r]| >= ell}` without materialising it.
pub fn ell_ball_size(n: u32, k: u32, r: u32, ell: u32) -> u128 {
    (ell..=k.min(r))
        .map(|i| binom_u128(r, i) * binom_u128(n - r, k - i))
        .sum()
}

/// All k-sets meeting `[r]` in at least `ell` elements.
pub fn ell_ball(n: u32, k: u32, r: u32, ell: u32) -> Result<SetFamily> {
    check_enumerable(n, k)?;
    if ell == 0 || ell > r.min(k) || r > n {
        return Err(Error::range(
            "ell",
            format!("need 1 <= ell <= min(r, k) and r <= n; got r={r}, ell={ell}, k={k}, n={n}"),
        ));
    }
    let prefix = ground_mask(r);
    let members = lex_iter(n, k)?
        .filter(|s| (s.mask() & prefix).count_ones() >= ell)
        .collect();
    Ok(SetFamily::from_sorted_unchecked(n, k, members))
}

/// Union of the full t-stars with the given centers.
pub fn t_star_union(n: u32, k: u32, centers: &[KSet]) -> Result<SetFamily> {
    check_nk(n, k)?;
    let Some(first) = centers.first() else {
        return SetFamily::empty(n, k);
    };
    let t = first.k();
    let mut seen = BTreeSet::new();
    for c in centers {
        if c.n() != n {
            return Err(context_error((n, k), c.context()));
        }
        if c.k() != t || t >= k {
            return Err(Error::Shape(format!("center {c} must have size t = {t} < k = {k}")));
        }
        if !seen.insert(c.mask()) {
            return Err(Error::Shape(format!("center {c} repeated")));
        }
    }
    let mut masks = BTreeSet::new();
    for c in centers {
        let free = ground_mask(n) & !c.mask();
        for_each_submask_of_size(free, k - t, |extra| {
            masks.insert(c.mask() | extra);
        });
    }
    Ok(SetFamily::from_masks(n, k, masks))
}

/// Calls `f` on every submask of `pool` with exactly `size` bits.
pub(crate) fn for_each_submask_of_size(pool: u128, size: u32, mut f: impl FnMut(u128)) {
    fn rec(pool: u128, size: u32, acc: u128, f: &mut dyn FnMut(u128)) {
        if size == 0 {
            f(acc);
            return;
        }
        if pool.count_ones() < size {
            return;
        }
        let low = pool & pool.wrapping_neg();
        let rest = pool ^ low;
        rec(rest, size - 1, acc | low, f);
        rec(rest, size, acc, f);
    }
    rec(pool, size, 0, &mut f);
}

/// `C([n], k)` minus the members of `f`.
pub fn complement_family(f: &SetFamily) -> Result<SetFamily> {
    check_enumerable(f.n, f.k)?;
    let members = lex_iter(f.n, f.k)?.filter(|s| !f.contains_mask(s.mask())).collect();
    Ok(SetFamily::from_sorted_unchecked(f.n, f.k, members))
}
