//! Exact counters for disjoint pairs, t-disjoint and t-intersecting pairs,
//! q-matchings and degrees.
//!
//! Pair statistics count unordered pairs of distinct members. Cross counts
//! ([`cross_disjoint_pairs`], [`t_intersecting_with`], ...) count ordered
//! pairs, and [`t_intersecting_with`] counts a member as t-intersecting with
//! itself.
//!
//! Work splits deterministically by the index of the first (lex-smallest)
//! member of a pair or matching: the `*_with_first` functions return the
//! share of one index, and summing over all indices gives the total.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::binom::binom_u128;
use crate::family::for_each_submask_of_size;
use crate::kset::ground_mask;
use crate::params::Params;
use crate::{Error, KSet, Result, SetFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    DisjointPairs,
    TDisjointPairs,
    TIntersectingPairs,
    QMatchings,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::DisjointPairs => "disjoint_pairs",
            Statistic::TDisjointPairs => "t_disjoint_pairs",
            Statistic::TIntersectingPairs => "t_intersecting_pairs",
            Statistic::QMatchings => "q_matchings",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Formula,
    Oracle,
}

/// An exact count together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub statistic: Statistic,
    pub value: BigUint,
    pub method: Method,
    pub params: Params,
}

#[derive(Serialize, Deserialize)]
struct CountReportJson {
    statistic: Statistic,
    value: String,
    method: Method,
    n: u32,
    k: u32,
    s: String,
    t: u32,
    q: u32,
}

impl Serialize for CountReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CountReportJson {
            statistic: self.statistic,
            value: self.value.to_string(),
            method: self.method,
            n: self.params.n,
            k: self.params.k,
            s: self.params.s.to_string(),
            t: self.params.t,
            q: self.params.q,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CountReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CountReportJson::deserialize(d)?;
        let s: u128 = raw.s.parse().map_err(D::Error::custom)?;
        let params = Params::new(raw.n, raw.k, s)
            .and_then(|p| p.with_q(raw.q))
            .and_then(|p| p.with_t(raw.t))
            .map_err(D::Error::custom)?;
        Ok(CountReport {
            statistic: raw.statistic,
            value: raw.value.parse().map_err(D::Error::custom)?,
            method: raw.method,
            params,
        })
    }
}

impl CountReport {
    fn direct(f: &SetFamily, statistic: Statistic, value: u128, t: u32, q: u32) -> Result<Self> {
        let mut params = Params::new(f.n(), f.k(), f.len() as u128)?.with_q(q)?;
        if t > 1 {
            params = params.with_t(t)?;
        }
        Ok(CountReport {
            statistic,
            value: BigUint::from(value),
            method: Method::Direct,
            params,
        })
    }
}

fn check_t(f: &SetFamily, t: u32) -> Result<()> {
    if t == 0 || (t >= f.k() && t > 1) {
        return Err(Error::range("t", format!("need 1 <= t < k = {}, got {t}", f.k())));
    }
    Ok(())
}

/// Disjoint pairs `{F, G}` with `F` the member at `first`.
pub fn disjoint_pairs_with_first(f: &SetFamily, first: usize) -> u128 {
    let m = f.members();
    let a = m[first].mask();
    m[first + 1..].iter().filter(|g| a & g.mask() == 0).count() as u128
}

pub fn count_disjoint_pairs(f: &SetFamily) -> u128 {
    (0..f.len()).map(|i| disjoint_pairs_with_first(f, i)).sum()
}

pub fn disjoint_pairs(f: &SetFamily) -> CountReport {
    let value = count_disjoint_pairs(f);
    CountReport::direct(f, Statistic::DisjointPairs, value, 1, 2).expect("family context is valid")
}

/// Ordered pairs `(F, G)` in `f × g` with `F ∩ G = ∅`.
pub fn cross_disjoint_pairs(f: &SetFamily, g: &SetFamily) -> Result<u128> {
    f.ensure_same_context(g)?;
    Ok(f.iter()
        .map(|a| g.iter().filter(|b| a.is_disjoint(b)).count() as u128)
        .sum())
}

/// Pairs whose intersection is smaller than `t`, `F` the member at `first`.
pub fn t_disjoint_pairs_with_first(f: &SetFamily, t: u32, first: usize) -> u128 {
    let m = f.members();
    let a = m[first].mask();
    m[first + 1..]
        .iter()
        .filter(|g| (a & g.mask()).count_ones() < t)
        .count() as u128
}

pub fn count_t_disjoint_pairs(f: &SetFamily, t: u32) -> Result<u128> {
    check_t(f, t)?;
    Ok((0..f.len()).map(|i| t_disjoint_pairs_with_first(f, t, i)).sum())
}

pub fn count_t_intersecting_pairs(f: &SetFamily, t: u32) -> Result<u128> {
    let s = f.len() as u128;
    Ok(s * s.saturating_sub(1) / 2 - count_t_disjoint_pairs(f, t)?)
}

pub fn t_disjoint_pairs(f: &SetFamily, t: u32) -> Result<CountReport> {
    let value = count_t_disjoint_pairs(f, t)?;
    CountReport::direct(f, Statistic::TDisjointPairs, value, t, 2)
}

pub fn t_intersecting_pairs(f: &SetFamily, t: u32) -> Result<CountReport> {
    check_t(f, t)?;
    // counted independently of the t-disjoint counter
    let m = f.members();
    let mut value = 0u128;
    for (i, a) in m.iter().enumerate() {
        value += m[i + 1..].iter().filter(|b| a.intersection_size(b) >= t).count() as u128;
    }
    CountReport::direct(f, Statistic::TIntersectingPairs, value, t, 2)
}

/// Members `G` of `f` with `|F ∩ G| >= t`, including `G = F` when present.
pub fn t_intersecting_with(set: &KSet, f: &SetFamily, t: u32) -> u128 {
    f.iter().filter(|g| set.intersection_size(g) >= t).count() as u128
}

/// Members `G` of `f` with `|F ∩ G| < t`.
pub fn t_disjoint_with(set: &KSet, f: &SetFamily, t: u32) -> u128 {
    f.iter().filter(|g| set.intersection_size(g) < t).count() as u128
}

/// Members of `f` disjoint from `set`.
pub fn disjoint_with(set: &KSet, f: &SetFamily) -> u128 {
    f.iter().filter(|g| set.is_disjoint(g)).count() as u128
}

fn matchings_dfs(masks: &[u128], n: u32, k: u32, start: usize, used: u128, remaining: u32) -> u128 {
    if remaining == 0 {
        return 1;
    }
    // not enough free elements left for the remaining sets
    if n - used.count_ones() < k * remaining {
        return 0;
    }
    let mut total = 0;
    for (i, &m) in masks.iter().enumerate().skip(start) {
        if m & used == 0 {
            total += matchings_dfs(masks, n, k, i + 1, used | m, remaining - 1);
        }
    }
    total
}

/// q-matchings whose lex-smallest member is the member at `first`.
pub fn q_matchings_with_first(f: &SetFamily, q: u32, first: usize) -> u128 {
    if q == 0 {
        return 0;
    }
    let masks = f.masks();
    matchings_dfs(&masks, f.n(), f.k(), first + 1, masks[first], q - 1)
}

pub fn count_q_matchings(f: &SetFamily, q: u32) -> u128 {
    if q == 0 {
        return 1;
    }
    if (q as u64) * (f.k() as u64) > f.n() as u64 {
        return 0;
    }
    let masks = f.masks();
    matchings_dfs(&masks, f.n(), f.k(), 0, 0, q)
}

pub fn q_matchings(f: &SetFamily, q: u32) -> Result<CountReport> {
    if q == 0 {
        return Err(Error::range("q", "need q >= 1"));
    }
    let value = count_q_matchings(f, q);
    CountReport::direct(f, Statistic::QMatchings, value, 1, q)
}

/// q-matchings of `f` whose union meets `set`. Matchings may use `set`
/// itself when it is a member.
pub fn matchings_meeting(f: &SetFamily, set: &KSet, q: u32) -> u128 {
    let avoiding = f.filter(|g| g.is_disjoint(set));
    count_q_matchings(f, q) - count_q_matchings(&avoiding, q)
}

/// Dispatches on the statistic; `t` and `q` are read from `params`-style
/// arguments.
pub fn count_statistic(f: &SetFamily, statistic: Statistic, t: u32, q: u32) -> Result<u128> {
    match statistic {
        Statistic::DisjointPairs => Ok(count_disjoint_pairs(f)),
        Statistic::TDisjointPairs => count_t_disjoint_pairs(f, t),
        Statistic::TIntersectingPairs => count_t_intersecting_pairs(f, t),
        Statistic::QMatchings => Ok(count_q_matchings(f, q)),
    }
}

/// Dense t-set degrees are only stored up to this many t-sets.
pub const DENSE_TSET_LIMIT: u128 = 1_000_000;

/// Element degrees `|F(x)|`, optionally with t-set degrees `|F(X)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    /// `elements[x - 1] = |F(x)|`.
    pub elements: Vec<u64>,
    pub tsets: Option<TSetDegrees>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TSetDegrees {
    /// Indexed by the lex rank of the t-set in `C([n], t)`.
    Dense { t: u32, counts: Vec<u64> },
    /// Too many t-sets to store; query with [`t_set_degree`].
    OnDemand { t: u32 },
}

impl DegreeProfile {
    pub fn degree(&self, x: u32) -> u64 {
        self.elements[x as usize - 1]
    }

    /// Degree of a t-set from the dense table, if one was built.
    pub fn tset_degree(&self, center: &KSet) -> Option<u64> {
        match &self.tsets {
            Some(TSetDegrees::Dense { t, counts }) if center.k() == *t => Some(counts[center.lex_rank().0 as usize]),
            _ => None,
        }
    }
}

pub fn degree_profile(f: &SetFamily, t: Option<u32>) -> Result<DegreeProfile> {
    let mut elements = vec![0u64; f.n() as usize];
    for s in f {
        for x in s.elements() {
            elements[x as usize - 1] += 1;
        }
    }
    let tsets = match t {
        None => None,
        Some(t) if t == 0 || t > f.k() => {
            return Err(Error::range("t", format!("need 1 <= t <= k = {}, got {t}", f.k())))
        }
        Some(t) if binom_u128(f.n(), t) <= DENSE_TSET_LIMIT => {
            let mut counts = vec![0u64; binom_u128(f.n(), t) as usize];
            for s in f {
                for_each_submask_of_size(s.mask(), t, |sub| {
                    let center = KSet::from_mask_unchecked(f.n(), t, sub);
                    counts[center.lex_rank().0 as usize] += 1;
                });
            }
            Some(TSetDegrees::Dense { t, counts })
        }
        Some(t) => Some(TSetDegrees::OnDemand { t }),
    };
    Ok(DegreeProfile { elements, tsets })
}

/// `|F(X)|`: members containing `center`.
pub fn t_set_degree(f: &SetFamily, center: &KSet) -> u64 {
    f.iter().filter(|s| s.is_superset_of_mask(center.mask())).count() as u64
}

/// Members not containing any element of `elements`.
pub fn avoiding(f: &SetFamily, elements: &[u32]) -> SetFamily {
    let mask = elements.iter().fold(0u128, |m, &x| m | 1u128 << (x - 1)) & ground_mask(f.n());
    f.filter(|s| s.mask() & mask == 0)
}
