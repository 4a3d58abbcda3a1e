//! Exhaustive checks of the three statements about unions of `r` full
//! t-stars, over every choice of `r` distinct centers:
//!
//! * star union: such a union has at least
//!   `C(n-t+1, k-t+1) - C(n-t-r+1, k-t+1)` members, with equality exactly
//!   when the centers share a common `(t-1)`-set;
//! * add set: a k-set `F` outside the union creates at least as many
//!   t-disjoint pairs with it as a set `L ⊇ [t-1]` outside the first `r` lex
//!   t-stars does with them, with equality exactly when the two extended
//!   families are isomorphic;
//! * full stars: the union has at least as many t-disjoint pairs as the lex
//!   segment of the same size, with equality exactly when they are
//!   isomorphic.
//!
//! The statements are asymptotic in `n`; at small `n` a failure is data,
//! not a bug, and is reported rather than raised.

use std::collections::hash_map::Entry;

use serde::Serialize;

use crate::binom::{binom_i, binom_u128};
use crate::counting::{count_t_disjoint_pairs, t_disjoint_with};
use crate::family::{lex_segment, t_star_union};
use crate::kset::{check_nk, lex_iter};
use crate::params::u128_string;
use crate::structure::{are_isomorphic, canonical_form};
use crate::{Error, KSet, Result, SetFamily};

fn check_args(n: u32, k: u32, t: u32, r: u32) -> Result<u128> {
    check_nk(n, k)?;
    if t == 0 || t >= k {
        return Err(Error::range("t", format!("need 1 <= t < k = {k}, got {t}")));
    }
    let centers = binom_u128(n, t);
    if r == 0 || r as u128 > centers {
        return Err(Error::range(
            "r",
            format!("need 1 <= r <= C({n},{t}) = {centers}, got {r}"),
        ));
    }
    Ok(centers)
}

/// Number of center tuples, refusing enumerations over `budget` work units
/// (tuples times k-sets).
fn tuple_count(n: u32, k: u32, t: u32, r: u32, budget: u64) -> Result<u128> {
    let centers = check_args(n, k, t, r)?;
    let tuples = crate::binom::binom(centers as u64, r as u64);
    let work = &tuples * binom_u128(n, k);
    if work > budget.into() {
        return Err(Error::Budget(format!(
            "{tuples} center tuples times C({n},{k}) sets exceeds the budget of {budget}"
        )));
    }
    Ok(tuples.try_into().expect("bounded by the budget"))
}

/// Calls `f` on every `r`-subset of the t-sets of `[n]`, in lex order.
fn for_each_tuple(n: u32, t: u32, r: u32, mut f: impl FnMut(&[KSet])) -> Result<()> {
    let centers: Vec<KSet> = lex_iter(n, t)?.collect();
    let mut idx: Vec<usize> = (0..r as usize).collect();
    let m = centers.len();
    let r = r as usize;
    let mut buf = Vec::with_capacity(r);
    loop {
        buf.clear();
        buf.extend(idx.iter().map(|&i| centers[i]));
        f(&buf);
        let Some(i) = (0..r).rev().find(|&i| idx[i] < m - r + i) else {
            return Ok(());
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The centers share a `(t-1)`-set.
fn shares_core(centers: &[KSet], t: u32) -> bool {
    let core = centers.iter().fold(!0u128, |m, c| m & c.mask());
    core.count_ones() >= t - 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarUnionReport {
    pub n: u32,
    pub k: u32,
    pub t: u32,
    pub r: u32,
    pub tuples: u64,
    /// `C(n-t+1, k-t+1) - C(n-t-r+1, k-t+1)`.
    #[serde(with = "u128_string")]
    pub formula: u128,
    #[serde(with = "u128_string")]
    pub minimum: u128,
    pub minimizers: u64,
    pub shared_core_tuples: u64,
    /// Minimizers are exactly the shared-core tuples.
    pub characterization_holds: bool,
    pub holds: bool,
}

pub fn verify_star_union(n: u32, k: u32, t: u32, r: u32, budget: u64) -> Result<StarUnionReport> {
    let tuples = tuple_count(n, k, t, r, budget)?;
    let (ni, ki, ti, ri) = (n as i64, k as i64, t as i64, r as i64);
    let formula: u128 = (binom_i(ni - ti + 1, ki - ti + 1) - binom_i(ni - ti - ri + 1, ki - ti + 1))
        .try_into()
        .expect("fits in u128");
    let sets: Vec<u128> = lex_iter(n, k)?.map(|s| s.mask()).collect();
    let mut sizes = Vec::with_capacity(tuples as usize);
    for_each_tuple(n, t, r, |centers| {
        let size = sets
            .iter()
            .filter(|&&s| centers.iter().any(|c| s & c.mask() == c.mask()))
            .count() as u128;
        sizes.push((size, shares_core(centers, t)));
    })?;
    let minimum = sizes.iter().map(|x| x.0).min().unwrap_or(0);
    let minimizers = sizes.iter().filter(|x| x.0 == minimum).count() as u64;
    let shared = sizes.iter().filter(|x| x.1).count() as u64;
    let characterization_holds = sizes.iter().all(|&(size, core)| (size == minimum) == core);
    Ok(StarUnionReport {
        n,
        k,
        t,
        r,
        tuples: tuples as u64,
        formula,
        minimum,
        minimizers,
        shared_core_tuples: shared,
        characterization_holds,
        holds: minimum == formula && characterization_holds,
    })
}

/// Cheap isomorphism test against a fixed target, with the degree sequence
/// as prefilter.
struct IsoTarget {
    family: SetFamily,
    form: (Vec<u64>, Vec<u128>),
}

impl IsoTarget {
    fn new(family: SetFamily) -> Self {
        let form = canonical_form(&family);
        IsoTarget { family, form }
    }

    fn matches(&self, f: &SetFamily) -> bool {
        if f.len() != self.family.len() {
            return false;
        }
        let degrees = sorted_degrees(f);
        degrees == self.form.0 && canonical_form(f) == self.form
    }
}

fn sorted_degrees(f: &SetFamily) -> Vec<u64> {
    let mut d = vec![0u64; f.n() as usize];
    for s in f {
        for e in s.elements() {
            d[e as usize - 1] += 1;
        }
    }
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Lex union of the first `r` t-stars, centers `[t-1] ∪ {t-1+i}`.
fn lex_star_union(n: u32, k: u32, t: u32, r: u32) -> Result<SetFamily> {
    let (ni, ki, ti, ri) = (n as i64, k as i64, t as i64, r as i64);
    let size: u128 = (binom_i(ni - ti + 1, ki - ti + 1) - binom_i(ni - ti - ri + 1, ki - ti + 1))
        .try_into()
        .expect("fits in u128");
    lex_segment(n, k, size)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AddSetReport {
    pub n: u32,
    pub k: u32,
    pub t: u32,
    pub r: u32,
    /// `(centers, F)` pairs examined.
    pub cases: u64,
    /// `disj_t(L, lex union)`.
    #[serde(with = "u128_string")]
    pub lex_value: u128,
    #[serde(with = "u128_string")]
    pub minimum: u128,
    /// Cases with `disj_t(F, union) < lex_value`.
    pub below_lex: u64,
    pub equality_cases: u64,
    /// Equality cases whose extended family is not isomorphic to the lex one.
    pub equality_not_isomorphic: u64,
    /// Isomorphic extended families with a strictly larger count.
    pub isomorphic_not_equal: u64,
    pub holds: bool,
}

pub fn verify_add_set(n: u32, k: u32, t: u32, r: u32, budget: u64) -> Result<AddSetReport> {
    tuple_count(n, k, t, r, budget)?;
    let lex = lex_star_union(n, k, t, r)?;
    let prefix = crate::kset::ground_mask(t - 1);
    let l = lex_iter(n, k)?
        .find(|s| s.mask() & prefix == prefix && !lex.contains(s))
        .ok_or_else(|| Error::range("r", format!("no set through [t-1] lies outside the first {r} t-stars")))?;
    let lex_value = t_disjoint_with(&l, &lex, t);
    let mut target = lex.clone();
    target.insert(l)?;
    let target = IsoTarget::new(target);

    let all: Vec<KSet> = lex_iter(n, k)?.collect();
    let mut report = AddSetReport {
        n,
        k,
        t,
        r,
        cases: 0,
        lex_value,
        minimum: u128::MAX,
        below_lex: 0,
        equality_cases: 0,
        equality_not_isomorphic: 0,
        isomorphic_not_equal: 0,
        holds: false,
    };
    let mut failure = None;
    for_each_tuple(n, t, r, |centers| {
        if failure.is_some() {
            return;
        }
        let union = match t_star_union(n, k, centers) {
            Ok(u) => u,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        for f in all.iter().filter(|f| !union.contains(f)) {
            report.cases += 1;
            let value = t_disjoint_with(f, &union, t);
            report.minimum = report.minimum.min(value);
            let mut extended = union.clone();
            extended.insert(*f).expect("same context");
            let iso = target.matches(&extended);
            if value < lex_value {
                report.below_lex += 1;
            }
            if value == lex_value {
                report.equality_cases += 1;
                if !iso {
                    report.equality_not_isomorphic += 1;
                }
            } else if iso {
                report.isomorphic_not_equal += 1;
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    report.holds = report.below_lex == 0 && report.equality_not_isomorphic == 0 && report.isomorphic_not_equal == 0;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullStarsReport {
    pub n: u32,
    pub k: u32,
    pub t: u32,
    pub r: u32,
    pub tuples: u64,
    /// Tuples whose union has fewer t-disjoint pairs than the lex segment.
    pub below_lex: u64,
    pub equality_cases: u64,
    pub equality_not_isomorphic: u64,
    pub holds: bool,
}

pub fn verify_full_stars(n: u32, k: u32, t: u32, r: u32, budget: u64) -> Result<FullStarsReport> {
    let tuples = tuple_count(n, k, t, r, budget)?;
    let mut report = FullStarsReport {
        n,
        k,
        t,
        r,
        tuples: tuples as u64,
        below_lex: 0,
        equality_cases: 0,
        equality_not_isomorphic: 0,
        holds: false,
    };
    // lex values and canonical forms by union size
    let mut by_size: std::collections::HashMap<usize, (u128, SetFamily)> = Default::default();
    let mut failure = None;
    for_each_tuple(n, t, r, |centers| {
        if failure.is_some() {
            return;
        }
        let result = (|| -> Result<()> {
            let union = t_star_union(n, k, centers)?;
            if let Entry::Vacant(slot) = by_size.entry(union.len()) {
                let lex = lex_segment(n, k, union.len() as u128)?;
                let v = count_t_disjoint_pairs(&lex, t)?;
                slot.insert((v, lex));
            }
            let (lex_value, lex) = &by_size[&union.len()];
            let value = count_t_disjoint_pairs(&union, t)?;
            if value < *lex_value {
                report.below_lex += 1;
            }
            // isomorphism preserves the count, so only equality cases can be
            // isomorphic to the lex segment
            if value == *lex_value {
                report.equality_cases += 1;
                if !are_isomorphic(&union, lex) {
                    report.equality_not_isomorphic += 1;
                }
            }
            Ok(())
        })();
        if let Err(e) = result {
            failure = Some(e);
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    report.holds = report.below_lex == 0 && report.equality_not_isomorphic == 0;
    Ok(report)
}
