//! Structural classification of families: unions of full stars with an
//! intersecting remainder, small covers whose missing sets form an
//! intersecting gap, shared cores, and brute-force isomorphism.

use serde::Serialize;

use crate::binom::binom_u128;
use crate::counting::{count_disjoint_pairs, degree_profile};
use crate::family::{complement_family, for_each_submask_of_size};
use crate::kset::ground_mask;
use crate::params::star_index;
use crate::{Result, SetFamily};

/// `f` contains the full stars at `centers`; what is left is intersecting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullStarWitness {
    pub centers: Vec<u32>,
    pub remainder: SetFamily,
}

/// `cover` has `r` elements and covers `f`; the k-sets meeting the cover but
/// missing from `f` form an intersecting `gap`, each meeting the cover once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverGapWitness {
    pub cover: Vec<u32>,
    pub gap: SetFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureClass {
    FullStars,
    CoverGap,
    Both,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub r: u32,
    pub full_stars: Option<FullStarWitness>,
    pub cover_gap: Option<CoverGapWitness>,
}

impl StructureReport {
    pub fn class(&self) -> StructureClass {
        match (self.full_stars.is_some(), self.cover_gap.is_some()) {
            (true, true) => StructureClass::Both,
            (true, false) => StructureClass::FullStars,
            (false, true) => StructureClass::CoverGap,
            (false, false) => StructureClass::Neither,
        }
    }
}

/// Checks both extremal shapes for a family of size `s` in the range of the
/// `r`-th star. Centers and covers are searched over all of `[n]`, so the
/// result does not depend on labelling.
pub fn structure_check(f: &SetFamily) -> Result<StructureReport> {
    let (n, k) = f.context();
    let r = star_index(n, k, 1, f.len() as u128).expect("t = 1 always has an index");
    let full_stars = find_full_stars(f, r);
    let cover_gap = if r == 0 { None } else { find_cover_gap(f, r)? };
    Ok(StructureReport {
        r,
        full_stars,
        cover_gap,
    })
}

fn is_intersecting(f: &SetFamily) -> bool {
    count_disjoint_pairs(f) == 0
}

fn find_full_stars(f: &SetFamily, r: u32) -> Option<FullStarWitness> {
    let (n, k) = f.context();
    let need = r.saturating_sub(1) as usize;
    let star_size = binom_u128(n - 1, k - 1) as u64;
    let degrees = degree_profile(f, None).expect("t = None is always valid").elements;
    let full: Vec<u32> = (1..=n).filter(|&x| degrees[x as usize - 1] == star_size).collect();
    if full.len() < need {
        return None;
    }
    // try every choice of `need` full stars; the remainder must be intersecting
    let pool = full.iter().fold(0u128, |m, &x| m | 1u128 << (x - 1));
    let mut found = None;
    for_each_submask_of_size(pool, need as u32, |centers| {
        if found.is_some() {
            return;
        }
        let remainder = f.filter(|s| s.mask() & centers == 0);
        if is_intersecting(&remainder) {
            found = Some(FullStarWitness {
                centers: mask_elements(centers),
                remainder,
            });
        }
    });
    found
}

fn find_cover_gap(f: &SetFamily, r: u32) -> Result<Option<CoverGapWitness>> {
    let n = f.n();
    let complement = complement_family(f)?;
    let mut found = None;
    for_each_submask_of_size(ground_mask(n), r, |cover| {
        if found.is_some() || f.iter().any(|s| s.mask() & cover == 0) {
            return;
        }
        let gap = complement.filter(|g| g.mask() & cover != 0);
        if gap.iter().all(|g| (g.mask() & cover).count_ones() == 1) && is_intersecting(&gap) {
            found = Some(CoverGapWitness {
                cover: mask_elements(cover),
                gap,
            });
        }
    });
    Ok(found)
}

fn mask_elements(mask: u128) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() + 1);
        m &= m - 1;
    }
    out
}

/// Elements contained in every member (all of `[n]` for the empty family).
pub fn common_core(f: &SetFamily) -> u128 {
    f.iter().fold(ground_mask(f.n()), |m, s| m & s.mask())
}

/// If all members share a `(t-1)`-set `X`, returns `X` (the lex-least such
/// set) and the family `{F \ X}` relabelled onto `[n - t + 1]` as a
/// `(k - t + 1)`-uniform family.
pub fn shared_core_reduction(f: &SetFamily, t: u32) -> Option<(Vec<u32>, SetFamily)> {
    let (n, k) = f.context();
    if t == 0 || t > k {
        return None;
    }
    let size = t - 1;
    let core = common_core(f);
    if core.count_ones() < size {
        return None;
    }
    let x = mask_elements(core).into_iter().take(size as usize).collect::<Vec<_>>();
    let xmask = x.iter().fold(0u128, |m, &e| m | 1u128 << (e - 1));
    let kept: Vec<u32> = (1..=n).filter(|e| xmask >> (e - 1) & 1 == 0).collect();
    let new_n = n - size;
    let new_k = k - size;
    if size == 0 {
        return Some((x, f.clone()));
    }
    let masks = f.iter().map(|s| {
        kept.iter()
            .enumerate()
            .filter(|(_, &e)| s.contains(e))
            .fold(0u128, |m, (i, _)| m | 1u128 << i)
    });
    Some((x, SetFamily::from_masks(new_n, new_k, masks)))
}

/// Canonical form under relabelling of `[n]`: the degree sequence plus the
/// smallest sorted mask list over all degree-respecting relabellings.
///
/// Exponential in the sizes of the degree classes; meant for `n <= 10`.
pub fn canonical_form(f: &SetFamily) -> (Vec<u64>, Vec<u128>) {
    let n = f.n() as usize;
    let degrees = degree_profile(f, None).expect("t = None is always valid").elements;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
    let sorted_degrees: Vec<u64> = order.iter().map(|&i| degrees[i]).collect();

    let masks = f.masks();
    let mut best: Option<Vec<u128>> = None;
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    assign(0, &sorted_degrees, &degrees, &masks, &mut image, &mut used, &mut best);
    (sorted_degrees, best.unwrap_or_default())
}

/// Position `pos` of the canonical labelling receives an unused element
/// whose degree matches `sorted_degrees[pos]`.
fn assign(
    pos: usize,
    sorted_degrees: &[u64],
    degrees: &[u64],
    masks: &[u128],
    image: &mut [usize],
    used: &mut [bool],
    best: &mut Option<Vec<u128>>,
) {
    let n = degrees.len();
    if pos == n {
        let mut form: Vec<u128> = masks
            .iter()
            .map(|&m| {
                let mut out = 0u128;
                let mut rest = m;
                while rest != 0 {
                    let e = rest.trailing_zeros() as usize;
                    out |= 1u128 << image[e];
                    rest &= rest - 1;
                }
                out
            })
            .collect();
        form.sort_unstable();
        if best.as_ref().is_none_or(|b| form < *b) {
            *best = Some(form);
        }
        return;
    }
    for e in 0..n {
        if !used[e] && degrees[e] == sorted_degrees[pos] {
            used[e] = true;
            image[e] = pos;
            assign(pos + 1, sorted_degrees, degrees, masks, image, used, best);
            used[e] = false;
        }
    }
}

pub fn are_isomorphic(f: &SetFamily, g: &SetFamily) -> bool {
    f.context() == g.context() && f.len() == g.len() && canonical_form(f) == canonical_form(g)
}
