//! Covers and t-covers, and the partition of a family by its first cover
//! element.

use serde::Serialize;

use crate::family::for_each_submask_of_size;
use crate::kset::lex_cmp_masks;
use crate::{Error, KSet, Result, SetFamily};

/// A cover (`t = 1`) or t-cover found by [`find_min_cover`].
///
/// `centers` are the cover's t-sets in increasing lex order; for element
/// covers they are singletons, see [`CoverWitness::elements`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverWitness {
    pub t: u32,
    pub centers: Vec<KSet>,
    pub is_cover: bool,
}

impl CoverWitness {
    pub fn elements(&self) -> Vec<u32> {
        self.centers.iter().flat_map(|c| c.elements()).collect()
    }

    pub fn size(&self) -> usize {
        self.centers.len()
    }
}

/// A minimum-cardinality cover of `f` with at most `limit` elements, or a
/// minimum t-cover when `t` is given. Among minimum covers the
/// lexicographically smallest list of centers is returned. If none of size
/// `<= limit` exists the witness has `is_cover = false` and no centers.
pub fn find_min_cover(f: &SetFamily, t: Option<u32>, limit: usize) -> Result<CoverWitness> {
    let t = t.unwrap_or(1);
    if t == 0 || t > f.k() {
        return Err(Error::range("t", format!("need 1 <= t <= k = {}, got {t}", f.k())));
    }
    // Only t-sets inside some member can be part of a minimum t-cover.
    let mut candidates: Vec<u128> = Vec::new();
    for s in f {
        for_each_submask_of_size(s.mask(), t, |sub| candidates.push(sub));
    }
    candidates.sort_unstable_by(|a, b| lex_cmp_masks(*a, *b));
    candidates.dedup();

    let members = f.masks();
    for size in 0..=limit.min(candidates.len()) {
        let mut chosen = Vec::with_capacity(size);
        if cover_dfs(&members, &candidates, 0, size, &mut chosen) {
            let centers = chosen
                .iter()
                .map(|&i| KSet::from_mask_unchecked(f.n(), t, candidates[i]))
                .collect();
            return Ok(CoverWitness {
                t,
                centers,
                is_cover: true,
            });
        }
    }
    Ok(CoverWitness {
        t,
        centers: Vec::new(),
        is_cover: false,
    })
}

fn covers(member: u128, centers: &[u128], chosen: &[usize]) -> bool {
    chosen.iter().any(|&i| member & centers[i] == centers[i])
}

/// Lex-ordered search over `size`-subsets of `candidates`. The first member
/// left uncovered must be covered by a later candidate, which prunes branches
/// where none remains.
fn cover_dfs(members: &[u128], candidates: &[u128], start: usize, size: usize, chosen: &mut Vec<usize>) -> bool {
    let uncovered = members.iter().find(|&&m| !covers(m, candidates, chosen));
    let Some(&first_uncovered) = uncovered else {
        return true;
    };
    if chosen.len() == size {
        return false;
    }
    let slots = size - chosen.len();
    if candidates.len() < start + slots {
        return false;
    }
    if !candidates[start..].iter().any(|&c| c & !first_uncovered == 0) {
        return false;
    }
    for i in start..=candidates.len() - slots {
        chosen.push(i);
        if cover_dfs(members, candidates, i + 1, size, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Splits `f` by the first element of `cover` (in the given order) each
/// member contains. Blocks are returned in cover order and may be empty.
pub fn partition_by_min_in_cover(f: &SetFamily, cover: &[u32]) -> Result<Vec<SetFamily>> {
    for &x in cover {
        if x == 0 || x > f.n() {
            return Err(Error::range("cover element", format!("{x} not in [1, {}]", f.n())));
        }
    }
    let mut blocks = vec![Vec::new(); cover.len()];
    for s in f {
        match cover.iter().position(|&x| s.contains(x)) {
            Some(i) => blocks[i].push(*s),
            None => {
                return Err(Error::NotACover {
                    uncovered: s.to_string(),
                })
            }
        }
    }
    Ok(blocks
        .into_iter()
        .map(|members| SetFamily::from_sorted_unchecked(f.n(), f.k(), members))
        .collect())
}
