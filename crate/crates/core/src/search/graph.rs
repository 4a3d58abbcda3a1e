//! Conflict graph over the lex-ranked k-sets of `[n]`, with one `u128`
//! adjacency row per vertex. A statistic is the number of `j`-cliques among
//! the chosen vertices for some `j`; adding vertex `v` to a chosen set `S`
//! adds the `(j-1)`-cliques inside `adj[v] & S`.

use crate::binom::binom_u128;
use crate::kset::lex_iter;
use crate::{Error, KSet, Result, Statistic};

/// Largest vertex count the bitset search supports.
pub const MAX_VERTICES: u128 = 128;

#[derive(Debug, Clone)]
pub(crate) struct ConflictGraph {
    pub n: u32,
    pub k: u32,
    pub vertices: Vec<KSet>,
    pub adj: Vec<u128>,
    /// Clique size contributed by one new vertex: `q - 1` for matchings, 1
    /// for pair statistics.
    pub order: u32,
}

fn above(v: usize) -> u128 {
    if v >= 127 {
        0
    } else {
        !0u128 << (v + 1)
    }
}

impl ConflictGraph {
    pub fn new(n: u32, k: u32, statistic: Statistic, t: u32, q: u32) -> Result<Self> {
        crate::kset::check_nk(n, k)?;
        let count = binom_u128(n, k);
        if count > MAX_VERTICES {
            return Err(Error::range(
                "C(n,k)",
                format!("search supports at most {MAX_VERTICES} k-sets, C({n},{k}) = {count}"),
            ));
        }
        let vertices: Vec<KSet> = lex_iter(n, k)?.collect();
        let linked = |a: &KSet, b: &KSet| match statistic {
            Statistic::DisjointPairs | Statistic::QMatchings => a.is_disjoint(b),
            Statistic::TDisjointPairs => a.intersection_size(b) < t,
            Statistic::TIntersectingPairs => a.intersection_size(b) >= t,
        };
        let adj = vertices
            .iter()
            .enumerate()
            .map(|(i, a)| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|&(j, b)| i != j && linked(a, b))
                    .fold(0u128, |m, (j, _)| m | 1u128 << j)
            })
            .collect();
        let order = match statistic {
            Statistic::QMatchings => q.saturating_sub(1),
            _ => 1,
        };
        if statistic == Statistic::QMatchings && q == 0 {
            return Err(Error::range("q", "need q >= 1"));
        }
        Ok(ConflictGraph {
            n,
            k,
            vertices,
            adj,
            order,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// `j`-cliques inside `mask`.
    pub fn cliques(&self, mask: u128, j: u32) -> u128 {
        match j {
            0 => 1,
            1 => mask.count_ones() as u128,
            2 => {
                let mut total = 0;
                let mut rest = mask;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    total += (self.adj[v] & rest).count_ones() as u128;
                }
                total
            }
            _ => {
                let mut total = 0;
                let mut rest = mask;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    total += self.cliques(self.adj[v] & mask & above(v), j - 1);
                }
                total
            }
        }
    }

    /// What adding `v` to `chosen` adds to the statistic.
    pub fn increment(&self, v: usize, chosen: u128) -> u128 {
        self.cliques(self.adj[v] & chosen, self.order)
    }

    /// The statistic of a whole vertex set.
    pub fn value(&self, chosen: u128) -> u128 {
        self.cliques(chosen, self.order + 1)
    }

    pub fn mask_of(&self, members: impl IntoIterator<Item = KSet>) -> u128 {
        members
            .into_iter()
            .map(|s| s.lex_rank().0 as usize)
            .fold(0u128, |m, r| m | 1u128 << r)
    }

    pub fn members(&self, chosen: u128) -> Vec<KSet> {
        let mut out = Vec::with_capacity(chosen.count_ones() as usize);
        let mut rest = chosen;
        while rest != 0 {
            out.push(self.vertices[rest.trailing_zeros() as usize]);
            rest &= rest - 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_statistic;
    use crate::family::all_sets;
    use crate::SetFamily;

    #[test]
    fn values_match_counting() {
        let cases = [
            (Statistic::DisjointPairs, 1, 2),
            (Statistic::TDisjointPairs, 2, 2),
            (Statistic::TIntersectingPairs, 2, 2),
            (Statistic::QMatchings, 1, 3),
            (Statistic::QMatchings, 1, 1),
        ];
        for (stat, t, q) in cases {
            let g = ConflictGraph::new(7, 3, stat, t, q).unwrap();
            let mut x = 0x9e37_79b9_7f4a_7c15u64;
            for _ in 0..50 {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                let chosen = (x as u128) & ((1u128 << 35) - 1);
                let fam = SetFamily::new(7, 3, g.members(chosen)).unwrap();
                let want = count_statistic(&fam, stat, t, q).unwrap();
                assert_eq!(g.value(chosen), want, "{stat:?}");
            }
        }
    }

    #[test]
    fn six_two_perfect_matchings() {
        let g = ConflictGraph::new(6, 2, Statistic::QMatchings, 1, 3).unwrap();
        let all = g.mask_of(all_sets(6, 2).unwrap().iter().copied());
        assert_eq!(g.value(all), 15);
    }

    #[test]
    fn too_many_vertices() {
        assert!(ConflictGraph::new(10, 3, Statistic::DisjointPairs, 1, 2).is_ok());
        assert!(ConflictGraph::new(10, 4, Statistic::DisjointPairs, 1, 2).is_err());
    }
}
