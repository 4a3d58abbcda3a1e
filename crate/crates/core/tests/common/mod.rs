//! Independent oracles for integration tests. Everything here works on
//! plain `Vec<u32>` sets and never calls the crate's counters.

#![allow(dead_code)]

use ekr_core::{KSet, SetFamily};
use rand::seq::index;
use rand::Rng;

/// All k-subsets of `[n]` in lexicographic order, by recursion.
pub fn combos(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn rec(from: u32, n: u32, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == k {
            out.push(cur.clone());
            return;
        }
        for x in from..=n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn meet(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

pub fn pairs_where(sets: &[Vec<u32>], pred: impl Fn(&[u32], &[u32]) -> bool) -> u128 {
    let mut c = 0;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if pred(&sets[i], &sets[j]) {
                c += 1;
            }
        }
    }
    c
}

pub fn disj(sets: &[Vec<u32>]) -> u128 {
    pairs_where(sets, |a, b| meet(a, b) == 0)
}

pub fn tdisj(sets: &[Vec<u32>], t: usize) -> u128 {
    pairs_where(sets, |a, b| meet(a, b) < t)
}

/// q-matchings by enumerating q-subsets of indices.
pub fn qmatch(sets: &[Vec<u32>], q: usize) -> u128 {
    fn rec(sets: &[Vec<u32>], start: usize, left: usize, chosen: &mut Vec<usize>) -> u128 {
        if left == 0 {
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(i, &a)| chosen[i + 1..].iter().all(|&b| meet(&sets[a], &sets[b]) == 0));
            return ok as u128;
        }
        let mut total = 0;
        for i in start..sets.len() {
            chosen.push(i);
            total += rec(sets, i + 1, left - 1, chosen);
            chosen.pop();
        }
        total
    }
    rec(sets, 0, q, &mut Vec::new())
}

pub fn family(n: u32, k: u32, sets: &[Vec<u32>]) -> SetFamily {
    SetFamily::from_elements(n, k, sets.iter().map(|s| s.as_slice())).unwrap()
}

pub fn as_vecs(f: &SetFamily) -> Vec<Vec<u32>> {
    f.iter().map(KSet::to_vec).collect()
}

pub fn random_sets(rng: &mut impl Rng, all: &[Vec<u32>], s: usize) -> Vec<Vec<u32>> {
    let mut idx: Vec<usize> = index::sample(rng, all.len(), s).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| all[i].clone()).collect()
}

/// Minimum of `value` over every `s`-subset of `all`.
pub fn brute_min(all: &[Vec<u32>], s: usize, value: &dyn Fn(&[Vec<u32>]) -> u128) -> u128 {
    fn rec(
        all: &[Vec<u32>],
        start: usize,
        left: usize,
        cur: &mut Vec<Vec<u32>>,
        value: &dyn Fn(&[Vec<u32>]) -> u128,
        best: &mut u128,
    ) {
        if left == 0 {
            *best = (*best).min(value(cur));
            return;
        }
        for i in start..=all.len() - left {
            cur.push(all[i].clone());
            rec(all, i + 1, left - 1, cur, value, best);
            cur.pop();
        }
    }
    let mut best = u128::MAX;
    rec(all, 0, s, &mut Vec::new(), value, &mut best);
    best
}

/// Exact binomial by the multiplicative formula.
pub fn choose(n: i64, k: i64) -> u128 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        r = r * (n as u128 - i) / (i + 1);
    }
    r
}
