//! The Kneser graph `K(n, k)`: k-sets of `[n]` joined when disjoint. A
//! family is a vertex set and its disjoint pairs are the induced edges.

use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::binom::{binom, binom_i, binom_u128};
use crate::kset::{check_nk, ground_mask, lex_iter};
use crate::{Error, KSet, LexRank, Result, SetFamily};

/// Above this many vertices the explicit edge list is refused.
pub const EDGE_LIST_LIMIT: u128 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KneserGraph {
    n: u32,
    k: u32,
}

impl KneserGraph {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        check_nk(n, k)?;
        Ok(KneserGraph { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn vertex_count(&self) -> u128 {
        binom_u128(self.n, self.k)
    }

    pub fn degree(&self) -> u128 {
        if self.n < 2 * self.k {
            0
        } else {
            binom_u128(self.n - self.k, self.k)
        }
    }

    /// `N d / 2`, exact.
    pub fn edge_count(&self) -> BigUint {
        BigUint::from(self.vertex_count()) * self.degree() / 2u32
    }

    pub fn adjacent(&self, a: &KSet, b: &KSet) -> bool {
        a.is_disjoint(b)
    }

    /// Every edge `(u, v)` with `u < v` as lex ranks, sorted.
    pub fn edges(&self) -> Result<Vec<(u128, u128)>> {
        let count = self.vertex_count();
        if count > EDGE_LIST_LIMIT {
            return Err(Error::range(
                "vertices",
                format!("edge list needs N <= {EDGE_LIST_LIMIT}, got {count}"),
            ));
        }
        let vertices: Vec<KSet> = lex_iter(self.n, self.k)?.collect();
        let mut out = Vec::new();
        for (u, a) in vertices.iter().enumerate() {
            for (v, b) in vertices.iter().enumerate().skip(u + 1) {
                if a.is_disjoint(b) {
                    out.push((u as u128, v as u128));
                }
            }
        }
        Ok(out)
    }

    /// Writes the edge list, one `u v` line per edge.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> Result<()> {
        for (u, v) in self.edges()? {
            writeln!(w, "{u} {v}")?;
        }
        Ok(())
    }
}

/// Number of edges of `K(n, k)` inside `f`.
///
/// Counted from the graph side: for each vertex either its neighbours in the
/// complement of its own support are enumerated and looked up in `f`, or,
/// when `f` is smaller than a neighbourhood, the pairs of `f` are scanned.
pub fn induced_edges(g: &KneserGraph, f: &SetFamily) -> Result<u128> {
    if f.context() != (g.n, g.k) {
        return Err(Error::ContextMismatch {
            left_n: g.n,
            left_k: g.k,
            right_n: f.n(),
            right_k: f.k(),
        });
    }
    let d = g.degree();
    let ranks: Vec<LexRank> = f.iter().map(KSet::lex_rank).collect();
    let twice = if d <= f.len() as u128 {
        let mut sorted = ranks.clone();
        sorted.sort_unstable();
        let mut total = 0u128;
        for set in f {
            let outside = ground_mask(g.n) & !set.mask();
            let mut hits = 0u128;
            crate::family::for_each_submask_of_size(outside, g.k, |m| {
                let nb = KSet::from_mask_unchecked(g.n, g.k, m);
                if sorted.binary_search(&nb.lex_rank()).is_ok() {
                    hits += 1;
                }
            });
            total += hits;
        }
        total
    } else {
        let masks = f.masks();
        let mut total = 0u128;
        for (i, a) in masks.iter().enumerate() {
            total += masks[i + 1..].iter().filter(|&&b| a & b == 0).count() as u128;
        }
        2 * total
    };
    Ok(twice / 2)
}

/// One eigenvalue of `K(n, k)` with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eigenvalue {
    pub index: u32,
    #[serde(serialize_with = "ser_display")]
    pub value: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub multiplicity: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Spectrum {
    pub n: u32,
    pub k: u32,
    /// Indexed by `i = 0..=k`; values may repeat across indices.
    pub eigenvalues: Vec<Eigenvalue>,
}

impl Spectrum {
    pub fn min_eigenvalue(&self) -> BigInt {
        self.eigenvalues
            .iter()
            .map(|e| e.value.clone())
            .min()
            .unwrap_or_default()
    }

    pub fn total_multiplicity(&self) -> BigUint {
        self.eigenvalues.iter().map(|e| &e.multiplicity).sum()
    }

    pub fn trace(&self) -> BigInt {
        self.eigenvalues
            .iter()
            .map(|e| &e.value * BigInt::from(e.multiplicity.clone()))
            .sum()
    }

    /// Distinct eigenvalues with summed multiplicities, in decreasing order.
    pub fn grouped(&self) -> Vec<(BigInt, BigUint)> {
        let mut out: Vec<(BigInt, BigUint)> = Vec::new();
        for e in &self.eigenvalues {
            match out.iter_mut().find(|(v, _)| *v == e.value) {
                Some((_, m)) => *m += &e.multiplicity,
                None => out.push((e.value.clone(), e.multiplicity.clone())),
            }
        }
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }
}

/// `λ_i = (-1)^i C(n-k-i, k-i)` with multiplicity `C(n,i) - C(n,i-1)`.
pub fn spectrum(n: u32, k: u32) -> Result<Spectrum> {
    check_nk(n, k)?;
    if n < 2 * k {
        return Err(Error::range("n", format!("need n >= 2k, got n={n}, k={k}")));
    }
    let (ni, ki) = (n as i64, k as i64);
    let eigenvalues = (0..=ki)
        .map(|i| {
            let magnitude = BigInt::from(binom_i(ni - ki - i, ki - i));
            let value = if i % 2 == 0 { magnitude } else { -magnitude };
            let multiplicity = binom(n as u64, i as u64) - binom_i(ni, i - 1);
            Eigenvalue {
                index: i as u32,
                value,
                multiplicity,
            }
        })
        .collect();
    Ok(Spectrum { n, k, eigenvalues })
}

/// `max(0, (s/2)(d s / N + λ_min (1 - s/N)))`: every `s`-vertex subset of a
/// `d`-regular graph with least eigenvalue `λ_min` induces at least this many
/// edges. Below `n = 2k` the graph has no edges and the bound is `0`.
pub fn spectral_lower_bound(n: u32, k: u32, s: u128) -> Result<BigRational> {
    check_nk(n, k)?;
    let big_n = binom_u128(n, k);
    if s > big_n {
        return Err(Error::range("s", format!("need s <= C({n},{k}) = {big_n}, got {s}")));
    }
    if n < 2 * k || s == 0 {
        return Ok(BigRational::zero());
    }
    let lambda_min = spectrum(n, k)?.min_eigenvalue();
    let d = BigInt::from(binom_u128(n - k, k));
    let big_n = BigInt::from(big_n);
    let s = BigInt::from(s);
    let frac = BigRational::new(s.clone(), big_n);
    let one = BigRational::from_integer(1.into());
    let inner = BigRational::from_integer(d) * &frac + BigRational::from_integer(lambda_min) * (one - &frac);
    let value = BigRational::new(s, 2.into()) * inner;
    Ok(if value.is_negative() {
        BigRational::zero()
    } else {
        value
    })
}

/// Edges from `f` to its complement: `s d - 2 disj(f)`.
pub fn bipartite_part_value(g: &KneserGraph, f: &SetFamily) -> Result<u128> {
    let inside = induced_edges(g, f)?;
    Ok(f.len() as u128 * g.degree() - 2 * inside)
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
