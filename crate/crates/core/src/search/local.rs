//! Single-swap descent: replace one member by one non-member while that
//! lowers the statistic.

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{family_from_mask, ConflictGraph, Mode, SearchCertificate, SearchConfig};
use crate::{Params, Result, SetFamily, Statistic};

/// Descends from `chosen` to a fixed point of single swaps. Swaps are tried
/// in a seeded random order and the first improving one is taken. Returns
/// the final mask and the number of swaps evaluated.
fn descend(g: &ConflictGraph, mut chosen: u128, rng: &mut ChaCha8Rng) -> (u128, u64) {
    let n_vertices = g.len();
    let mut evaluated = 0u64;
    loop {
        let members: Vec<usize> = (0..n_vertices).filter(|&v| chosen >> v & 1 == 1).collect();
        let outside: Vec<usize> = (0..n_vertices).filter(|&v| chosen >> v & 1 == 0).collect();
        let mut swaps: Vec<(usize, usize)> = members
            .iter()
            .flat_map(|&x| outside.iter().map(move |&y| (x, y)))
            .collect();
        swaps.shuffle(rng);
        let improving = swaps.into_iter().find(|&(x, y)| {
            evaluated += 1;
            let rest = chosen & !(1u128 << x);
            g.increment(y, rest) < g.increment(x, rest)
        });
        match improving {
            Some((x, y)) => chosen = chosen & !(1u128 << x) | 1u128 << y,
            None => return (chosen, evaluated),
        }
    }
}

/// A family with statistic no larger than `f`'s that no single swap
/// improves. Deterministic for a given `seed`.
pub fn local_search_improve(f: &SetFamily, statistic: Statistic, t: u32, q: u32, seed: u64) -> Result<SetFamily> {
    let g = ConflictGraph::new(f.n(), f.k(), statistic, t, q)?;
    let start = g.mask_of(f.iter().copied());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (end, _) = descend(&g, start, &mut rng);
    Ok(family_from_mask(&g, end))
}

/// Best fixed point over the lex start and `config.restarts` random starts.
/// Ties keep the earlier start, so the lex segment wins when it is not
/// beaten.
pub(super) fn certify_local(
    params: &Params,
    statistic: Statistic,
    config: &SearchConfig,
    lex: SetFamily,
    lex_value: u128,
) -> Result<SearchCertificate> {
    let g = ConflictGraph::new(params.n, params.k, statistic, params.t, params.q)?;
    let s = params.s as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let lex_mask = g.mask_of(lex.iter().copied());
    let mut starts = vec![lex_mask];
    for _ in 0..config.restarts {
        let picked = index::sample(&mut rng, g.len(), s);
        starts.push(picked.iter().fold(0u128, |m, v| m | 1u128 << v));
    }
    let mut best = (lex_value, lex_mask);
    let mut evaluated = 0u64;
    for start in starts {
        if evaluated >= config.node_budget {
            break;
        }
        let (end, n) = descend(&g, start, &mut rng);
        evaluated += n;
        let v = g.value(end);
        if v < best.0 {
            best = (v, end);
        }
    }
    SearchCertificate::new(
        *params,
        statistic,
        Mode::LocalSearch,
        family_from_mask(&g, best.1),
        lex_value,
        evaluated,
        false,
    )
}
