mod common;

use common::*;
use ekr_core::counting::*;
use ekr_core::family::{complement_family, lex_segment};
use ekr_core::io::{parse_auto, to_json, to_text};
use ekr_core::kset::{lex_compare, lex_iter};
use ekr_core::{KSet, LexRank, SetFamily};
use proptest::prelude::*;

/// `(n, k)` with `C(n, k) <= 128` and a random subset of the k-sets.
fn family_strategy() -> impl Strategy<Value = SetFamily> {
    (2u32..=9)
        .prop_flat_map(|n| (Just(n), 1u32..n))
        .prop_flat_map(|(n, k)| {
            let total = choose(n as i64, k as i64) as usize;
            (Just(n), Just(k), proptest::collection::vec(any::<bool>(), total))
        })
        .prop_map(|(n, k, keep)| {
            let all: Vec<KSet> = lex_iter(n, k).unwrap().collect();
            SetFamily::new(n, k, all.into_iter().zip(keep).filter(|(_, b)| *b).map(|(s, _)| s)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn t_pairs_complement_each_other(f in family_strategy()) {
        let s = f.len() as u128;
        for t in 1..f.k() {
            let d = count_t_disjoint_pairs(&f, t).unwrap();
            let i = count_t_intersecting_pairs(&f, t).unwrap();
            prop_assert_eq!(d + i, s * s.saturating_sub(1) / 2);
        }
    }

    #[test]
    fn self_pairs_counted_once(f in family_strategy()) {
        for t in 1..f.k() {
            let per_set: u128 = f.iter().map(|m| t_intersecting_with(m, &f, t)).sum();
            let pairs = count_t_intersecting_pairs(&f, t).unwrap();
            prop_assert_eq!(per_set, 2 * pairs + f.len() as u128);
        }
    }

    #[test]
    fn handshake(f in family_strategy()) {
        let per_set: u128 = f.iter().map(|m| disjoint_with(m, &f)).sum();
        prop_assert_eq!(per_set, 2 * count_disjoint_pairs(&f));
    }

    #[test]
    fn special_cases_reduce_to_disjoint_pairs(f in family_strategy()) {
        let d = count_disjoint_pairs(&f);
        prop_assert_eq!(count_q_matchings(&f, 2), d);
        prop_assert_eq!(count_t_disjoint_pairs(&f, 1).unwrap(), d);
        prop_assert_eq!(d, disj(&as_vecs(&f)));
    }

    #[test]
    fn split_by_first_member_sums_to_total(f in family_strategy()) {
        let d: u128 = (0..f.len()).map(|i| disjoint_pairs_with_first(&f, i)).sum();
        prop_assert_eq!(d, count_disjoint_pairs(&f));
        let q: u128 = (0..f.len()).map(|i| q_matchings_with_first(&f, 3, i)).sum();
        prop_assert_eq!(q, count_q_matchings(&f, 3));
    }

    #[test]
    fn complement_duality(f in family_strategy()) {
        let (n, k) = f.context();
        let g = complement_family(&f).unwrap();
        let big_n = choose(n as i64, k as i64) as i128;
        let d = choose(n as i64 - k as i64, k as i64) as i128;
        let lhs = count_disjoint_pairs(&f) as i128 - count_disjoint_pairs(&g) as i128;
        prop_assert_eq!(2 * lhs, (2 * f.len() as i128 - big_n) * d);
    }

    #[test]
    fn file_formats_round_trip(f in family_strategy()) {
        prop_assert_eq!(&parse_auto(&to_text(&f)).unwrap(), &f);
        prop_assert_eq!(&parse_auto(&to_json(&f)).unwrap(), &f);
    }

    #[test]
    fn rank_order_is_lex_order(n in 2u32..=40, seed in any::<u64>()) {
        let k = 1 + (seed % (n as u64 - 1)) as u32;
        let total = choose(n as i64, k as i64);
        let a = (seed as u128 * 2654435761) % total;
        let b = (seed as u128 * 40503 + 17) % total;
        let x = KSet::lex_unrank(LexRank(a), n, k).unwrap();
        let y = KSet::lex_unrank(LexRank(b), n, k).unwrap();
        prop_assert_eq!(x.lex_rank(), LexRank(a));
        prop_assert_eq!(lex_compare(&x, &y).unwrap(), a.cmp(&b));
        prop_assert_eq!(x.reversed().reversed(), x);
    }

    #[test]
    fn lex_segments_nest(n in 3u32..=9, k in 1u32..=3, s in 0u128..=30) {
        prop_assume!(k < n);
        let total = choose(n as i64, k as i64);
        let s = s.min(total);
        let small = lex_segment(n, k, s).unwrap();
        let big = lex_segment(n, k, total).unwrap();
        prop_assert_eq!(small.members(), &big.members()[..s as usize]);
    }

    #[test]
    fn lex_formula_beyond_the_sweep(n in 10u32..=14, k in 1u32..=4, fraction in 0.0f64..=1.0) {
        let total = choose(n as i64, k as i64);
        let s = (fraction * total as f64).round() as u128;
        let lex = lex_segment(n, k, s).unwrap();
        let sets: Vec<Vec<u32>> = lex.iter().map(|x| x.to_vec()).collect();
        let want = ekr_core::formulas::lex_disj_formula(n, k, s).unwrap();
        prop_assert_eq!(want, disj(&sets).into());
    }
}
