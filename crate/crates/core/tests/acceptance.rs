//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! test harness so the lines always reach stdout; exits non-zero on any
//! failure.

mod common;

use std::time::{Duration, Instant};

use common::*;
use ekr_core::counting::*;
use ekr_core::family::*;
use ekr_core::formulas::*;
use ekr_core::kneser::*;
use ekr_core::search::lemmas::*;
use ekr_core::search::*;
use ekr_core::{KSet, Params, Statistic};
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FORMULA_SWEEP_LIMIT: Duration = Duration::from_secs(60);
const SMALL_CERTIFICATE_LIMIT: Duration = Duration::from_secs(5 * 60);
const LEMMA_LIMIT: Duration = Duration::from_secs(10 * 60);
/// Absolute tolerance between closed-form and numeric eigenvalues.
const EIGEN_TOLERANCE: f64 = 1e-8;
const DUALITY_RANDOM_FAMILIES: usize = 10_000;
const IDENTITY_RANDOM_FAMILIES: usize = 100_000;
const SEED: u64 = 0x5eed;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn big(x: u128) -> BigUint {
    BigUint::from(x)
}

/// Certificates from criteria 2 and 3, reused by criterion 7.
struct Certified {
    params: Params,
    minimum: u128,
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0u64;
    for n in 1..=9u32 {
        for k in 1..=n.min(4) {
            let total = choose(n as i64, k as i64);
            for s in 0..=total {
                let lex = lex_segment(n, k, s).unwrap();
                if lex_disj_formula(n, k, s).unwrap() != big(count_disjoint_pairs(&lex)) {
                    return outcome(false, format!("mismatch at ({n},{k},{s})"));
                }
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        elapsed < FORMULA_SWEEP_LIMIT,
        format!("{checked} (n,k,s) triples agree exactly in {elapsed:.2?}"),
    )
}

fn criterion_2(certified: &mut Vec<Certified>) -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for (n, k, s, want) in [(5, 2, 5, 2u128), (6, 3, 11, 1)] {
        let params = Params::new(n, k, s).unwrap();
        let start = Instant::now();
        let cert = certify_minimum(&params, Statistic::DisjointPairs, &SearchConfig::exhaustive()).unwrap();
        let elapsed = start.elapsed();
        let floor = choose(n as i64 - k as i64 - 1, k as i64 - 1);
        let ok = cert.complete && cert.minimum == want && cert.minimum == floor && elapsed < SMALL_CERTIFICATE_LIMIT;
        pass &= ok;
        details.push(format!(
            "({n},{k},{s}) min={} floor={floor} {elapsed:.2?}",
            cert.minimum
        ));
        certified.push(Certified {
            params,
            minimum: cert.minimum,
        });
    }
    outcome(pass, details.join("; "))
}

/// Lex optimality where certified. Counterexamples below the theorem's
/// n-threshold are data; the gate is that every certificate is complete and
/// that for graphs (k = 2) each minimum is attained by lex or by the colex
/// segment, the union-of-stars / complement dichotomy known for graphs.
fn criterion_3(certified: &mut Vec<Certified>) -> Outcome {
    let mut instances = 0;
    let mut uncertified = Vec::new();
    let mut unexplained = Vec::new();
    let mut data = Vec::new();
    for n in 5..=7u32 {
        for k in 2..=3u32 {
            let base = Params::new(n, k, 0).unwrap();
            let total = choose(n as i64, k as i64);
            let top = (0..=total)
                .filter(|&s| base.with_s(s).unwrap().r.unwrap() <= 2)
                .max()
                .unwrap();
            let rows =
                conjecture::verify_lex_conjecture(&base, Statistic::DisjointPairs, 0, top, &SearchConfig::default())
                    .unwrap();
            for row in rows {
                let c = &row.certificate;
                instances += 1;
                if !c.complete {
                    uncertified.push(format!("({n},{k},{})", c.params.s));
                    continue;
                }
                certified.push(Certified {
                    params: c.params,
                    minimum: c.minimum,
                });
                if !c.lex_optimal {
                    let by = if row.colex_attains { " colex attains" } else { "" };
                    data.push(format!(
                        "({n},{k},{}) min={} lex={}{by}",
                        c.params.s, c.minimum, c.lex_value
                    ));
                    if k == 2 && !row.colex_attains {
                        unexplained.push(format!("({n},{k},{})", c.params.s));
                    }
                }
            }
        }
    }
    let lex_optimal = instances - uncertified.len() - data.len();
    let mut detail = format!(
        "{instances} instances, {} certified, lex optimal in {lex_optimal}",
        instances - uncertified.len()
    );
    if !uncertified.is_empty() {
        detail += &format!("; over budget: {}", uncertified.join(" "));
    }
    if !data.is_empty() {
        detail += &format!("; lex beaten (data): {}", data.join(", "));
    }
    if !unexplained.is_empty() {
        detail += &format!(
            "; k=2 minima attained by neither lex nor colex: {}",
            unexplained.join(" ")
        );
    }
    outcome(uncertified.is_empty() && unexplained.is_empty(), detail)
}

fn criterion_4() -> Outcome {
    let base = Params::new(6, 2, 0).unwrap().with_q(3).unwrap();
    let rows =
        conjecture::verify_lex_conjecture(&base, Statistic::QMatchings, 0, 12, &SearchConfig::default()).unwrap();
    let all_certified = rows.iter().all(|r| r.certificate.complete);
    let beaten: Vec<String> = rows
        .iter()
        .filter(|r| !r.certificate.lex_optimal)
        .map(|r| r.certificate.params.s.to_string())
        .collect();
    let full = count_q_matchings(&all_sets(6, 2).unwrap(), 3);
    outcome(
        all_certified && beaten.is_empty() && full == 15,
        format!(
            "s=0..12 certified={all_certified}, lex beaten at [{}]; perfect matchings of K6 = {full}",
            beaten.join(",")
        ),
    )
}

fn criterion_5() -> Outcome {
    let budget = DEFAULT_NODE_BUDGET;
    let start = Instant::now();
    let a = verify_star_union(8, 3, 2, 2, budget).unwrap();
    let b = verify_star_union(8, 3, 2, 3, budget).unwrap();
    let add = verify_add_set(8, 3, 2, 2, budget).unwrap();
    let full = verify_full_stars(8, 3, 2, 2, budget).unwrap();
    let elapsed = start.elapsed();
    let want_b = choose(7, 2) - choose(4, 2);
    let pass = a.minimum == 11
        && a.holds
        && b.minimum == want_b
        && b.holds
        && add.holds
        && full.holds
        && elapsed < LEMMA_LIMIT;
    outcome(
        pass,
        format!(
            "unions: min {} ({} shared-core minimizers of {} tuples), min {} ({} of {}); \
             add-set: {} cases, {} below lex, {} equalities all isomorphic={}; \
             full-stars: {} below lex, {} equalities all isomorphic={}; {elapsed:.2?}",
            a.minimum,
            a.minimizers,
            a.tuples,
            b.minimum,
            b.minimizers,
            b.tuples,
            add.cases,
            add.below_lex,
            add.equality_cases,
            add.equality_not_isomorphic == 0 && add.isomorphic_not_equal == 0,
            full.below_lex,
            full.equality_cases,
            full.equality_not_isomorphic == 0,
        ),
    )
}

fn duality_holds(n: u32, k: u32, sets: &[Vec<u32>]) -> bool {
    let f = family(n, k, sets);
    let g = complement_family(&f).unwrap();
    let big_n = choose(n as i64, k as i64) as i128;
    let d = choose(n as i64 - k as i64, k as i64) as i128;
    let lhs = count_disjoint_pairs(&f) as i128 - count_disjoint_pairs(&g) as i128;
    2 * lhs == (2 * sets.len() as i128 - big_n) * d
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let all = combos(8, 3);
    let mut random_ok = 0;
    for _ in 0..DUALITY_RANDOM_FAMILIES {
        let s = rng.gen_range(0..=all.len());
        if duality_holds(8, 3, &random_sets(&mut rng, &all, s)) {
            random_ok += 1;
        }
    }
    let all = combos(5, 2);
    let mut exhaustive_ok = 0;
    let total = 1usize << all.len();
    for mask in 0..total {
        let sets: Vec<Vec<u32>> = (0..all.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| all[i].clone())
            .collect();
        if duality_holds(5, 2, &sets) {
            exhaustive_ok += 1;
        }
    }
    outcome(
        random_ok == DUALITY_RANDOM_FAMILIES && exhaustive_ok == total,
        format!(
            "(8,3): {random_ok}/{DUALITY_RANDOM_FAMILIES} random families; (5,2): {exhaustive_ok}/{total} families"
        ),
    )
}

fn criterion_7(certified: &[Certified]) -> Outcome {
    let unsound: Vec<String> = certified
        .iter()
        .filter(|c| {
            let bound = spectral_lower_bound(c.params.n, c.params.k, c.params.s).unwrap();
            bound > BigRational::from_integer(c.minimum.into())
        })
        .map(|c| format!("({},{},{})", c.params.n, c.params.k, c.params.s))
        .collect();

    let sp = spectrum(5, 2).unwrap();
    let grouped: Vec<(i64, u64)> = sp
        .grouped()
        .into_iter()
        .map(|(v, m)| (v.try_into().unwrap(), m.try_into().unwrap()))
        .collect();
    let exact_ok = grouped == vec![(3, 1), (1, 5), (-2, 4)];

    let all = combos(5, 2);
    let adj = nalgebra::DMatrix::from_fn(all.len(), all.len(), |i, j| {
        if meet(&all[i], &all[j]) == 0 {
            1.0
        } else {
            0.0
        }
    });
    let mut numeric: Vec<f64> = adj.symmetric_eigen().eigenvalues.iter().copied().collect();
    numeric.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut closed: Vec<f64> = Vec::new();
    for &(v, m) in &grouped {
        closed.extend(std::iter::repeat_n(v as f64, m as usize));
    }
    let max_err = numeric
        .iter()
        .zip(&closed)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let numeric_ok = closed.len() == numeric.len() && max_err < EIGEN_TOLERANCE;

    outcome(
        unsound.is_empty() && exact_ok && numeric_ok,
        format!(
            "bound <= minimum on {}/{} certificates; K(5,2) spectrum {:?}; numeric max error {max_err:.1e}",
            certified.len() - unsound.len(),
            certified.len(),
            grouped
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let shapes: Vec<(u32, u32, Vec<Vec<u32>>)> = [(6, 2), (7, 3), (8, 3), (8, 4), (9, 3), (10, 4), (12, 3)]
        .into_iter()
        .map(|(n, k)| (n, k, combos(n, k)))
        .collect();
    let mut failures = 0u64;
    for i in 0..IDENTITY_RANDOM_FAMILIES {
        let (n, k, all) = &shapes[i % shapes.len()];
        let s = rng.gen_range(0..=all.len().min(40));
        let f = family(*n, *k, &random_sets(&mut rng, all, s));
        let s = s as u128;
        let d = count_disjoint_pairs(&f);
        let mut ok = count_q_matchings(&f, 2) == d && count_t_disjoint_pairs(&f, 1).unwrap() == d;
        for t in 1..*k {
            let td = count_t_disjoint_pairs(&f, t).unwrap();
            let ti = count_t_intersecting_pairs(&f, t).unwrap();
            ok &= td + ti == s * s.saturating_sub(1) / 2;
            let per_set: u128 = f.iter().map(|m: &KSet| t_intersecting_with(m, &f, t)).sum();
            ok &= per_set == 2 * ti + s;
        }
        if !ok {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!("{IDENTITY_RANDOM_FAMILIES} random families, {failures} identity failures"),
    )
}

fn main() {
    let mut certified = Vec::new();
    let results = [
        ("1 formula-count equivalence", criterion_1()),
        ("2 one-more-than-a-star floor", criterion_2(&mut certified)),
        ("3 lex minimality at desk scale", criterion_3(&mut certified)),
        ("4 q=3 matchings at (6,2)", criterion_4()),
        ("5 unions of t-stars", criterion_5()),
        ("6 complement duality", criterion_6()),
        ("7 spectral soundness", criterion_7(&certified)),
        ("8 identity suite", criterion_8()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {name}: {tag} ({})", o.detail);
        failed += !o.pass as usize;
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
