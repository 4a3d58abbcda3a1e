//! Browser bindings. Every export takes plain numbers and returns a JSON
//! string; errors come back as `{"error": "..."}`.

use ekr_core::counting::count_disjoint_pairs;
use ekr_core::cover::find_min_cover;
use ekr_core::family::lex_segment;
use ekr_core::formulas::{lex_disj_formula, pair_upper_bound, to_f64};
use ekr_core::kneser::{spectral_lower_bound, spectrum};
use ekr_core::kset::{colex_iter, lex_iter};
use ekr_core::structure::structure_check;
use ekr_core::{binom::binom_u128, Params, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest `C(n,k)` the curve will tabulate.
pub const CURVE_LIMIT: u128 = 5_000;
/// Largest family the family view will list.
pub const FAMILY_LIMIT: u128 = 2_000;
/// Cover sizes searched by the family view.
const COVER_LIMIT: usize = 6;

fn respond(result: Result<Value>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn too_large(what: &'static str, limit: u128, got: u128) -> ekr_core::Error {
    ekr_core::Error::Range {
        what,
        detail: format!("demo limit is {limit}, got {got}"),
    }
}

/// Disjoint pairs of the lex and colex segments for every `s`, with the
/// averaging upper bound and the spectral lower bound.
#[wasm_bindgen]
pub fn disjoint_curve(n: u32, k: u32) -> String {
    respond(curve(n, k))
}

fn curve(n: u32, k: u32) -> Result<Value> {
    let total = Params::new(n, k, 0)?.total_sets();
    if total > CURVE_LIMIT {
        return Err(too_large("C(n,k)", CURVE_LIMIT, total));
    }
    let lex_all: Vec<u128> = lex_iter(n, k)?.map(|x| x.mask()).collect();
    let colex_all: Vec<u128> = colex_iter(n, k)?.map(|x| x.mask()).collect();
    let mut rows = Vec::with_capacity(total as usize + 1);
    let (mut lex, mut colex) = (0u64, 0u64);
    for s in 0..=total {
        if s > 0 {
            let i = s as usize - 1;
            lex += disjoint_before(&lex_all, i);
            colex += disjoint_before(&colex_all, i);
        }
        let r = Params::new(n, k, s)?.r.unwrap_or(0);
        rows.push(json!({
            "s": s,
            "r": r,
            "lex": lex,
            "colex": colex,
            "pair_upper": to_f64(&pair_upper_bound(s, r.max(1))?),
            "spectral": to_f64(&spectral_lower_bound(n, k, s)?),
        }));
    }
    Ok(json!({ "n": n, "k": k, "total": total, "rows": rows }))
}

/// Members of `masks[..i]` disjoint from `masks[i]`.
fn disjoint_before(masks: &[u128], i: usize) -> u64 {
    masks[..i].iter().filter(|&&m| m & masks[i] == 0).count() as u64
}

/// The lex segment of size `s` with its count, cover and structure.
#[wasm_bindgen]
pub fn lex_family(n: u32, k: u32, s: u32) -> String {
    respond(family_view(n, k, s as u128))
}

fn family_view(n: u32, k: u32, s: u128) -> Result<Value> {
    let params = Params::new(n, k, s)?;
    if s > FAMILY_LIMIT {
        return Err(too_large("s", FAMILY_LIMIT, s));
    }
    let f = lex_segment(n, k, s)?;
    let cover = find_min_cover(&f, None, COVER_LIMIT)?;
    let structure = structure_check(&f)?;
    let sets: Vec<Vec<u32>> = f.iter().map(|x| x.to_vec()).collect();
    Ok(json!({
        "params": params,
        "sets": sets,
        "disjoint_pairs": count_disjoint_pairs(&f).to_string(),
        "formula": lex_disj_formula(n, k, s)?.to_string(),
        "cover": cover.is_cover.then(|| cover.elements()),
        "structure": structure.class(),
        "full_star_centers": structure.full_stars.as_ref().map(|w| w.centers.clone()),
        "cover_gap": structure.cover_gap.as_ref().map(|w| w.cover.clone()),
    }))
}

/// Eigenvalues of the Kneser graph `K(n,k)` with multiplicities.
#[wasm_bindgen]
pub fn kneser_spectrum(n: u32, k: u32) -> String {
    respond(spectrum_view(n, k))
}

fn spectrum_view(n: u32, k: u32) -> Result<Value> {
    let spec = spectrum(n, k)?;
    let rows: Vec<Value> = spec
        .eigenvalues
        .iter()
        .map(|e| json!({ "index": e.index, "value": e.value.to_string(), "multiplicity": e.multiplicity.to_string() }))
        .collect();
    Ok(json!({
        "n": n,
        "k": k,
        "vertices": binom_u128(n, k).to_string(),
        "degree": binom_u128(n - k, k).to_string(),
        "eigenvalues": rows,
        "min": spec.min_eigenvalue().to_string(),
    }))
}
