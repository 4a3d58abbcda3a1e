//! Closed forms and bounds, evaluated in exact integer / rational
//! arithmetic. Nothing in this module touches floating point except the
//! purely informational q-matching threshold estimate.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::binom::{binom, binom_i, binom_z};
use crate::kneser;
use crate::params::{star_index, Params};
use crate::{Error, Result};

fn big(x: u128) -> BigUint {
    BigUint::from(x)
}

fn rat(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Exact number of disjoint pairs in the lex segment of size `s`.
///
/// The segment consists of every set meeting `[r-1]` plus the first sets
/// whose minimum is `r`. Grouping members by their minimum, a set with
/// minimum `i` misses exactly `C(n-j-k, k-1)` of the sets with minimum
/// `j < i`, which gives
///
/// ```text
/// sum_{i=2}^{r-1} C(n-i, k-1) * sum_{j=1}^{i-1} C(n-j-k, k-1)
///   + (s - sum_{i=1}^{r-1} C(n-i, k-1)) * sum_{j=1}^{r-1} C(n-j-k, k-1)
/// ```
///
/// Empty sums are zero. The grouping argument never uses `n >= 2k`, so the
/// value is exact for every `0 <= s <= C(n, k)`.
pub fn lex_disj_formula(n: u32, k: u32, s: u128) -> Result<BigUint> {
    let p = Params::new(n, k, s)?;
    let r = p.r.expect("t = 1 always has an index") as i64;
    let (n, k) = (n as i64, k as i64);
    let cross = |j: i64| binom_i(n - j - k, k - 1);
    let mut total = BigUint::zero();
    for i in 2..r {
        let inner: BigUint = (1..i).map(cross).sum();
        total += binom_i(n - i, k - 1) * inner;
    }
    if r >= 1 {
        let before: BigUint = (1..r).map(|i| binom_i(n - i, k - 1)).sum();
        let tail = big(s) - before;
        let inner: BigUint = (1..r).map(cross).sum();
        total += tail * inner;
    }
    Ok(total)
}

/// `½ (1 - 1/r) s²`: the disjoint pairs of `s` sets split evenly over `r`
/// pairwise-disjoint groups, an upper bound on the lex segment's count.
pub fn pair_upper_bound(s: u128, r: u32) -> Result<BigRational> {
    if r == 0 {
        return Err(Error::range("r", "need r >= 1"));
    }
    let s = rat(s);
    let r = rat(r);
    Ok((BigRational::one() - BigRational::one() / r) * &s * &s / rat(2))
}

/// Both forms of the Bonferroni lower estimate on the size of a union of
/// `r - 1` full stars.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BonferroniReport {
    /// `(r-1) C(n-1, k-1) - C(r-1, 2) C(n-2, k-2)`.
    #[serde(serialize_with = "ser_display")]
    pub value: BigInt,
    /// `(r n / 3k) C(n-2, k-2)`, valid as a lower bound only for large `n`.
    #[serde(serialize_with = "ser_display")]
    pub simplified: BigRational,
}

pub fn bonferroni_lower(n: u32, k: u32, r: u32) -> Result<BonferroniReport> {
    if r == 0 || n < 2 {
        return Err(Error::range("r", format!("need r >= 1 and n >= 2, got r={r}, n={n}")));
    }
    let (ni, ki, ri) = (n as i64, k as i64, r as i64);
    let value = BigInt::from(ri - 1) * binom_z(ni - 1, ki - 1) - binom_z(ri - 1, 2) * binom_z(ni - 2, ki - 2);
    let simplified = if r == 1 {
        BigRational::zero()
    } else {
        rat(ri * ni) / rat(3 * ki) * rat(binom_z(ni - 2, ki - 2))
    };
    Ok(BonferroniReport { value, simplified })
}

/// `C(r, q) (s/r)^q`: q-matchings of `s` sets split evenly over `r` groups.
pub fn qmatch_upper_bound(s: u128, r: u32, q: u32) -> Result<BigRational> {
    if r == 0 || q == 0 {
        return Err(Error::range("r, q", "need r >= 1 and q >= 1"));
    }
    let ratio = rat(s) / rat(r);
    let mut power = BigRational::one();
    for _ in 0..q {
        power *= &ratio;
    }
    Ok(rat(binom(r as u64, q as u64)) * power)
}

/// The exact two-term lower count of q-matchings in the lex segment, before
/// any asymptotic simplification:
///
/// ```text
/// alpha C(n-1, k-1) C(r-1, q-1) C(n-kq-r, k-1)^(q-1) + C(r-1, q) C(n-kq-r, k-1)^q
/// ```
///
/// `alpha C(n-1, k-1)` is the number of segment sets whose least element in
/// `[r]` is `r`. Only a lower bound for lex segments, not arbitrary families.
pub fn qmatch_lower_core(n: u32, k: u32, r: u32, q: u32, alpha: &BigRational) -> Result<BigRational> {
    if q == 0 || r == 0 {
        return Err(Error::range("r, q", "need r >= 1 and q >= 1"));
    }
    if (n as u64) <= (k as u64) * (q as u64) + r as u64 {
        return Err(Error::range("n", format!("need n > kq + r = {}", k * q + r)));
    }
    let (ni, ki, ri, qi) = (n as i64, k as i64, r as i64, q as i64);
    let avail = rat(binom_z(ni - ki * qi - ri, ki - 1));
    let pow = |e: i64| (0..e).fold(BigRational::one(), |acc, _| acc * &avail);
    let first = alpha * rat(binom_z(ni - 1, ki - 1)) * rat(binom_z(ri - 1, qi - 1)) * pow(qi - 1);
    let second = rat(binom_z(ri - 1, qi)) * pow(qi);
    Ok(first + second)
}

/// `(k-t+1) C(n-t-1, k-t-1)`: an upper bound on how many members of a full
/// t-star are t-intersecting with a set not containing the center. Attained
/// with equality when `t = k - 1`; for smaller `t` the union bound
/// overcounts.
pub fn tstar_intersection_cap(n: u32, k: u32, t: u32) -> Result<BigUint> {
    if !(1 <= t && t < k && k < n) {
        return Err(Error::range(
            "t",
            format!("need 1 <= t < k < n, got t={t}, k={k}, n={n}"),
        ));
    }
    let (ni, ki, ti) = (n as i64, k as i64, t as i64);
    Ok(BigUint::from((k - t + 1) as u64) * binom_i(ni - ti - 1, ki - ti - 1))
}

/// `C(n-k-1, k-1)`: the number of disjoint pairs forced on a family one set
/// larger than a full star.
pub fn one_more_floor(n: u32, k: u32) -> Result<BigUint> {
    if n < 2 * k {
        return Err(Error::range("n", format!("need n >= 2k, got n={n}, k={k}")));
    }
    Ok(binom_i(n as i64 - k as i64 - 1, k as i64 - 1))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub r: Option<u32>,
    /// The budget the range check used (`params.ell`, defaulting to `r`).
    pub ell: u32,
    /// `n > 108 k² ell (k + ell)`.
    pub n_ok_thm14: bool,
    /// `s <= C(n, k) - C(n - ell, k)`, or the t-analog
    /// `s <= C(n-t+1, k-t+1) - C(n-t-ell+1, k-t+1)` when `t > 1`.
    pub range_ok: bool,
    /// `s >= C(n - ell, k)`: the complement lies in the lex range.
    pub complement_range_ok: bool,
    /// Fill of the last star, normalised by `C(n-1, k-1)`.
    #[serde(serialize_with = "ser_opt_display")]
    pub alpha: Option<BigRational>,
    /// Same fill normalised by `C(n-r, k-1)`, the size of the last star
    /// inside the segment.
    #[serde(serialize_with = "ser_opt_display")]
    pub alpha_in_segment: Option<BigRational>,
    /// `C ell² k⁵ (ell² + k²) e^{3q}` with the given constant; informational.
    pub qmatch_threshold: f64,
}

/// Default constant for the informational q-matching threshold.
pub const QMATCH_THRESHOLD_CONSTANT: f64 = 1.0;

pub fn thresholds(params: &Params) -> ThresholdReport {
    thresholds_with_constant(params, QMATCH_THRESHOLD_CONSTANT)
}

pub fn thresholds_with_constant(params: &Params, c: f64) -> ThresholdReport {
    let Params { n, k, s, t, q, .. } = *params;
    let r = star_index(n, k, t, s);
    let ell = params.ell.or(r).unwrap_or(1).max(1);
    let (ni, ki, ti, li) = (n as i64, k as i64, t as i64, ell as i64);

    let lhs = BigUint::from(n);
    let rhs = BigUint::from(108u32) * k * k * ell * (k + ell);
    let n_ok_thm14 = lhs > rhs;

    let s_big = big(s);
    let range_ok = if t <= 1 {
        s_big <= binom_i(ni, ki) - binom_i(ni - li, ki)
    } else {
        let top = binom_i(ni - ti + 1, ki - ti + 1);
        let low = binom_i(ni - ti - li + 1, ki - ti + 1);
        s_big <= top - low
    };
    let complement_range_ok = s_big >= binom_i(ni - li, ki);

    let (alpha, alpha_in_segment) = match r {
        Some(r) if r >= 1 && t <= 1 => {
            let ri = r as i64;
            let before = binom_i(ni, ki) - binom_i(ni - ri + 1, ki);
            let fill = rat(BigInt::from(s_big.clone()) - BigInt::from(before));
            let norm = binom_i(ni - 1, ki - 1);
            let norm_seg = binom_i(ni - ri, ki - 1);
            let a = (!norm.is_zero()).then(|| &fill / rat(norm));
            let b = (!norm_seg.is_zero()).then(|| &fill / rat(norm_seg));
            (a, b)
        }
        Some(r) if r >= 1 => {
            // t-analog: stars through [t-1] of size C(n-t, k-t)
            let ri = r as i64;
            let m = ni - ti + 1;
            let kk = ki - ti + 1;
            let before = binom_i(m, kk) - binom_i(m - ri + 1, kk);
            let fill = rat(BigInt::from(s_big.clone()) - BigInt::from(before));
            let norm = binom_i(ni - ti, ki - ti);
            let norm_seg = binom_i(m - ri, kk - 1);
            let a = (!norm.is_zero()).then(|| &fill / rat(norm));
            let b = (!norm_seg.is_zero()).then(|| &fill / rat(norm_seg));
            (a, b)
        }
        _ => (None, None),
    };

    let (lf, kf) = (ell as f64, k as f64);
    let qmatch_threshold = c * lf * lf * kf.powi(5) * (lf * lf + kf * kf) * (3.0 * q as f64).exp();

    ThresholdReport {
        r,
        ell,
        n_ok_thm14,
        range_ok,
        complement_range_ok,
        alpha,
        alpha_in_segment,
        qmatch_threshold,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    LexFormula,
    PairUpper,
    Bonferroni,
    QmatchUpper,
    QmatchLowerCore,
    TstarCap,
    OneMoreFloor,
    SpectralKneser,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: BoundName,
    #[serde(serialize_with = "ser_opt_display")]
    pub value: Option<BigRational>,
    pub applicable: bool,
    pub reason: String,
}

impl BoundReport {
    fn ok(name: BoundName, value: BigRational, reason: &str) -> Self {
        BoundReport {
            name,
            value: Some(value),
            applicable: true,
            reason: reason.into(),
        }
    }

    fn with_applicability(name: BoundName, value: BigRational, applicable: bool, reason: &str) -> Self {
        BoundReport {
            name,
            value: Some(value),
            applicable,
            reason: reason.into(),
        }
    }

    fn unavailable(name: BoundName, err: Error) -> Self {
        BoundReport {
            name,
            value: None,
            applicable: false,
            reason: err.to_string(),
        }
    }
}

fn report(name: BoundName, v: Result<BigRational>, reason: &str) -> BoundReport {
    match v {
        Ok(v) => BoundReport::ok(name, v, reason),
        Err(e) => BoundReport::unavailable(name, e),
    }
}

/// Every bound and closed form that makes sense for `params`.
pub fn all_bounds(params: &Params) -> Vec<BoundReport> {
    let Params { n, k, s, t, q, .. } = *params;
    let th = thresholds(params);
    let r1 = star_index(n, k, 1, s).unwrap_or(0);
    let mut out = vec![
        report(
            BoundName::LexFormula,
            lex_disj_formula(n, k, s).map(rat),
            "exact disjoint pairs of the lex segment",
        ),
        report(
            BoundName::PairUpper,
            pair_upper_bound(s, r1.max(1)),
            "upper bound on disjoint pairs of the lex segment",
        ),
        report(
            BoundName::Bonferroni,
            bonferroni_lower(n, k, r1.max(1)).map(|b| rat(b.value)),
            "lower estimate on |union of r-1 full stars|",
        ),
        report(
            BoundName::QmatchUpper,
            qmatch_upper_bound(s, r1.max(1), q),
            "upper bound on q-matchings of the lex segment",
        ),
    ];
    let alpha = th.alpha.clone().unwrap_or_else(BigRational::zero);
    match qmatch_lower_core(n, k, r1.max(1), q, &alpha) {
        Ok(v) => out.push(BoundReport::with_applicability(
            BoundName::QmatchLowerCore,
            v,
            true,
            "lower bound on q-matchings of the lex segment only",
        )),
        Err(e) => out.push(BoundReport::unavailable(BoundName::QmatchLowerCore, e)),
    }
    out.push(report(
        BoundName::TstarCap,
        tstar_intersection_cap(n, k, t.max(1)).map(rat),
        "cap on t-intersections between a set and a full t-star missing it",
    ));
    out.push(report(
        BoundName::OneMoreFloor,
        one_more_floor(n, k).map(rat),
        "disjoint pairs forced at size C(n-1,k-1)+1",
    ));
    out.push(report(
        BoundName::SpectralKneser,
        kneser::spectral_lower_bound(n, k, s),
        "eigenvalue lower bound on disjoint pairs of any family",
    ));
    out
}

/// One row of the `table` emission: the closed forms for a single `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub n: u32,
    pub k: u32,
    pub s: u128,
    pub r: u32,
    pub lex_formula: BigUint,
    pub pair_upper: BigRational,
    pub qmatch_upper: BigRational,
    pub spectral: BigRational,
    pub one_more_floor: Option<BigUint>,
}

pub const TABLE_HEADER: &str = "n,k,s,r,lex_formula,pair_upper,qmatch_upper,spectral_lower,one_more_floor";

impl TableRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.s,
            self.r,
            self.lex_formula,
            self.pair_upper,
            self.qmatch_upper,
            self.spectral,
            self.one_more_floor
                .as_ref()
                .map(ToString::to_string)
                .unwrap_or_default()
        )
    }
}

/// Rows for every `s` in `range` (inclusive bounds).
pub fn table(n: u32, k: u32, q: u32, s_from: u128, s_to: u128) -> Result<Vec<TableRow>> {
    let floor = one_more_floor(n, k).ok();
    (s_from..=s_to)
        .map(|s| {
            let p = Params::new(n, k, s)?;
            let r = p.r.unwrap_or(0);
            Ok(TableRow {
                n,
                k,
                s,
                r,
                lex_formula: lex_disj_formula(n, k, s)?,
                pair_upper: pair_upper_bound(s, r.max(1))?,
                qmatch_upper: qmatch_upper_bound(s, r.max(1), q)?,
                spectral: kneser::spectral_lower_bound(n, k, s)?,
                one_more_floor: floor.clone(),
            })
        })
        .collect()
}

/// Ceiling of a non-negative rational as an integer.
pub fn ceil_nonneg(x: &BigRational) -> BigUint {
    let c = x.ceil().to_integer();
    if c.is_negative() {
        BigUint::zero()
    } else {
        c.to_biguint().expect("non-negative")
    }
}

/// Lossy conversion for plotting.
pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_opt_display<T: std::fmt::Display, S: Serializer>(v: &Option<T>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}
