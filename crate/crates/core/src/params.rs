use serde::{Deserialize, Serialize};

use crate::binom::binom_u128;
use crate::kset::check_nk;
use crate::{Error, Result};

/// The problem tuple `(n, k, s)` with the optional statistic parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub n: u32,
    pub k: u32,
    #[serde(with = "u128_string")]
    pub s: u128,
    /// Intersection threshold for t-disjoint statistics.
    pub t: u32,
    /// Matching size for q-matching statistics.
    pub q: u32,
    /// Star budget; `None` means "as many as the size needs".
    pub ell: Option<u32>,
    /// Index of the (t-)star the lex segment of size `s` ends in; `0` for
    /// `s = 0`, `None` when `s` exceeds every union of t-stars through
    /// `[t-1]`.
    pub r: Option<u32>,
}

impl Params {
    pub fn new(n: u32, k: u32, s: u128) -> Result<Self> {
        check_nk(n, k)?;
        let total = binom_u128(n, k);
        if s > total {
            return Err(Error::range(
                "s",
                format!("need 0 <= s <= C({n},{k}) = {total}, got {s}"),
            ));
        }
        Ok(Params {
            n,
            k,
            s,
            t: 1,
            q: 2,
            ell: None,
            r: star_index(n, k, 1, s),
        })
    }

    pub fn with_t(mut self, t: u32) -> Result<Self> {
        if t == 0 || (t >= self.k && t > 1) {
            return Err(Error::range("t", format!("need 1 <= t < k = {}, got {t}", self.k)));
        }
        self.t = t;
        self.r = star_index(self.n, self.k, t, self.s);
        Ok(self)
    }

    pub fn with_q(mut self, q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::range("q", "need q >= 1"));
        }
        self.q = q;
        Ok(self)
    }

    pub fn with_ell(mut self, ell: u32) -> Result<Self> {
        if ell == 0 {
            return Err(Error::range("ell", "need ell >= 1"));
        }
        self.ell = Some(ell);
        Ok(self)
    }

    pub fn with_s(mut self, s: u128) -> Result<Self> {
        let p = Params::new(self.n, self.k, s)?;
        self.s = p.s;
        self.r = star_index(self.n, self.k, self.t, s);
        Ok(self)
    }

    /// Star budget, defaulting to `r`.
    pub fn effective_ell(&self) -> u32 {
        self.ell.or(self.r).unwrap_or(0).max(1)
    }

    pub fn total_sets(&self) -> u128 {
        binom_u128(self.n, self.k)
    }
}

/// Smallest `r` with `s <= C(n-t+1, k-t+1) - C(n-t+1-r, k-t+1)`.
///
/// For `t = 1` this is the number of full stars `{1}, {2}, ...` the lex
/// segment of size `s` touches; for larger `t` the stars are the t-stars with
/// centers `[t-1] ∪ {t-1+i}`.
pub fn star_index(n: u32, k: u32, t: u32, s: u128) -> Option<u32> {
    if s == 0 {
        return Some(0);
    }
    let m = (n + 1).checked_sub(t)?;
    let kk = (k + 1).checked_sub(t)?;
    let full = binom_u128(m, kk);
    if s > full {
        return None;
    }
    (1..=m).find(|&r| s <= full - binom_u128(m - r, kk))
}

pub(crate) mod u128_string {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Num(u64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => s.parse().map_err(D::Error::custom),
            Raw::Num(n) => Ok(n as u128),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_index_ranges() {
        // C(6,3) - C(5,3) = 10 < 11 <= C(6,3) - C(4,3) = 16
        assert_eq!(star_index(6, 3, 1, 11), Some(2));
        assert_eq!(star_index(6, 3, 1, 10), Some(1));
        assert_eq!(star_index(6, 3, 1, 16), Some(2));
        assert_eq!(star_index(6, 3, 1, 17), Some(3));
        assert_eq!(star_index(6, 3, 1, 20), Some(4));
        assert_eq!(star_index(6, 3, 1, 0), Some(0));
        // t = 2 on [8]: 2-stars through 1 have C(6,1) = 6 sets each
        assert_eq!(star_index(8, 3, 2, 6), Some(1));
        assert_eq!(star_index(8, 3, 2, 11), Some(2));
        assert_eq!(star_index(8, 3, 2, 21), Some(6));
        assert_eq!(star_index(8, 3, 2, 22), None);
    }

    #[test]
    fn validation() {
        assert!(Params::new(4, 2, 7).is_err());
        assert!(Params::new(4, 5, 0).is_err());
        let p = Params::new(8, 3, 11).unwrap();
        assert!(p.with_t(3).is_err());
        assert!(p.with_t(0).is_err());
        assert_eq!(p.with_t(2).unwrap().r, Some(2));
        assert!(p.with_q(0).is_err());
        assert_eq!(p.effective_ell(), 1);
        assert_eq!(p.with_ell(3).unwrap().effective_ell(), 3);
    }

    #[test]
    fn serde_uses_decimal_strings() {
        let p = Params::new(6, 3, 11).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains(r#""s":"11""#));
        let back: Params = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
