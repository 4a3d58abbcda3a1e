//! Family file formats.
//!
//! Text form: a header line `n=<n> k=<k>`, then one set per line as
//! comma-separated ascending integers (`1,3,7`). JSON form:
//! `{"n":..,"k":..,"sets":[[1,3,7],...]}`. Both parsers reject duplicate
//! sets and sets of the wrong cardinality.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::family::FamilyJson;
use crate::kset::check_nk;
use crate::{Error, KSet, Result, SetFamily};

pub fn parse_text(input: &str) -> Result<SetFamily> {
    let mut lines = input.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header `n=<n> k=<k>`"))?;
    let (n, k) = parse_header(header).map_err(|m| Error::parse(header_no + 1, m))?;
    check_nk(n, k).map_err(|e| Error::parse(header_no + 1, e.to_string()))?;

    let mut seen = HashSet::new();
    let mut sets = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let mut elements = Vec::with_capacity(k as usize);
        for tok in line.split(',') {
            let tok = tok.trim();
            let x: u32 = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("`{tok}` is not a positive integer")))?;
            elements.push(x);
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::parse(line_no, "elements must be strictly ascending"));
        }
        let set = build_set(n, k, &elements).map_err(|m| Error::parse(line_no, m))?;
        if !seen.insert(set.mask()) {
            return Err(Error::parse(line_no, format!("duplicate set {set}")));
        }
        sets.push(set);
    }
    SetFamily::new(n, k, sets)
}

fn parse_header(line: &str) -> std::result::Result<(u32, u32), String> {
    let mut n = None;
    let mut k = None;
    for part in line.split_whitespace() {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("malformed header field `{part}`"))?;
        let value: u32 = value
            .parse()
            .map_err(|_| format!("header value `{value}` is not an integer"))?;
        match key {
            "n" => n = Some(value),
            "k" => k = Some(value),
            other => return Err(format!("unknown header field `{other}`")),
        }
    }
    match (n, k) {
        (Some(n), Some(k)) => Ok((n, k)),
        _ => Err("header must be `n=<n> k=<k>`".into()),
    }
}

fn build_set(n: u32, k: u32, elements: &[u32]) -> std::result::Result<KSet, String> {
    if elements.len() != k as usize {
        return Err(format!("expected {k} elements, found {}", elements.len()));
    }
    KSet::new(n, elements).map_err(|e| e.to_string())
}

pub fn parse_json(input: &str) -> Result<SetFamily> {
    let raw: FamilyJson = serde_json::from_str(input).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    family_from_json_value(raw)
}

pub(crate) fn family_from_json_value(raw: FamilyJson) -> Result<SetFamily> {
    check_nk(raw.n, raw.k)?;
    let mut seen = HashSet::new();
    let mut sets = Vec::with_capacity(raw.sets.len());
    for (i, elements) in raw.sets.iter().enumerate() {
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        let set = build_set(raw.n, raw.k, &sorted).map_err(|m| Error::Shape(format!("set #{}: {m}", i + 1)))?;
        if !seen.insert(set.mask()) {
            return Err(Error::Shape(format!("set #{}: duplicate set {set}", i + 1)));
        }
        sets.push(set);
    }
    SetFamily::new(raw.n, raw.k, sets)
}

/// Parses either format, choosing JSON when the first non-blank character is `{`.
pub fn parse_auto(input: &str) -> Result<SetFamily> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

pub fn to_text(f: &SetFamily) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n={} k={}", f.n(), f.k());
    for s in f {
        let _ = writeln!(out, "{s}");
    }
    out
}

pub fn to_json(f: &SetFamily) -> String {
    serde_json::to_string(&FamilyJson::from(f)).expect("family serialises")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::lex_segment;

    #[test]
    fn text_round_trip() {
        let f = lex_segment(6, 3, 11).unwrap();
        let text = to_text(&f);
        assert!(text.starts_with("n=6 k=3\n1,2,3\n"));
        assert_eq!(text.lines().count(), 12);
        assert_eq!(parse_text(&text).unwrap(), f);
        assert_eq!(parse_auto(&text).unwrap(), f);
    }

    #[test]
    fn json_round_trip() {
        let f = lex_segment(5, 2, 5).unwrap();
        let json = to_json(&f);
        assert_eq!(json, r#"{"n":5,"k":2,"sets":[[1,2],[1,3],[1,4],[1,5],[2,3]]}"#);
        assert_eq!(parse_json(&json).unwrap(), f);
        assert_eq!(parse_auto(&json).unwrap(), f);
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        let dup = "n=4 k=2\n1,2\n3,4\n1,2\n";
        assert_eq!(
            parse_text(dup).unwrap_err(),
            Error::Parse {
                line: 4,
                message: "duplicate set 1,2".into()
            }
        );
        let short = "n=4 k=2\n1,2\n3\n";
        assert!(matches!(parse_text(short), Err(Error::Parse { line: 3, .. })));
        let range = "n=4 k=2\n1,5\n";
        assert!(matches!(parse_text(range), Err(Error::Parse { line: 2, .. })));
        let unsorted = "n=4 k=2\n2,1\n";
        assert!(matches!(parse_text(unsorted), Err(Error::Parse { line: 2, .. })));
        let junk = "n=4 k=2\n1,x\n";
        assert!(matches!(parse_text(junk), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_text("k=2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_text(""), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn json_rejects_duplicates_and_cardinality() {
        assert!(parse_json(r#"{"n":4,"k":2,"sets":[[1,2],[2,1]]}"#).is_err());
        assert!(parse_json(r#"{"n":4,"k":2,"sets":[[1,2,3]]}"#).is_err());
        assert!(parse_json(r#"{"n":4,"k":2,"sets":[[1,9]]}"#).is_err());
        assert!(parse_json(r#"{"n":4,"k":2}"#).is_err());
    }
}
