use ekr_demo::{disjoint_curve, kneser_spectrum, lex_family};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

/// Disjoint pairs of the first `s` k-sets in the given order, by brute force.
fn brute(sets: &[Vec<u32>], s: usize) -> u64 {
    let mut count = 0;
    for i in 0..s {
        for j in 0..i {
            if sets[i].iter().all(|x| !sets[j].contains(x)) {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn curve_matches_brute_force_on_lex_prefixes() {
    let v = parse(disjoint_curve(6, 3));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 21);
    let all = parse(lex_family(6, 3, 20));
    let sets: Vec<Vec<u32>> = serde_json::from_value(all["sets"].clone()).unwrap();
    for (s, row) in rows.iter().enumerate() {
        assert_eq!(row["s"], s as u64);
        assert_eq!(row["lex"], brute(&sets, s));
        assert!(row["spectral"].as_f64().unwrap() <= row["lex"].as_f64().unwrap() + 1e-9);
    }
    // complement of a 10-set star at n = 6 is a 10-set star
    assert_eq!(rows[20]["lex"], 10);
    assert_eq!(rows[11]["lex"], 1);
}

#[test]
fn colex_column_is_a_prefix_count_too() {
    let v = parse(disjoint_curve(5, 2));
    let rows = v["rows"].as_array().unwrap();
    // colex starts with the triangle on {1,2,3}, then adds edges to 4
    let colex: Vec<u64> = rows.iter().map(|r| r["colex"].as_u64().unwrap()).collect();
    assert_eq!(&colex[..7], &[0, 0, 0, 0, 1, 2, 3]);
    assert_eq!(colex[10], 15);
}

#[test]
fn family_view() {
    let v = parse(lex_family(6, 3, 11));
    assert_eq!(v["sets"].as_array().unwrap().len(), 11);
    assert_eq!(v["disjoint_pairs"], "1");
    assert_eq!(v["formula"], "1");
    assert_eq!(v["cover"], serde_json::json!([1, 2]));
    assert_eq!(v["params"]["r"], 2);
}

#[test]
fn spectrum_view() {
    let v = parse(kneser_spectrum(5, 2));
    assert_eq!(v["degree"], "3");
    assert_eq!(v["min"], "-2");
    let mults: u64 = v["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["multiplicity"].as_str().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(mults, 10);
}

#[test]
fn errors_are_reported_in_band() {
    assert!(parse(disjoint_curve(3, 5))["error"].is_string());
    assert!(parse(disjoint_curve(30, 6))["error"]
        .as_str()
        .unwrap()
        .contains("demo limit"));
    assert!(parse(lex_family(5, 2, 11))["error"].is_string());
    assert!(parse(kneser_spectrum(5, 3))["error"].is_string());
}
