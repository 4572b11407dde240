use kltl::families::{e6d5_fixture, e7e6_fixture, grid_checksum};
use kltl::laurent::SqMatrix;
use kltl::{LaurentPoly, Matrix};

fn load(name: &str) -> (String, Matrix) {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    let m = SqMatrix::from_exponent_grid(&text).unwrap();
    (text, m)
}

/// Count and exponent sum straight from the text.
fn text_checksum(text: &str) -> (usize, i64) {
    let nz: Vec<i64> = text
        .split_whitespace()
        .filter(|t| *t != ".")
        .map(|t| t.parse().unwrap())
        .collect();
    (nz.len(), nz.iter().sum())
}

#[test]
fn transcription_checksums() {
    let expected = [
        ("a3_delta.txt", 6, (15, 11)),
        ("c3_delta.txt", 8, (27, 21)),
        ("c3_n.txt", 8, (21, 16)),
        ("c3_b.txt", 8, (10, 0)),
        ("e6d5.txt", 27, (93, 86)),
        ("e7e6.txt", 56, (291, 367)),
    ];
    for (name, dim, sums) in expected {
        let (text, m) = load(name);
        assert_eq!(m.dim(), dim, "{name}");
        assert_eq!(text_checksum(&text), sums, "{name}");
        assert_eq!(grid_checksum(&m), sums, "{name}");
    }
}

#[test]
fn embedded_tables_match_files() {
    assert_eq!(e6d5_fixture(), load("e6d5.txt").1);
    assert_eq!(e7e6_fixture(), load("e7e6.txt").1);
}

#[test]
fn printed_spot_entries() {
    let e6 = e6d5_fixture();
    assert_eq!(e6.get(26, 17), &LaurentPoly::q_pow(2));
    for m in [&e6, &e7e6_fixture()] {
        for i in 0..m.dim() {
            assert_eq!(m.get(i, i), &LaurentPoly::q_pow(0));
        }
    }
    let e7 = e7e6_fixture();
    assert_eq!(e7.get(1, 0), &LaurentPoly::q_pow(1));
    assert_eq!(e7.get(1, 1), &LaurentPoly::q_pow(0));
    assert!((2..56).all(|j| num_traits::Zero::is_zero(e7.get(1, j))));
}
