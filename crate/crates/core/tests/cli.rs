use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kltl").chain(args.iter().copied());
    let code = kltl::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn normalize(grid: &str) -> Vec<Vec<String>> {
    grid.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect()
}

/// Body rows of a LaTeX array with the row label dropped.
fn latex_grid(tex: &str) -> Vec<Vec<String>> {
    tex.lines()
        .skip_while(|l| !l.contains("\\hline"))
        .skip(1)
        .take_while(|l| !l.starts_with("\\end"))
        .map(|l| {
            l.trim_end_matches(" \\\\")
                .split(" & ")
                .skip(1)
                .map(|c| if c == "\\cdot" { ".".into() } else { c.to_string() })
                .collect()
        })
        .collect()
}

fn json_grid(v: &Value, perm: &[usize]) -> Vec<Vec<String>> {
    let cell = |c: &Value| {
        let obj = c.as_object().unwrap();
        match obj.len() {
            0 => ".".to_string(),
            1 if obj.values().next() == Some(&Value::from(1)) => obj.keys().next().unwrap().clone(),
            _ => panic!("not a monomial: {c}"),
        }
    };
    perm.iter()
        .map(|&i| perm.iter().map(|&j| cell(&v[i][j])).collect())
        .collect()
}

#[test]
fn delta_latex_is_the_printed_table() {
    let (code, out, _) = run(&["delta", "A:3:2", "--format", "latex"]);
    assert_eq!(code, 0);
    assert_eq!(latex_grid(&out), normalize(&fixture("a3_delta.txt")));
    let (_, tangles, _) = run(&["delta", "A:3:2", "--format", "latex", "--route", "tangles"]);
    assert_eq!(tangles, out);
}

#[test]
fn delta_json_lists_six_cosets() {
    let (code, out, _) = run(&["delta", "A:3:2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cosets"].as_array().unwrap().len(), 6);
    assert_eq!(
        json_grid(&v["delta"], &(0..6).collect::<Vec<_>>()),
        normalize(&fixture("a3_delta.txt"))
    );
}

#[test]
fn factor_c3_gives_the_three_printed_matrices() {
    let (code, out, _) = run(&["factor", "C:3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let labels: Vec<&str> = v["cosets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l.as_str().unwrap())
        .collect();
    let printed = [
        "s1's2s1's3s2s1'",
        "s1's2s1's3s2",
        "s1's2s1's3",
        "s1's2s3",
        "s1's2s1'",
        "s1's2",
        "s1'",
        "∅",
    ];
    let perm: Vec<usize> = printed
        .iter()
        .map(|p| labels.iter().position(|l| l == p).unwrap())
        .collect();
    for (key, file) in [("delta", "c3_delta.txt"), ("n", "c3_n.txt"), ("b", "c3_b.txt")] {
        assert_eq!(json_grid(&v[key], &perm), normalize(&fixture(file)), "{key}");
    }
    let (_, tex, _) = run(&["factor", "C:3", "--format", "latex"]);
    assert_eq!(tex.matches("\\begin{array}").count(), 3);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["factor", "DA:5", "--format", "json"][..],
        &["cosets", "E6D5", "--format", "csv"],
        &["graph", "C:4", "--format", "json"],
    ] {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn cup_and_orient() {
    let (code, pic, _) = run(&["cup", "C:3", "--coset", "o^vv", "--format", "ascii"]);
    assert_eq!(code, 0);
    assert!(pic.starts_with(" ∘   ∧   ∨   ∨\n"));
    assert!(pic.ends_with(" ∘   ∨   ∨   ∨\n"));
    assert_eq!(run(&["orient", "C:3", "--coset", "o^^v", "--mu", "o^vv"]).1, "NONE\n");
    assert_eq!(run(&["orient", "A:3:2", "--coset", "^v^v", "--mu", "v^v^"]).1, "2\n");
    let (_, svg, _) = run(&["cup", "DA:4", "--coset", "s1''s2", "--format", "svg"]);
    assert!(svg.starts_with("<svg"));
}

#[test]
fn paths_agree_with_delta() {
    let (code, out, _) = run(&[
        "paths", "A:3:2", "--lambda", "∅", "--mu", "s2s1s3s2", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let degrees: Vec<i64> = v["paths"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["degree"].as_i64().unwrap())
        .collect();
    assert_eq!(degrees, vec![2]);
}

#[test]
fn render_word_and_coset() {
    let (code, pic, _) = run(&["render", "C:3", "--word", "s1's2s1'"]);
    assert_eq!(code, 0);
    assert!(pic.contains('*'));
    assert_eq!(run(&["render", "A:3:2", "--word", "s2s1s2"]).0, 1);
    let (code, json, _) = run(&["render", "A:3:2", "--coset", "^v^v", "--mu", "v^v^", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(serde_json::from_str::<Value>(&json).unwrap()["top"], "^v^v");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["delta", "X:3"]).0, 1);
    assert_eq!(run(&["delta", "A:3:2", "--format", "svg"]).0, 1);
    assert_eq!(run(&["delta", "B:3", "--route", "tangles"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["cup", "C:3", "--coset", "o^v"]).0, 1);
    assert_eq!(run(&["verify", "--suite", "nope"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn verify_exceptional_suite() {
    let (code, out, _) = run(&["verify", "--suite", "exceptional"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("PASS [3]"));
    assert!(out.contains("27x27") && out.contains("56x56"));
}

#[test]
fn binary_honours_rank_guard() {
    let bin = env!("CARGO_BIN_EXE_kltl");
    let ok = Command::new(bin).args(["delta", "A:3:2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let guarded = Command::new(bin)
        .args(["delta", "A:3:2"])
        .env("KLTL_MAX_RANK", "2")
        .output()
        .unwrap();
    assert_eq!(guarded.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&guarded.stderr).contains("KLTL_MAX_RANK"));
}
