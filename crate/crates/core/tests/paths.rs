#![allow(clippy::needless_range_loop)]

use kltl::coxeter::{cartan_data, enumerate_cosets, PairSpec};
use kltl::heaps::commutation_class;
use kltl::pathdelta::{delta_column, enumerate_paths, kl_matrices};
use kltl::tangles::closed_kl_matrices;
use kltl::{Integer, LaurentPoly};
use num_traits::Zero;

fn small_pairs() -> Vec<PairSpec> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for k in 1..=n {
            out.push(PairSpec::a(n, k));
        }
        out.extend([PairSpec::b(n), PairSpec::c(n)]);
        if n >= 4 {
            out.extend([PairSpec::da(n), PairSpec::dd(n)]);
        }
    }
    out.retain(|s| s.validate().is_ok());
    out
}

#[test]
fn dp_matches_explicit_paths() {
    for spec in small_pairs() {
        let g = enumerate_cosets(&spec).unwrap();
        for mu in 0..g.len() {
            let word = g.word_indices(mu);
            let col = delta_column::<Integer>(&g, &word).unwrap();
            for lam in 0..g.len() {
                let mut sum = LaurentPoly::zero();
                for p in enumerate_paths(&g, lam, &word).unwrap() {
                    assert_eq!(p.shape, lam);
                    assert_eq!(p.steps.len(), word.len());
                    sum += &LaurentPoly::q_pow(p.degree);
                }
                assert_eq!(col[lam], sum, "{spec}: {} at {}", g.label(mu), g.label(lam));
            }
        }
    }
}

#[test]
fn every_word_in_a_class_gives_the_same_column() {
    for spec in [
        PairSpec::a(4, 2),
        PairSpec::c(4),
        PairSpec::da(5),
        PairSpec::b(4),
        PairSpec::dd(5),
    ] {
        let g = enumerate_cosets(&spec).unwrap();
        let cd = cartan_data(&spec).unwrap();
        for mu in 0..g.len() {
            let canon = g.word_indices(mu);
            let expect = delta_column::<Integer>(&g, &canon).unwrap();
            for w in commutation_class(&canon, &cd, 5_000).unwrap() {
                assert_eq!(delta_column::<Integer>(&g, &w).unwrap(), expect, "{spec}");
            }
        }
    }
}

#[test]
fn routes_agree_on_small_pairs() {
    for spec in small_pairs().into_iter().filter(|s| s.is_classical()) {
        let g = enumerate_cosets(&spec).unwrap();
        assert_eq!(
            closed_kl_matrices(&spec).unwrap(),
            kl_matrices::<Integer>(&g).unwrap(),
            "{spec}"
        );
    }
}

#[test]
fn machine_and_big_coefficients_agree() {
    let g = enumerate_cosets(&PairSpec::e7()).unwrap();
    let small = kl_matrices::<i64>(&g).unwrap();
    let big = kl_matrices::<Integer>(&g).unwrap();
    for i in 0..g.len() {
        for j in 0..g.len() {
            assert_eq!(small.delta.get(i, j).to_json(), big.delta.get(i, j).to_json());
        }
    }
}

#[test]
fn non_reduced_words_are_rejected() {
    let g = enumerate_cosets(&PairSpec::a(3, 2)).unwrap();
    let two = g.node_index(kltl::coxeter::Node::Plain(2)).unwrap();
    assert!(delta_column::<Integer>(&g, &[two, two]).is_err());
    assert!(enumerate_paths(&g, 0, &[two, two]).is_err());
}
