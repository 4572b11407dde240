use kltl::laurent::{unitriangular_factorize, Laurent, SqMatrix};
use kltl::{LaurentI64, LaurentPoly, MatrixI64};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = LaurentI64> {
    prop::collection::vec((-4i32..=4, -5i64..=5), 0..6).prop_map(Laurent::from_terms)
}

fn positive_poly() -> impl Strategy<Value = LaurentI64> {
    prop::collection::vec((1i32..=4, -5i64..=5), 0..4).prop_map(Laurent::from_terms)
}

fn bar_invariant() -> impl Strategy<Value = LaurentI64> {
    prop::collection::vec((0i32..=3, -5i64..=5), 0..4)
        .prop_map(|t| Laurent::from_terms(t.into_iter().flat_map(|(e, c)| [(e, c), (-e, c)])))
}

/// Lower uni-triangular `N` with entries in `qZ[q]` and `B` with
/// bar-invariant entries.
fn factors(dim: usize) -> impl Strategy<Value = (MatrixI64, MatrixI64)> {
    let cells = dim * (dim - 1) / 2;
    (
        prop::collection::vec(positive_poly(), cells),
        prop::collection::vec(bar_invariant(), cells),
    )
        .prop_map(move |(ns, bs)| {
            let mut n = SqMatrix::identity(dim);
            let mut b = SqMatrix::identity(dim);
            let mut k = 0;
            for i in 0..dim {
                for j in 0..i {
                    n.set(i, j, ns[k].clone());
                    b.set(i, j, bs[k].clone());
                    k += 1;
                }
            }
            (n, b)
        })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentI64::one(), a.clone());
    }

    #[test]
    fn bar_is_an_involutive_ring_map(a in poly(), b in poly()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }

    #[test]
    fn symmetric_split_is_unique(p in poly()) {
        let (b, n) = p.symmetric_split();
        prop_assert!(b.is_bar_invariant());
        prop_assert!(n.in_q_zq());
        prop_assert_eq!(&b + &n, p.clone());
    }

    #[test]
    fn split_recovers_its_parts(b in bar_invariant(), n in positive_poly()) {
        let (b2, n2) = (&b + &n).symmetric_split();
        prop_assert_eq!(b2, b);
        prop_assert_eq!(n2, n);
    }

    #[test]
    fn factorization_round_trip((n, b) in (2usize..6).prop_flat_map(factors)) {
        let delta = n.mul(&b);
        let (n2, b2) = unitriangular_factorize(&delta).unwrap();
        prop_assert_eq!(n2, n);
        prop_assert_eq!(b2, b);
    }

    #[test]
    fn shifts_compose(a in poly(), s in -5i32..5, t in -5i32..5) {
        prop_assert_eq!(a.shift(s).shift(t), a.shift(s + t));
        prop_assert_eq!(a.shift(s), &a * &LaurentI64::q_pow(s));
    }
}

#[test]
fn perturbed_factor_is_rejected() {
    // Any other split of N B would put a non-zero element of qZ[q] into a
    // bar-invariant slot.
    let n = MatrixI64::from_exponent_grid("0 .\n1 0").unwrap();
    let b = MatrixI64::identity(2);
    let (n2, b2) = unitriangular_factorize(&n.mul(&b)).unwrap();
    assert_eq!((n2, b2), (n.clone(), b));
    let mut odd = MatrixI64::identity(2);
    odd.set(1, 0, LaurentI64::q_pow(-1));
    let (n3, b3) = unitriangular_factorize(&odd).unwrap();
    assert_eq!(n3.get(1, 0), &-LaurentI64::q_pow(1));
    assert_eq!(b3.get(1, 0), &Laurent::from_terms([(-1, 1), (1, 1)]));
}

#[test]
fn big_coefficients_do_not_overflow() {
    let mut p = LaurentPoly::q_pow(1) + LaurentPoly::q_pow(0);
    for _ in 0..7 {
        p = &p * &p;
    }
    let binom = |n: u32, k: u32| (0..k).fold(num_bigint::BigInt::one(), |acc, i| acc * (n - i) / (i + 1));
    for e in [0, 1, 63, 64, 128] {
        assert_eq!(p.coeff(e as i32), binom(128, e));
    }
    assert!(p.coeff(64) > num_bigint::BigInt::from(u64::MAX));
}
