//! Exact Laurent polynomials in `q` and uni-triangular factorisation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Integer-like coefficient ring.
pub trait Coeff:
    Clone
    + Eq
    + Ord
    + std::hash::Hash
    + fmt::Debug
    + fmt::Display
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> Coeff for T where
    T: Clone
        + Eq
        + Ord
        + std::hash::Hash
        + fmt::Debug
        + fmt::Display
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Sparse Laurent polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Laurent<C: Coeff> {
    terms: BTreeMap<i32, C>,
}

impl<C: Coeff> Laurent<C> {
    pub fn monomial(c: C, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Laurent { terms }
    }

    /// `q^e`
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(C::one(), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, C)>>(it: I) -> Self {
        let mut p = Laurent::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i32, c: C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(C::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i32) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &C)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Laurent::from_terms(self.terms.iter().map(|(e, x)| (*e, x.clone() * c.clone())))
    }

    /// `q ↦ q^{-1}`.
    pub fn bar(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// True iff every exponent is at least 1 (so zero qualifies).
    pub fn in_q_zq(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 1)
    }

    /// `Some(e)` iff `self == q^e`.
    pub fn as_q_pow(&self) -> Option<i32> {
        match self.terms.iter().next() {
            Some((e, c)) if self.terms.len() == 1 && c.is_one() => Some(*e),
            _ => None,
        }
    }

    /// Split into a bar-invariant part and a part in `qZ[q]`.
    ///
    /// The invariant part copies every coefficient at a non-positive
    /// exponent and mirrors the negative ones.
    pub fn symmetric_split(&self) -> (Self, Self) {
        let mut b = Laurent::zero();
        for (e, c) in self.terms.range(..=0) {
            b.add_term(*e, c.clone());
            if *e < 0 {
                b.add_term(-e, c.clone());
            }
        }
        let n = self.clone() - b.clone();
        (b, n)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (e, c) in &self.terms {
            let v = match c.to_i64() {
                Some(x) => Value::from(x),
                None => Value::String(c.to_string()),
            };
            m.insert(e.to_string(), v);
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse(format!("expected object, got {v}")))?;
        let mut p = Laurent::zero();
        for (k, val) in obj {
            let e: i32 = k.parse().map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
            let c = val
                .as_i64()
                .and_then(C::from_i64)
                .ok_or_else(|| Error::Parse(format!("bad coefficient {val}")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl<C: Coeff> Zero for Laurent<C> {
    fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for Laurent<C> {
    fn one() -> Self {
        Self::q_pow(0)
    }
}

impl<C: Coeff> AddAssign<&Laurent<C>> for Laurent<C> {
    fn add_assign(&mut self, rhs: &Laurent<C>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<C: Coeff> SubAssign<&Laurent<C>> for Laurent<C> {
    fn sub_assign(&mut self, rhs: &Laurent<C>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<C: Coeff> Add for Laurent<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<C: Coeff> Add<&Laurent<C>> for &Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coeff> Sub for Laurent<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<C: Coeff> Sub<&Laurent<C>> for &Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coeff> Neg for Laurent<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Laurent {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<C: Coeff> Mul<&Laurent<C>> for &Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, rhs: &Laurent<C>) -> Laurent<C> {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Mul for Laurent<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Coeff> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = mag.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

/// Dense square matrix over `Laurent<C>`, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SqMatrix<C: Coeff> {
    n: usize,
    data: Vec<Laurent<C>>,
}

impl<C: Coeff> SqMatrix<C> {
    pub fn zeros(n: usize) -> Self {
        SqMatrix {
            n,
            data: vec![Laurent::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Laurent::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Laurent<C>>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::Shape(format!("row of length {} in {n}x{n}", r.len())));
            }
            data.extend(r);
        }
        Ok(SqMatrix { n, data })
    }

    /// Parse a grid of exponents with `.` for zero, one row per line.
    pub fn from_exponent_grid(text: &str) -> Result<Self> {
        let rows: Vec<Vec<Laurent<C>>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.split_whitespace()
                    .map(|tok| match tok {
                        "." => Ok(Laurent::zero()),
                        t => t
                            .parse::<i32>()
                            .map(Laurent::q_pow)
                            .map_err(|_| Error::Parse(format!("bad grid entry {t:?}"))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::from_rows(rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent<C> {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Laurent<C>) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Laurent<C>] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `out[i][j] = self[perm[i]][perm[j]]`
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = Self::zeros(perm.len());
        for (i, &pi) in perm.iter().enumerate() {
            for (j, &pj) in perm.iter().enumerate() {
                out.set(i, j, self.get(pi, pj).clone());
            }
        }
        out
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i).is_one() && (i + 1..self.n).all(|j| self.get(i, j).is_zero()))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let cur = &out.data[i * n + j] + &(a * b);
                        out.data[i * n + j] = cur;
                    }
                }
            }
        }
        out
    }

    /// Exponent grid when every entry is `0` or `q^e`.
    pub fn to_exponent_grid(&self) -> Option<Vec<Vec<Option<i32>>>> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|p| {
                        if p.is_zero() {
                            Some(None)
                        } else {
                            p.as_q_pow().map(Some)
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// The triple `(Δ, N, B)` in a fixed total order.
///
/// Rows and columns run from the maximal coset down to the identity, so all
/// three matrices are lower uni-triangular with `Δ[λ][μ]` non-zero only for
/// `λ ≤ μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KLMatrices<C: Coeff> {
    pub order: Vec<usize>,
    pub delta: SqMatrix<C>,
    pub n_mat: SqMatrix<C>,
    pub b_mat: SqMatrix<C>,
}

impl<C: Coeff> KLMatrices<C> {
    pub fn from_delta(order: Vec<usize>, delta: SqMatrix<C>) -> Result<Self> {
        let (n_mat, b_mat) = unitriangular_factorize(&delta)?;
        Ok(KLMatrices {
            order,
            delta,
            n_mat,
            b_mat,
        })
    }

    /// Checks the triangularity, ring-membership and product invariants.
    pub fn check(&self) -> Result<()> {
        for (name, m) in [("delta", &self.delta), ("n", &self.n_mat), ("b", &self.b_mat)] {
            if !m.is_lower_unitriangular() {
                return Err(Error::Invariant(format!("{name} is not lower uni-triangular")));
            }
        }
        let n = self.delta.dim();
        for i in 0..n {
            for j in 0..i {
                if !self.n_mat.get(i, j).in_q_zq() {
                    return Err(Error::Invariant(format!("n[{i}][{j}] not in qZ[q]")));
                }
                if !self.b_mat.get(i, j).is_bar_invariant() {
                    return Err(Error::Invariant(format!("b[{i}][{j}] not bar-invariant")));
                }
            }
        }
        if self.n_mat.mul(&self.b_mat) != self.delta {
            return Err(Error::Invariant("N x B != delta".into()));
        }
        Ok(())
    }
}

/// Factor a lower uni-triangular `Δ` as `N × B`.
///
/// Entry `(i, j)` with `i > j` needs `N[i][k]` for `j < k < i` (shorter gaps,
/// same row) and `B[k][j]` (shorter gaps, same column), so sweeping by gap
/// `i - j` respects every dependency.
pub fn unitriangular_factorize<C: Coeff>(delta: &SqMatrix<C>) -> Result<(SqMatrix<C>, SqMatrix<C>)> {
    if !delta.is_lower_unitriangular() {
        return Err(Error::Shape("delta is not lower uni-triangular".into()));
    }
    let n = delta.dim();
    let mut nm = SqMatrix::identity(n);
    let mut bm = SqMatrix::identity(n);
    for gap in 1..n {
        for j in 0..n - gap {
            let i = j + gap;
            let mut p = delta.get(i, j).clone();
            for k in j + 1..i {
                let a = nm.get(i, k);
                let b = bm.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    p -= &(a * b);
                }
            }
            let (b, nn) = p.symmetric_split();
            bm.set(i, j, b);
            nm.set(i, j, nn);
        }
    }
    Ok((nm, bm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::LaurentPoly;
    use num_bigint::BigInt;

    fn q(e: i32) -> LaurentPoly {
        LaurentPoly::q_pow(e)
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&q(1) * &q(-1), LaurentPoly::one());
        assert_eq!(&(q(1) + q(-1)) * &q(1), q(2) + q(0));
        let one = LaurentPoly::one();
        assert_eq!(&(&one + &q(1)) * &(&one - &q(1)), one.clone() - q(2));
        assert!((q(3) - q(3)).is_zero());
        assert_eq!((-q(2)).coeff(2), BigInt::from(-1));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(q(2).bar(), q(-2));
        let s = q(1) + q(-1);
        assert_eq!(s.bar(), s);
        assert!(LaurentPoly::zero().bar().is_zero());
    }

    #[test]
    fn split_examples() {
        assert_eq!(q(1).symmetric_split(), (LaurentPoly::zero(), q(1)));
        let s = q(1) + q(-1);
        assert_eq!(s.symmetric_split(), (s.clone(), LaurentPoly::zero()));
        let p = q(2) + q(0) + q(-1);
        let (b, n) = p.symmetric_split();
        assert_eq!(b, q(0) + q(1) + q(-1));
        assert_eq!(n, q(2) - q(1));
    }

    #[test]
    fn display_and_json() {
        let p = LaurentPoly::from_terms([(2, BigInt::from(3)), (0, BigInt::from(-1)), (-1, BigInt::from(1))]);
        assert_eq!(p.to_string(), "3q^2 - 1 + q^-1");
        let v = p.to_json();
        assert_eq!(v.to_string(), r#"{"-1":1,"0":-1,"2":3}"#);
        assert_eq!(LaurentPoly::from_json(&v).unwrap(), p);
        assert_eq!(LaurentPoly::zero().to_json().to_string(), "{}");
    }

    #[test]
    fn trivial_two_by_two() {
        let d = SqMatrix::from_rows(vec![vec![q(0), LaurentPoly::zero()], vec![q(1), q(0)]]).unwrap();
        let (n, b) = unitriangular_factorize(&d).unwrap();
        assert_eq!(n, d);
        assert_eq!(b, SqMatrix::identity(2));
    }

    #[test]
    fn rejects_non_triangular() {
        let d = SqMatrix::<BigInt>::from_exponent_grid("0 1\n. 0").unwrap();
        assert!(unitriangular_factorize(&d).is_err());
    }
}
