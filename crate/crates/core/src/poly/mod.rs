//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector. Monomials are ordered
//! graded-lexicographically, so the last entry of the map is the leading term
//! and the canonical printed form is simply the map in reverse.

mod display;
mod modular;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use modular::ModularPoly;
pub use parse::parse;

/// Largest number of variables a polynomial may carry (`x1..x9`).
pub const MAX_ARITY: usize = 9;

/// Exponent vector of a single term, one entry per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, index: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    fn padded(&self, arity: usize) -> Monomial {
        let mut e = self.0.clone();
        e.resize(arity, 0);
        Monomial(e)
    }
}

/// Graded-lexicographic order: higher total degree is larger, ties broken
/// lexicographically with `x1` most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `ℤ[x1, …, xs]`.
///
/// No stored coefficient is zero and every monomial has length `arity`.
/// Polynomials are immutable values; every operation returns a new one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(Monomial::one(arity), c.into());
        p
    }

    /// The variable `x{index+1}` (indices are zero-based).
    pub fn var(arity: usize, index: usize) -> Result<Self> {
        if index >= arity {
            return Err(Error::IndexOutOfRange { index, arity });
        }
        let mut p = Self::zero(arity);
        p.add_term(Monomial::var(arity, index), BigInt::one());
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials and dropping zero coefficients.
    pub fn from_terms<I, C>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        if arity > MAX_ARITY {
            return Err(Error::ArityTooLarge(arity));
        }
        let mut p = Self::zero(arity);
        for (exps, c) in terms {
            if exps.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: exps.len(),
                });
            }
            p.add_term(Monomial(exps), c.into());
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value, if the polynomial is constant.
    pub fn constant_value(&self) -> Option<BigInt> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.terms
                .values()
                .next()
                .cloned()
                .unwrap_or_else(BigInt::zero),
        )
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.leading_term().map_or(0, |(m, _)| m.total_degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn per_var_degrees(&self) -> Vec<u32> {
        (0..self.arity).map(|i| self.degree_in(i)).collect()
    }

    /// Same polynomial viewed in a ring with at least `arity` variables.
    pub fn with_arity(&self, arity: usize) -> Self {
        if arity == self.arity {
            return self.clone();
        }
        assert!(arity >= self.arity, "cannot drop variables");
        Polynomial {
            arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.padded(arity), c.clone()))
                .collect(),
        }
    }

    /// gcd of all coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, with a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading_coefficient().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        self.div_scalar_exact(&g)
    }

    /// Multiplies by -1 if needed so the leading coefficient is positive.
    pub fn normalize_sign(&self) -> Self {
        if self.leading_coefficient().is_some_and(|c| c.is_negative()) {
            -self
        } else {
            self.clone()
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k / c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.arity, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check_point_len(&self, len: usize) -> Result<()> {
        if len != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: len,
            });
        }
        Ok(())
    }

    /// Exact value at an integer point.
    pub fn evaluate(&self, point: &[BigInt]) -> Result<BigInt> {
        self.check_point_len(point.len())?;
        Ok(self.eval_unchecked(point))
    }

    /// Exact value at a point with machine-integer coordinates.
    pub fn evaluate_i64(&self, point: &[i64]) -> Result<BigInt> {
        self.check_point_len(point.len())?;
        let big: Vec<BigInt> = point.iter().map(|&a| BigInt::from(a)).collect();
        Ok(self.eval_unchecked(&big))
    }

    pub(crate) fn eval_unchecked(&self, point: &[BigInt]) -> BigInt {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (a, &e) in point.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => t *= a,
                    _ => t *= num_traits::pow(a.clone(), e as usize),
                }
            }
            total += t;
        }
        total
    }

    /// `evaluate(point) mod m`, computed with every intermediate reduced
    /// modulo `m`. The result lies in `[0, m)`.
    pub fn evaluate_mod(&self, point: &[i64], m: u64) -> Result<u64> {
        self.check_point_len(point.len())?;
        let reduced = ModularPoly::new(self, m)?;
        let residues: Vec<u64> = point
            .iter()
            .map(|&a| (a as i128).rem_euclid(m as i128) as u64)
            .collect();
        Ok(reduced.eval(&residues))
    }

    /// Formal partial derivative with respect to `x{var+1}`.
    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.arity {
            return Err(Error::IndexOutOfRange {
                index: var,
                arity: self.arity,
            });
        }
        let mut d = Self::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[var] -= 1;
            d.add_term(dm, c * BigInt::from(e));
        }
        Ok(d)
    }

    /// The quotient `self / divisor` if the division is exact in `ℤ[X]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let arity = self.arity.max(divisor.arity);
        let divisor = divisor.with_arity(arity);
        let mut rem = self.with_arity(arity);
        let mut quot = Self::zero(arity);
        let (dm, dc) = divisor.leading_term().expect("nonzero divisor");
        let (dm, dc) = (dm.clone(), dc.clone());
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.checked_div(&dm)?;
            let (qc, r) = c.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            for (tm, tc) in &divisor.terms {
                rem.add_term(tm.mul(&qm), -(tc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to `x{var+1}`: entry `i` multiplies
    /// `x{var+1}^i` and does not involve that variable.
    pub(crate) fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(self.arity); deg + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = std::mem::take(&mut rest.0[var]) as usize;
            out[e].add_term(rest, c.clone());
        }
        out
    }

    pub(crate) fn from_coefficients_in(arity: usize, var: usize, coeffs: &[Polynomial]) -> Self {
        let mut p = Self::zero(arity);
        for (i, q) in coeffs.iter().enumerate() {
            for (m, c) in &q.terms {
                let mut mm = m.clone();
                mm.0[var] += i as u32;
                p.add_term(mm, c.clone());
            }
        }
        p
    }

    /// Highest-index variable that actually occurs.
    pub(crate) fn max_var(&self) -> Option<usize> {
        (0..self.arity).rev().find(|&i| self.degree_in(i) > 0)
    }

    /// The substitution `x_i -> x_i + shift_i`.
    pub fn shift(&self, shift: &[BigInt]) -> Result<Self> {
        self.check_point_len(shift.len())?;
        let lin: Vec<Polynomial> = shift
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut v = Self::var(self.arity, i).expect("index in range");
                v.add_term(Monomial::one(self.arity), c.clone());
                v
            })
            .collect();
        let mut out = Self::zero(self.arity);
        for (m, c) in &self.terms {
            let mut t = Self::constant(self.arity, c.clone());
            for (l, &e) in lin.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &l.pow(e);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Number of lattice points `∏ (d_i + 1)` of the grid spanned by the
    /// per-variable degrees.
    pub(crate) fn degree_grid_size(&self) -> u128 {
        self.per_var_degrees()
            .iter()
            .map(|&d| d as u128 + 1)
            .product()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let arity = self.arity.max(rhs.arity);
        let mut out = self.with_arity(arity);
        for (m, c) in &rhs.terms {
            out.add_term(m.padded(arity), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let arity = self.arity.max(rhs.arity);
        let mut out = self.with_arity(arity);
        for (m, c) in &rhs.terms {
            out.add_term(m.padded(arity), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let arity = self.arity.max(rhs.arity);
        let (a, b) = (self.with_arity(arity), rhs.with_arity(arity));
        let mut out = Polynomial::zero(arity);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        parse(s, None).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p("x^2+1").evaluate(&[big(3)]).unwrap(), big(10));
        assert_eq!(p("x*y-2").evaluate(&[big(2), big(3)]).unwrap(), big(4));
        assert_eq!(p("x").evaluate(&[big(-5)]).unwrap(), big(-5));
        assert!(matches!(
            p("x*y").evaluate(&[big(1)]),
            Err(Error::ArityMismatch {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn evaluate_mod_examples() {
        assert_eq!(p("x^2+1").evaluate_mod(&[3], 4).unwrap(), 2);
        assert_eq!(p("x^2").evaluate_mod(&[2], 4).unwrap(), 0);
        assert_eq!(p("x*y").evaluate_mod(&[5, 5], 9).unwrap(), 7);
        assert_eq!(p("x-10").evaluate_mod(&[-3], 7).unwrap(), 1);
        assert_eq!(p("x").evaluate_mod(&[1], 1), Err(Error::BadModulus(1)));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x^2*y").partial_derivative(0).unwrap(), p("2*x*y"));
        assert_eq!(
            p("x^2+1").with_arity(2).partial_derivative(1).unwrap(),
            Polynomial::zero(2)
        );
        assert_eq!(p("x^3-x").partial_derivative(0).unwrap(), p("3*x^2-1"));
        assert!(p("x").partial_derivative(1).is_err());
    }

    #[test]
    fn content_examples() {
        let q = p("4*x+6");
        assert_eq!(q.content(), big(2));
        assert_eq!(q.primitive_part(), p("2*x+3"));

        let c = p("3");
        assert_eq!(c.content(), big(3));
        assert_eq!(c.primitive_part(), p("1"));

        let n = p("-2*x");
        assert_eq!(n.content(), big(2));
        assert_eq!(n.primitive_part(), p("x"));

        assert_eq!(Polynomial::zero(1).content(), big(0));
    }

    #[test]
    fn exact_division() {
        let a = p("(x+y)^2*(x-y)");
        assert_eq!(a.div_exact(&p("x+y")).unwrap(), p("(x+y)*(x-y)"));
        assert!(a.div_exact(&p("x+2*y")).is_none());
        assert!(p("x+1").div_exact(&p("2")).is_none());
        assert_eq!(p("2*x+2").div_exact(&p("2")).unwrap(), p("x+1"));
        assert!(p("x").div_exact(&Polynomial::zero(1)).is_none());
    }

    #[test]
    fn shift_matches_substitution() {
        let q = p("x^2*y + 3*y - 1");
        let s = q.shift(&[big(2), big(-1)]).unwrap();
        for a in -3..3 {
            for b in -3..3 {
                assert_eq!(
                    s.evaluate_i64(&[a, b]).unwrap(),
                    q.evaluate_i64(&[a + 2, b - 1]).unwrap()
                );
            }
        }
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let a = Monomial::new(vec![2, 0]);
        let b = Monomial::new(vec![1, 1]);
        let c = Monomial::new(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
    }

    #[test]
    fn degrees() {
        let q = p("x^3*y + y^2 + z");
        assert_eq!(q.total_degree(), 4);
        assert_eq!(q.per_var_degrees(), vec![3, 2, 1]);
        assert_eq!(Polynomial::zero(2).total_degree(), 0);
    }
}
