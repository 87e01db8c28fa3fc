//! Solution counts modulo `p^2`, fixed divisors and property-(a) detection.
//!
//! `ρ(p²)` is computed two ways. [`rho_bruteforce`] enumerates every residue
//! tuple modulo `p²`. [`rho_lifted`] enumerates tuples modulo `p` and
//! classifies each root: if the gradient is nonzero mod `p` the root has
//! exactly `p^(s-1)` lifts, otherwise `P(a + p t) ≡ P(a) (mod p²)` for every
//! `t` and the root contributes `p^s` or nothing.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{ModularPoly, Polynomial};
use crate::primes::is_prime;
use crate::squarefree::square_prime_divisors;

/// Maximum number of enumerated points for a single computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000_000);

    pub fn check(self, needed: u128) -> Result<()> {
        if needed > self.0 as u128 {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RhoMethod {
    Brute,
    Lifted,
}

impl RhoMethod {
    /// Brute force for univariate polynomials at `p < 5`, lifting otherwise.
    pub fn auto(arity: usize, p: u64) -> Self {
        if arity == 1 && p < 5 {
            RhoMethod::Brute
        } else {
            RhoMethod::Lifted
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RhoMethod::Brute => "brute",
            RhoMethod::Lifted => "lifted",
        }
    }
}

/// `ρ_P(p²)` at one prime together with its Euler factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeLocalDatum {
    pub p: u64,
    /// Number of solutions of `P ≡ 0 (mod p²)` in `(ℤ/p²)^s`.
    pub rho: u128,
    /// `p^(2s)`, the number of residue tuples.
    pub total: u128,
    pub method: RhoMethod,
}

impl PrimeLocalDatum {
    /// `1 - rho / p^(2s)` as an exact rational in `[0, 1]`.
    pub fn factor(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.total - self.rho),
            BigInt::from(self.total),
        )
    }

    pub fn factor_is_zero(&self) -> bool {
        self.rho == self.total
    }
}

/// A prime `p` such that `p²` divides every value of `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyAWitness {
    pub p: u64,
    pub fixed_divisor: BigUint,
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn checked_pow(base: u64, exp: usize) -> Option<u128> {
    (0..exp).try_fold(1u128, |acc, _| acc.checked_mul(base as u128))
}

fn pow_or_budget(base: u64, exp: usize, budget: Budget) -> Result<u128> {
    let n = checked_pow(base, exp).ok_or(Error::BudgetExceeded {
        needed: u128::MAX,
        budget: budget.0,
    })?;
    budget.check(n)?;
    Ok(n)
}

/// Counts points of `(ℤ/m)^s` for which `visit` returns a contribution,
/// splitting the first coordinate across worker threads.
fn sum_over_tuples<F>(arity: usize, m: u64, visit: F) -> u128
where
    F: Fn(&[u64]) -> u128 + Sync,
{
    (0..m)
        .into_par_iter()
        .map(|first| {
            let mut point = vec![0u64; arity];
            point[0] = first;
            let mut acc = 0u128;
            loop {
                acc += visit(&point);
                // Odometer over the remaining coordinates.
                let mut i = 1;
                loop {
                    if i == arity {
                        return acc;
                    }
                    point[i] += 1;
                    if point[i] < m {
                        break;
                    }
                    point[i] = 0;
                    i += 1;
                }
            }
        })
        .sum()
}

/// `ρ_P(p²)` by enumerating all `p^(2s)` residue tuples modulo `p²`.
pub fn rho_bruteforce(poly: &Polynomial, p: u64, budget: Budget) -> Result<PrimeLocalDatum> {
    check_prime(p)?;
    let s = poly.arity();
    let total = pow_or_budget(p, 2 * s, budget)?;
    let m = p * p;
    let reduced = ModularPoly::new(poly, m)?;
    let rho = sum_over_tuples(s, m, |a| (reduced.eval(a) == 0) as u128);
    Ok(PrimeLocalDatum {
        p,
        rho,
        total,
        method: RhoMethod::Brute,
    })
}

/// `ρ_P(p²)` by enumerating residues modulo `p` and lifting each root.
pub fn rho_lifted(poly: &Polynomial, p: u64, budget: Budget) -> Result<PrimeLocalDatum> {
    check_prime(p)?;
    let s = poly.arity();
    pow_or_budget(p, s, budget)?;
    let total = checked_pow(p, 2 * s).ok_or(Error::BudgetExceeded {
        needed: u128::MAX,
        budget: budget.0,
    })?;
    let m = p.checked_mul(p).ok_or(Error::BudgetExceeded {
        needed: u128::MAX,
        budget: budget.0,
    })?;
    let nonsingular = checked_pow(p, s - 1).unwrap();
    let singular = nonsingular * p as u128;

    let value = ModularPoly::new(poly, m)?;
    let gradient = (0..s)
        .map(|i| ModularPoly::new(&poly.partial_derivative(i)?, p))
        .collect::<Result<Vec<_>>>()?;

    let rho = sum_over_tuples(s, p, |a| {
        let v = value.eval(a);
        if v % p != 0 {
            return 0;
        }
        if gradient.iter().any(|g| g.eval(a) != 0) {
            nonsingular
        } else if v == 0 {
            singular
        } else {
            0
        }
    });
    Ok(PrimeLocalDatum {
        p,
        rho,
        total,
        method: RhoMethod::Lifted,
    })
}

/// `ρ_P(p²)` with the given method, or [`RhoMethod::auto`] when `None`.
pub fn rho(
    poly: &Polynomial,
    p: u64,
    method: Option<RhoMethod>,
    budget: Budget,
) -> Result<PrimeLocalDatum> {
    match method.unwrap_or_else(|| RhoMethod::auto(poly.arity(), p)) {
        RhoMethod::Brute => rho_bruteforce(poly, p, budget),
        RhoMethod::Lifted => rho_lifted(poly, p, budget),
    }
}

/// gcd of all values `P(a)`, `a ∈ ℤ^s`.
///
/// Evaluated on the grid `∏ {0, …, deg_i P}`: in the binomial basis
/// `P = Σ c_k ∏ C(x_i, k_i)` the coefficients `c_k` are integer
/// combinations of the grid values and vice versa, so both sets generate
/// the same ideal of `ℤ`.
pub fn fixed_divisor(poly: &Polynomial, budget: Budget) -> Result<BigUint> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    budget.check(poly.degree_grid_size())?;
    let degrees = poly.per_var_degrees();
    let mut point = vec![BigInt::zero(); poly.arity()];
    let mut g = BigInt::zero();
    loop {
        g = g.gcd(&poly.eval_unchecked(&point));
        if g.is_one() {
            break;
        }
        let mut i = 0;
        loop {
            if i == point.len() {
                return finish_fixed_divisor(g);
            }
            point[i] += 1;
            if point[i] <= BigInt::from(degrees[i]) {
                break;
            }
            point[i] = BigInt::zero();
            i += 1;
        }
    }
    finish_fixed_divisor(g)
}

fn finish_fixed_divisor(g: BigInt) -> Result<BigUint> {
    if g.is_zero() {
        return Err(Error::Invariant(
            "nonzero polynomial vanished on its degree grid".into(),
        ));
    }
    Ok(g.magnitude().clone())
}

/// Every prime `p` with `p² | P(a)` for all `a ∈ ℤ^s`, ascending.
///
/// Candidates are exactly the primes whose square divides the fixed
/// divisor; each is confirmed by checking `ρ_P(p²) = p^(2s)`.
pub fn property_a_witnesses(poly: &Polynomial, budget: Budget) -> Result<Vec<PropertyAWitness>> {
    let g = fixed_divisor(poly, budget)?;
    let mut out = Vec::new();
    for p in square_prime_divisors(&g) {
        let p = p.to_u64().ok_or(Error::BudgetExceeded {
            needed: u128::MAX,
            budget: budget.0,
        })?;
        let datum = rho_lifted(poly, p, budget)?;
        if !datum.factor_is_zero() {
            return Err(Error::Invariant(format!(
                "p = {p} squared divides the fixed divisor but rho = {} < {}",
                datum.rho, datum.total
            )));
        }
        out.push(PropertyAWitness {
            p,
            fixed_divisor: g.clone(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn p(s: &str) -> Polynomial {
        parse(s, None).unwrap()
    }

    const B: Budget = Budget::DEFAULT;

    /// Direct count over all residue tuples with exact big-integer values.
    fn naive_rho(poly: &Polynomial, p: i64) -> u128 {
        let m = p * p;
        let s = poly.arity();
        let mut count = 0;
        let mut point = vec![0i64; s];
        loop {
            let v = poly.evaluate_i64(&point).unwrap();
            if (v % BigInt::from(m)).is_zero() {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == s {
                    return count;
                }
                point[i] += 1;
                if point[i] < m {
                    break;
                }
                point[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn brute_examples() {
        assert_eq!(rho_bruteforce(&p("x^2"), 2, B).unwrap().rho, 2);
        assert_eq!(rho_bruteforce(&p("x"), 3, B).unwrap().rho, 1);
        assert_eq!(rho_bruteforce(&p("x^2+1"), 2, B).unwrap().rho, 0);
        assert_eq!(rho_bruteforce(&p("x^2+1"), 5, B).unwrap().rho, 2);
        for s in ["x^2", "x", "x^2+1", "x*y"] {
            for prime in [2, 3, 5] {
                assert_eq!(
                    rho_bruteforce(&p(s), prime, B).unwrap().rho,
                    naive_rho(&p(s), prime as i64)
                );
            }
        }
    }

    #[test]
    fn lifted_examples() {
        assert_eq!(rho_lifted(&p("x^2"), 3, B).unwrap().rho, 3);
        assert_eq!(rho_lifted(&p("x^2+1"), 5, B).unwrap().rho, 2);
        // a = 0: 4 tuples, a = 1: 1, a = 2: 2, a = 3: 1.
        assert_eq!(naive_rho(&p("x*y"), 2), 8);
        assert_eq!(rho_lifted(&p("x*y"), 2, B).unwrap().rho, 8);
        assert_eq!(rho_bruteforce(&p("x*y"), 2, B).unwrap().rho, 8);
    }

    #[test]
    fn composite_and_budget_errors() {
        assert_eq!(rho_bruteforce(&p("x"), 4, B), Err(Error::NotPrime(4)));
        assert_eq!(rho_lifted(&p("x"), 1, B), Err(Error::NotPrime(1)));
        let e = rho_bruteforce(&p("x*y"), 101, Budget(1000)).unwrap_err();
        assert!(matches!(e, Error::BudgetExceeded { .. }));
        assert!(rho_lifted(&p("x*y"), 31, Budget(1000)).is_ok());
        assert!(rho_lifted(&p("x*y"), 37, Budget(1000)).is_err());
    }

    #[test]
    fn auto_method() {
        assert_eq!(rho(&p("x"), 3, None, B).unwrap().method, RhoMethod::Brute);
        assert_eq!(rho(&p("x"), 5, None, B).unwrap().method, RhoMethod::Lifted);
        assert_eq!(
            rho(&p("x*y"), 2, None, B).unwrap().method,
            RhoMethod::Lifted
        );
    }

    #[test]
    fn fixed_divisor_examples() {
        assert_eq!(fixed_divisor(&p("x^2+x"), B).unwrap(), 2u32.into());
        assert_eq!(
            fixed_divisor(&p("x*(x-1)*y*(y-1)"), B).unwrap(),
            4u32.into()
        );
        assert_eq!(fixed_divisor(&p("x^2+1"), B).unwrap(), 1u32.into());
        assert_eq!(fixed_divisor(&p("x^3-x"), B).unwrap(), 6u32.into());
        assert_eq!(fixed_divisor(&p("-12"), B).unwrap(), 12u32.into());
        assert_eq!(
            fixed_divisor(&Polynomial::zero(1), B),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn property_a_examples() {
        let w = property_a_witnesses(&p("x*(x-1)*y*(y-1)"), B).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].p, 2);
        assert_eq!(w[0].fixed_divisor, 4u32.into());
        assert_eq!(rho_bruteforce(&p("x*(x-1)*y*(y-1)"), 2, B).unwrap().rho, 16);

        assert!(property_a_witnesses(&p("x^2+1"), B).unwrap().is_empty());

        let w = property_a_witnesses(&p("4*x^2+4*x+4"), B).unwrap();
        assert_eq!(w.iter().map(|w| w.p).collect::<Vec<_>>(), vec![2]);
        assert_eq!(rho_bruteforce(&p("4*x^2+4*x+4"), 2, B).unwrap().rho, 4);

        let w = property_a_witnesses(&p("36*x^2 + 36"), B).unwrap();
        assert_eq!(w.iter().map(|w| w.p).collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn factor_bounds() {
        let d = rho_bruteforce(&p("x^2"), 3, B).unwrap();
        assert_eq!(d.factor(), BigRational::new(2.into(), 3.into()));
        let d = rho_bruteforce(&p("x*(x-1)*y*(y-1)"), 2, B).unwrap();
        assert!(d.factor().is_zero() && d.factor_is_zero());
    }
}
