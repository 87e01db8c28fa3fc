//! Truncated Euler products `∏_{p ≤ B} (1 - ρ_P(p²) / p^(2s))`.
//!
//! Every factor lies in `[0, 1]`, so partial products are nonincreasing in
//! `B` and each truncation is an upper bound for the infinite product. No
//! tail estimate is attempted.

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::local::{
    property_a_witnesses, rho, Budget, PrimeLocalDatum, PropertyAWitness, RhoMethod,
};
use crate::poly::Polynomial;
use crate::primes::primes_up_to;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductMode {
    /// Exact rational partial products (floats derived from them).
    Rational,
    /// Floating-point partial products with a running error bound.
    Float,
}

/// Running product after one more prime.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialProduct {
    pub float: f64,
    /// Present in [`ProductMode::Rational`].
    pub rational: Option<BigRational>,
    /// Bound on `|float - exact|`. In rational mode `float` is the exact
    /// value rounded once, and this is the bound for that rounding.
    pub error_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EulerReport {
    pub bound: u64,
    pub mode: ProductMode,
    /// One record per prime `p ≤ bound`, ascending.
    pub records: Vec<PrimeLocalDatum>,
    /// `partials[i]` is the product of the factors of `records[..=i]`.
    pub partials: Vec<PartialProduct>,
    pub is_exactly_zero: bool,
    /// All property-(a) primes of the polynomial, including any above `bound`.
    pub property_a: Vec<PropertyAWitness>,
}

impl EulerReport {
    /// The truncated product; `1` when no prime lies below the bound.
    pub fn final_float(&self) -> f64 {
        self.partials.last().map_or(1.0, |p| p.float)
    }

    pub fn final_rational(&self) -> Option<BigRational> {
        match self.partials.last() {
            Some(p) => p.rational.clone(),
            None => (self.mode == ProductMode::Rational).then(BigRational::one),
        }
    }

    pub fn final_error_bound(&self) -> f64 {
        self.partials.last().map_or(0.0, |p| p.error_bound)
    }

    /// Convergence table with columns `p,rho,factor_num,factor_den,partial_float`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,rho,factor_num,factor_den,partial_float\n");
        for (d, part) in self.records.iter().zip(&self.partials) {
            let f = d.factor();
            writeln!(
                out,
                "{},{},{},{},{}",
                d.p,
                d.rho,
                f.numer(),
                f.denom(),
                part.float
            )
            .unwrap();
        }
        out
    }

    /// Checks the report's structural invariants.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Invariant(m));
        if self.records.len() != self.partials.len() {
            return fail("records and partials differ in length".into());
        }
        let mut prev = 1.0f64;
        for (d, part) in self.records.iter().zip(&self.partials) {
            if d.rho > d.total {
                return fail(format!("rho {} exceeds p^(2s) at p = {}", d.rho, d.p));
            }
            if !(0.0..=1.0).contains(&part.float) || part.float > prev + part.error_bound {
                return fail(format!("partial product not monotone at p = {}", d.p));
            }
            prev = part.float;
        }
        let zero_factor = self.records.iter().any(PrimeLocalDatum::factor_is_zero);
        let witness_in_range = self.property_a.iter().any(|w| w.p <= self.bound);
        if zero_factor != self.is_exactly_zero || zero_factor != witness_in_range {
            return fail("zero product does not match property (a)".into());
        }
        Ok(())
    }
}

/// The exact factor `1 - ρ_P(p²) / p^(2s)`.
pub fn euler_factor(poly: &Polynomial, p: u64, budget: Budget) -> Result<BigRational> {
    Ok(rho(poly, p, None, budget)?.factor())
}

/// Default truncation bound: `10^4` for one variable, `10^2` otherwise.
pub fn default_bound(arity: usize) -> u64 {
    if arity == 1 {
        10_000
    } else {
        100
    }
}

/// Per-factor relative error allowance in float mode: the factor costs two
/// integer-to-float conversions and a division, the product one multiply.
const FLOAT_STEP_ERROR: f64 = 4.0 * f64::EPSILON;

/// Computes the truncated product over all primes `p ≤ bound`.
///
/// Local counts are computed in parallel and then multiplied in ascending
/// order, so the report does not depend on the worker count.
pub fn partial_euler_product(
    poly: &Polynomial,
    bound: u64,
    mode: ProductMode,
    method: Option<RhoMethod>,
    budget: Budget,
) -> Result<EulerReport> {
    if bound < 2 {
        return Err(Error::InvalidArgument(format!(
            "prime bound must be at least 2, got {bound}"
        )));
    }
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let primes = primes_up_to(bound);
    let records = primes
        .par_iter()
        .map(|&p| rho(poly, p, method, budget))
        .collect::<Result<Vec<_>>>()?;

    let mut partials = Vec::with_capacity(records.len());
    match mode {
        ProductMode::Rational => {
            let mut acc = BigRational::one();
            for d in &records {
                acc *= d.factor();
                let float = rational_to_f64(&acc);
                partials.push(PartialProduct {
                    float,
                    rational: Some(acc.clone()),
                    error_bound: float * f64::EPSILON,
                });
            }
        }
        ProductMode::Float => {
            let mut acc = 1.0f64;
            let mut steps = 0i32;
            for d in &records {
                let factor = (d.total - d.rho) as f64 / d.total as f64;
                acc *= factor;
                steps += 1;
                let rel = (1.0 + FLOAT_STEP_ERROR).powi(steps) - 1.0;
                partials.push(PartialProduct {
                    float: acc,
                    rational: None,
                    error_bound: acc * rel / (1.0 - rel) * (1.0 + 1e-6),
                });
            }
        }
    }

    let property_a = property_a_witnesses(poly, budget)?;
    let report = EulerReport {
        bound,
        mode,
        is_exactly_zero: records.iter().any(PrimeLocalDatum::factor_is_zero),
        records,
        partials,
        property_a,
    };
    report.validate()?;
    Ok(report)
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    r.to_f64().unwrap_or(f64::NAN)
}
