use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::Polynomial;
use crate::error::{Error, Result};

/// A polynomial with coefficients reduced into `[0, m)`, for fast repeated
/// evaluation at residue tuples.
#[derive(Debug, Clone)]
pub struct ModularPoly {
    modulus: u64,
    arity: usize,
    terms: Vec<(Vec<u32>, u64)>,
}

impl ModularPoly {
    pub fn new(p: &Polynomial, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus));
        }
        let m = BigInt::from(modulus);
        let terms = p
            .terms
            .iter()
            .filter_map(|(mono, c)| {
                let r = ((c % &m) + &m) % &m;
                let r = r.to_u64().expect("residue below u64 modulus");
                (r != 0).then(|| (mono.exponents().to_vec(), r))
            })
            .collect();
        Ok(ModularPoly {
            modulus,
            arity: p.arity(),
            terms,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// True when every coefficient vanishes modulo `m`.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at a tuple of residues, each already in `[0, m)`.
    #[inline]
    pub fn eval(&self, point: &[u64]) -> u64 {
        debug_assert_eq!(point.len(), self.arity);
        let m = self.modulus;
        let mut acc = 0u64;
        for (exps, c) in &self.terms {
            let mut t = *c;
            for (&a, &e) in point.iter().zip(exps) {
                if e != 0 {
                    t = mul_mod(t, pow_mod(a, e, m), m);
                }
            }
            acc = add_mod(acc, t, m);
        }
        acc
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

#[inline]
pub(crate) fn pow_mod(mut base: u64, mut e: u32, m: u64) -> u64 {
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mul_mod(base, base, m);
        }
    }
    acc
}
