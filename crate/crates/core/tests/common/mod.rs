#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use sfd_core::Polynomial;

/// Random polynomial with `arity` variables, total degree at most `deg` and
/// coefficients in `[-coef, coef]`.
pub fn poly_strategy(arity: usize, deg: u32, coef: i64) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0..=deg, arity), -coef..=coef).prop_map(move |(mut e, c)| {
        // Scale the exponent vector down into the degree bound.
        while e.iter().sum::<u32>() > deg {
            let i = e.iter().position(|&x| x > 0).unwrap();
            e[i] -= 1;
        }
        (e, c)
    });
    prop::collection::vec(term, 1..6)
        .prop_map(move |terms| Polynomial::from_terms(arity, terms).unwrap())
}

pub fn random_poly<R: Rng>(rng: &mut R, arity: usize, deg: u32, coef: i64) -> Polynomial {
    let n_terms = rng.gen_range(1..=6);
    let terms = (0..n_terms).map(|_| {
        let mut e = vec![0u32; arity];
        let d = rng.gen_range(0..=deg);
        for _ in 0..d {
            e[rng.gen_range(0..arity)] += 1;
        }
        (e, rng.gen_range(-coef..=coef))
    });
    Polynomial::from_terms(arity, terms).unwrap()
}

/// Random non-constant polynomial.
pub fn random_nonconstant<R: Rng>(rng: &mut R, arity: usize, deg: u32, coef: i64) -> Polynomial {
    loop {
        let p = random_poly(rng, arity, deg.max(1), coef);
        if !p.is_constant() {
            return p;
        }
    }
}

/// All-squares oracle: no `q² | n` for `2 ≤ q`, `q² ≤ |n|`.
pub fn naive_squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut q: u64 = 2;
    while q * q <= n {
        if n % (q * q) == 0 {
            return false;
        }
        q += 1;
    }
    true
}
