//! Squarefree testing of integers.
//!
//! Trial division runs only up to the cube root of the remaining cofactor.
//! Once every prime below `d` has been divided out and the cofactor `r`
//! satisfies `r < d^3`, `r` has at most two prime factors, so it fails to be
//! squarefree exactly when it is a perfect square.

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};

use crate::primes::{small_primes, SMALL_PRIME_LIMIT};

/// True iff no prime square divides `n`. `0` is not squarefree.
pub fn is_squarefree_int(n: &BigInt) -> bool {
    match n.magnitude().to_u64() {
        Some(m) => is_squarefree_u64(m),
        None => is_squarefree_big(n.magnitude().clone()),
    }
}

pub fn is_squarefree_u64(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    for &p in small_primes() {
        let p = p as u64;
        if p * p * p > n {
            break;
        }
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
    }
    !is_nontrivial_square(n)
}

fn is_nontrivial_square(n: u64) -> bool {
    if n < 4 {
        return false;
    }
    let r = n.sqrt();
    r * r == n
}

fn is_squarefree_big(mut n: BigUint) -> bool {
    if n.is_zero() {
        return false;
    }
    let mut divisors = TrialDivisors::new();
    loop {
        if let Some(small) = n.to_u64() {
            return is_squarefree_u64_from(small, divisors.current());
        }
        let d = divisors.next();
        let db = BigUint::from(d);
        if &db * &db * &db > n {
            break;
        }
        if (&n % &db).is_zero() {
            n /= &db;
            if (&n % &db).is_zero() {
                return false;
            }
        }
    }
    let r = n.sqrt();
    !(&r * &r == n && !n.is_one())
}

/// Continues the u64 routine with every prime below `start` already removed.
fn is_squarefree_u64_from(mut n: u64, start: u64) -> bool {
    let primes = small_primes();
    let first = primes.partition_point(|&p| (p as u64) < start);
    for &p in &primes[first..] {
        let p = p as u64;
        if p * p * p > n {
            break;
        }
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
    }
    !is_nontrivial_square(n)
}

/// Primes from the table, then odd candidates on the `6k ± 1` wheel.
struct TrialDivisors {
    index: usize,
    wheel: u64,
    wheel_phase: bool,
    last: u64,
}

impl TrialDivisors {
    fn new() -> Self {
        TrialDivisors {
            index: 0,
            wheel: (SMALL_PRIME_LIMIT as u64 / 6) * 6 + 5,
            wheel_phase: false,
            last: 2,
        }
    }

    /// Smallest divisor not yet returned.
    fn current(&self) -> u64 {
        match small_primes().get(self.index) {
            Some(&p) => p as u64,
            None => self.last + 1,
        }
    }

    fn next(&mut self) -> u64 {
        let d = if let Some(&p) = small_primes().get(self.index) {
            self.index += 1;
            p as u64
        } else {
            let d = self.wheel;
            self.wheel += if self.wheel_phase { 4 } else { 2 };
            self.wheel_phase = !self.wheel_phase;
            d
        };
        self.last = d;
        d
    }
}

/// Primes `p` with `p² | n`, ascending. Empty for `n = 0` or `1`.
pub fn square_prime_divisors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut n = n.clone();
    let mut divisors = TrialDivisors::new();
    loop {
        let d = BigUint::from(divisors.next());
        if &d * &d * &d > n {
            break;
        }
        let mut k = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            k += 1;
        }
        if k >= 2 {
            out.push(d);
        }
    }
    // Remaining cofactor has at most two prime factors, all untested so far.
    let r = n.sqrt();
    if !n.is_one() && &r * &r == n {
        out.push(r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(n: u64) -> bool {
        if n == 0 {
            return false;
        }
        let mut q = 2u64;
        while q * q <= n {
            if n % (q * q) == 0 {
                return false;
            }
            q += 1;
        }
        true
    }

    #[test]
    fn examples() {
        let sf = |n: i64| is_squarefree_int(&BigInt::from(n));
        assert!(!sf(12));
        assert!(sf(30));
        assert!(sf(1));
        assert!(sf(-1));
        assert!(!sf(0));
        assert!(!sf(-45));
        assert!(!sf(999_999));
        assert!(!sf(1_002_001));
        assert!(sf(2));
        assert!(!sf(4));
    }

    #[test]
    fn agrees_with_naive_small() {
        for n in 0..20_000u64 {
            assert_eq!(is_squarefree_u64(n), naive(n), "n = {n}");
        }
    }

    #[test]
    fn big_path() {
        let p = BigUint::from(3_000_017u64);
        let q = BigUint::from(3_000_029u64);
        let r = BigUint::from(3_000_047u64);
        let sf = |n: &BigUint| is_squarefree_int(&BigInt::from(n.clone()));
        assert!(sf(&(&p * &q * &r)));
        assert!(!sf(&(&p * &p * &q)));
        assert!(!sf(&(&p * &q * &q)));
        assert!(!sf(&(&p * &p)));
        assert!(!sf(&(BigUint::from(9u32) * &p * &q)));
        // 2^64 + 1 = 274177 * 67280421310721
        assert!(sf(&((BigUint::one() << 64u32) + 1u32)));
        assert!(!sf(&(BigUint::one() << 70u32)));
    }

    #[test]
    fn square_prime_divisor_examples() {
        let f = |n: u64| {
            square_prime_divisors(&BigUint::from(n))
                .iter()
                .map(|p| p.to_u64().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(f(1), Vec::<u64>::new());
        assert_eq!(f(4), vec![2]);
        assert_eq!(f(36), vec![2, 3]);
        assert_eq!(f(2 * 3 * 5), Vec::<u64>::new());
        assert_eq!(f(1_000_003u64 * 1_000_003), vec![1_000_003]);
        assert_eq!(f(8 * 1_000_003), vec![2]);
    }
}
