//! Prime generation.

use std::sync::OnceLock;

/// All primes `<= n`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = usize::try_from(n).expect("sieve bound fits in memory");
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Deterministic primality test by trial division against the cached table.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            return true;
        }
        if n % p == 0 {
            return n == p;
        }
    }
    // Beyond the table: continue on the 6k +- 1 wheel.
    let mut d = (SMALL_PRIME_LIMIT as u64 / 6) * 6 + 5;
    while (d as u128) * (d as u128) <= n as u128 {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Cube root of `u64::MAX` rounded up, so trial division to the cube root of
/// any `u64` never leaves the table.
pub(crate) const SMALL_PRIME_LIMIT: u32 = 2_642_246;

/// Primes below [`SMALL_PRIME_LIMIT`], computed once.
pub(crate) fn small_primes() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        primes_up_to(SMALL_PRIME_LIMIT as u64)
            .into_iter()
            .map(|p| p as u32)
            .collect()
    })
}
