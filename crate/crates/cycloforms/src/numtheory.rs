//! Elementary arithmetic functions and totient machinery.
//!
//! Everything here works on `u64` inputs at desk scale (n up to ~10^6);
//! factorisation is trial division backed by a cached prime table.

use std::sync::OnceLock;

use crate::{Error, Result};

const PRIME_CACHE_LIMIT: u64 = 1 << 16;

fn prime_cache() -> &'static [u64] {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let limit = PRIME_CACHE_LIMIT as usize;
        let mut is_composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for p in 2..=limit {
            if !is_composite[p] {
                primes.push(p as u64);
                let mut q = p * p;
                while q <= limit {
                    is_composite[q] = true;
                    q += p;
                }
            }
        }
        primes
    })
}

/// Prime factorisation of `n >= 1` as `(p, exponent)` pairs in increasing `p`.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::ZeroArgument("n"));
    }
    let mut n = n;
    let mut factors = Vec::new();
    for &p in prime_cache() {
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    // Whatever survives the cached primes is prime: inputs stay below the
    // square of the cache limit.
    if n > 1 {
        factors.push((n, 1));
    }
    Ok(factors)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).map(|f| f.len() == 1 && f[0].1 == 1).unwrap_or(false)
}

/// Euler's phi, multiplicative over the factorisation of `n`.
pub fn euler_phi(n: u64) -> Result<u64> {
    let mut phi = 1;
    for (p, e) in factorize(n)? {
        phi *= p.pow(e - 1) * (p - 1);
    }
    Ok(phi)
}

/// Moebius function: 0 iff `n` has a squared prime factor, else `(-1)^omega(n)`.
pub fn moebius(n: u64) -> Result<i32> {
    let factors = factorize(n)?;
    if factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Radical of `n`: the product of the distinct primes dividing it.
pub fn radical(n: u64) -> Result<u64> {
    Ok(factorize(n)?.iter().map(|&(p, _)| p).product())
}

/// Number of positive divisors of `n`.
pub fn divisor_count(n: u64) -> Result<u64> {
    Ok(factorize(n)?
        .iter()
        .map(|&(_, e)| u64::from(e) + 1)
        .product())
}

/// All positive divisors of `n`, sorted.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::ZeroArgument("n"));
    }
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    Ok(divs)
}

/// All `n` with `phi(n) = d`, sorted. Empty when `d` is not a totient.
///
/// The scan is bounded by `n <= 2 d^2`, which is safe because
/// `phi(n) >= sqrt(n / 2)` for every `n`.
pub fn inverse_totient(d: u64) -> Result<Vec<u64>> {
    if d == 0 {
        return Err(Error::ZeroArgument("d"));
    }
    let bound = 2 * d * d;
    let mut hits = Vec::new();
    for n in 1..=bound {
        if euler_phi(n)? == d {
            hits.push(n);
        }
    }
    Ok(hits)
}

/// Whether `d` is attained by Euler's phi.
pub fn is_totient(d: u64) -> bool {
    matches!(inverse_totient(d), Ok(v) if !v.is_empty())
}

/// The immediate successor of `d` in the increasing sequence of totients.
///
/// Scans `d+1, d+2, ...`; totient gaps are tiny at this scale.
pub fn next_totient(d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::ZeroArgument("d"));
    }
    if !is_totient(d) {
        return Err(Error::NotTotient(d));
    }
    let mut candidate = d + 1;
    loop {
        if is_totient(candidate) {
            return Ok(candidate);
        }
        candidate += 1;
    }
}

/// `inverse_totient(d)` restricted to `n != 2 mod 4`.
///
/// These indices form a complete system of representatives of the
/// isomorphism classes of cyclotomic forms of degree `d`.
pub fn canonical_indices(d: u64) -> Result<Vec<u64>> {
    Ok(inverse_totient(d)?
        .into_iter()
        .filter(|n| n % 4 != 2)
        .collect())
}

/// Table of `phi(n)` for `n <= limit`, plus the sorted set of attained values.
#[derive(Debug, Clone)]
pub struct TotientTable {
    limit: u64,
    phi_values: Vec<u64>,
    totient_set: Vec<u64>,
}

impl TotientTable {
    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::ZeroArgument("limit"));
        }
        let n = limit as usize;
        // Sieve phi in place: start with phi(k) = k, subtract at primes.
        let mut phi: Vec<u64> = (0..=n as u64).collect();
        for p in 2..=n {
            if phi[p] == p as u64 {
                let mut k = p;
                while k <= n {
                    phi[k] -= phi[k] / p as u64;
                    k += p;
                }
            }
        }
        let mut set: Vec<u64> = phi[1..].to_vec();
        set.sort_unstable();
        set.dedup();
        Ok(Self {
            limit,
            phi_values: phi,
            totient_set: set,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `phi(n)` for `1 <= n <= limit`.
    pub fn phi(&self, n: u64) -> Option<u64> {
        if n == 0 || n > self.limit {
            None
        } else {
            Some(self.phi_values[n as usize])
        }
    }

    /// Distinct values of phi on `[1, limit]`, strictly increasing.
    pub fn totient_set(&self) -> &[u64] {
        &self.totient_set
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::gcd;

    fn phi_bruteforce(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(12).unwrap(), 4);
        // Sophie-Germain shape: phi(2p+1) = 2p for prime 2p+1.
        for p in [5u64, 11, 23, 29] {
            assert!(is_prime(2 * p + 1));
            assert_eq!(euler_phi(2 * p + 1).unwrap(), 2 * p);
        }
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(4).unwrap(), 0);
        assert_eq!(moebius(6).unwrap(), 1);
        assert!(moebius(0).is_err());
    }

    #[test]
    fn radical_examples() {
        assert_eq!(radical(1).unwrap(), 1);
        assert_eq!(radical(12).unwrap(), 6);
        assert_eq!(radical(81).unwrap(), 3);
        assert!(radical(0).is_err());
    }

    #[test]
    fn divisor_count_examples() {
        assert_eq!(divisor_count(1).unwrap(), 1);
        assert_eq!(divisor_count(12).unwrap(), 6);
        for p in [2u64, 3, 5, 7, 97] {
            assert_eq!(divisor_count(p).unwrap(), 2);
        }
    }

    #[test]
    fn next_totient_examples() {
        assert_eq!(next_totient(4).unwrap(), 6);
        assert_eq!(next_totient(12).unwrap(), 16);
        assert_eq!(next_totient(24).unwrap(), 28);
        assert!(matches!(next_totient(14), Err(Error::NotTotient(14))));
    }

    #[test]
    fn next_totient_reproduces_totient_sequence() {
        let expected = [1u64, 2, 4, 6, 8, 10, 12, 16, 18, 20, 22, 24, 28, 30];
        let mut d = 1;
        for window in expected.windows(2) {
            assert_eq!(d, window[0]);
            d = next_totient(d).unwrap();
            assert_eq!(d, window[1]);
        }
    }

    #[test]
    fn inverse_totient_examples() {
        assert_eq!(inverse_totient(4).unwrap(), vec![5, 8, 10, 12]);
        assert_eq!(inverse_totient(14).unwrap(), Vec::<u64>::new());
        // 2p for Sophie-Germain p: exactly 2p+1 and 2(2p+1).
        for p in [5u64, 11, 23] {
            let sols = inverse_totient(2 * p).unwrap();
            assert_eq!(sols, vec![2 * p + 1, 2 * (2 * p + 1)]);
        }
    }

    #[test]
    fn inverse_totient_complete_up_to_bound() {
        for d in (2..=100u64).step_by(2) {
            let sols = inverse_totient(d).unwrap();
            for &n in &sols {
                assert_eq!(euler_phi(n).unwrap(), d);
            }
            for n in 1..=2 * d * d {
                if euler_phi(n).unwrap() == d {
                    assert!(sols.contains(&n));
                }
            }
        }
    }

    #[test]
    fn canonical_indices_examples() {
        assert_eq!(canonical_indices(4).unwrap(), vec![5, 8, 12]);
        assert_eq!(canonical_indices(2).unwrap(), vec![3, 4]);
        assert_eq!(canonical_indices(6).unwrap(), vec![7, 9]);
    }

    #[test]
    fn phi_matches_coprime_count() {
        for n in 1..=2000 {
            assert_eq!(euler_phi(n).unwrap(), phi_bruteforce(n), "n = {n}");
        }
    }

    #[test]
    fn phi_divisor_sum_identity() {
        for n in 1..=2000u64 {
            let total: u64 = divisors(n)
                .unwrap()
                .iter()
                .map(|&k| euler_phi(k).unwrap())
                .sum();
            assert_eq!(total, n);
        }
    }

    #[test]
    fn moebius_divisor_sum_identity() {
        for n in 1..=2000u64 {
            let total: i32 = divisors(n)
                .unwrap()
                .iter()
                .map(|&k| moebius(k).unwrap())
                .sum();
            assert_eq!(total, i32::from(n == 1));
        }
    }

    #[test]
    fn totient_table_invariants() {
        let table = TotientTable::new(10_000).unwrap();
        assert_eq!(table.phi(1), Some(1));
        for p in [2u64, 3, 5, 101, 9973] {
            assert_eq!(table.phi(p), Some(p - 1));
        }
        for n in 1..=10_000 {
            assert_eq!(table.phi(n), Some(euler_phi(n).unwrap()));
        }
        let set = table.totient_set();
        assert!(set.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(
            &set[..14],
            &[1, 2, 4, 6, 8, 10, 12, 16, 18, 20, 22, 24, 28, 30]
        );
    }
}
