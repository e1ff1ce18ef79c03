//! Confinement of `Phi_n(a, b)` to a few residue classes: the residue sets
//! attained modulo `p | n`, modulo 9 and modulo 4, the prime-index congruence
//! lemma, and the construction of the obstruction classes `(D, a0, b0)`.
//!
//! Residue profiles are computed exhaustively over the full `(a, b)` grid;
//! the propositions are then checked against them rather than trusted.

use std::collections::BTreeSet;

use num_integer::lcm;
use num_traits::ToPrimitive;

use crate::cycloform::cyclotomic_poly;
use crate::numtheory::{canonical_indices, factorize, is_prime, is_totient};
use crate::{Error, Result};

/// Grid guard: a profile scans modulus^2 pairs.
pub const DEFAULT_MODULUS_GUARD: u64 = 512;

/// The exact set of residues attained by `Phi_n(a, b)` modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueProfile {
    pub index: u64,
    pub modulus: u64,
    pub attained: BTreeSet<u64>,
}

impl ResidueProfile {
    pub fn contains(&self, residue: u64) -> bool {
        self.attained.contains(&(residue % self.modulus))
    }
}

/// Exhaustive residue image of `Phi_n` over the `(a, b)` grid modulo `modulus`.
pub fn residues_attained(n: u64, modulus: u64) -> Result<ResidueProfile> {
    residues_attained_guarded(n, modulus, DEFAULT_MODULUS_GUARD)
}

/// Same as [`residues_attained`] with a caller-chosen grid guard.
pub fn residues_attained_guarded(n: u64, modulus: u64, guard: u64) -> Result<ResidueProfile> {
    if n == 0 {
        return Err(Error::ZeroArgument("n"));
    }
    if modulus < 2 {
        return Err(Error::ModulusTooSmall(modulus));
    }
    if modulus > guard {
        return Err(Error::ModulusTooLarge(modulus, guard));
    }
    let form = cyclotomic_poly(n)?;
    // Reduce coefficients once; evaluation stays in u64 (modulus <= 512).
    let coeffs: Vec<u64> = form
        .form()
        .coefficients()
        .iter()
        .map(|c| {
            let m = num_bigint::BigInt::from(modulus);
            let r = ((c % &m) + &m) % &m;
            r.to_u64().unwrap()
        })
        .collect();
    let mut attained = BTreeSet::new();
    for a in 0..modulus {
        for b in 0..modulus {
            attained.insert(eval_mod(&coeffs, a, b, modulus));
        }
    }
    Ok(ResidueProfile {
        index: n,
        modulus,
        attained,
    })
}

/// `Phi(a, b) mod m` for reduced ascending coefficients.
fn eval_mod(coeffs: &[u64], a: u64, b: u64, m: u64) -> u64 {
    let d = coeffs.len() - 1;
    let mut apows = Vec::with_capacity(d + 1);
    let mut p = 1u64;
    apows.push(p);
    for _ in 0..d {
        p = p * a % m;
        apows.push(p);
    }
    let mut acc = coeffs[0] % m;
    for j in 1..=d {
        acc = (acc * b + coeffs[j] * apows[j]) % m;
    }
    acc
}

/// Which case of the prime-index congruence applied at `(a, b)`.
///
/// For odd prime `p`: if `a != b mod p` then `Phi_p(a, b) = 1 mod p`,
/// otherwise `Phi_p(a, b) = p a^{p-1} mod p^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeCongruence {
    /// `a != b mod p`; carries the verified residue of `Phi_p(a,b)` mod `p` (always 1).
    NotCongruent { residue_mod_p: u64 },
    /// `a == b mod p`; carries the verified residue of `Phi_p(a,b)` mod `p^2`.
    Congruent { residue_mod_p2: u64 },
}

/// Evaluate `Phi_p(a, b)` exactly and verify the asserted congruence,
/// returning which case applied.
pub fn prime_congruence_check(p: u64, a: i64, b: i64) -> Result<PrimeCongruence> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime("p", p));
    }
    let form = cyclotomic_poly(p)?;
    let value = form.evaluate_i64(a, b);
    let reduce = |m: u64| -> u64 {
        let m = num_bigint::BigInt::from(m);
        (((&value % &m) + &m) % &m).to_u64().unwrap()
    };
    let pi = p as i64;
    if a.rem_euclid(pi) != b.rem_euclid(pi) {
        let residue = reduce(p);
        if residue != 1 {
            return Err(Error::CongruenceViolated { p, a, b });
        }
        Ok(PrimeCongruence::NotCongruent {
            residue_mod_p: residue,
        })
    } else {
        let p2 = p * p;
        let residue = reduce(p2);
        // p * a^{p-1} mod p^2.
        let mut expected = p % p2;
        let abase = (a.rem_euclid(p2 as i64)) as u64;
        for _ in 0..p - 1 {
            expected = expected * abase % p2;
        }
        if residue != expected {
            return Err(Error::CongruenceViolated { p, a, b });
        }
        Ok(PrimeCongruence::Congruent {
            residue_mod_p2: residue,
        })
    }
}

/// The confinement modulus attached to an index: the smallest prime `>= 5`
/// dividing `n`, or 4 for `n = 2^h 3^k` with `h >= 2`, or 9 for `n = 3^k`
/// with `k >= 2`. Partial exactly where the case analysis is partial.
pub fn varpi(n: u64) -> Result<u64> {
    if n < 3 || n % 4 == 2 {
        return Err(Error::VarpiUndefined(n));
    }
    let factors = factorize(n)?;
    if let Some(&(p, _)) = factors.iter().find(|&&(p, _)| p >= 5) {
        return Ok(p);
    }
    // Only primes 2 and 3 divide n.
    let h = factors.iter().find(|&&(p, _)| p == 2).map_or(0, |&(_, e)| e);
    let k = factors.iter().find(|&&(p, _)| p == 3).map_or(0, |&(_, e)| e);
    if h >= 2 {
        Ok(4)
    } else if h == 0 && k >= 2 {
        Ok(9)
    } else {
        Err(Error::VarpiUndefined(n))
    }
}

/// One per-index record of the confinement construction.
#[derive(Debug, Clone)]
pub struct FactorRecord {
    pub index: u64,
    pub varpi: u64,
    /// Local residue constraints `(a0, b0)` modulo `varpi`.
    pub local_a: u64,
    pub local_b: u64,
    /// `Phi_m(a0, b0) mod varpi`: the witnessed obstruction residue.
    pub obstruction: u64,
    /// Residues `Phi_index` can attain modulo `varpi` (exhaustive).
    pub attained: BTreeSet<u64>,
}

/// The combined classes `a = a0, b = b0 (mod D)` whose `Phi_m`-values avoid
/// every `B_{n_i}` for the degree-`d` canonical indices `n_i`.
#[derive(Debug, Clone)]
pub struct ConfinementClasses {
    pub d: u64,
    pub m: u64,
    pub modulus: u64,
    pub a0: u64,
    pub b0: u64,
    pub per_factor: Vec<FactorRecord>,
}

/// Least non-negative solution of pairwise-coprime congruences by CRT.
pub fn crt(congruences: &[(u64, u64)]) -> (u64, u64) {
    let mut residue: u128 = 0;
    let mut modulus: u128 = 1;
    for &(r, m) in congruences {
        let m = m as u128;
        let r = r as u128;
        // Solve residue + modulus * t = r (mod m).
        let inv = mod_inverse(modulus % m, m);
        let t = (r + m - residue % m) % m * inv % m;
        residue += modulus * t;
        modulus *= m;
    }
    (residue as u64, modulus as u64)
}

fn mod_inverse(a: u128, m: u128) -> u128 {
    // Extended Euclid; moduli here are pairwise coprime.
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u128
}

/// Build the confinement classes for a totient `d` (with `d + 2` a totient)
/// and a target index `m` with `phi(m) = d + 2`, `m != 2 mod 4`.
///
/// The returned `(D, a0, b0)` satisfy: for all `a = a0, b = b0 (mod D)` and
/// every canonical index `n_i` of degree `d`, the value `Phi_m(a, b)` is
/// blocked from the image of `Phi_{n_i}` by a residue obstruction, verified
/// here against the exhaustive residue profiles.
pub fn confinement_classes(d: u64, m: u64) -> Result<ConfinementClasses> {
    if d < 4 {
        return Err(Error::BadConfinementInput(format!(
            "d = {d} must be at least 4"
        )));
    }
    if !is_totient(d) {
        return Err(Error::NotTotient(d));
    }
    if !is_totient(d + 2) {
        return Err(Error::NotTotient(d + 2));
    }
    if crate::numtheory::euler_phi(m)? != d + 2 {
        return Err(Error::BadConfinementInput(format!(
            "phi({m}) != {}",
            d + 2
        )));
    }
    if m % 4 == 2 {
        return Err(Error::BadConfinementInput(format!("m = {m} is 2 mod 4")));
    }
    let indices = canonical_indices(d)?;
    let mut varpis = Vec::new();
    for &n_i in &indices {
        let w = varpi(n_i).map_err(|e| Error::FactorRejected {
            index: n_i,
            source: Box::new(e),
        })?;
        varpis.push(w);
    }
    // Local residue choices per the three branches of the lemma.
    let mut congruences_a = Vec::new();
    let mut congruences_b = Vec::new();
    let mut seen = BTreeSet::new();
    for &w in &varpis {
        if !seen.insert(w) {
            continue;
        }
        match w {
            4 => {
                // Requires m = p^s with p = 3 mod 4.
                let mf = factorize(m)?;
                if mf.len() != 1 || mf[0].0 % 4 != 3 {
                    return Err(Error::BadConfinementTarget(m));
                }
                congruences_a.push((1, 4));
                congruences_b.push((1, 4));
            }
            9 => {
                congruences_a.push((0, 9));
                congruences_b.push((2, 9));
            }
            q => {
                congruences_a.push((0, q));
                congruences_b.push((2, q));
            }
        }
    }
    let (a0, modulus_a) = crt(&congruences_a);
    let (b0, modulus_b) = crt(&congruences_b);
    debug_assert_eq!(modulus_a, modulus_b);
    let modulus = varpis.iter().fold(1u64, |acc, &w| lcm(acc, w));
    debug_assert_eq!(modulus, modulus_a);

    // Verify the obstruction for each factor against the exhaustive profile.
    let target = cyclotomic_poly(m)?;
    let mut per_factor = Vec::new();
    for (&n_i, &w) in indices.iter().zip(&varpis) {
        let profile = residues_attained(n_i, w)?;
        let obstruction = {
            let value = target.evaluate_i64((a0 % w) as i64, (b0 % w) as i64);
            let wm = num_bigint::BigInt::from(w);
            (((&value % &wm) + &wm) % &wm).to_u64().unwrap()
        };
        if profile.attained.contains(&obstruction) {
            return Err(Error::BadConfinementInput(format!(
                "no obstruction at n_i = {n_i}: Phi_{m}(a0, b0) = {obstruction} mod {w} is attained by Phi_{n_i}"
            )));
        }
        per_factor.push(FactorRecord {
            index: n_i,
            varpi: w,
            local_a: a0 % w,
            local_b: b0 % w,
            obstruction,
            attained: profile.attained,
        });
    }
    Ok(ConfinementClasses {
        d,
        m,
        modulus,
        a0,
        b0,
        per_factor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_profile_examples() {
        let p = residues_attained(5, 5).unwrap();
        assert_eq!(p.attained, BTreeSet::from([0, 1]));
        let p = residues_attained(9, 9).unwrap();
        assert!(p.attained.is_subset(&BTreeSet::from([0, 1, 3])));
        let p = residues_attained(8, 4).unwrap();
        assert!(p.attained.is_subset(&BTreeSet::from([0, 1, 2])));
        assert!(residues_attained(5, 1).is_err());
        assert!(residues_attained(5, 513).is_err());
        // 0 is always attained: Phi_n(0, 0) = 0 for n >= 3.
        for n in [3u64, 7, 12, 16] {
            assert!(residues_attained(n, 7).unwrap().attained.contains(&0));
        }
    }

    #[test]
    fn confinement_mod_p_exhaustive() {
        let allowed = BTreeSet::from([0, 1]);
        for n in 2..=200u64 {
            for (p, _) in factorize(n).unwrap() {
                if p > 13 || p == 2 {
                    continue;
                }
                let profile = residues_attained(n, p).unwrap();
                assert!(
                    profile.attained.is_subset(&allowed),
                    "n = {n}, p = {p}: {:?}",
                    profile.attained
                );
            }
        }
    }

    #[test]
    fn confinement_mod_9_exhaustive() {
        let allowed = BTreeSet::from([0, 1, 3]);
        for n in [9u64, 27, 81] {
            let profile = residues_attained(n, 9).unwrap();
            assert!(profile.attained.is_subset(&allowed), "n = {n}");
        }
    }

    #[test]
    fn confinement_mod_4_exhaustive() {
        let allowed = BTreeSet::from([0, 1, 2]);
        for n in (4..=100u64).step_by(4) {
            let profile = residues_attained(n, 4).unwrap();
            assert!(profile.attained.is_subset(&allowed), "n = {n}");
        }
    }

    #[test]
    fn prime_congruence_examples() {
        assert_eq!(
            prime_congruence_check(7, 3, 5).unwrap(),
            PrimeCongruence::NotCongruent { residue_mod_p: 1 }
        );
        assert_eq!(
            cyclotomic_poly(7).unwrap().evaluate_i64(3, 5),
            num_bigint::BigInt::from(37969)
        );
        assert_eq!(
            prime_congruence_check(5, 2, 7).unwrap(),
            PrimeCongruence::Congruent { residue_mod_p2: 5 }
        );
        assert_eq!(
            prime_congruence_check(3, 1, 1).unwrap(),
            PrimeCongruence::Congruent { residue_mod_p2: 3 }
        );
        assert!(prime_congruence_check(2, 1, 1).is_err());
        assert!(prime_congruence_check(9, 1, 1).is_err());
    }

    #[test]
    fn prime_congruence_exhaustive_small_primes() {
        for p in [3u64, 5, 7] {
            let p2 = (p * p) as i64;
            for a in 0..p2 {
                for b in 0..p2 {
                    prime_congruence_check(p, a, b).unwrap();
                }
            }
        }
    }

    #[test]
    fn varpi_examples() {
        assert_eq!(varpi(5).unwrap(), 5);
        assert_eq!(varpi(12).unwrap(), 4);
        assert_eq!(varpi(9).unwrap(), 9);
        assert_eq!(varpi(8).unwrap(), 4);
        assert_eq!(varpi(15).unwrap(), 5);
        // 4 = 2^2 is of the shape 2^h 3^k with h >= 2, k = 0.
        assert_eq!(varpi(4).unwrap(), 4);
        assert!(varpi(3).is_err());
        assert!(varpi(6).is_err());
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt(&[(0, 5), (1, 4)]), (5, 20));
        assert_eq!(crt(&[(2, 5), (1, 4)]), (17, 20));
        assert_eq!(crt(&[(3, 7)]), (3, 7));
    }

    #[test]
    fn confinement_classes_d4() {
        let c = confinement_classes(4, 7).unwrap();
        assert_eq!(c.modulus, 20);
        assert_eq!(c.a0, 5);
        assert_eq!(c.b0, 17);
        assert_eq!(c.per_factor.len(), 3);
        // Witness: Phi_7(a, b) = 4 mod 5 for the chosen classes.
        let rec = c.per_factor.iter().find(|r| r.index == 5).unwrap();
        assert_eq!(rec.varpi, 5);
        assert_eq!(rec.obstruction, 4);
    }

    #[test]
    fn confinement_classes_d6() {
        // Indices {7, 9}, varpi 7 and 9, D = 63; m with phi(m) = 8.
        let c = confinement_classes(6, 16).unwrap();
        assert_eq!(c.modulus, 63);
        let c = confinement_classes(6, 15).unwrap();
        assert_eq!(c.modulus, 63);
    }

    #[test]
    fn confinement_classes_rejects_bad_inputs() {
        assert!(confinement_classes(4, 10).is_err()); // 10 = 2 mod 4
        assert!(confinement_classes(4, 5).is_err()); // phi(5) = 4 != 6
        assert!(confinement_classes(2, 7).is_err()); // d < 4
    }
}
