//! Cyclotomic polynomials `phi_n` and their homogenised binary forms
//! `Phi_n(X, Y) = Y^phi(n) * phi_n(X/Y)`, with exact integer arithmetic
//! throughout.
//!
//! Coefficients are computed by the exact division ladder (for squarefree
//! radical, then exponent substitution); the literal Moebius product
//! `prod (X^k - Y^k)^{mu(n/k)}` is exposed separately as a cross-check route.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numtheory::{divisors, factorize, radical};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Dense integer polynomials, ascending coefficients, i64 backing.
// The cyclotomic ladder never leaves i64 at desk scale; every arithmetic
// step is checked so a silent overflow is impossible.

fn poly_trim(p: &mut Vec<i64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = out[i + j]
                .checked_add(ai.checked_mul(bj).expect("coefficient overflow"))
                .expect("coefficient overflow");
        }
    }
    out
}

/// Exact division in Z[x]; panics if the division leaves a remainder.
fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    poly_trim(&mut rem);
    let mut den = den.to_vec();
    poly_trim(&mut den);
    let dlead = *den.last().unwrap();
    assert!(dlead != 0, "division by zero polynomial");
    assert!(rem.len() >= den.len(), "exact division underflow");
    let qdeg = rem.len() - den.len();
    let mut quot = vec![0i64; qdeg + 1];
    for k in (0..=qdeg).rev() {
        let coeff = rem[k + den.len() - 1];
        assert!(coeff % dlead == 0, "inexact polynomial division");
        let q = coeff / dlead;
        quot[k] = q;
        if q != 0 {
            for (i, &di) in den.iter().enumerate() {
                rem[k + i] = rem[k + i]
                    .checked_sub(q.checked_mul(di).expect("coefficient overflow"))
                    .expect("coefficient overflow");
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

/// `p(x^k)`: spread coefficients with k-1 zeros between them.
fn poly_substitute_power(p: &[i64], k: u64) -> Vec<i64> {
    let k = k as usize;
    let mut out = vec![0i64; (p.len() - 1) * k + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i * k] = c;
    }
    out
}

/// Coefficients of `phi_n` (ascending) via the division ladder.
fn cyclo_coeffs(n: u64) -> Result<Vec<i64>> {
    if n == 0 {
        return Err(Error::ZeroArgument("n"));
    }
    let rad = radical(n)?;
    // Squarefree part first: phi_{mp}(x) = phi_m(x^p) / phi_m(x) for p not | m.
    let mut f = vec![-1i64, 1];
    for (p, _) in factorize(rad)? {
        let spread = poly_substitute_power(&f, p);
        f = poly_exact_div(&spread, &f);
    }
    // phi_n(x) = phi_rad(n)(x^{n / rad(n)}).
    if n / rad > 1 {
        f = poly_substitute_power(&f, n / rad);
    }
    Ok(f)
}

/// Coefficients of `phi_n` via the Moebius product
/// `prod_{k | n} (x^k - 1)^{mu(n/k)}` — independent cross-check route.
pub fn cyclotomic_poly_moebius(n: u64) -> Result<CyclotomicForm> {
    if n == 0 {
        return Err(Error::ZeroArgument("n"));
    }
    let mut numerator = vec![1i64];
    let mut denominators = Vec::new();
    for k in divisors(n)? {
        let mut xk = vec![0i64; k as usize + 1];
        xk[0] = -1;
        xk[k as usize] = 1;
        match crate::numtheory::moebius(n / k)? {
            1 => numerator = poly_mul(&numerator, &xk),
            -1 => denominators.push(xk),
            _ => {}
        }
    }
    for den in &denominators {
        numerator = poly_exact_div(&numerator, den);
    }
    CyclotomicForm::from_coeffs(n, numerator)
}

// ---------------------------------------------------------------------------

/// Integer-coefficient homogeneous binary form
/// `F(X, Y) = sum_j c_j X^j Y^{d-j}` with ascending coefficients `c_0..c_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<BigInt>,
}

impl BinaryForm {
    /// Build from ascending coefficients; the zero form is rejected.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroForm);
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> u64 {
        (self.coeffs.len() - 1) as u64
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact value `F(x, y)`; precision escalates with the inputs, nothing
    /// can silently overflow.
    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let d = self.coeffs.len() - 1;
        let mut xpows = Vec::with_capacity(d + 1);
        xpows.push(BigInt::one());
        for _ in 0..d {
            let next = xpows.last().unwrap() * x;
            xpows.push(next);
        }
        // Horner in y over coefficients c_j x^j, ascending j.
        let mut acc = self.coeffs[0].clone();
        for j in 1..=d {
            acc = acc * y + &self.coeffs[j] * &xpows[j];
        }
        acc
    }

    pub fn evaluate_i64(&self, x: i64, y: i64) -> BigInt {
        self.evaluate(&BigInt::from(x), &BigInt::from(y))
    }

    /// Length `L(F) = sum |c_j|`.
    pub fn length(&self) -> BigUint {
        self.coeffs
            .iter()
            .map(|c| c.abs().to_biguint().unwrap())
            .sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|j| self.coeffs[j] == self.coeffs[n - 1 - j])
    }

    /// True iff the degree is even and positive and `F(t, 1)` has no real
    /// root and is positive, i.e. `F(x, y) > 0` away from the origin.
    pub fn is_positive_definite(&self) -> bool {
        let d = self.degree();
        if d == 0 || d % 2 != 0 {
            return false;
        }
        // F(1, 0) = c_d and F(0, 1) = c_0 must both be positive.
        if !self.coeffs[0].is_positive() || !self.coeffs[d as usize].is_positive() {
            return false;
        }
        count_real_roots(&self.coeffs) == 0
    }

    /// A reusable capped evaluator; fails unless the form is positive definite.
    pub fn bounded_evaluator(&self) -> Result<BoundedEvaluator> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        let small: Option<Vec<i128>> = self
            .coeffs
            .iter()
            .map(|c| c.to_i128())
            .collect();
        Ok(BoundedEvaluator {
            form: self.clone(),
            small,
        })
    }
}

// Rational polynomials for the Sturm chain: ascending coefficients, trimmed.
type RatPoly = Vec<BigRational>;

fn rat_trim(p: &mut RatPoly) {
    while p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
}

fn rat_rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut rem = a.clone();
    let lead = b.last().unwrap();
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let q = rem.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            let delta = &q * c;
            rem[shift + i] -= delta;
        }
        rem.pop();
        rat_trim(&mut rem);
    }
    rem
}

fn rat_div_exact(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut rem = a.clone();
    let lead = b.last().unwrap();
    let mut quot = vec![BigRational::zero(); a.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let q = rem.last().unwrap() / lead;
        quot[shift] = q.clone();
        for (i, c) in b.iter().enumerate() {
            let delta = &q * c;
            rem[shift + i] -= delta;
        }
        rem.pop();
        rat_trim(&mut rem);
    }
    debug_assert!(rem.is_empty());
    quot
}

fn rat_derivative(p: &RatPoly) -> RatPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c * BigRational::from_integer(BigInt::from(j)))
        .collect()
}

fn rat_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = rat_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Number of distinct real roots, via a Sturm chain on the squarefree part.
fn count_real_roots(coeffs: &[BigInt]) -> usize {
    let mut p: RatPoly = coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    rat_trim(&mut p);
    sturm_real_roots(p)
}

fn sturm_real_roots(p: RatPoly) -> usize {
    if p.len() <= 1 {
        return 0;
    }
    let dp = rat_derivative(&p);
    let g = rat_gcd(&p, &dp);
    if g.len() > 1 {
        return sturm_real_roots(rat_div_exact(&p, &g));
    }
    let mut chain = vec![p, dp];
    loop {
        let last = chain.last().unwrap();
        if last.len() <= 1 {
            break;
        }
        let prev = &chain[chain.len() - 2];
        let mut r = rat_rem(prev, last);
        if r.is_empty() {
            break;
        }
        for c in &mut r {
            *c = -c.clone();
        }
        chain.push(r);
    }
    let variations = |at_neg_inf: bool| -> usize {
        let mut count = 0;
        let mut prev_sign = 0i8;
        for q in &chain {
            if q.is_empty() {
                continue;
            }
            let deg = q.len() - 1;
            let lead = q.last().unwrap();
            let mut s: i8 = if lead.is_positive() { 1 } else { -1 };
            if at_neg_inf && deg % 2 == 1 {
                s = -s;
            }
            if prev_sign != 0 && s != prev_sign {
                count += 1;
            }
            prev_sign = s;
        }
        count
    };
    variations(true) - variations(false)
}

/// Result of a capped evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bounded {
    Value(u64),
    OverCap,
}

/// Capped evaluator for a positive definite form: machine-width fast path,
/// exact big-integer fallback on overflow.
#[derive(Debug, Clone)]
pub struct BoundedEvaluator {
    form: BinaryForm,
    small: Option<Vec<i128>>,
}

impl BoundedEvaluator {
    pub fn eval(&self, x: i64, y: i64, cap: u64) -> Bounded {
        if let Some(coeffs) = &self.small {
            if let Some(v) = eval_i128(coeffs, x as i128, y as i128) {
                debug_assert!(v >= 0);
                return if v as u128 <= cap as u128 {
                    Bounded::Value(v as u64)
                } else {
                    Bounded::OverCap
                };
            }
        }
        let v = self.form.evaluate_i64(x, y);
        if v <= BigInt::from(cap) {
            Bounded::Value(v.to_u64().expect("positive definite value"))
        } else {
            Bounded::OverCap
        }
    }
}

fn eval_i128(coeffs: &[i128], x: i128, y: i128) -> Option<i128> {
    let d = coeffs.len() - 1;
    let mut xpows = Vec::with_capacity(d + 1);
    let mut p = 1i128;
    xpows.push(p);
    for _ in 0..d {
        p = p.checked_mul(x)?;
        xpows.push(p);
    }
    let mut acc = coeffs[0];
    for j in 1..=d {
        acc = acc
            .checked_mul(y)?
            .checked_add(coeffs[j].checked_mul(xpows[j])?)?;
    }
    Some(acc)
}

/// Capped evaluation `F(x, y)` against `cap`; the form must be positive
/// definite. Agrees with [`BinaryForm::evaluate`] whenever it returns a value.
pub fn evaluate_bounded(f: &BinaryForm, x: i64, y: i64, cap: u64) -> Result<Bounded> {
    Ok(f.bounded_evaluator()?.eval(x, y, cap))
}

// ---------------------------------------------------------------------------

/// The binary form `Phi_n`, tagged with its index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicForm {
    index: u64,
    form: BinaryForm,
}

impl CyclotomicForm {
    fn from_coeffs(n: u64, coeffs: Vec<i64>) -> Result<Self> {
        Ok(Self {
            index: n,
            form: BinaryForm::from_i64(&coeffs)?,
        })
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    pub fn degree(&self) -> u64 {
        self.form.degree()
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.form.evaluate(x, y)
    }

    pub fn evaluate_i64(&self, x: i64, y: i64) -> BigInt {
        self.form.evaluate_i64(x, y)
    }
}

/// Exact coefficients of `phi_n`, homogenised into `Phi_n`.
pub fn cyclotomic_poly(n: u64) -> Result<CyclotomicForm> {
    CyclotomicForm::from_coeffs(n, cyclo_coeffs(n)?)
}

/// `phi_n(1)` by the closed-form case split: 0 for n = 1, p for prime
/// powers p^k, 1 otherwise.
pub fn value_at_one(n: u64) -> Result<i64> {
    let factors = factorize(n)?;
    Ok(match factors.len() {
        0 => 0, // n = 1
        1 => factors[0].0 as i64,
        _ => 1,
    })
}

/// `phi_n(-1)` by the five-case closed form.
pub fn value_at_minus_one(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::ZeroArgument("n"));
    }
    if n == 1 {
        return Ok(-2);
    }
    if n % 2 == 1 {
        return Ok(1);
    }
    if n % 4 == 2 {
        return value_at_one(n / 2);
    }
    // 4 | n: 2 for powers of two, 1 otherwise.
    Ok(if n.is_power_of_two() { 2 } else { 1 })
}

/// Check `Phi_n(x, y) = Phi_{rad(n)}(x^{n/rad(n)}, y^{n/rad(n)})` at each
/// sample pair.
pub fn verify_identity_radical(n: u64, samples: &[(i64, i64)]) -> Result<bool> {
    if n < 2 {
        return Err(Error::IndexTooSmall(n, 2));
    }
    let rad = radical(n)?;
    let e = n / rad;
    let full = cyclotomic_poly(n)?;
    let reduced = cyclotomic_poly(rad)?;
    for &(x, y) in samples {
        let xe = BigInt::from(x).pow(e as u32);
        let ye = BigInt::from(y).pow(e as u32);
        if full.evaluate_i64(x, y) != reduced.evaluate(&xe, &ye) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of checking `Phi_n = Phi_m(X^{p^r}, Y^{p^r}) / Phi_m(X^{p^{r-1}}, Y^{p^{r-1}})`
/// on sample pairs; pairs where the denominator vanishes are skipped and reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeQuotientReport {
    pub holds: bool,
    pub checked: usize,
    pub skipped: Vec<(i64, i64)>,
}

/// Verify the prime-quotient identity for `n = p^r m` with `p` coprime to `m`.
/// When `p` is not supplied the smallest prime factor of `n` is used.
pub fn verify_identity_prime_quotient(
    n: u64,
    p: Option<u64>,
    samples: &[(i64, i64)],
) -> Result<PrimeQuotientReport> {
    if n < 2 {
        return Err(Error::IndexTooSmall(n, 2));
    }
    let factors = factorize(n)?;
    let p = match p {
        Some(p) => {
            if !factors.iter().any(|&(q, _)| q == p) {
                return Err(Error::NotADivisor(p, n));
            }
            p
        }
        None => factors[0].0,
    };
    let r = factors.iter().find(|&&(q, _)| q == p).unwrap().1;
    let m = n / p.pow(r);
    let phi_n = cyclotomic_poly(n)?;
    let phi_m = cyclotomic_poly(m)?;
    let hi = p.pow(r);
    let lo = p.pow(r - 1);
    let mut holds = true;
    let mut checked = 0;
    let mut skipped = Vec::new();
    for &(x, y) in samples {
        let num = phi_m.evaluate(&BigInt::from(x).pow(hi as u32), &BigInt::from(y).pow(hi as u32));
        let den = phi_m.evaluate(&BigInt::from(x).pow(lo as u32), &BigInt::from(y).pow(lo as u32));
        if den.is_zero() {
            skipped.push((x, y));
            continue;
        }
        checked += 1;
        let lhs = phi_n.evaluate_i64(x, y);
        if &lhs * &den != num {
            holds = false;
        }
    }
    Ok(PrimeQuotientReport {
        holds,
        checked,
        skipped,
    })
}

/// Comparison of `L(phi_n)` against the length bound `n^{d(n)/2}`.
#[derive(Debug, Clone)]
pub struct BatemanCheck {
    pub n: u64,
    pub length: BigUint,
    pub divisor_count: u64,
    pub holds: bool,
}

/// Check `L(phi_n) <= n^{d(n)/2}` by the exact squared comparison
/// `L^2 <= n^{d(n)}`. The stated bound fails for n = 1 (`L(phi_1) = 2 > 1`),
/// so n = 1 is rejected as excluded.
pub fn bateman_check(n: u64) -> Result<BatemanCheck> {
    if n == 0 {
        return Err(Error::ZeroArgument("n"));
    }
    if n == 1 {
        return Err(Error::BatemanExcluded(1));
    }
    let length = cyclotomic_poly(n)?.form().length();
    let dn = crate::numtheory::divisor_count(n)?;
    let holds = &length * &length <= BigUint::from(n).pow(dn as u32);
    Ok(BatemanCheck {
        n,
        length,
        divisor_count: dn,
        holds,
    })
}

/// Smallest `n_min` such that `phi(n) * L(phi_n) <= exp(n^epsilon)` holds for
/// every `n` in `[n_min, n_max]`. Reported, never asserted: the inequality is
/// only asymptotic and its threshold is not effective.
pub fn bateman_epsilon_threshold(epsilon: f64, n_max: u64) -> Result<u64> {
    let mut n_min = 2;
    for n in 2..=n_max {
        let form = cyclotomic_poly(n)?;
        let length = form.form().length();
        let phi = form.degree();
        // Compare in log space; lengths here fit comfortably in f64 range.
        let lhs = (phi as f64).ln() + biguint_ln(&length);
        let rhs = (n as f64).powf(epsilon);
        if lhs > rhs {
            n_min = n + 1;
        }
    }
    Ok(n_min)
}

fn biguint_ln(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 52 {
        (v.to_u64().unwrap() as f64).ln()
    } else {
        let shift = bits - 52;
        let top = (v >> shift).to_u64().unwrap() as f64;
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_coefficients() {
        assert_eq!(cyclo_coeffs(1).unwrap(), vec![-1, 1]);
        assert_eq!(cyclo_coeffs(2).unwrap(), vec![1, 1]);
        assert_eq!(cyclo_coeffs(3).unwrap(), vec![1, 1, 1]);
        assert_eq!(cyclo_coeffs(4).unwrap(), vec![1, 0, 1]);
        assert_eq!(cyclo_coeffs(6).unwrap(), vec![1, -1, 1]);
        assert_eq!(cyclo_coeffs(12).unwrap(), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclo_coeffs(9).unwrap(), vec![1, 0, 0, 1, 0, 0, 1]);
        assert!(cyclotomic_poly(0).is_err());
    }

    #[test]
    fn ladder_agrees_with_moebius_product() {
        for n in 1..=300 {
            assert_eq!(
                cyclotomic_poly(n).unwrap(),
                cyclotomic_poly_moebius(n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn degree_is_phi_n() {
        for n in 1..=500 {
            assert_eq!(
                cyclotomic_poly(n).unwrap().degree(),
                crate::numtheory::euler_phi(n).unwrap()
            );
        }
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(
            cyclotomic_poly(5).unwrap().evaluate_i64(1, 1),
            BigInt::from(5)
        );
        assert_eq!(
            cyclotomic_poly(4).unwrap().evaluate_i64(3, 4),
            BigInt::from(25)
        );
        assert_eq!(
            cyclotomic_poly(12).unwrap().evaluate_i64(2, 1),
            BigInt::from(13)
        );
    }

    #[test]
    fn product_over_divisors_recovers_xn_minus_yn() {
        for n in 1..=300u64 {
            for (x, y) in [(2i64, 1i64), (3, 2), (-2, 5)] {
                let mut prod = BigInt::one();
                for k in divisors(n).unwrap() {
                    prod *= cyclotomic_poly(k).unwrap().evaluate_i64(x, y);
                }
                let expect =
                    BigInt::from(x).pow(n as u32) - BigInt::from(y).pow(n as u32);
                assert_eq!(prod, expect, "n = {n}, ({x}, {y})");
            }
        }
    }

    #[test]
    fn palindromic_for_n_at_least_3() {
        for n in 3..=300 {
            let form = cyclotomic_poly(n).unwrap();
            assert!(form.form().is_palindromic(), "n = {n}");
            assert_eq!(form.evaluate_i64(7, -3), form.evaluate_i64(-3, 7));
        }
    }

    #[test]
    fn double_index_identity_for_odd_n() {
        for n in (3..=199u64).step_by(2) {
            let a = cyclotomic_poly(2 * n).unwrap();
            let b = cyclotomic_poly(n).unwrap();
            for (x, y) in [(2i64, 1i64), (5, -3), (-4, 7), (1, 1)] {
                assert_eq!(a.evaluate_i64(x, y), b.evaluate_i64(x, -y), "n = {n}");
            }
        }
    }

    #[test]
    fn positive_definite_classification() {
        for n in 3..=60 {
            assert!(
                cyclotomic_poly(n).unwrap().form().is_positive_definite(),
                "Phi_{n} should be positive definite"
            );
        }
        assert!(!cyclotomic_poly(1).unwrap().form().is_positive_definite());
        assert!(!cyclotomic_poly(2).unwrap().form().is_positive_definite());
        // x^2 - y^2 is even-degree but indefinite.
        let f = BinaryForm::from_i64(&[-1, 0, 1]).unwrap();
        assert!(!f.is_positive_definite());
    }

    #[test]
    fn evaluate_bounded_examples() {
        let phi4 = cyclotomic_poly(4).unwrap();
        assert_eq!(
            evaluate_bounded(phi4.form(), 3, 4, 30).unwrap(),
            Bounded::Value(25)
        );
        assert_eq!(
            evaluate_bounded(phi4.form(), 3, 4, 20).unwrap(),
            Bounded::OverCap
        );
        let phi12 = cyclotomic_poly(12).unwrap();
        assert_eq!(
            evaluate_bounded(phi12.form(), 2, 1, 13).unwrap(),
            Bounded::Value(13)
        );
        let phi1 = cyclotomic_poly(1).unwrap();
        assert!(evaluate_bounded(phi1.form(), 1, 1, 10).is_err());
    }

    #[test]
    fn bounded_evaluator_falls_back_to_exact() {
        // Large inputs overflow the i128 fast path for a degree-48 form.
        let phi = cyclotomic_poly(97).unwrap();
        let ev = phi.form().bounded_evaluator().unwrap();
        let x = 1_000_003i64;
        let y = -999_983i64;
        assert_eq!(ev.eval(x, y, u64::MAX), Bounded::OverCap);
        let exact = phi.evaluate_i64(50, -49);
        match ev.eval(50, -49, u64::MAX) {
            Bounded::Value(v) => assert_eq!(BigInt::from(v), exact),
            Bounded::OverCap => assert!(exact > BigInt::from(u64::MAX)),
        }
    }

    #[test]
    fn values_at_plus_minus_one() {
        assert_eq!(value_at_one(1).unwrap(), 0);
        assert_eq!(value_at_one(9).unwrap(), 3);
        assert_eq!(value_at_one(15).unwrap(), 1);
        assert_eq!(value_at_minus_one(1).unwrap(), -2);
        assert_eq!(value_at_minus_one(8).unwrap(), 2);
        assert_eq!(value_at_minus_one(12).unwrap(), 1);
        for n in 1..=2000u64 {
            let form = cyclotomic_poly(n).unwrap();
            assert_eq!(
                BigInt::from(value_at_one(n).unwrap()),
                form.evaluate_i64(1, 1),
                "phi_{n}(1)"
            );
            assert_eq!(
                BigInt::from(value_at_minus_one(n).unwrap()),
                form.evaluate_i64(-1, 1),
                "phi_{n}(-1)"
            );
        }
    }

    #[test]
    fn radical_identity_examples() {
        assert!(verify_identity_radical(9, &[(2, 1)]).unwrap());
        assert_eq!(
            cyclotomic_poly(9).unwrap().evaluate_i64(2, 1),
            BigInt::from(73)
        );
        assert!(verify_identity_radical(4, &[(3, 5), (-2, 7)]).unwrap());
        assert!(verify_identity_radical(12, &[(2, 1)]).unwrap());
        for n in 2..=200 {
            assert!(verify_identity_radical(n, &[(2, 1), (3, -2), (-5, 4)]).unwrap());
        }
    }

    #[test]
    fn prime_quotient_identity_examples() {
        // n = 12 = 2^2 * 3 at (2, 1): Phi_3(16,1)/Phi_3(4,1) = 273/21 = 13.
        let r = verify_identity_prime_quotient(12, Some(2), &[(2, 1)]).unwrap();
        assert!(r.holds && r.checked == 1 && r.skipped.is_empty());
        // n = 9 = 3^2 at (2, 1): Phi_1(512,1)/Phi_1(8,1) = 511/7 = 73.
        let r = verify_identity_prime_quotient(9, None, &[(2, 1)]).unwrap();
        assert!(r.holds);
        // Prime n: (x^p - y^p)/(x - y) at (1, 1) hits a zero denominator.
        let r = verify_identity_prime_quotient(7, None, &[(1, 1), (2, 1)]).unwrap();
        assert!(r.holds && r.checked == 1);
        assert_eq!(r.skipped, vec![(1, 1)]);
        assert!(verify_identity_prime_quotient(12, Some(5), &[]).is_err());
    }

    #[test]
    fn length_examples() {
        assert_eq!(cyclotomic_poly(4).unwrap().form().length(), 2u32.into());
        assert_eq!(cyclotomic_poly(3).unwrap().form().length(), 3u32.into());
        assert_eq!(cyclotomic_poly(12).unwrap().form().length(), 3u32.into());
    }

    #[test]
    fn bateman_examples() {
        let c = bateman_check(3).unwrap();
        assert!(c.holds);
        assert_eq!(c.length, 3u32.into());
        assert_eq!(c.divisor_count, 2);
        let c = bateman_check(12).unwrap();
        assert!(c.holds && c.divisor_count == 6);
        assert!(matches!(bateman_check(1), Err(Error::BatemanExcluded(1))));
    }

    #[test]
    fn definiteness_on_integer_samples() {
        for n in 3..=120u64 {
            let form = cyclotomic_poly(n).unwrap();
            for (x, y) in [(1i64, 0i64), (0, 1), (3, -2), (-7, 5), (2, 2)] {
                assert!(form.evaluate_i64(x, y) > BigInt::zero(), "n = {n}");
            }
        }
    }
}
