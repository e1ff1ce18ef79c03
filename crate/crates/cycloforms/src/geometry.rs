//! Fundamental-domain areas `A_{Phi_n}` by adaptive quadrature with a
//! certified error bound, the constants `C_d`, `eta_d` and `beta*_d`, the
//! min/length square sandwich, and exact square-containment checks.
//!
//! The area integral `int dt / phi_n(t)^{2/d}` is folded to
//! `2 int_{-1}^{1} phi_n(t)^{-2/d} dt` by the substitution `t -> 1/t`
//! (valid by palindromy), then integrated with an adaptive 7-15
//! Gauss-Kronrod rule: the interval with the largest error estimate is
//! bisected until the summed estimates meet the tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;

use crate::cycloform::cyclotomic_poly;
use crate::numtheory::canonical_indices;
use crate::symmetry::w_weight;
use crate::{Error, Result};

/// Hard floor on quadrature tolerances.
pub const TOL_FLOOR: f64 = 1e-12;
/// Integrand-evaluation budget per area computation.
pub const EVAL_BUDGET: usize = 1_000_000;

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the odd-indexed abscissae.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One 7-15 rule application on `[a, b]`: `(kronrod, error_estimate)`.
fn qk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = half * XGK[j];
        let fsum = f(center - x) + f(center + x);
        kronrod += WGK[j] * fsum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * fsum;
        }
    }
    kronrod *= half;
    gauss *= half;
    (kronrod, (kronrod - gauss).abs())
}

struct Segment {
    error: f64,
    a: f64,
    b: f64,
    value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive integration of `f` on `[a, b]` to absolute tolerance `tol`.
///
/// Returns `(value, certified_error, evaluations)`.
fn integrate_adaptive(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(f64, f64, usize)> {
    if tol < TOL_FLOOR {
        return Err(Error::ToleranceTooTight(tol, TOL_FLOOR));
    }
    let mut heap = BinaryHeap::new();
    let (value, error) = qk15(f, a, b);
    let mut evals = 15;
    heap.push(Segment { error, a, b, value });
    loop {
        let total_error: f64 = heap.iter().map(|s| s.error).sum();
        if total_error <= tol {
            let total: f64 = heap.iter().map(|s| s.value).sum();
            return Ok((total, total_error, evals));
        }
        if evals + 30 > EVAL_BUDGET {
            return Err(Error::QuadratureBudget {
                tol,
                budget: EVAL_BUDGET,
                achieved: total_error,
            });
        }
        let worst = heap.pop().expect("heap nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = qk15(f, lo, hi);
            evals += 15;
            heap.push(Segment {
                error,
                a: lo,
                b: hi,
                value,
            });
        }
    }
}

/// The area of `{Phi_n(x, y) <= 1}` with a certified error bound.
#[derive(Debug, Clone, Copy)]
pub struct AreaResult {
    pub index: u64,
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

fn poly_coeffs_f64(n: u64) -> Result<Vec<f64>> {
    Ok(cyclotomic_poly(n)?
        .form()
        .coefficients()
        .iter()
        .map(|c| c.to_f64().expect("small cyclotomic coefficient"))
        .collect())
}

fn poly_eval(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

/// `A_{Phi_n}` to absolute tolerance `tol`, via
/// `2 int_{-1}^{1} phi_n(t)^{-2/phi(n)} dt`.
pub fn area(n: u64, tol: f64) -> Result<AreaResult> {
    if n < 3 {
        return Err(Error::IndexTooSmall(n, 3));
    }
    let coeffs = poly_coeffs_f64(n)?;
    let d = (coeffs.len() - 1) as f64;
    let exponent = -2.0 / d;
    let f = move |t: f64| poly_eval(&coeffs, t).powf(exponent);
    let (half, err, evals) = integrate_adaptive(&f, -1.0, 1.0, tol / 2.0)?;
    Ok(AreaResult {
        index: n,
        value: 2.0 * half,
        abs_error: 2.0 * err,
        evaluations: evals,
    })
}

// Lanczos approximation, g = 7, accurate to about 15 significant digits.
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Gamma function for positive real arguments.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let t = x + 7.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Closed form `A_{Phi_{2d}} = (2/d) Gamma(1/d)^2 / Gamma(2/d)`, valid
/// exactly when `phi_{2d}(t) = 1 + t^d`, i.e. `2d` is a power of two.
pub fn area_power_of_two(d: u64) -> Result<f64> {
    if d < 2 || !(2 * d).is_power_of_two() {
        return Err(Error::NotPowerOfTwo(2 * d));
    }
    let d = d as f64;
    Ok(2.0 / d * gamma(1.0 / d).powi(2) / gamma(2.0 / d))
}

/// The constant `C_d` with its contributions and the exponent constants.
#[derive(Debug, Clone)]
pub struct ConstantBundle {
    pub d: u64,
    pub c_d: f64,
    pub abs_error: f64,
    /// `(n, w_n, A_{Phi_n})` over the canonical indices of degree `d`.
    pub contributions: Vec<(u64, Ratio<i64>, AreaResult)>,
    pub eta_d: f64,
    pub beta_star_d: f64,
}

/// `C_d = sum w_n A_{Phi_n}` over `phi(n) = d`, `n != 2 mod 4`.
pub fn constant_cd(d: u64, tol: f64) -> Result<ConstantBundle> {
    if d < 4 || d % 2 != 0 {
        return Err(Error::NotTotient(d));
    }
    let indices = canonical_indices(d)?;
    if indices.is_empty() {
        return Err(Error::NotTotient(d));
    }
    let per_term = tol / indices.len() as f64;
    let mut c_d = 0.0;
    let mut abs_error = 0.0;
    let mut contributions = Vec::new();
    for &n in &indices {
        let w = w_weight(n)?;
        let a = area(n, per_term)?;
        let wf = w.to_f64().expect("small rational weight");
        c_d += wf * a.value;
        abs_error += wf * a.abs_error;
        contributions.push((n, w, a));
    }
    Ok(ConstantBundle {
        d,
        c_d,
        abs_error,
        contributions,
        eta_d: eta(d)?,
        beta_star_d: beta_star(d)?,
    })
}

/// The exponent `eta_d` of the error term.
pub fn eta(d: u64) -> Result<f64> {
    if d < 3 {
        return Err(Error::IndexTooSmall(d, 3));
    }
    Ok(match d {
        3 => 2.0 / 9.0 + 73.0 / (108.0 * 3f64.sqrt()),
        4..=20 => (0.5 + 9.0 / (4.0 * (d as f64).sqrt())) / d as f64,
        _ => 1.0 / d as f64,
    })
}

/// The exponent `beta*_d` of the secondary term.
pub fn beta_star(d: u64) -> Result<f64> {
    if d % 2 != 0 || d < 4 {
        return Err(Error::IndexTooSmall(d, 4));
    }
    Ok(match d {
        4 | 6 | 8 => 3.0 / (d as f64 * (d as f64).sqrt()),
        _ => 1.0 / d as f64,
    })
}

/// The global minimum of `phi_n(t)` over the reals: `(t_min, m_value)`.
///
/// The search is confined to `[-2, 2]`: outside, `phi_n(t)` exceeds
/// `phi_n`'s value range on the interval since the polynomial is dominated
/// by its leading term there. Dense grid scan plus ternary refinement.
pub fn min_on_line(n: u64, tol: f64) -> Result<(f64, f64)> {
    if n < 3 {
        return Err(Error::IndexTooSmall(n, 3));
    }
    let coeffs = poly_coeffs_f64(n)?;
    let grid = 4000usize;
    let mut best_i = 0;
    let mut best_v = f64::INFINITY;
    for i in 0..=grid {
        let t = -2.0 + 4.0 * i as f64 / grid as f64;
        let v = poly_eval(&coeffs, t);
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    let step = 4.0 / grid as f64;
    let mut lo = -2.0 + step * best_i.saturating_sub(1) as f64;
    let mut hi = (-2.0 + step * (best_i + 1) as f64).min(2.0);
    let mut budget = 500;
    while hi - lo > tol {
        if budget == 0 {
            return Err(Error::MinSearchFailed(n));
        }
        budget -= 1;
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if poly_eval(&coeffs, m1) <= poly_eval(&coeffs, m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let t = 0.5 * (lo + hi);
    Ok((t, poly_eval(&coeffs, t)))
}

/// Side lengths of the centered squares sandwiching `{Phi_n <= 1}`:
/// `(2 L^{-1/d}, 2 m^{-1/d})` with `L` the coefficient length and `m` the
/// line minimum. Asserts the computed area lies inside the implied bounds.
pub fn square_sandwich(n: u64, tol: f64) -> Result<(f64, f64)> {
    let form = cyclotomic_poly(n)?;
    let d = form.degree() as f64;
    let length = form.form().length().to_f64().expect("modest length");
    let (_, m) = min_on_line(n, 1e-9)?;
    let inner = 2.0 * length.powf(-1.0 / d);
    let outer = 2.0 * m.powf(-1.0 / d);
    let a = area(n, tol)?;
    let lower = 4.0 * length.powf(-2.0 / d) - a.abs_error - 1e-9;
    let upper = 4.0 * m.powf(-2.0 / d) + a.abs_error + 1e-9;
    if a.value < lower || a.value > upper {
        return Err(Error::SandwichViolated {
            n,
            area: a.value,
            lower,
            upper,
        });
    }
    Ok((inner, outer))
}

/// One sampled boundary point of a containment check.
#[derive(Debug, Clone, Copy)]
pub struct ContainmentSample {
    pub x: f64,
    pub y: f64,
    /// true: inner-square boundary, needs `Phi_n <= 1`;
    /// false: outer-square boundary, needs `Phi_n > 1`.
    pub inner: bool,
    pub pass: bool,
}

/// Result of sampling the two square boundaries of the containment claim.
#[derive(Debug, Clone)]
pub struct ContainmentReport {
    pub n: u64,
    pub epsilon: f64,
    pub inner_side: f64,
    pub outer_side: f64,
    pub samples: Vec<ContainmentSample>,
    pub all_pass: bool,
}

/// Exact rational `(numerator, power-of-two denominator)` of a float.
fn exact_parts(v: f64) -> (BigInt, BigInt) {
    let r = BigRational::from_float(v).expect("finite sample coordinate");
    (r.numer().clone(), r.denom().clone())
}

/// Whether `Phi_n(x, y) <= 1` at exact float coordinates, decided in
/// integer arithmetic via homogeneity: `Phi(a/q, b/q) = Phi(a, b) / q^d`.
fn phi_at_most_one(form: &crate::cycloform::CyclotomicForm, x: f64, y: f64) -> bool {
    let (xn, xd) = exact_parts(x);
    let (yn, yd) = exact_parts(y);
    // Common power-of-two denominator.
    let q = if xd >= yd { xd.clone() } else { yd.clone() };
    let a = &xn * (&q / &xd);
    let b = &yn * (&q / &yd);
    let value = form.evaluate(&a, &b);
    value <= q.pow(form.degree() as u32)
}

/// Sample the boundaries of the squares of side `2 -+ n^{-1+epsilon}`
/// inside the sector `|y| <= x` and test `Phi_n <= 1` (inner) and
/// `Phi_n > 1` (outer) exactly. Failures are reported, never asserted:
/// the containment theorem only holds for `n` large.
pub fn containment_check(n: u64, epsilon: f64, grid: u64) -> Result<ContainmentReport> {
    if n < 3 {
        return Err(Error::IndexTooSmall(n, 3));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::BadEpsilon(epsilon));
    }
    if grid < 2 {
        return Err(Error::ZeroArgument("grid"));
    }
    let form = cyclotomic_poly(n)?;
    let margin = (n as f64).powf(-1.0 + epsilon);
    let inner_side = 2.0 - margin;
    let outer_side = 2.0 + margin;
    let mut samples = Vec::new();
    // Boundary within the sector |y| <= x: the right edge x = side/2.
    for (side, inner) in [(inner_side, true), (outer_side, false)] {
        let h = side / 2.0;
        for k in 0..grid {
            let y = -h + side * k as f64 / (grid - 1) as f64;
            let le_one = phi_at_most_one(&form, h, y);
            let pass = if inner { le_one } else { !le_one };
            samples.push(ContainmentSample {
                x: h,
                y,
                inner,
                pass,
            });
        }
    }
    let all_pass = samples.iter().all(|s| s.pass);
    Ok(ContainmentReport {
        n,
        epsilon,
        inner_side,
        outer_side,
        samples,
        all_pass,
    })
}

/// The main-term prediction `C_d N^{2/d}`.
pub fn predicted_ad(bundle: &ConstantBundle, n_limit: u64) -> f64 {
    bundle.c_d * (n_limit as f64).powf(2.0 / bundle.d as f64)
}
